#include "emd/emdcodec.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "emd/errors.hpp"
#include "emd/rng.hpp"

namespace emd {

std::size_t TernaryString::erasure_count() const {
    return static_cast<std::size_t>(std::count(sym_.begin(), sym_.end(), kErased));
}

bool TernaryString::contradicts(const BitVec& source) const {
    if (source.size() != sym_.size()) throw std::invalid_argument("length mismatch");
    for (std::size_t i = 0; i < sym_.size(); ++i)
        if (sym_[i] != kErased && sym_[i] != (source[i] & 1)) return true;
    return false;
}

Rational TernaryString::distortion_vs(const BitVec& source) const {
    if (contradicts(source))
        throw std::logic_error("reconstruction contradicts the source (infinite distortion)");
    return Rational(static_cast<long long>(erasure_count()),
                    static_cast<long long>(sym_.size()));
}

namespace {

long long llcm(long long a, long long b) { return a / std::gcd(a, b) * b; }

int min_degree_for(int n) {
    int m = 1;
    while ((1 << m) - 1 < n) ++m;
    return m;
}

}  // namespace

MdParams derive_params(int n, int k, const Rational& d_k, int alpha) {
    if (n < 1 || n > 255) throw std::invalid_argument("n must be in 1..255");
    if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    if (d_k < Rational(0) || d_k > Rational(1))
        throw std::invalid_argument("d_k must lie in [0, 1]");
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");

    MdParams p;
    p.n = n;
    p.k = k;
    p.d_k = d_k;
    p.alpha = alpha;
    p.rate = (Rational(1) - d_k) / k;

    const Rational threshold = Rational(1) - Rational(k, n);
    if (d_k >= threshold) {
        p.regime = Regime::uncoded;
        p.m = 0;
        p.base_l = llcm(n, p.rate.denominator());
        p.base_part = p.base_l / n;
        p.base_erased = 0;
        p.l = p.base_l * alpha;
        p.part_len = p.base_part * alpha;
        p.erased_per_part = 0;
        p.payload_bits = (Rational(p.l) * p.rate).numerator();
        return p;
    }

    p.regime = Regime::mds;
    const Rational denom = Rational(n) * (Rational(1) - d_k) - Rational(k);  // > 0 here
    for (int m = min_degree_for(n); m <= 16; ++m) {
        const Rational base_l = Rational(static_cast<long long>(m) * n * k * (n - k)) / denom;
        if (!is_integer(base_l)) continue;
        const Rational erased = base_l * d_k / (n - k);
        if (!is_integer(erased)) continue;
        p.m = m;
        p.base_l = base_l.numerator();
        p.base_part = p.base_l / n;
        p.base_erased = erased.numerator();
        p.l = p.base_l * alpha;
        p.part_len = p.base_part * alpha;
        p.erased_per_part = p.base_erased * alpha;
        p.payload_bits = (Rational(p.l) * p.rate).numerator();
        return p;
    }
    throw InfeasibleParams("no field degree m <= 16 makes the blocklength integral for n=" +
                           std::to_string(n) + " k=" + std::to_string(k) + " d_k=" +
                           to_string(d_k));
}

namespace {

void check_generator_set(const MdParams& p, const GeneratorSet* gs) {
    if (gs == nullptr) throw std::invalid_argument("mds regime requires a generator set");
    if (gs->n != p.n || gs->k != p.k || gs->field.degree() != p.m)
        throw std::invalid_argument("generator set does not match the parameters");
}

}  // namespace

std::vector<Description> encode(const MdParams& p, const BitVec& source,
                                const GeneratorSet* gs) {
    if (static_cast<std::int64_t>(source.size()) != p.l)
        throw std::invalid_argument("source length must be l = " + std::to_string(p.l));

    std::vector<Description> out(static_cast<std::size_t>(p.n));
    for (int i = 0; i < p.n; ++i) out[i].index = i + 1;

    if (p.regime == Regime::uncoded) {
        // One contiguous division of the full source into n parts; channel i
        // carries the first l*R bits of part i.
        for (int i = 0; i < p.n; ++i) {
            const std::int64_t start = static_cast<std::int64_t>(i) * p.part_len;
            out[i].uncoded_bits.assign(source.begin() + start,
                                       source.begin() + start + p.payload_bits);
        }
        return out;
    }

    check_generator_set(p, gs);
    const int mk = p.m * p.k;
    std::vector<std::uint16_t> msg(static_cast<std::size_t>(p.k));
    for (int b = 0; b < p.alpha; ++b) {
        const std::int64_t block = static_cast<std::int64_t>(b) * p.base_l;
        // Parity first so each description's symbols are grouped
        // (y_{1,i}, ..., y_{n,i}) per block.
        for (int j = 0; j < p.n; ++j) {
            const std::int64_t part = block + static_cast<std::int64_t>(j) * p.base_part;
            for (int t = 0; t < p.k; ++t)
                msg[t] = bits_to_symbol(
                    std::span(source.data() + part + static_cast<std::int64_t>(t) * p.m,
                              static_cast<std::size_t>(p.m)));
            const auto y = encode_message(msg, gs->g[j], gs->field);
            for (int i = 0; i < p.n; ++i) out[i].parity_symbols.push_back(y[i]);
        }
        for (int i = 0; i < p.n; ++i) {
            const std::int64_t tail =
                block + static_cast<std::int64_t>(i) * p.base_part + mk;
            out[i].uncoded_bits.insert(out[i].uncoded_bits.end(), source.begin() + tail,
                                       source.begin() + tail + p.base_erased);
        }
    }
    return out;
}

namespace {

void check_received(const MdParams& p, const std::vector<Description>& received) {
    if (received.empty()) throw std::invalid_argument("no descriptions received");
    std::set<int> seen;
    for (const auto& d : received) {
        if (d.index < 1 || d.index > p.n)
            throw std::invalid_argument("description index out of range");
        if (!seen.insert(d.index).second)
            throw std::invalid_argument("duplicate description index " +
                                        std::to_string(d.index));
        const std::size_t want_unc =
            p.regime == Regime::mds ? static_cast<std::size_t>(p.erased_per_part)
                                    : static_cast<std::size_t>(p.payload_bits);
        const std::size_t want_par =
            p.regime == Regime::mds ? static_cast<std::size_t>(p.alpha) * p.n : 0;
        if (d.uncoded_bits.size() != want_unc || d.parity_symbols.size() != want_par)
            throw std::invalid_argument("description " + std::to_string(d.index) +
                                        " has inconsistent lengths");
    }
}

}  // namespace

TernaryString decode(const MdParams& p, const std::vector<Description>& received,
                     const GeneratorSet* gs) {
    check_received(p, received);
    TernaryString out(static_cast<std::size_t>(p.l));

    if (p.regime == Regime::uncoded) {
        for (const auto& d : received) {
            const std::int64_t start = static_cast<std::int64_t>(d.index - 1) * p.part_len;
            for (std::int64_t t = 0; t < p.payload_bits; ++t)
                out.reveal(static_cast<std::size_t>(start + t),
                           d.uncoded_bits[static_cast<std::size_t>(t)]);
        }
        return out;
    }

    check_generator_set(p, gs);
    const int c = static_cast<int>(received.size());
    const int mk = p.m * p.k;

    // Received uncoded tails reveal the last base_erased bits of their part.
    for (const auto& d : received) {
        for (int b = 0; b < p.alpha; ++b) {
            const std::int64_t tail = static_cast<std::int64_t>(b) * p.base_l +
                                      static_cast<std::int64_t>(d.index - 1) * p.base_part + mk;
            for (std::int64_t t = 0; t < p.base_erased; ++t)
                out.reveal(static_cast<std::size_t>(tail + t),
                           d.uncoded_bits[static_cast<std::size_t>(b) * p.base_erased + t]);
        }
    }

    BitVec sym_bits;
    sym_bits.reserve(static_cast<std::size_t>(p.m));
    if (c >= p.k) {
        // Erasure-decode every message from the received coordinates and
        // reveal the full erased version.
        std::vector<std::pair<int, std::uint16_t>> rx;
        for (int b = 0; b < p.alpha; ++b) {
            for (int j = 0; j < p.n; ++j) {
                rx.clear();
                for (const auto& d : received)
                    rx.emplace_back(d.index - 1,
                                    d.parity_symbols[static_cast<std::size_t>(b) * p.n + j]);
                const auto msg = erasure_decode(rx, gs->g[j], gs->field);
                const std::int64_t part = static_cast<std::int64_t>(b) * p.base_l +
                                          static_cast<std::int64_t>(j) * p.base_part;
                for (int t = 0; t < p.k; ++t) {
                    sym_bits.clear();
                    symbol_to_bits(msg[t], p.m, sym_bits);
                    for (int u = 0; u < p.m; ++u)
                        out.reveal(static_cast<std::size_t>(part + t * p.m + u), sym_bits[u]);
                }
            }
        }
        return out;
    }

    // Below k receptions each coordinate i carries the systematic symbols of
    // the k generators whose identity block covers column i - 1; symbol t of
    // message j is exposed when (i - j) mod n == t for t in [0, k).
    for (const auto& d : received) {
        for (int b = 0; b < p.alpha; ++b) {
            for (int t = 0; t < p.k; ++t) {
                const int j = ((d.index - 1 - t) % p.n + p.n) % p.n;  // 0-based message id
                const std::uint16_t sym =
                    d.parity_symbols[static_cast<std::size_t>(b) * p.n + j];
                const std::int64_t part = static_cast<std::int64_t>(b) * p.base_l +
                                          static_cast<std::int64_t>(j) * p.base_part;
                sym_bits.clear();
                symbol_to_bits(sym, p.m, sym_bits);
                for (int u = 0; u < p.m; ++u)
                    out.reveal(static_cast<std::size_t>(part + t * p.m + u), sym_bits[u]);
            }
        }
    }
    return out;
}

std::vector<std::int64_t> revealed_positions(const MdParams& p, int index) {
    if (index < 1 || index > p.n) throw std::out_of_range("index out of range");
    std::vector<std::int64_t> pos;
    if (p.regime == Regime::uncoded) {
        const std::int64_t start = static_cast<std::int64_t>(index - 1) * p.part_len;
        for (std::int64_t t = 0; t < p.payload_bits; ++t) pos.push_back(start + t);
        return pos;
    }
    const int mk = p.m * p.k;
    for (int b = 0; b < p.alpha; ++b) {
        const std::int64_t block = static_cast<std::int64_t>(b) * p.base_l;
        const std::int64_t tail = block + static_cast<std::int64_t>(index - 1) * p.base_part + mk;
        for (std::int64_t t = 0; t < p.base_erased; ++t) pos.push_back(tail + t);
        for (int t = 0; t < p.k; ++t) {
            const int j = ((index - 1 - t) % p.n + p.n) % p.n;
            const std::int64_t part = block + static_cast<std::int64_t>(j) * p.base_part;
            for (int u = 0; u < p.m; ++u) pos.push_back(part + t * p.m + u);
        }
    }
    return pos;
}

Rational closed_form_distortion(const MdParams& p, int c) {
    if (c < 0 || c > p.n) throw std::out_of_range("subset size out of range");
    if (c == 0) return Rational(1);
    if (p.regime == Regime::uncoded) return Rational(1) - Rational(c) * p.rate;
    if (c < p.k) return Rational(1) - Rational(c, p.n);
    return Rational(p.n - c, p.n - p.k) * p.d_k;
}

Rational subset_distortion(const MdParams& p, const GeneratorSet* gs,
                           const std::vector<int>& subset, const BitVec& source) {
    if (subset.empty()) return Rational(1);
    auto all = encode(p, source, gs);
    std::vector<Description> rx;
    rx.reserve(subset.size());
    for (const int i : subset) rx.push_back(all.at(static_cast<std::size_t>(i) - 1));
    return decode(p, rx, gs).distortion_vs(source);
}

Rational worst_case_distortion(const MdParams& p, int subset_size, int trials,
                               std::uint64_t seed) {
    if (subset_size < 1 || subset_size > p.n)
        throw std::out_of_range("subset size out of range");
    GeneratorSet* gs_ptr = nullptr;
    std::unique_ptr<GeneratorSet> gs;
    if (p.regime == Regime::mds) {
        gs = std::make_unique<GeneratorSet>(p.n, p.k, Field(p.m));
        gs_ptr = gs.get();
    }

    std::vector<BitVec> sources;
    sources.emplace_back(static_cast<std::size_t>(p.l), 0);
    sources.emplace_back(static_cast<std::size_t>(p.l), 1);
    Rng rng(seed);
    for (int t = 0; t < trials; ++t)
        sources.push_back(rng.fork(static_cast<std::uint64_t>(t)).bits(
            static_cast<std::size_t>(p.l)));

    Rational worst(0);
    std::vector<int> subset(static_cast<std::size_t>(subset_size));
    std::vector<bool> mask(static_cast<std::size_t>(p.n), false);
    std::fill(mask.begin(), mask.begin() + subset_size, true);
    do {
        subset.clear();
        for (int i = 0; i < p.n; ++i)
            if (mask[static_cast<std::size_t>(i)]) subset.push_back(i + 1);
        for (const auto& src : sources)
            worst = std::max(worst, subset_distortion(p, gs_ptr, subset, src));
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return worst;
}

}  // namespace emd
