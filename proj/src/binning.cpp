#include "emd/binning.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "emd/rng.hpp"

namespace emd {

namespace {

constexpr int kMaxFreeBits = 24;  // brute-force decoder stays honest and bounded

std::uint64_t choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

void set_bits(std::vector<std::uint64_t>& words, std::int64_t start, int width,
              std::uint64_t value) {
    for (int b = 0; b < width; ++b) {
        const std::int64_t pos = start + b;
        const std::uint64_t bit = (value >> b) & 1;
        if (bit)
            words[static_cast<std::size_t>(pos >> 6)] |= 1ULL << (pos & 63);
        else
            words[static_cast<std::size_t>(pos >> 6)] &= ~(1ULL << (pos & 63));
    }
}

std::uint64_t get_bits(const std::vector<std::uint64_t>& words, std::int64_t start,
                       int width) {
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b) {
        const std::int64_t pos = start + b;
        v |= ((words[static_cast<std::size_t>(pos >> 6)] >> (pos & 63)) & 1) << b;
    }
    return v;
}

}  // namespace

BinningConfig make_binning_config(int n, int k, const Rational& d_k,
                                  const Rational& epsilon, std::int64_t l,
                                  std::uint64_t seed) {
    if (n < 2 || k < 1 || k >= n) throw std::invalid_argument("need 1 <= k < n");
    if (d_k < Rational(0) || d_k >= Rational(1) - Rational(k, n))
        throw std::invalid_argument("binning requires 0 <= d_k < 1 - k/n");
    if (epsilon < Rational(0)) throw std::invalid_argument("epsilon must be >= 0");
    if (l < 1 || l % n != 0) throw std::invalid_argument("blocklength must be a multiple of n");

    BinningConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.d_k = d_k;
    cfg.epsilon = epsilon;
    cfg.l = l;
    cfg.seed = seed;
    cfg.part_len = l / n;

    const Rational erased = Rational(l) * d_k / (n - k);
    if (!is_integer(erased))
        throw std::invalid_argument("l * d_k / (n - k) must be an integer");
    cfg.erased_per_part = erased.numerator();
    if (cfg.erased_per_part > cfg.part_len)
        throw std::invalid_argument("erased bits exceed the part length");
    cfg.known_per_part = cfg.part_len - cfg.erased_per_part;

    cfg.r_prime = (Rational(1) - d_k) / k - Rational(1, n) + epsilon;
    const Rational width = Rational(l) * cfg.r_prime;
    if (!is_integer(width) || width < Rational(0))
        throw std::invalid_argument("l * r_prime must be a nonnegative integer");
    if (width.numerator() > 63)
        throw std::invalid_argument("bin index width exceeds 63 bits");
    cfg.bin_bits = static_cast<int>(width.numerator());
    cfg.bins = 1ULL << cfg.bin_bits;
    return cfg;
}

std::vector<std::uint64_t> pack_erased_version(const BinningConfig& cfg,
                                               const BitVec& source) {
    if (static_cast<std::int64_t>(source.size()) != cfg.l)
        throw std::invalid_argument("source length must be l");
    const std::int64_t total = static_cast<std::int64_t>(cfg.n) * cfg.known_per_part;
    std::vector<std::uint64_t> words(static_cast<std::size_t>((total + 63) / 64), 0);
    std::int64_t out = 0;
    for (int j = 0; j < cfg.n; ++j) {
        const std::int64_t part = static_cast<std::int64_t>(j) * cfg.part_len;
        for (std::int64_t t = 0; t < cfg.known_per_part; ++t, ++out)
            if (source[static_cast<std::size_t>(part + t)])
                words[static_cast<std::size_t>(out >> 6)] |= 1ULL << (out & 63);
    }
    return words;
}

std::uint64_t bin_of(const BinningConfig& cfg, const std::vector<std::uint64_t>& packed,
                     int encoder_index) {
    std::uint64_t h = cfg.seed;
    for (const auto w : packed) h = mix64(h ^ w);
    h = mix64(h ^ static_cast<std::uint64_t>(encoder_index) * 0x9e3779b97f4a7c15ULL);
    return h & (cfg.bins - 1);
}

std::vector<BinMessage> encode_bin(const BinningConfig& cfg, const BitVec& source) {
    const auto packed = pack_erased_version(cfg, source);
    std::vector<BinMessage> out(static_cast<std::size_t>(cfg.n));
    for (int i = 0; i < cfg.n; ++i) {
        auto& msg = out[static_cast<std::size_t>(i)];
        msg.index = i + 1;
        const std::int64_t part = static_cast<std::int64_t>(i) * cfg.part_len;
        msg.part_bits.assign(source.begin() + part, source.begin() + part + cfg.part_len);
        msg.bin_index = bin_of(cfg, packed, i + 1);
    }
    return out;
}

TernaryString decode_bin(const BinningConfig& cfg,
                         const std::vector<BinMessage>& received) {
    if (received.empty()) throw std::invalid_argument("no messages received");
    std::set<int> seen;
    for (const auto& msg : received) {
        if (msg.index < 1 || msg.index > cfg.n)
            throw std::invalid_argument("message index out of range");
        if (!seen.insert(msg.index).second)
            throw std::invalid_argument("duplicate message index");
        if (static_cast<std::int64_t>(msg.part_bits.size()) != cfg.part_len)
            throw std::invalid_argument("message part has the wrong length");
    }

    TernaryString out(static_cast<std::size_t>(cfg.l));
    for (const auto& msg : received) {
        const std::int64_t part = static_cast<std::int64_t>(msg.index - 1) * cfg.part_len;
        for (std::int64_t t = 0; t < cfg.part_len; ++t)
            out.reveal(static_cast<std::size_t>(part + t), msg.part_bits[static_cast<std::size_t>(t)]);
    }
    const int m = static_cast<int>(received.size());
    if (m < cfg.k) return out;

    std::vector<const BinMessage*> sorted;
    for (const auto& msg : received) sorted.push_back(&msg);
    std::sort(sorted.begin(), sorted.end(),
              [](const BinMessage* a, const BinMessage* b) { return a->index < b->index; });

    std::set<int> chosen;  // the k lowest indices anchor the candidate set
    for (int i = 0; i < cfg.k; ++i) chosen.insert(sorted[static_cast<std::size_t>(i)]->index);

    std::vector<int> free_parts;  // 0-based parts outside the chosen set
    for (int j = 0; j < cfg.n; ++j)
        if (!chosen.count(j + 1)) free_parts.push_back(j);
    const std::int64_t free_bits =
        static_cast<std::int64_t>(free_parts.size()) * cfg.known_per_part;
    if (free_bits > kMaxFreeBits)
        throw std::invalid_argument(
            "candidate space of 2^" + std::to_string(free_bits) +
            " erased versions is too large for desk scale (cap 24 bits)");

    // Template: known bits of the chosen parts; free segments zeroed.
    const std::int64_t total = static_cast<std::int64_t>(cfg.n) * cfg.known_per_part;
    std::vector<std::uint64_t> tmpl(static_cast<std::size_t>((total + 63) / 64), 0);
    for (const auto* msg : sorted) {
        if (!chosen.count(msg->index)) continue;
        const std::int64_t start =
            static_cast<std::int64_t>(msg->index - 1) * cfg.known_per_part;
        for (std::int64_t t = 0; t < cfg.known_per_part; ++t)
            if (msg->part_bits[static_cast<std::size_t>(t)])
                tmpl[static_cast<std::size_t>((start + t) >> 6)] |= 1ULL << ((start + t) & 63);
    }

    // Known segments of received-but-not-chosen parts: survivors must agree.
    std::vector<std::pair<int, std::uint64_t>> extra;  // (slot in free_parts, segment)
    for (const auto* msg : sorted) {
        if (chosen.count(msg->index)) continue;
        std::uint64_t seg = 0;
        for (std::int64_t t = 0; t < cfg.known_per_part; ++t)
            seg |= static_cast<std::uint64_t>(msg->part_bits[static_cast<std::size_t>(t)] & 1)
                   << t;
        const auto slot = std::find(free_parts.begin(), free_parts.end(), msg->index - 1) -
                          free_parts.begin();
        extra.emplace_back(static_cast<int>(slot), seg);
    }

    const int kpp = static_cast<int>(cfg.known_per_part);
    std::vector<std::uint64_t> cand(tmpl.size());
    std::uint64_t survivors = 0;
    std::vector<std::uint64_t> winner;
    const std::uint64_t seg_mask = kpp >= 64 ? ~0ULL : (1ULL << kpp) - 1;
    for (std::uint64_t x = 0; x < (1ULL << free_bits); ++x) {
        bool consistent = true;
        for (const auto& [slot, seg] : extra)
            if (((x >> (slot * kpp)) & seg_mask) != seg) { consistent = false; break; }
        if (!consistent) continue;
        cand = tmpl;
        for (std::size_t s = 0; s < free_parts.size(); ++s)
            set_bits(cand, static_cast<std::int64_t>(free_parts[s]) * kpp, kpp,
                     (x >> (s * kpp)) & seg_mask);
        bool match = true;
        for (const auto* msg : sorted)
            if (bin_of(cfg, cand, msg->index) != msg->bin_index) { match = false; break; }
        if (!match) continue;
        if (++survivors == 1) winner = cand;
        if (survivors > 1) break;
    }

    if (survivors != 1) return TernaryString(static_cast<std::size_t>(cfg.l));

    for (int j = 0; j < cfg.n; ++j) {
        const std::int64_t part = static_cast<std::int64_t>(j) * cfg.part_len;
        const std::uint64_t seg =
            get_bits(winner, static_cast<std::int64_t>(j) * kpp, kpp);
        for (int t = 0; t < kpp; ++t)
            out.reveal(static_cast<std::size_t>(part + t),
                       static_cast<std::uint8_t>((seg >> t) & 1));
    }
    return out;
}

ErrorEstimate estimate_error_prob(const BinningConfig& cfg, std::int64_t trials,
                                  std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const std::int64_t free_bits =
        static_cast<std::int64_t>(cfg.n - cfg.k) * cfg.known_per_part;
    if (free_bits > kMaxFreeBits)
        throw std::invalid_argument(
            "candidate space of 2^" + std::to_string(free_bits) +
            " erased versions is too large for desk scale (cap 24 bits)");

    // Precompute the size-k subsets once.
    std::vector<std::vector<int>> subsets;  // 1-based indices
    {
        std::vector<bool> mask(static_cast<std::size_t>(cfg.n), false);
        std::fill(mask.begin(), mask.begin() + cfg.k, true);
        do {
            std::vector<int> s;
            for (int i = 0; i < cfg.n; ++i)
                if (mask[static_cast<std::size_t>(i)]) s.push_back(i + 1);
            subsets.push_back(std::move(s));
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }

    const int kpp = static_cast<int>(cfg.known_per_part);
    const std::uint64_t seg_mask = kpp >= 64 ? ~0ULL : (1ULL << kpp) - 1;
    const std::int64_t total = static_cast<std::int64_t>(cfg.n) * cfg.known_per_part;
    std::vector<std::uint64_t> tmpl(static_cast<std::size_t>((total + 63) / 64));
    std::vector<std::uint64_t> cand(tmpl.size());

    Rng master(seed);
    std::int64_t errors = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        const BitVec source = master.fork(static_cast<std::uint64_t>(trial))
                                  .bits(static_cast<std::size_t>(cfg.l));
        const auto packed = pack_erased_version(cfg, source);
        std::vector<std::uint64_t> true_bins(static_cast<std::size_t>(cfg.n));
        for (int i = 0; i < cfg.n; ++i)
            true_bins[static_cast<std::size_t>(i)] = bin_of(cfg, packed, i + 1);

        bool any_error = false;
        for (const auto& subset : subsets) {
            std::vector<int> free_parts;
            for (int j = 0; j < cfg.n; ++j)
                if (std::find(subset.begin(), subset.end(), j + 1) == subset.end())
                    free_parts.push_back(j);

            tmpl = packed;
            std::uint64_t x_true = 0;
            for (std::size_t s = 0; s < free_parts.size(); ++s) {
                const std::int64_t start =
                    static_cast<std::int64_t>(free_parts[s]) * kpp;
                x_true |= get_bits(packed, start, kpp) << (s * kpp);
                set_bits(tmpl, start, kpp, 0);
            }

            bool collided = false;
            if (tmpl.size() == 1) {
                // Single-word fast path: scatter the free segments with
                // shifts and share the word hash across receivers.
                const std::uint64_t base = tmpl[0];
                const std::uint64_t mask = cfg.bins - 1;
                for (std::uint64_t x = 0; x < (1ULL << free_bits) && !collided; ++x) {
                    if (x == x_true) continue;
                    std::uint64_t w = base;
                    for (std::size_t s = 0; s < free_parts.size(); ++s)
                        w |= ((x >> (s * kpp)) & seg_mask)
                             << (static_cast<std::uint64_t>(free_parts[s]) * kpp);
                    const std::uint64_t h0 = mix64(cfg.seed ^ w);
                    bool match = true;
                    for (const int idx : subset) {
                        const std::uint64_t b =
                            mix64(h0 ^ static_cast<std::uint64_t>(idx) *
                                           0x9e3779b97f4a7c15ULL) &
                            mask;
                        if (b != true_bins[static_cast<std::size_t>(idx - 1)]) {
                            match = false;
                            break;
                        }
                    }
                    collided = match;
                }
            } else {
                for (std::uint64_t x = 0; x < (1ULL << free_bits) && !collided; ++x) {
                    if (x == x_true) continue;
                    cand = tmpl;
                    for (std::size_t s = 0; s < free_parts.size(); ++s)
                        set_bits(cand, static_cast<std::int64_t>(free_parts[s]) * kpp, kpp,
                                 (x >> (s * kpp)) & seg_mask);
                    bool match = true;
                    for (const int idx : subset)
                        if (bin_of(cfg, cand, idx) !=
                            true_bins[static_cast<std::size_t>(idx - 1)]) {
                            match = false;
                            break;
                        }
                    collided = match;
                }
            }
            if (collided) { any_error = true; break; }
        }
        if (any_error) ++errors;
    }

    ErrorEstimate est;
    est.trials = trials;
    est.errors = errors;
    est.p_hat = static_cast<double>(errors) / static_cast<double>(trials);
    est.half_width = 3.0 * std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                                     static_cast<double>(trials));
    const Rational exponent = Rational(cfg.l) * cfg.k * cfg.epsilon;
    est.analytic_bound = static_cast<double>(choose(cfg.n, cfg.k)) *
                         std::pow(2.0, -to_double(exponent));
    return est;
}

}  // namespace emd
