#include "emd/gaussmd.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "emd/emdcodec.hpp"
#include "emd/rng.hpp"

namespace emd {

double scalar_rd_rate(double d, double sigma2) {
    if (!(d > 0.0) || d > sigma2)
        throw std::domain_error("scalar_rd_rate requires 0 < d <= sigma2");
    return 0.5 * std::log2(sigma2 / d);
}

double two_level_lower_bound(int n, int k, double d_n, double sigma2) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    if (!(d_n > 0.0) || d_n > sigma2)
        throw std::domain_error("requires 0 < d_n <= sigma2");
    return (static_cast<double>(k) / n) * d_n +
           (static_cast<double>(n - k) / n) * sigma2;
}

namespace {

double sum_rate_at(int n, int k, double d_k, double d_n, double sigma2, double lambda) {
    const double nk = static_cast<double>(n - k) / k;
    const double nn = static_cast<double>(n) / k;
    return 0.5 * (std::log2(sigma2) + nk * std::log2(sigma2 + lambda) +
                  std::log2(d_n + lambda) - std::log2(d_n) -
                  nn * std::log2(d_k + lambda));
}

}  // namespace

double two_level_sum_rate_scalar(int n, int k, double d_k, double d_n, double sigma2) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    if (!(d_n > 0.0) || d_n > d_k || d_k > sigma2)
        throw std::domain_error("requires 0 < d_n <= d_k <= sigma2");

    // Coarse log-spaced scan, then golden section around the best bracket.
    const double lt_lo = std::log(1e-9);
    const double lt_hi = std::log(1e12);
    const int grid = 400;
    double best_t = lt_lo;
    double best = -1e300;
    for (int i = 0; i <= grid; ++i) {
        const double t = lt_lo + (lt_hi - lt_lo) * i / grid;
        const double v = sum_rate_at(n, k, d_k, d_n, sigma2, std::exp(t));
        if (v > best) { best = v; best_t = t; }
    }
    double a = best_t - (lt_hi - lt_lo) / grid;
    double b = best_t + (lt_hi - lt_lo) / grid;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = sum_rate_at(n, k, d_k, d_n, sigma2, std::exp(c));
    double fd = sum_rate_at(n, k, d_k, d_n, sigma2, std::exp(d));
    while (b - a > 1e-12) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = sum_rate_at(n, k, d_k, d_n, sigma2, std::exp(c));
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = sum_rate_at(n, k, d_k, d_n, sigma2, std::exp(d));
        }
    }
    const double interior = sum_rate_at(n, k, d_k, d_n, sigma2, std::exp((a + b) / 2));
    const double at_infinity = 0.5 * std::log2(sigma2 / d_n);
    return std::max(interior, at_infinity);
}

LayeredResult layered_roundtrip(const GaussParams& p, int m_received, int trials) {
    if (p.n < 1 || p.k < 1 || p.k > p.n) throw std::invalid_argument("need 1 <= k <= n");
    if (m_received < 1 || m_received > p.n)
        throw std::invalid_argument("receptions must lie in 1..n");
    if (p.bits_per_sample < 1 || p.bits_per_sample > 16)
        throw std::invalid_argument("bits_per_sample must lie in 1..16");
    if (!(p.sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
    if (p.samples < 1 || trials < 1) throw std::invalid_argument("need samples, trials >= 1");

    const int b = p.bits_per_sample;

    // Codec configuration with d_k = 0; alpha aligns parts with whole
    // samples. k = n sits in the uncoded regime with 1-bit base parts, so
    // alpha must absorb the b-bit sample width.
    MdParams mp;
    if (p.k == p.n) {
        const long t = (p.samples + p.n - 1) / p.n;
        mp = derive_params(p.n, p.k, Rational(0), static_cast<int>(t) * b);
    } else {
        if ((1 << b) - 1 < p.n)
            throw std::invalid_argument(
                "bits_per_sample too small: need 2^b - 1 >= n for the sample-aligned field");
        const int samples_per_block = p.n * p.k;
        const long blocks = (p.samples + samples_per_block - 1) / samples_per_block;
        mp = derive_params(p.n, p.k, Rational(0), static_cast<int>(blocks));
        if (mp.m != b)
            throw std::invalid_argument(
                "alignment violation: bits_per_sample must equal the codec field degree " +
                std::to_string(mp.m));
    }
    const long total_samples = mp.l / b;
    if (mp.l % b != 0 || mp.part_len % b != 0)
        throw std::logic_error("blocklength is not sample aligned");

    std::unique_ptr<GeneratorSet> gs;
    if (mp.regime == Regime::mds)
        gs = std::make_unique<GeneratorSet>(mp.n, mp.k, Field(mp.m));

    std::vector<int> subset(static_cast<std::size_t>(m_received));
    for (int i = 0; i < m_received; ++i) subset[static_cast<std::size_t>(i)] = i + 1;

    const int levels = 1 << b;
    const double sigma = std::sqrt(p.sigma2);
    const double lo = -4.0 * sigma;
    const double step = 8.0 * sigma / levels;

    double sq_err_full = 0.0;  // quantizer error over everything
    double sq_err_rx = 0.0;    // reconstruction error at m receptions
    long count = 0;

    Rng master(p.seed);
    std::vector<double> xs(static_cast<std::size_t>(total_samples));
    BitVec bits(static_cast<std::size_t>(mp.l));
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = master.fork(static_cast<std::uint64_t>(trial));
        for (auto& x : xs) x = sigma * rng.gaussian();
        for (long s = 0; s < total_samples; ++s) {
            int idx = static_cast<int>(std::floor((xs[static_cast<std::size_t>(s)] - lo) / step));
            idx = std::max(0, std::min(levels - 1, idx));
            for (int u = 0; u < b; ++u)
                bits[static_cast<std::size_t>(s * b + u)] =
                    static_cast<std::uint8_t>((idx >> (b - 1 - u)) & 1);
        }

        auto descriptions = encode(mp, bits, gs.get());
        std::vector<Description> rx;
        for (const int i : subset) rx.push_back(descriptions[static_cast<std::size_t>(i - 1)]);
        const TernaryString rec = decode(mp, rx, gs.get());

        for (long s = 0; s < total_samples; ++s) {
            const double x = xs[static_cast<std::size_t>(s)];
            int idx = 0;
            bool revealed = true;
            for (int u = 0; u < b; ++u) {
                const auto sym = rec.at(static_cast<std::size_t>(s * b + u));
                if (sym == TernaryString::kErased) { revealed = false; break; }
                idx = (idx << 1) | sym;
            }
            int qidx = static_cast<int>(std::floor((x - lo) / step));
            qidx = std::max(0, std::min(levels - 1, qidx));
            const double mid = lo + (qidx + 0.5) * step;
            sq_err_full += (x - mid) * (x - mid);
            const double rec_x = revealed ? lo + (idx + 0.5) * step : 0.0;
            sq_err_rx += (x - rec_x) * (x - rec_x);
            ++count;
        }
    }

    LayeredResult res;
    res.samples = count;
    res.d_q = sq_err_full / static_cast<double>(count);
    res.mse = sq_err_rx / static_cast<double>(count);
    res.predicted = m_received < p.k
                        ? (m_received * res.d_q + (p.n - m_received) * p.sigma2) / p.n
                        : res.d_q;
    return res;
}

}  // namespace emd
