#include "emd/ceosim.hpp"

#include <cmath>
#include <stdexcept>

#include "emd/rng.hpp"

namespace emd {

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("binary entropy needs x in [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double g_func(double x, double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("g requires 0 < p < 1");
    if (x < p - 1e-12) throw std::domain_error("g requires x >= p");
    if (x > 1.0) return 0.0;
    const double ratio = std::min(1.0, std::max(0.0, (x - p) / (1.0 - p)));
    return binary_entropy(std::min(1.0, std::max(0.0, x))) -
           (1.0 - p) * binary_entropy(ratio);
}

double ceo_rate(int k, double d_k, double p) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (d_k < 0.0 || d_k > 1.0) throw std::domain_error("d_k must lie in [0, 1]");
    const double floor = std::pow(p, k);
    if (d_k < floor - 1e-12)
        throw std::domain_error("infeasible distortion: d_k below the floor p^k");
    return (1.0 - d_k) / k + g_func(std::pow(d_k, 1.0 / k), p);
}

double tradeoff_bound(double d_k, int k, int ell) {
    if (k < 1 || ell < k)
        throw std::domain_error("tradeoff bound covers ell >= k >= 1 only");
    if (d_k < 0.0 || d_k > 1.0) throw std::domain_error("d_k must lie in [0, 1]");
    return std::pow(d_k, static_cast<double>(ell) / k);
}

RevealResult simulate_reveal_scheme(const CeoParams& cp, int ell) {
    if (ell < 1 || ell > cp.n) throw std::invalid_argument("ell must lie in 1..n");
    if (cp.q_reveal < 0.0 || cp.q_reveal > 1.0)
        throw std::invalid_argument("q_reveal must lie in [0, 1]");
    if (cp.trials < 1) throw std::invalid_argument("trials must be >= 1");

    Rng master(cp.seed);
    long missed = 0;
    for (long t = 0; t < cp.trials; ++t) {
        Rng rng = master.fork(static_cast<std::uint64_t>(t));
        bool all_missed = true;
        for (int i = 0; i < ell; ++i)
            if (rng.real() >= cp.q_reveal) { all_missed = false; break; }
        if (all_missed) ++missed;
    }

    RevealResult res;
    res.trials = cp.trials;
    res.measured = static_cast<double>(missed) / static_cast<double>(cp.trials);
    res.sigma = std::sqrt(res.measured * (1.0 - res.measured) /
                          static_cast<double>(cp.trials));
    return res;
}

}  // namespace emd
