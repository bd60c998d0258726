#pragma once

#include <cstdint>

namespace emd {

/// Decentralized-encoder setting: each of n encoders sees an independently
/// erased copy of the source (erasure probability p) and the decoder
/// reconstructs from message subsets. The simulator models the per-bit
/// reveal mechanism: each message independently reveals each source bit
/// with probability 1 - q_reveal.
struct CeoParams {
    int n = 0;
    int k = 0;
    double p = 0.0;         // observation erasure probability, in (0, 1)
    double q_reveal = 0.0;  // per-message per-bit miss probability, in [0, 1]
    long trials = 0;
    std::uint64_t seed = 0;
};

/// g(x) = h(x) - (1-p) h((x-p)/(1-p)) for p <= x <= 1, and 0 for x > 1
/// (h is the base-2 binary entropy). Requires x >= p and 0 < p < 1.
double g_func(double x, double p);

/// Binary entropy in bits, h(0) = h(1) = 0.
double binary_entropy(double x);

/// Symmetric per-message rate (1 - d_k)/k + g(d_k^(1/k)). Requires
/// d_k >= p^k, the distortion floor of the erased observations.
double ceo_rate(int k, double d_k, double p);

/// Distortion floor at ell >= k receptions for any scheme meeting d_k:
/// d_k^(ell/k). Throws std::domain_error for ell < k.
double tradeoff_bound(double d_k, int k, int ell);

struct RevealResult {
    double measured = 0.0;
    double sigma = 0.0;  // binomial standard deviation at the measured value
    long trials = 0;
};

/// Monte Carlo estimate of the miss probability of ell messages; matches
/// q_reveal^ell, and with q_reveal = d_k^(1/k) meets tradeoff_bound with
/// equality. Trials shard deterministically by index.
RevealResult simulate_reveal_scheme(const CeoParams& cp, int ell);

}  // namespace emd
