#pragma once

#include <cstdint>

namespace emd {

/// Layered Gaussian transport: quantize a Gaussian source, carry the bits
/// with the zero-distortion erasure codec, reconstruct revealed samples by
/// quantizer midpoint and unrevealed ones by the prior mean 0.
struct GaussParams {
    int n = 0;
    int k = 0;                // codec subset size (k = n selects the uncoded split)
    double sigma2 = 1.0;
    int bits_per_sample = 0;  // quantizer rate b; equals the codec field degree
    long samples = 0;         // rounded up so parts hold whole samples
    std::uint64_t seed = 0;
};

/// Scalar rate-distortion function of the Gaussian source:
/// (1/2) log2(sigma2 / d). Requires 0 < d <= sigma2.
double scalar_rd_rate(double d, double sigma2);

struct LayeredResult {
    double d_q = 0.0;        // measured quantizer distortion (all bits received)
    double mse = 0.0;        // measured MSE at m receptions
    double predicted = 0.0;  // (m*D_q + (n-m)*sigma2)/n for m < k, else D_q
    long samples = 0;
};

/// Runs the pipeline for a fixed reception subset {1..m}. `trials`
/// independent batches of p.samples samples are pooled. Throws on
/// alignment or parameter violations.
LayeredResult layered_roundtrip(const GaussParams& p, int m_received, int trials = 1);

/// Two-level converse: with no excess rate at the central receiver and
/// central distortion d_n, any scheme has
/// D_k >= (k/n) d_n + ((n-k)/n) sigma2.
double two_level_lower_bound(int n, int k, double d_n, double sigma2);

/// Symmetric sum rate over n descriptions for the two-level scalar
/// Gaussian problem: numeric supremum over lambda > 0 of
/// (1/2) log2( sigma2 (sigma2+lambda)^((n-k)/k) (d_n+lambda)
///             / (d_n (d_k+lambda)^(n/k)) ),
/// including the analytic lambda -> infinity limit (1/2) log2(sigma2/d_n).
/// Requires 0 < d_n <= d_k <= sigma2.
double two_level_sum_rate_scalar(int n, int k, double d_k, double d_n, double sigma2);

}  // namespace emd
