#pragma once

#include <cstdint>
#include <vector>

#include "emd/bits.hpp"
#include "emd/emdcodec.hpp"
#include "emd/rational.hpp"

namespace emd {

/// Desk-scale random binning configuration. Bin assignment is a seeded
/// keyed hash of (erased version, encoder index) reduced mod 2^bin_bits:
/// identical erased versions always map to identical bins, and the
/// assignment is uniform in distribution without a table over all 2^l
/// strings.
struct BinningConfig {
    int n = 0;
    int k = 0;
    Rational d_k;          // must satisfy d_k < 1 - k/n
    Rational epsilon;      // rate slack, >= 0
    std::int64_t l = 0;    // blocklength; n | l, l*d_k/(n-k) integral
    Rational r_prime;      // (1 - d_k)/k - 1/n + epsilon
    int bin_bits = 0;      // l * r_prime, an integer in [0, 63]
    std::uint64_t bins = 0;        // 2^bin_bits
    std::uint64_t seed = 0;

    std::int64_t part_len = 0;        // l / n
    std::int64_t erased_per_part = 0; // l * d_k / (n - k)
    std::int64_t known_per_part = 0;  // part_len - erased_per_part
};

/// Validates all integrality invariants. Throws std::invalid_argument.
BinningConfig make_binning_config(int n, int k, const Rational& d_k,
                                  const Rational& epsilon, std::int64_t l,
                                  std::uint64_t seed);

/// Channel i's message: the full i-th source part, uncoded, plus the bin
/// index of the erased version in encoder i's bin set.
struct BinMessage {
    int index = 0;  // 1-based
    BitVec part_bits;
    std::uint64_t bin_index = 0;
    bool operator==(const BinMessage&) const = default;
};

std::vector<BinMessage> encode_bin(const BinningConfig& cfg, const BitVec& source);

/// Bin index of an erased version (canonically packed known bits) for one
/// encoder. Exposed for the error estimator.
std::uint64_t bin_of(const BinningConfig& cfg, const std::vector<std::uint64_t>& packed,
                     int encoder_index);

/// Packs the known (non-erased) positions of the erased version of
/// `source`, part by part, into 64-bit words.
std::vector<std::uint64_t> pack_erased_version(const BinningConfig& cfg,
                                               const BitVec& source);

/// With fewer than k messages, reveals only the uncoded parts. With k or
/// more, enumerates every erased version consistent with the k
/// lowest-indexed received parts (2^((n-k) * known_per_part) candidates),
/// keeps those consistent with all received parts and matching all
/// received bin indices, and reveals the unique survivor united with the
/// uncoded parts; any other survivor count yields the all-erasure string.
/// Throws std::invalid_argument when the free bit width exceeds 24.
TernaryString decode_bin(const BinningConfig& cfg,
                         const std::vector<BinMessage>& received);

struct ErrorEstimate {
    double p_hat = 0.0;
    double half_width = 0.0;   // 3-sigma binomial half width
    double analytic_bound = 0.0;  // C(n,k) * 2^(-l*k*epsilon)
    std::int64_t errors = 0;
    std::int64_t trials = 0;
};

/// Fraction of uniform random sources for which ANY size-k reception
/// subset has a non-unique bin survivor. Trials shard deterministically by
/// index.
ErrorEstimate estimate_error_prob(const BinningConfig& cfg, std::int64_t trials,
                                  std::uint64_t seed);

}  // namespace emd
