#pragma once

#include <cstdint>
#include <vector>

#include "emd/bits.hpp"
#include "emd/mdscode.hpp"
#include "emd/rational.hpp"

namespace emd {

enum class Regime : std::uint8_t { uncoded = 0, mds = 1 };

/// Validated (n, k, D_k) configuration plus all derived blocklength and
/// field parameters. All quantities are exact; see derive_params.
struct MdParams {
    int n = 0;                    // number of descriptions
    int k = 0;                    // no-excess-rate subset size
    Rational d_k;                 // target distortion at k receptions, in [0, 1]
    Regime regime = Regime::uncoded;
    Rational rate;                // R = (1 - d_k) / k, bits per source bit
    int alpha = 1;                // block repetition multiplier
    int m = 0;                    // field degree (0 in the uncoded regime)

    std::int64_t l = 0;            // blocklength in bits (= alpha * base_l)
    std::int64_t part_len = 0;     // l / n
    std::int64_t erased_per_part = 0;  // mds: uncoded tail bits per channel, total
    std::int64_t payload_bits = 0;     // bits per description = l * rate, exact

    // Per-base-block quantities. In the mds regime the stream is alpha
    // independent blocks of base_l bits; the uncoded regime splits the full
    // source contiguously and base_l is just the lcm sizing unit.
    std::int64_t base_l = 0;
    std::int64_t base_part = 0;
    std::int64_t base_erased = 0;
};

/// One channel's payload. In the mds regime a description carries the
/// uncoded tail bits of its part plus one parity symbol from each of the
/// n codewords per block; in the uncoded regime, plain source bits.
struct Description {
    int index = 0;                             // channel id, 1-based
    BitVec uncoded_bits;
    std::vector<std::uint16_t> parity_symbols;  // alpha * n entries (mds), empty otherwise

    std::int64_t bit_size(int field_degree) const {
        return static_cast<std::int64_t>(uncoded_bits.size()) +
               static_cast<std::int64_t>(parity_symbols.size()) * field_degree;
    }
    bool operator==(const Description&) const = default;
};

/// Reconstruction sequence over {0, 1, erased}. Never contradicts the
/// source it was decoded from; distortion is the exact erasure fraction.
class TernaryString {
  public:
    static constexpr std::uint8_t kErased = 2;

    TernaryString() = default;
    explicit TernaryString(std::size_t len) : sym_(len, kErased) {}

    std::size_t size() const { return sym_.size(); }
    std::uint8_t at(std::size_t i) const { return sym_[i]; }
    void reveal(std::size_t i, std::uint8_t bit) { sym_[i] = bit & 1; }
    bool erased(std::size_t i) const { return sym_[i] == kErased; }

    std::size_t erasure_count() const;

    /// True when some non-erased symbol differs from the source bit. Under
    /// the erasure distortion measure that would mean infinite distortion.
    bool contradicts(const BitVec& source) const;

    /// Exact per-letter distortion (erasure fraction). Throws
    /// std::logic_error on contradiction.
    Rational distortion_vs(const BitVec& source) const;

    bool operator==(const TernaryString&) const = default;

  private:
    std::vector<std::uint8_t> sym_;
};

/// Selects the regime by comparing d_k with 1 - k/n, then derives the
/// smallest feasible exact blocklength:
///   uncoded (d_k >= 1 - k/n): base_l = lcm(n, den(R)), scaled by alpha;
///   mds (d_k < 1 - k/n): smallest field degree m with 2^m - 1 >= n making
///     base_l = m*n*k*(n-k) / (n*(1-d_k) - k) and the per-part erased bit
///     count integers; degrees past 16 are rejected.
/// Throws std::invalid_argument on domain violations, InfeasibleParams when
/// no m <= 16 works.
MdParams derive_params(int n, int k, const Rational& d_k, int alpha = 1);

/// Mds regime: each of the alpha blocks splits into n contiguous parts;
/// the last base_erased bits of part i go out uncoded on channel i and the
/// leading m*k bits of part j form the message p_j, encoded as
/// y_j = p_j * g[j-1]; channel i carries (uncoded tail of part i,
/// y_{j,i} for j = 1..n). Uncoded regime: the full source splits into n
/// contiguous parts and channel i carries the first l*R bits of part i;
/// gs is ignored.
std::vector<Description> encode(const MdParams& p, const BitVec& source,
                                const GeneratorSet* gs);

/// Reconstructs from any nonempty set of distinct descriptions. With
/// c >= k received (mds), every message is erasure-decoded and the full
/// erased version is revealed together with the received uncoded tails;
/// with c < k, each received description reveals its tail plus the k
/// systematic symbols its coordinate carries. The output never contradicts
/// the encoded source.
TernaryString decode(const MdParams& p, const std::vector<Description>& received,
                     const GeneratorSet* gs);

/// Source positions revealed on channel `index` (1-based) under
/// single-description decoding; used by the disjoint-reveal checks.
std::vector<std::int64_t> revealed_positions(const MdParams& p, int index);

/// Closed-form worst-case distortion at c received descriptions:
/// uncoded 1 - c*R; mds 1 - c/n for c < k and ((n-c)/(n-k))*d_k for c >= k.
Rational closed_form_distortion(const MdParams& p, int c);

/// Exact distortion when exactly `subset` (1-based channel ids) arrives.
Rational subset_distortion(const MdParams& p, const GeneratorSet* gs,
                           const std::vector<int>& subset, const BitVec& source);

/// Maximum distortion over all C(n, subset_size) reception subsets and
/// over `trials` random sources plus the all-zero and all-one sources.
/// The schemes reveal fixed positions, so the result is source independent
/// and equals closed_form_distortion exactly.
Rational worst_case_distortion(const MdParams& p, int subset_size, int trials,
                               std::uint64_t seed);

}  // namespace emd
