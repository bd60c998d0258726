#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace emd {

/// Explicit finite joint distribution over K coordinates, dense row-major
/// over the product alphabet. Entropies are base 2 with 0*log(0) = 0.
struct JointPmf {
    std::vector<int> alphabet_sizes;
    std::vector<double> probs;

    std::size_t index_of(const std::vector<int>& x) const;
    std::size_t total_size() const;
};

/// Multi-letter mutual information: sum of marginal entropies minus the
/// joint entropy, in bits. Zero iff the coordinates are mutually
/// independent. Throws std::invalid_argument on an unnormalized or
/// negative pmf (tolerance 1e-12).
double multi_info(const JointPmf& j);

double joint_entropy(const JointPmf& j);
JointPmf marginalize(const JointPmf& j, const std::vector<int>& coords);

/// Pushforward under a deterministic map applied to the given coordinates
/// (collapsed into one new first coordinate of size out_size).
JointPmf apply_map(const JointPmf& j, const std::vector<int>& coords,
                   const std::vector<int>& map, int out_size);

struct PropertyReport {
    int trials = 0;
    int violations_nonneg = 0;
    int violations_grouping = 0;   // I_K >= I_m + I_(K-m+1) with f on the first m
    int violations_dataproc = 0;   // per-coordinate maps never increase I_K
    int violations_perm = 0;       // invariance under coordinate permutation
    double max_violation = 0.0;
    bool pass() const {
        return violations_nonneg == 0 && violations_grouping == 0 &&
               violations_dataproc == 0 && violations_perm == 0;
    }
};

/// Random small joints (K <= 4, alphabets <= 3) with random deterministic
/// maps; slack 1e-9 (1e-12 for nonnegativity and permutations). Failures
/// are reported, not thrown.
PropertyReport check_multi_info_properties(int trials, std::uint64_t seed);

/// Closed-form scalar bounds used by the converse checks.
/// Requires (1 - 1/n)^k <= 1/2; returns n * (1/2)^(1/k), which is >= n-1.
double lemma2_bound(int n, int k);
/// Requires p in (1/2, 1]; returns 1/2 + p(1-p)/(2p-1).
double lemma3_bound(double p);
/// Requires n >= 1; returns 1 - 2/n.
double lemma5_bound(int n);

enum class LemmaId { lemma2, lemma3, lemma5 };
double lemma_bound_eval(LemmaId which, double a, double b = 0.0);

struct MinSearchResult {
    double minimum = 0.0;
    double argmin = 0.0;        // scalar minimizer where meaningful
    double bound = 0.0;         // the value the minimum must not undercut
    double margin = 0.0;        // minimum - bound
    long feasible_samples = 0;  // random feasible points evaluated
};

/// One-dimensional minimization (grid plus golden section) of
///   2*max(x, 1/2 + x(1-x)/(2x-1)) + x + 1/(2x)   over x in [1/sqrt(2), 1].
/// The minimum is 3, attained at x = 1/2 + 1/sqrt(12).
MinSearchResult corollary2_search();

/// Randomized falsification search over n pairwise-independent erased
/// versions of a fair bit, minimizing the total erasure probability
/// sum_i Pr(X_i = 0). Joints are sampled as normalized exponential
/// weights over the reveal patterns of each source sign; pairwise
/// independence is enforced by penalty minimization (damped Gauss-Newton)
/// followed by a feasibility check at 1e-9. The search also evaluates the
/// n exact single-copy corner points. Minimum must be >= n - 1.
MinSearchResult lemma1_search(int n, long feasible_target, std::uint64_t seed);

}  // namespace emd
