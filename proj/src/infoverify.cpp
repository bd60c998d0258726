#include "emd/infoverify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "emd/rng.hpp"

namespace emd {

std::size_t JointPmf::total_size() const {
    std::size_t t = 1;
    for (const int s : alphabet_sizes) t *= static_cast<std::size_t>(s);
    return t;
}

std::size_t JointPmf::index_of(const std::vector<int>& x) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < alphabet_sizes.size(); ++i)
        idx = idx * static_cast<std::size_t>(alphabet_sizes[i]) +
              static_cast<std::size_t>(x[i]);
    return idx;
}

namespace {

constexpr double kNormTol = 1e-12;

double entropy_of(const std::vector<double>& p) {
    double h = 0.0;
    for (const double v : p)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

void validate(const JointPmf& j) {
    if (j.alphabet_sizes.empty()) throw std::invalid_argument("empty joint");
    for (const int s : j.alphabet_sizes)
        if (s < 1) throw std::invalid_argument("alphabet size must be >= 1");
    if (j.probs.size() != j.total_size())
        throw std::invalid_argument("probs size does not match the product alphabet");
    double sum = 0.0;
    for (const double p : j.probs) {
        if (p < -kNormTol) throw std::invalid_argument("negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTol)
        throw std::invalid_argument("pmf is not normalized");
}

// Decomposes flat index idx into coordinates.
void decompose(const JointPmf& j, std::size_t idx, std::vector<int>& x) {
    for (std::size_t i = j.alphabet_sizes.size(); i-- > 0;) {
        const auto s = static_cast<std::size_t>(j.alphabet_sizes[i]);
        x[i] = static_cast<int>(idx % s);
        idx /= s;
    }
}

}  // namespace

double joint_entropy(const JointPmf& j) {
    validate(j);
    return entropy_of(j.probs);
}

JointPmf marginalize(const JointPmf& j, const std::vector<int>& coords) {
    JointPmf out;
    for (const int c : coords) out.alphabet_sizes.push_back(j.alphabet_sizes.at(c));
    out.probs.assign(out.total_size(), 0.0);
    std::vector<int> x(j.alphabet_sizes.size());
    std::vector<int> y(coords.size());
    for (std::size_t idx = 0; idx < j.probs.size(); ++idx) {
        decompose(j, idx, x);
        for (std::size_t i = 0; i < coords.size(); ++i)
            y[i] = x[static_cast<std::size_t>(coords[i])];
        out.probs[out.index_of(y)] += j.probs[idx];
    }
    return out;
}

double multi_info(const JointPmf& j) {
    validate(j);
    double marg_sum = 0.0;
    for (std::size_t c = 0; c < j.alphabet_sizes.size(); ++c)
        marg_sum += entropy_of(marginalize(j, {static_cast<int>(c)}).probs);
    return marg_sum - entropy_of(j.probs);
}

JointPmf apply_map(const JointPmf& j, const std::vector<int>& coords,
                   const std::vector<int>& map, int out_size) {
    std::vector<char> mapped(j.alphabet_sizes.size(), 0);
    std::size_t domain = 1;
    for (const int c : coords) {
        mapped[static_cast<std::size_t>(c)] = 1;
        domain *= static_cast<std::size_t>(j.alphabet_sizes.at(c));
    }
    if (map.size() != domain) throw std::invalid_argument("map size mismatch");

    JointPmf out;
    out.alphabet_sizes.push_back(out_size);
    for (std::size_t i = 0; i < j.alphabet_sizes.size(); ++i)
        if (!mapped[i]) out.alphabet_sizes.push_back(j.alphabet_sizes[i]);
    out.probs.assign(out.total_size(), 0.0);

    std::vector<int> x(j.alphabet_sizes.size());
    std::vector<int> y;
    for (std::size_t idx = 0; idx < j.probs.size(); ++idx) {
        decompose(j, idx, x);
        std::size_t key = 0;
        for (const int c : coords)
            key = key * static_cast<std::size_t>(j.alphabet_sizes[static_cast<std::size_t>(c)]) +
                  static_cast<std::size_t>(x[static_cast<std::size_t>(c)]);
        y.clear();
        y.push_back(map[key]);
        for (std::size_t i = 0; i < j.alphabet_sizes.size(); ++i)
            if (!mapped[i]) y.push_back(x[i]);
        out.probs[out.index_of(y)] += j.probs[idx];
    }
    return out;
}

namespace {

JointPmf random_joint(Rng& rng, int max_k, int max_alphabet) {
    JointPmf j;
    const int K = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_k - 1)));
    for (int i = 0; i < K; ++i)
        j.alphabet_sizes.push_back(2 + static_cast<int>(
            rng.below(static_cast<std::uint64_t>(max_alphabet - 1))));
    j.probs.resize(j.total_size());
    double sum = 0.0;
    for (auto& p : j.probs) {
        p = -std::log(1.0 - rng.real());  // exponential weight
        sum += p;
    }
    for (auto& p : j.probs) p /= sum;
    return j;
}

std::vector<int> random_map(Rng& rng, std::size_t domain, int out_size) {
    std::vector<int> map(domain);
    for (auto& v : map) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(out_size)));
    return map;
}

}  // namespace

PropertyReport check_multi_info_properties(int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    PropertyReport rep;
    rep.trials = trials;
    Rng master(seed);
    for (int t = 0; t < trials; ++t) {
        Rng rng = master.fork(static_cast<std::uint64_t>(t));
        const JointPmf j = random_joint(rng, 4, 3);
        const int K = static_cast<int>(j.alphabet_sizes.size());
        const double ik = multi_info(j);

        if (ik < -1e-12) {
            ++rep.violations_nonneg;
            rep.max_violation = std::max(rep.max_violation, -ik);
        }

        // Grouping: apply f to the first m coordinates.
        {
            const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(K - 1)));
            std::vector<int> first(static_cast<std::size_t>(m));
            std::iota(first.begin(), first.end(), 0);
            std::size_t domain = 1;
            for (const int c : first)
                domain *= static_cast<std::size_t>(j.alphabet_sizes[static_cast<std::size_t>(c)]);
            const int out_size =
                1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(domain)));
            const JointPmf grouped =
                apply_map(j, first, random_map(rng, domain, out_size), out_size);
            const double lhs = ik;
            const double rhs = multi_info(marginalize(j, first)) + multi_info(grouped);
            if (lhs < rhs - 1e-9) {
                ++rep.violations_grouping;
                rep.max_violation = std::max(rep.max_violation, rhs - lhs);
            }
        }

        // Data processing: map one coordinate.
        {
            const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(K)));
            const auto size_c =
                static_cast<std::size_t>(j.alphabet_sizes[static_cast<std::size_t>(c)]);
            const int out_size =
                1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(size_c)));
            const JointPmf processed =
                apply_map(j, {c}, random_map(rng, size_c, out_size), out_size);
            const double after = multi_info(processed);
            if (after > ik + 1e-9) {
                ++rep.violations_dataproc;
                rep.max_violation = std::max(rep.max_violation, after - ik);
            }
        }

        // Permutation invariance.
        {
            std::vector<int> perm(static_cast<std::size_t>(K));
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = perm.size(); i > 1; --i)
                std::swap(perm[i - 1], perm[rng.below(i)]);
            const double permuted = multi_info(marginalize(j, perm));
            if (std::abs(permuted - ik) > 1e-12) {
                ++rep.violations_perm;
                rep.max_violation = std::max(rep.max_violation, std::abs(permuted - ik));
            }
        }
    }
    return rep;
}

double lemma2_bound(int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("need n, k >= 1");
    if (std::pow(1.0 - 1.0 / n, k) > 0.5 + 1e-15)
        throw std::invalid_argument("requires (1 - 1/n)^k <= 1/2");
    return n * std::pow(0.5, 1.0 / k);
}

double lemma3_bound(double p) {
    if (!(p > 0.5) || p > 1.0) throw std::invalid_argument("requires p in (1/2, 1]");
    return 0.5 + p * (1.0 - p) / (2.0 * p - 1.0);
}

double lemma5_bound(int n) {
    if (n < 1) throw std::invalid_argument("requires n >= 1");
    return 1.0 - 2.0 / n;
}

double lemma_bound_eval(LemmaId which, double a, double b) {
    switch (which) {
        case LemmaId::lemma2: return lemma2_bound(static_cast<int>(a), static_cast<int>(b));
        case LemmaId::lemma3: return lemma3_bound(a);
        case LemmaId::lemma5: return lemma5_bound(static_cast<int>(a));
    }
    throw std::invalid_argument("unknown lemma id");
}

namespace {

double corollary2_objective(double x) {
    const double alt = 0.5 + x * (1.0 - x) / (2.0 * x - 1.0);
    return 2.0 * std::max(x, alt) + x + 0.5 / x;
}

}  // namespace

MinSearchResult corollary2_search() {
    const double lo = 1.0 / std::sqrt(2.0);
    const double hi = 1.0;
    double best_x = lo;
    double best = corollary2_objective(lo);
    const int grid = 2000;
    for (int i = 1; i <= grid; ++i) {
        const double x = lo + (hi - lo) * i / grid;
        const double v = corollary2_objective(x);
        if (v < best) { best = v; best_x = x; }
    }
    // Golden-section refinement around the best grid point.
    double a = std::max(lo, best_x - (hi - lo) / grid);
    double b = std::min(hi, best_x + (hi - lo) / grid);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = corollary2_objective(c);
    double fd = corollary2_objective(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = corollary2_objective(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = corollary2_objective(d);
        }
    }
    MinSearchResult res;
    res.argmin = (a + b) / 2.0;
    res.minimum = corollary2_objective(res.argmin);
    res.bound = 3.0;
    res.margin = res.minimum - res.bound;
    return res;
}

namespace {

// A point in the erased-version search space: conditional reveal-pattern
// distributions r_plus and r_minus over {0,1}^n, one per source sign, with
// the fair bit built in. X_i reveals the source iff bit i of the pattern
// is set, otherwise it erases. Pairwise independence of (X_i, X_j) reduces
// to four corner constraints per pair on the top-left 2x2 of the 3x3 joint
// (the remaining cells follow from the marginals).
struct PairwisePoint {
    int n;
    int patterns;                // 2^n
    std::vector<double> r_plus;  // distribution over reveal patterns given +
    std::vector<double> r_minus;

    explicit PairwisePoint(int n_) : n(n_), patterns(1 << n_),
        r_plus(static_cast<std::size_t>(patterns), 0.0),
        r_minus(static_cast<std::size_t>(patterns), 0.0) {}

    void reveal_rates(std::vector<double>& u, std::vector<double>& v,
                      Eigen::MatrixXd& uu, Eigen::MatrixXd& vv) const {
        u.assign(static_cast<std::size_t>(n), 0.0);
        v.assign(static_cast<std::size_t>(n), 0.0);
        uu.setZero(n, n);
        vv.setZero(n, n);
        for (int s = 0; s < patterns; ++s) {
            const double rp = r_plus[static_cast<std::size_t>(s)];
            const double rm = r_minus[static_cast<std::size_t>(s)];
            for (int i = 0; i < n; ++i) {
                if (!((s >> i) & 1)) continue;
                u[static_cast<std::size_t>(i)] += rp;
                v[static_cast<std::size_t>(i)] += rm;
                for (int j = i + 1; j < n; ++j) {
                    if (!((s >> j) & 1)) continue;
                    uu(i, j) += rp;
                    vv(i, j) += rm;
                }
            }
        }
    }

    // Residuals: per pair i<j the four corner independence constraints
    //   P(+,+) - P_i(+)P_j(+) = uu/2 - u_i u_j / 4
    //   P(+,-) - P_i(+)P_j(-) =      - u_i v_j / 4
    //   P(-,+) - P_i(-)P_j(+) =      - v_i u_j / 4
    //   P(-,-) - P_i(-)P_j(-) = vv/2 - v_i v_j / 4
    void residuals(Eigen::VectorXd& f) const {
        std::vector<double> u, v;
        Eigen::MatrixXd uu, vv;
        reveal_rates(u, v, uu, vv);
        f.resize(4 * n * (n - 1) / 2);
        int r = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double ui = u[static_cast<std::size_t>(i)];
                const double uj = u[static_cast<std::size_t>(j)];
                const double vi = v[static_cast<std::size_t>(i)];
                const double vj = v[static_cast<std::size_t>(j)];
                f(r++) = uu(i, j) / 2 - ui * uj / 4;
                f(r++) = -ui * vj / 4;
                f(r++) = -vi * uj / 4;
                f(r++) = vv(i, j) / 2 - vi * vj / 4;
            }
    }

    double objective() const {
        std::vector<double> u, v;
        Eigen::MatrixXd uu, vv;
        reveal_rates(u, v, uu, vv);
        double total = 0.0;
        for (int i = 0; i < n; ++i)
            total += 1.0 - (u[static_cast<std::size_t>(i)] +
                            v[static_cast<std::size_t>(i)]) / 2.0;
        return total;
    }
};

// Every feasible point has all its informative variables on one source
// sign (or a single variable informative on both): the cross constraints
// u_i v_j = 0 for i != j kill mixed supports. The sampler therefore draws
// a branch at random, projects the active side onto its constraint
// manifold with damped Gauss-Newton on softmax logits, and runs the full
// feasibility check afterwards.
bool project_branch(std::vector<double>& r, int n, Eigen::VectorXd& theta) {
    const int P = 1 << n;
    const int nres = n * (n - 1) / 2;

    auto apply_softmax = [&]() {
        double mx = -1e300;
        for (int s = 0; s < P; ++s) mx = std::max(mx, theta(s));
        double sum = 0.0;
        for (int s = 0; s < P; ++s) {
            r[static_cast<std::size_t>(s)] = std::exp(theta(s) - mx);
            sum += r[static_cast<std::size_t>(s)];
        }
        for (int s = 0; s < P; ++s) r[static_cast<std::size_t>(s)] /= sum;
    };

    std::vector<double> u(static_cast<std::size_t>(n));
    Eigen::MatrixXd uu(n, n);
    auto compute_rates = [&]() {
        std::fill(u.begin(), u.end(), 0.0);
        uu.setZero();
        for (int s = 0; s < P; ++s) {
            const double rs = r[static_cast<std::size_t>(s)];
            for (int i = 0; i < n; ++i) {
                if (!((s >> i) & 1)) continue;
                u[static_cast<std::size_t>(i)] += rs;
                for (int j = i + 1; j < n; ++j)
                    if ((s >> j) & 1) uu(i, j) += rs;
            }
        }
    };
    auto fill_residuals = [&](Eigen::VectorXd& f) {
        compute_rates();
        int row = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                f(row++) = uu(i, j) / 2 - u[static_cast<std::size_t>(i)] *
                                             u[static_cast<std::size_t>(j)] / 4;
    };

    Eigen::VectorXd f(nres), f_new(nres), theta_new(P);
    Eigen::MatrixXd jac(nres, P);
    double mu = 1e-6;

    apply_softmax();
    fill_residuals(f);
    for (int iter = 0; iter < 60; ++iter) {
        if (f.lpNorm<Eigen::Infinity>() < 1e-12) return true;

        // d residual / d r_s, then the softmax chain
        // d r_s / d theta_t = r_s (delta_st - r_t).
        int row = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double ui = u[static_cast<std::size_t>(i)];
                const double uj = u[static_cast<std::size_t>(j)];
                double dot = 0.0;
                for (int s = 0; s < P; ++s) {
                    const double si = (s >> i) & 1;
                    const double sj = (s >> j) & 1;
                    const double d = si * sj / 2 - (si * uj + sj * ui) / 4;
                    jac(row, s) = d;  // temporarily d f / d r
                    dot += d * r[static_cast<std::size_t>(s)];
                }
                for (int t = 0; t < P; ++t)
                    jac(row, t) = r[static_cast<std::size_t>(t)] * (jac(row, t) - dot);
                ++row;
            }

        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtf = jac.transpose() * f;
        bool stepped = false;
        for (int attempt = 0; attempt < 10 && !stepped; ++attempt) {
            Eigen::MatrixXd damped = jtj;
            damped.diagonal().array() += mu;
            theta_new = theta + damped.ldlt().solve(-jtf);
            std::swap(theta, theta_new);
            apply_softmax();
            fill_residuals(f_new);
            if (f_new.squaredNorm() < f.squaredNorm()) {
                f = f_new;
                mu = std::max(mu * 0.25, 1e-12);
                stepped = true;
            } else {
                std::swap(theta, theta_new);
                mu *= 10.0;
            }
        }
        if (!stepped) break;
    }
    apply_softmax();
    fill_residuals(f);
    return f.lpNorm<Eigen::Infinity>() < 1e-10;
}

}  // namespace

MinSearchResult lemma1_search(int n, long feasible_target, std::uint64_t seed) {
    if (n < 2 || n > 4) throw std::invalid_argument("supported n: 2..4");
    if (feasible_target < 1) throw std::invalid_argument("need a positive sample target");

    MinSearchResult res;
    res.bound = n - 1.0;
    res.minimum = static_cast<double>(n);

    // Exact corner points: X_i a perfect copy, the rest constant erasure.
    for (int i = 0; i < n; ++i) {
        PairwisePoint pt(n);
        pt.r_plus[static_cast<std::size_t>(1 << i)] = 1.0;
        pt.r_minus[static_cast<std::size_t>(1 << i)] = 1.0;
        Eigen::VectorXd f;
        pt.residuals(f);
        if (f.lpNorm<Eigen::Infinity>() < 1e-9)
            res.minimum = std::min(res.minimum, pt.objective());
    }

    Rng master(seed);
    const long max_attempts = feasible_target * 30;
    long attempts = 0;
    PairwisePoint pt(n);
    Eigen::VectorXd theta(pt.patterns);
    Eigen::VectorXd full_res;
    while (res.feasible_samples < feasible_target && attempts < max_attempts) {
        Rng rng = master.fork(static_cast<std::uint64_t>(attempts++));
        std::fill(pt.r_plus.begin(), pt.r_plus.end(), 0.0);
        std::fill(pt.r_minus.begin(), pt.r_minus.end(), 0.0);

        if (rng.below(4) == 0) {
            // Single informative variable, both signs allowed.
            const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            const double a = rng.real();
            const double b = rng.real();
            pt.r_plus[static_cast<std::size_t>(1 << i)] = a;
            pt.r_plus[0] = 1.0 - a;
            pt.r_minus[static_cast<std::size_t>(1 << i)] = b;
            pt.r_minus[0] = 1.0 - b;
        } else {
            // One-sided branch: the other sign is constant erasure.
            const bool plus_side = rng.bit();
            auto& active = plus_side ? pt.r_plus : pt.r_minus;
            auto& dead = plus_side ? pt.r_minus : pt.r_plus;
            dead[0] = 1.0;
            // Normalized exponential weights as the random start.
            for (int s = 0; s < pt.patterns; ++s)
                theta(s) = std::log(-std::log(1.0 - rng.real()) + 1e-300);
            if (!project_branch(active, n, theta)) continue;
        }

        pt.residuals(full_res);
        if (full_res.lpNorm<Eigen::Infinity>() >= 1e-9) continue;
        ++res.feasible_samples;
        const double obj = pt.objective();
        if (obj < res.minimum) res.minimum = obj;
    }
    res.margin = res.minimum - res.bound;
    return res;
}

}  // namespace emd
