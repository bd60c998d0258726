#include "emd/harness.hpp"

#include <algorithm>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "emd/rng.hpp"

namespace emd {

bool DistortionReport::all_match() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const ReportRow& r) { return r.match; });
}

std::string format_subset(const std::vector<int>& subset) {
    std::string out;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) out += '|';
        out += std::to_string(subset[i]);
    }
    return out;
}

std::vector<int> parse_subset(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

ReportRow make_row(const MdParams& p, const std::vector<int>& subset,
                   const Rational& dist) {
    ReportRow row;
    row.n = p.n;
    row.k = p.k;
    row.d_k = p.d_k;
    row.m = static_cast<int>(subset.size());
    row.subset = format_subset(subset);
    row.dist = dist;
    row.pred = closed_form_distortion(p, row.m);
    row.match = row.dist == row.pred;
    return row;
}

}  // namespace

DistortionReport run_subset_sim(const MdParams& p, const LossModel& loss, int trials,
                                std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (loss.kind == LossModel::Kind::bernoulli &&
        (loss.loss_prob < 0.0 || loss.loss_prob > 1.0))
        throw std::invalid_argument("loss probability must lie in [0, 1]");
    for (const int i : loss.subset)
        if (i < 1 || i > p.n) throw std::invalid_argument("subset index out of range");

    std::unique_ptr<GeneratorSet> gs;
    if (p.regime == Regime::mds)
        gs = std::make_unique<GeneratorSet>(p.n, p.k, Field(p.m));

    DistortionReport report;
    Rng master(seed);
    for (int t = 0; t < trials; ++t) {
        Rng rng = master.fork(static_cast<std::uint64_t>(t));
        const BitVec source = rng.bits(static_cast<std::size_t>(p.l));

        std::vector<int> subset;
        if (loss.kind == LossModel::Kind::explicit_subset) {
            subset = loss.subset;
            std::sort(subset.begin(), subset.end());
        } else {
            for (int i = 1; i <= p.n; ++i)
                if (rng.real() >= loss.loss_prob) subset.push_back(i);
            ++report.reception_histogram[static_cast<int>(subset.size())];
        }

        if (subset.empty()) {
            ReportRow row = make_row(p, subset, Rational(1));
            report.rows.push_back(std::move(row));
            continue;
        }
        const Rational dist = subset_distortion(p, gs.get(), subset, source);
        report.rows.push_back(make_row(p, subset, dist));
    }
    return report;
}

DistortionReport sweep_intermediate(const SweepSpec& s) {
    for (const int k : s.k_list)
        if (k < 1 || k > s.n) throw std::invalid_argument("every k must lie in 1..n");

    DistortionReport report;
    for (const int k : s.k_list) {
        const MdParams p = derive_params(s.n, k, s.d_k);
        std::unique_ptr<GeneratorSet> gs;
        if (p.regime == Regime::mds)
            gs = std::make_unique<GeneratorSet>(p.n, p.k, Field(p.m));

        std::vector<BitVec> sources;
        sources.emplace_back(static_cast<std::size_t>(p.l), 0);
        sources.emplace_back(static_cast<std::size_t>(p.l), 1);
        Rng rng(s.seed);
        for (int t = 0; t < s.trials; ++t)
            sources.push_back(rng.fork(static_cast<std::uint64_t>(t))
                                  .bits(static_cast<std::size_t>(p.l)));

        for (int m = 1; m <= s.n; ++m) {
            Rational worst(0);
            std::vector<int> worst_subset;
            std::vector<bool> mask(static_cast<std::size_t>(s.n), false);
            std::fill(mask.begin(), mask.begin() + m, true);
            do {
                std::vector<int> subset;
                for (int i = 0; i < s.n; ++i)
                    if (mask[static_cast<std::size_t>(i)]) subset.push_back(i + 1);
                for (const auto& src : sources) {
                    const Rational d = subset_distortion(p, gs.get(), subset, src);
                    if (d > worst || worst_subset.empty()) {
                        worst = d;
                        worst_subset = subset;
                    }
                }
            } while (std::prev_permutation(mask.begin(), mask.end()));

            ReportRow row = make_row(p, worst_subset, worst);
            row.m = m;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

void write_report_csv(const DistortionReport& report, std::ostream& out) {
    out << "n,k,dk_num,dk_den,m,subset,dist_num,dist_den,pred_num,pred_den,match\n";
    for (const auto& r : report.rows)
        out << r.n << ',' << r.k << ',' << r.d_k.numerator() << ',' << r.d_k.denominator()
            << ',' << r.m << ',' << r.subset << ',' << r.dist.numerator() << ','
            << r.dist.denominator() << ',' << r.pred.numerator() << ','
            << r.pred.denominator() << ',' << (r.match ? 1 : 0) << '\n';
}

}  // namespace emd
