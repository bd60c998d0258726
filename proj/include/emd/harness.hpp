#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "emd/emdcodec.hpp"
#include "emd/rational.hpp"

namespace emd {

/// Loss model: either an explicit reception subset (1-based channel ids)
/// or independent per-description Bernoulli loss.
struct LossModel {
    enum class Kind { explicit_subset, bernoulli } kind = Kind::explicit_subset;
    std::vector<int> subset;
    double loss_prob = 0.0;

    static LossModel explicit_set(std::vector<int> s) {
        return {Kind::explicit_subset, std::move(s), 0.0};
    }
    static LossModel bernoulli(double p) { return {Kind::bernoulli, {}, p}; }
};

struct ReportRow {
    int n = 0;
    int k = 0;
    Rational d_k;
    int m = 0;             // receptions
    std::string subset;    // "1|3|4", empty when nothing arrived
    Rational dist;
    Rational pred;
    bool match = false;
};

struct DistortionReport {
    std::vector<ReportRow> rows;
    std::map<int, long> reception_histogram;  // bernoulli mode only

    bool all_match() const;
};

/// Encodes random sources, drops descriptions per the loss model, decodes,
/// and records exact distortions against the closed form. An empty
/// reception is reported as a distortion-1 row without a decode call.
DistortionReport run_subset_sim(const MdParams& p, const LossModel& loss, int trials,
                                std::uint64_t seed);

struct SweepSpec {
    int n = 0;
    std::vector<int> k_list;
    Rational d_k;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string out_path;
};

/// For each k in k_list and each m = 1..n, the measured worst-case
/// distortion over all subsets of size m, `trials` random sources plus
/// all-zero and all-one, against the closed form.
DistortionReport sweep_intermediate(const SweepSpec& s);

/// CSV schema: n,k,dk_num,dk_den,m,subset,dist_num,dist_den,pred_num,
/// pred_den,match. Byte-identical for identical inputs.
void write_report_csv(const DistortionReport& report, std::ostream& out);

std::string format_subset(const std::vector<int>& subset);
std::vector<int> parse_subset(const std::string& text);

}  // namespace emd
