// Command-line front end: encode/decode packets, run channel simulations
// and parameter sweeps, and drive the numeric verifiers. Every stochastic
// command takes --seed and --trials; CSV output is byte-identical for
// identical inputs. Exit codes: 0 all checks matched, 1 any mismatch,
// 2 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "emd/binning.hpp"
#include "emd/ceosim.hpp"
#include "emd/emdcodec.hpp"
#include "emd/gaussmd.hpp"
#include "emd/harness.hpp"
#include "emd/infoverify.hpp"
#include "emd/packet.hpp"
#include "emd/rng.hpp"

namespace {

emd::BitVec read_bit_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    emd::BitVec bits;
    char c;
    while (in.get(c)) {
        if (c == '0') bits.push_back(0);
        else if (c == '1') bits.push_back(1);
        else if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
        else throw std::runtime_error(std::string("unexpected character '") + c +
                                      "' in " + path);
    }
    return bits;
}

std::vector<std::uint8_t> read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

std::unique_ptr<emd::GeneratorSet> generator_for(const emd::MdParams& p) {
    if (p.regime != emd::Regime::mds) return nullptr;
    return std::make_unique<emd::GeneratorSet>(p.n, p.k, emd::Field(p.m));
}

struct CheckCsv {
    std::ostringstream body;
    bool all_pass = true;

    void row(const std::string& check, double value, double reference, double margin,
             bool pass) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g,%.12g,%d\n", check.c_str(),
                      value, reference, margin, pass ? 1 : 0);
        body << buf;
        all_pass = all_pass && pass;
    }
    std::string str() const {
        return "check,value,reference,margin,pass\n" + body.str();
    }
};

int cmd_encode(const std::string& in_path, const std::string& prefix, int n, int k,
               const std::string& dk, int alpha) {
    const auto p = emd::derive_params(n, k, emd::parse_rational(dk), alpha);
    const auto source = read_bit_file(in_path);
    const auto gs = generator_for(p);
    const auto descs = emd::encode(p, source, gs.get());
    for (const auto& d : descs) {
        const auto bytes = emd::serialize_packet(p, d);
        std::ofstream out(prefix + "." + std::to_string(d.index) + ".pkt",
                          std::ios::binary);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    }
    std::cout << "wrote " << descs.size() << " packets, " << p.payload_bits
              << " bits each (l=" << p.l << ", rate=" << emd::to_string(p.rate)
              << ")\n";
    return 0;
}

int cmd_decode(const std::vector<std::string>& packet_paths, const std::string& out) {
    std::vector<emd::Description> descs;
    emd::MdParams p;
    bool have_params = false;
    for (const auto& path : packet_paths) {
        auto [q, d] = emd::parse_packet(read_binary(path));
        if (!have_params) {
            p = q;
            have_params = true;
        } else if (q.n != p.n || q.k != p.k || q.d_k != p.d_k || q.alpha != p.alpha) {
            throw std::runtime_error("packet " + path + " disagrees on parameters");
        }
        descs.push_back(std::move(d));
    }
    const auto gs = generator_for(p);
    const auto rec = emd::decode(p, descs, gs.get());
    std::string text;
    text.reserve(rec.size() + 1);
    for (std::size_t i = 0; i < rec.size(); ++i)
        text += rec.erased(i) ? 'e' : static_cast<char>('0' + rec.at(i));
    text += '\n';
    write_file(out, text);
    std::cout << "decoded " << rec.size() << " symbols, " << rec.erasure_count()
              << " erased\n";
    return 0;
}

int cmd_sim(int n, int k, const std::string& dk, int alpha, const std::string& subset,
            double loss_prob, bool have_loss, int trials, std::uint64_t seed,
            const std::string& out) {
    const auto p = emd::derive_params(n, k, emd::parse_rational(dk), alpha);
    const emd::LossModel loss = have_loss
                                    ? emd::LossModel::bernoulli(loss_prob)
                                    : emd::LossModel::explicit_set(
                                          emd::parse_subset(subset));
    const auto report = emd::run_subset_sim(p, loss, trials, seed);
    std::ostringstream csv;
    emd::write_report_csv(report, csv);
    if (!out.empty()) write_file(out, csv.str());
    else std::cout << csv.str();
    if (!report.reception_histogram.empty()) {
        std::cout << "receptions histogram:";
        for (const auto& [m, c] : report.reception_histogram)
            std::cout << ' ' << m << ':' << c;
        std::cout << '\n';
    }
    return report.all_match() ? 0 : 1;
}

int cmd_sweep(int n, const std::string& k_list, const std::string& dk, int trials,
              std::uint64_t seed, const std::string& out) {
    emd::SweepSpec spec;
    spec.n = n;
    spec.k_list = parse_int_list(k_list);
    spec.d_k = emd::parse_rational(dk);
    spec.trials = trials;
    spec.seed = seed;
    const auto report = emd::sweep_intermediate(spec);
    std::ostringstream csv;
    emd::write_report_csv(report, csv);
    if (!out.empty()) write_file(out, csv.str());
    else std::cout << csv.str();
    return report.all_match() ? 0 : 1;
}

int cmd_verify_lemmas(int trials, long lemma1_samples, std::uint64_t seed,
                      const std::string& out) {
    CheckCsv csv;

    const auto rep = emd::check_multi_info_properties(trials, seed);
    csv.row("multi_info_nonneg", rep.violations_nonneg, 0, 0, rep.violations_nonneg == 0);
    csv.row("multi_info_grouping", rep.violations_grouping, 0, 0,
            rep.violations_grouping == 0);
    csv.row("multi_info_dataproc", rep.violations_dataproc, 0, 0,
            rep.violations_dataproc == 0);
    csv.row("multi_info_perm", rep.violations_perm, 0, 0, rep.violations_perm == 0);

    for (int n = 2; n <= 64; ++n)
        for (int k = 1; k <= n; ++k) {
            if (std::pow(1.0 - 1.0 / n, k) > 0.5) continue;
            const double v = emd::lemma2_bound(n, k);
            csv.row("lemma2_n" + std::to_string(n) + "_k" + std::to_string(k), v,
                    n - 1.0, v - (n - 1.0), v >= n - 1.0 - 1e-9);
        }

    const double l3 = emd::lemma3_bound(0.8);
    csv.row("lemma3_p0.8", l3, 0.5 + 0.16 / 0.6, l3 - (0.5 + 0.16 / 0.6),
            std::abs(l3 - (0.5 + 0.16 / 0.6)) < 1e-9);
    csv.row("lemma5_n8", emd::lemma5_bound(8), 0.75, emd::lemma5_bound(8) - 0.75,
            std::abs(emd::lemma5_bound(8) - 0.75) < 1e-12);

    const auto c2 = emd::corollary2_search();
    csv.row("corollary2_min", c2.minimum, 3.0, c2.margin,
            std::abs(c2.minimum - 3.0) < 1e-6);
    csv.row("corollary2_argmin", c2.argmin, 0.5 + 1.0 / std::sqrt(12.0),
            c2.argmin - (0.5 + 1.0 / std::sqrt(12.0)),
            std::abs(c2.argmin - (0.5 + 1.0 / std::sqrt(12.0))) < 1e-4);

    for (int n = 2; n <= 4; ++n) {
        const auto r = emd::lemma1_search(n, lemma1_samples,
                                          seed + static_cast<std::uint64_t>(n));
        csv.row("lemma1_n" + std::to_string(n), r.minimum, n - 1.0, r.margin,
                r.minimum >= n - 1.0 - 1e-6 && r.feasible_samples >= lemma1_samples);
    }

    if (!out.empty()) write_file(out, csv.str());
    else std::cout << csv.str();
    std::cout << (csv.all_pass ? "all checks passed\n" : "CHECK FAILURES\n");
    return csv.all_pass ? 0 : 1;
}

int cmd_ceo(int n, int k, const std::string& dk_text, double p_erase, double q_reveal,
            const std::string& ell_list, long trials, std::uint64_t seed,
            const std::string& out) {
    const double d_k = emd::to_double(emd::parse_rational(dk_text));
    emd::CeoParams cp;
    cp.n = n;
    cp.k = k;
    cp.p = p_erase;
    cp.q_reveal = q_reveal >= 0.0 ? q_reveal : std::pow(d_k, 1.0 / k);
    cp.trials = trials;
    cp.seed = seed;

    std::ostringstream csv;
    csv << "k,ell,d_k,bound,measured,sigma\n";
    bool all = true;
    for (const int ell : parse_int_list(ell_list)) {
        const auto r = emd::simulate_reveal_scheme(cp, ell);
        const double expect = std::pow(cp.q_reveal, ell);
        const double sigma_pred =
            std::sqrt(expect * (1.0 - expect) / static_cast<double>(trials));
        const bool ok = std::abs(r.measured - expect) <= 3.5 * sigma_pred + 1e-12;
        all = all && ok;
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%d,%d,%.12g,%.12g,%.12g,%.12g\n", k, ell, d_k,
                      expect, r.measured, r.sigma);
        csv << buf;
    }
    if (!out.empty()) write_file(out, csv.str());
    else std::cout << csv.str();
    std::cout << "rate at d_k: " << emd::ceo_rate(k, d_k, p_erase) << " bits/message\n";
    return all ? 0 : 1;
}

int cmd_gauss(int n, int k, int b, double sigma2, long samples, std::uint64_t seed,
              const std::string& out) {
    emd::GaussParams gp;
    gp.n = n;
    gp.k = k;
    gp.sigma2 = sigma2;
    gp.bits_per_sample = b;
    gp.samples = samples;
    gp.seed = seed;

    std::ostringstream csv;
    csv << "n,k,b,m_received,D_q,mse_measured,mse_predicted\n";
    bool all = true;
    for (int m = 1; m <= n; ++m) {
        const auto r = emd::layered_roundtrip(gp, m);
        const bool ok = std::abs(r.mse - r.predicted) / r.predicted < 0.05;
        all = all && ok;
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%.12g,%.12g,%.12g\n", n, k, b, m,
                      r.d_q, r.mse, r.predicted);
        csv << buf;
    }
    if (!out.empty()) write_file(out, csv.str());
    else std::cout << csv.str();
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary erasure multiple descriptions toolkit"};
    app.require_subcommand(1);

    std::string dk = "0";
    std::string in_path, out_path, prefix, subset, k_list = "", ell_list = "1,2,3,4";
    std::vector<std::string> packets;
    int n = 4, k = 2, alpha = 1, b = 3, trials = 100;
    long ltrials = 100000, lemma1_samples = 10000, samples = 100000;
    double loss_prob = -1.0, p_erase = 0.4, q_reveal = -1.0, sigma2 = 1.0;
    std::uint64_t seed = 1;

    auto* enc = app.add_subcommand("encode", "encode a source bit file into packets");
    enc->add_option("--n", n, "descriptions")->required();
    enc->add_option("--k", k, "subset size")->required();
    enc->add_option("--dk", dk, "target distortion at k receptions, e.g. 1/4")->required();
    enc->add_option("--alpha", alpha, "block repetition multiplier");
    enc->add_option("--in", in_path, "source file of 0/1 characters")->required();
    enc->add_option("--out-prefix", prefix, "packet path prefix")->required();

    auto* dec = app.add_subcommand("decode", "decode packets into a reconstruction");
    dec->add_option("packets", packets, "packet files")->required()->expected(-1);
    dec->add_option("--out", out_path, "reconstruction output (0/1/e per symbol)")
        ->required();

    auto* sim = app.add_subcommand("sim", "subset or lossy-channel simulation");
    sim->add_option("--n", n)->required();
    sim->add_option("--k", k)->required();
    sim->add_option("--dk", dk)->required();
    sim->add_option("--alpha", alpha);
    auto* sub_opt = sim->add_option("--subset", subset, "explicit reception subset, e.g. 1,3");
    auto* loss_opt = sim->add_option("--loss-prob", loss_prob, "per-description loss probability");
    sub_opt->excludes(loss_opt);
    sim->add_option("--trials", trials);
    sim->add_option("--seed", seed);
    sim->add_option("--out", out_path, "CSV output path (stdout when omitted)");

    auto* sweep = app.add_subcommand("sweep", "worst-case distortion vs receptions");
    sweep->add_option("--n", n)->required();
    sweep->add_option("--k-list", k_list, "comma-separated k values")->required();
    sweep->add_option("--dk", dk)->required();
    sweep->add_option("--trials", trials);
    sweep->add_option("--seed", seed);
    sweep->add_option("--out", out_path);

    auto* ver = app.add_subcommand("verify-lemmas", "numeric converse-side checks");
    ver->add_option("--trials", trials, "random joints for the property suite");
    ver->add_option("--lemma1-samples", lemma1_samples, "feasible samples per n");
    ver->add_option("--seed", seed);
    ver->add_option("--out", out_path);

    auto* ceo = app.add_subcommand("ceo", "per-bit reveal tradeoff simulator");
    ceo->add_option("--n", n);
    ceo->add_option("--k", k)->required();
    ceo->add_option("--dk", dk, "reference distortion d_k")->required();
    ceo->add_option("--p", p_erase, "observation erasure probability");
    ceo->add_option("--q", q_reveal, "reveal miss probability (default d_k^(1/k))");
    ceo->add_option("--ell-list", ell_list);
    ceo->add_option("--trials", ltrials);
    ceo->add_option("--seed", seed);
    ceo->add_option("--out", out_path);

    auto* gauss = app.add_subcommand("gauss", "layered Gaussian transport");
    gauss->add_option("--n", n)->required();
    gauss->add_option("--k", k)->required();
    gauss->add_option("--b", b, "quantizer bits per sample");
    gauss->add_option("--sigma2", sigma2);
    gauss->add_option("--samples", samples);
    gauss->add_option("--seed", seed);
    gauss->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (enc->parsed()) return cmd_encode(in_path, prefix, n, k, dk, alpha);
        if (dec->parsed()) return cmd_decode(packets, out_path);
        if (sim->parsed()) {
            if (subset.empty() && loss_prob < 0.0)
                throw std::runtime_error("sim needs --subset or --loss-prob");
            return cmd_sim(n, k, dk, alpha, subset, loss_prob, loss_prob >= 0.0, trials,
                           seed, out_path);
        }
        if (sweep->parsed()) return cmd_sweep(n, k_list, dk, trials, seed, out_path);
        if (ver->parsed()) return cmd_verify_lemmas(trials, lemma1_samples, seed, out_path);
        if (ceo->parsed())
            return cmd_ceo(n, k, dk, p_erase, q_reveal, ell_list, ltrials, seed, out_path);
        if (gauss->parsed()) return cmd_gauss(n, k, b, sigma2, samples, seed, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
