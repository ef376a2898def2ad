// resonator-lab: run and serialize the correlation experiments.
//
// Every experiment is reachable through exactly one subcommand; reports are
// written as JSON (nested) and optionally CSV (flat series for plotting).
// Exit codes: 0 success, 2 property failure, 3 accuracy error, 4 config error.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rlab/runners.hpp"
#include "rlab/sieve_io.hpp"

namespace {

using namespace rlab;

struct CommonOptions {
    std::string out_path;     // empty -> <experiment>.json, "-" -> stdout
    std::string csv_path;
    std::string sieve_dir;    // overrides RESONATOR_LAB_SIEVE_DIR
    unsigned threads = 0;     // 0 -> hardware
    std::int64_t limit = 0;   // 0 -> auto per experiment
    bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--out", opt.out_path,
                    "report output path (default <experiment>.json, '-' for stdout)");
    cmd->add_option("--csv", opt.csv_path, "also write the flat series as CSV");
    cmd->add_option("--threads", opt.threads,
                    "worker pool size, 0 = hardware concurrency (results are identical for any "
                    "value)")
        ->capture_default_str();
    cmd->add_option("--limit", opt.limit, "sieve table limit, 0 = smallest that fits the run")
        ->capture_default_str();
    cmd->add_option("--sieve-dir", opt.sieve_dir,
                    "cache dir for sieve tables (default: env RESONATOR_LAB_SIEVE_DIR)");
    cmd->add_flag("--no-timestamp", opt.no_timestamp, "omit the timestamp field in the report");
}

std::string resolve_sieve_dir(const CommonOptions& opt) {
    if (!opt.sieve_dir.empty()) return opt.sieve_dir;
    if (const char* env = std::getenv("RESONATOR_LAB_SIEVE_DIR")) return env;
    return {};
}

ArithTables make_tables(const CommonOptions& opt, std::int64_t auto_limit) {
    const std::int64_t limit = opt.limit > 0 ? opt.limit : auto_limit;
    return tables_with_cache(limit, opt.threads, resolve_sieve_dir(opt));
}

int emit(const ExperimentReport& report, const CommonOptions& opt) {
    const std::string json = report_to_json(report, !opt.no_timestamp);
    const std::string path =
        opt.out_path.empty() ? report.experiment + ".json" : opt.out_path;
    if (path == "-") {
        std::cout << json;
    } else {
        std::ofstream os(path, std::ios::trunc);
        if (!os) throw ResourceError("cannot write report to " + path);
        os << json;
        std::cout << "report written to " << path << "\n";
    }
    if (!opt.csv_path.empty()) {
        std::ofstream os(opt.csv_path, std::ios::trunc);
        if (!os) throw ResourceError("cannot write CSV to " + opt.csv_path);
        os << report_to_csv(report);
    }
    int failures = 0;
    for (const auto& c : report.checks) {
        std::cerr << (c.pass ? "  [pass] " : "  [FAIL] ") << c.name;
        if (!c.detail.empty()) std::cerr << "  (" << c.detail << ")";
        std::cerr << "\n";
        if (!c.pass) ++failures;
    }
    return failures == 0 ? 0 : 2;
}

std::int64_t square_limit(double r_hi) {
    return static_cast<std::int64_t>(std::ceil(r_hi * r_hi)) + 1;
}

nlohmann::json defaults_json() {
    nlohmann::json j;
    j["constants"] = {{"prime_limit", 1000000}, {"alt_limit", 100000}};
    j["v-eval"] = {{"d-max", 15}, {"limit", 2000}};
    j["count"] = {{"radii", "1,1.5,2,4,8"}};
    j["error-term"] = {{"r-lo", 50.0}, {"r-hi", 100.0}, {"voronoi", false}, {"n-max", 0}};
    j["correlate-I"] = {{"R", "125,250,500,1000"}, {"sigma", 0.5}, {"R0", 125.0}};
    j["m-sigma"] = {{"R", "125,250,500,1000"},
                    {"sigma", 0.8},
                    {"bracket-lo", 1.05},
                    {"bracket-hi", 1.25}};
    j["moments-estar"] = {{"R", "50,100,200"}, {"p", 2.0}};
    j["moments-g"] = {{"R", "10000,20000"}, {"sigma", 0.4}, {"k", 1}};
    j["gaps-verify"] = {{"nu", "1,10,25"}, {"a", "1,1,1"}, {"n", 2}, {"alpha", "0,0.25,0.5,0.75,1"}};
    j["mconv-verify"] = {{"N", 8}, {"K", 2.0}, {"R", "32,64,128"}, {"V", "0.5,1,2"},
                         {"terminal-threshold", 5e-6}};
    j["hoelder"] = {{"R", "100,200,400"}, {"p", 2.0}, {"sigma", 0.25}};
    j["diagonal"] = {{"tuple-limit", 20}, {"cutoff", 3}};
    j["quadrature"] = {{"panels_per_period", 4}, {"nodes_per_panel", 8}, {"max_refinements", 5}};
    j["frozen"] = {{"voronoi_corr_threshold", 0.75},
                   {"correlate_I_R0", 125.0},
                   {"m_sigma_bracket", "sigma=0.8 ladder 125..1000: [1.05, 1.25]"},
                   {"mconv_terminal_threshold", 5e-6}};
    return j;
}

std::vector<std::complex<double>> parse_complex_list(const std::vector<std::string>& raw) {
    // accepts "1", "-2.5", "3+4i", "0.5-1i"
    std::vector<std::complex<double>> out;
    for (const auto& s : raw) {
        double re = 0.0, im = 0.0;
        const auto ipos = s.find('i');
        if (ipos == std::string::npos) {
            re = std::stod(s);
        } else {
            // split at the last +/- that is not the leading sign
            std::size_t split = std::string::npos;
            for (std::size_t i = 1; i + 1 < s.size(); ++i)
                if (s[i] == '+' || s[i] == '-') split = i;
            if (split == std::string::npos) {
                im = std::stod(s.substr(0, ipos).empty() ? "1" : s.substr(0, ipos));
            } else {
                re = std::stod(s.substr(0, split));
                const std::string imag_part = s.substr(split, ipos - split);
                im = (imag_part == "+" || imag_part == "-") ? std::stod(imag_part + "1")
                                                            : std::stod(imag_part);
            }
        }
        out.emplace_back(re, im);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonator-lab: lattice point counting, resonator kernels and correlation "
                 "experiments"};
    app.require_subcommand(1);

    // ---- constants ----
    CommonOptions c_const;
    std::int64_t prime_limit = 1'000'000, alt_limit = 100'000;
    auto* cmd_const = app.add_subcommand("constants", "zeta(3), the Euler product C0, its "
                                                      "Moebius-sum twin and the display variant");
    cmd_const->add_option("--prime-limit", prime_limit, "Euler product truncation")
        ->capture_default_str();
    cmd_const->add_option("--alt-limit", alt_limit, "Moebius v-sum truncation")
        ->capture_default_str();
    add_common(cmd_const, c_const);

    // ---- v-eval ----
    CommonOptions c_veval;
    std::int64_t d_max = 15;
    auto* cmd_veval = app.add_subcommand("v-eval", "v(d) by formula, brute force and Gauss sums");
    cmd_veval->add_option("--d-max", d_max, "largest d for the brute-force comparison (<= 20)")
        ->capture_default_str();
    add_common(cmd_veval, c_veval);

    // ---- count ----
    CommonOptions c_count;
    std::vector<double> radii{1.0, 1.5, 2.0, 4.0, 8.0};
    auto* cmd_count = app.add_subcommand("count", "lattice and visible point counts");
    cmd_count->add_option("--radii", radii, "radii to evaluate")->delimiter(',')
        ->capture_default_str();
    add_common(cmd_count, c_count);

    // ---- error-term ----
    CommonOptions c_err;
    double r_lo = 50.0, r_hi = 100.0;
    bool voronoi = false;
    std::int64_t n_max = 0;
    auto* cmd_err = app.add_subcommand("error-term", "piecewise E* series and the Voronoi "
                                                     "approximation of E");
    cmd_err->add_option("--r-lo", r_lo)->capture_default_str();
    cmd_err->add_option("--r-hi", r_hi)->capture_default_str();
    cmd_err->add_flag("--voronoi", voronoi, "correlate the Voronoi main term against exact E");
    cmd_err->add_option("--n-max", n_max, "Voronoi series cutoff (0 = table limit)");
    double corr_threshold = 0.75;
    cmd_err->add_option("--corr-threshold", corr_threshold,
                        "required Pearson correlation (frozen at 0.75 for the documented "
                        "R=200 run)")
        ->capture_default_str();
    add_common(cmd_err, c_err);

    // ---- correlate-I ----
    CommonOptions c_corr;
    std::vector<double> corr_R{125.0, 250.0, 500.0, 1000.0};
    double corr_sigma = 0.5, corr_R0 = 125.0;
    auto* cmd_corr = app.add_subcommand("correlate-I", "correlation I(R) of g_sigma against E*");
    cmd_corr->add_option("--R", corr_R, "R ladder")->delimiter(',')->capture_default_str();
    cmd_corr->add_option("--sigma", corr_sigma)->capture_default_str();
    cmd_corr->add_option("--R0", corr_R0, "frozen negativity threshold")->capture_default_str();
    add_common(cmd_corr, c_corr);

    // ---- m-sigma ----
    CommonOptions c_msig;
    std::vector<double> msig_R{125.0, 250.0, 500.0, 1000.0};
    double msig_sigma = 0.8, bracket_lo = 1.05, bracket_hi = 1.25;
    auto* cmd_msig = app.add_subcommand("m-sigma", "arithmetic double sum M_sigma(R)");
    cmd_msig->add_option("--R", msig_R, "R ladder")->delimiter(',')->capture_default_str();
    cmd_msig->add_option("--sigma", msig_sigma)->capture_default_str();
    cmd_msig->add_option("--bracket-lo", bracket_lo, "frozen bracket for the compensated ratio")
        ->capture_default_str();
    cmd_msig->add_option("--bracket-hi", bracket_hi)->capture_default_str();
    add_common(cmd_msig, c_msig);

    // ---- moments-estar ----
    CommonOptions c_mest;
    std::vector<double> mest_R{50.0, 100.0, 200.0};
    double mest_p = 2.0;
    auto* cmd_mest = app.add_subcommand("moments-estar", "p-th moments of |E*| against dnu");
    cmd_mest->add_option("--R", mest_R, "R ladder")->delimiter(',')->capture_default_str();
    cmd_mest->add_option("--p", mest_p, "moment exponent (> 1)")->capture_default_str();
    add_common(cmd_mest, c_mest);

    // ---- moments-g ----
    CommonOptions c_mg;
    std::vector<double> mg_R{10'000.0, 20'000.0};
    double mg_sigma = 0.4;
    int mg_k = 1;
    auto* cmd_mg = app.add_subcommand("moments-g", "2k-th moments of the exponential resonator "
                                                   "vs the exact diagonal");
    cmd_mg->add_option("--R", mg_R, "R ladder")->delimiter(',')->capture_default_str();
    cmd_mg->add_option("--sigma", mg_sigma)->capture_default_str();
    cmd_mg->add_option("--k", mg_k)->capture_default_str();
    add_common(cmd_mg, c_mg);

    // ---- gaps-verify ----
    CommonOptions c_gaps;
    std::vector<std::int64_t> gaps_nu{1, 10, 25};
    std::vector<std::string> gaps_a{"1", "1", "1"};
    std::size_t gaps_n = 2;
    std::vector<double> gaps_alpha{0.0, 0.25, 0.5, 0.75, 1.0};
    auto* cmd_gaps = app.add_subcommand("gaps-verify", "gap bound, Fejer correlation identity "
                                                       "and witness search");
    cmd_gaps->add_option("--nu", gaps_nu, "strictly increasing frequencies")->delimiter(',')
        ->capture_default_str();
    cmd_gaps->add_option("--a", gaps_a, "coefficients (complex, e.g. 3+4i)")->delimiter(',')
        ->capture_default_str();
    cmd_gaps->add_option("--n", gaps_n, "1-based interior index")->capture_default_str();
    cmd_gaps->add_option("--alpha", gaps_alpha, "alpha grid in [0,1]")->delimiter(',')
        ->capture_default_str();
    add_common(cmd_gaps, c_gaps);

    // ---- mconv-verify ----
    CommonOptions c_mconv;
    int mconv_N = 8;
    double mconv_K = 2.0, mconv_threshold = 5e-6;
    std::vector<double> mconv_R{32.0, 64.0, 128.0};
    std::vector<double> mconv_V{0.5, 1.0, 2.0};
    auto* cmd_mconv = app.add_subcommand("mconv-verify", "Dirichlet-kernel correlation of the "
                                                         "multiplicative convolution G");
    cmd_mconv->add_option("--N", mconv_N)->capture_default_str();
    cmd_mconv->add_option("--K", mconv_K)->capture_default_str();
    cmd_mconv->add_option("--R", mconv_R, "R ladder (each >= 4N)")->delimiter(',')
        ->capture_default_str();
    cmd_mconv->add_option("--V", mconv_V, "V grid for the hypothesis triple sum")->delimiter(',')
        ->capture_default_str();
    cmd_mconv->add_option("--terminal-threshold", mconv_threshold)->capture_default_str();
    add_common(cmd_mconv, c_mconv);

    // ---- hoelder ----
    CommonOptions c_hold;
    std::vector<double> hold_R{100.0, 200.0, 400.0};
    double hold_p = 2.0, hold_sigma = 0.25;
    auto* cmd_hold = app.add_subcommand("hoelder", "Hoelder chain |I|^p <= moment(E*) "
                                                   "moment(g)^{p/q}");
    cmd_hold->add_option("--R", hold_R, "R ladder")->delimiter(',')->capture_default_str();
    cmd_hold->add_option("--p", hold_p)->capture_default_str();
    cmd_hold->add_option("--sigma", hold_sigma)->capture_default_str();
    add_common(cmd_hold, c_hold);

    // ---- diagonal ----
    CommonOptions c_diag;
    std::int64_t diag_tuple_limit = 20, diag_cutoff = 3;
    auto* cmd_diag = app.add_subcommand("diagonal", "Besicovitch classification and diagonal "
                                                    "moment identities");
    cmd_diag->add_option("--tuple-limit", diag_tuple_limit)->capture_default_str();
    cmd_diag->add_option("--cutoff", diag_cutoff)->capture_default_str();
    add_common(cmd_diag, c_diag);

    // ---- defaults ----
    auto* cmd_defaults = app.add_subcommand("defaults", "print every default as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_defaults->parsed()) {
            std::cout << defaults_json().dump(2) << "\n";
            return 0;
        }
        if (cmd_const->parsed()) {
            if (prime_limit < 3 || alt_limit < 1)
                throw ConfigError("constants: need prime-limit >= 3 and alt-limit >= 1");
            const auto tables = make_tables(c_const, std::max(prime_limit, alt_limit));
            return emit(run_constants(prime_limit, alt_limit, tables), c_const);
        }
        if (cmd_veval->parsed()) {
            if (d_max < 1 || d_max > 20)
                throw ConfigError("v-eval: d-max must lie in [1, 20] (brute force is O(d^4))");
            const auto tables = make_tables(c_veval, 2000);
            return emit(run_v_eval(d_max, tables), c_veval);
        }
        if (cmd_count->parsed()) {
            if (radii.empty()) throw ConfigError("count: need at least one radius");
            double top = 0.0;
            for (double r : radii) {
                if (r < 0.0) throw ConfigError("count: radii must be nonnegative");
                top = std::max(top, r);
            }
            const auto tables = make_tables(c_count, square_limit(top));
            return emit(run_count(radii, tables), c_count);
        }
        if (cmd_err->parsed()) {
            if (!(r_lo < r_hi) || r_lo < 0.0)
                throw ConfigError("error-term: need 0 <= r-lo < r-hi");
            const auto tables = make_tables(c_err, square_limit(r_hi));
            const std::int64_t nm = n_max > 0 ? n_max : tables.limit;
            return emit(run_error_term(r_lo, r_hi, tables, voronoi, nm, corr_threshold,
                                       c_err.threads),
                        c_err);
        }
        if (cmd_corr->parsed()) {
            if (corr_R.empty() || !(corr_sigma > 0.0 && corr_sigma < 2.0))
                throw ConfigError("correlate-I: need a ladder and sigma in (0,2)");
            const double top = *std::max_element(corr_R.begin(), corr_R.end());
            const auto tables = make_tables(c_corr, square_limit(2.0 * top));
            return emit(run_correlate_I(corr_R, corr_sigma, tables, corr_R0, c_corr.threads),
                        c_corr);
        }
        if (cmd_msig->parsed()) {
            if (msig_R.empty() || !(msig_sigma > 0.0 && msig_sigma < 2.0))
                throw ConfigError("m-sigma: need a ladder and sigma in (0,2)");
            const double top = *std::max_element(msig_R.begin(), msig_R.end());
            const auto tables = make_tables(c_msig, square_limit(2.0 * top));
            return emit(run_m_sigma(msig_R, msig_sigma, tables, bracket_lo, bracket_hi), c_msig);
        }
        if (cmd_mest->parsed()) {
            if (mest_R.empty() || !(mest_p > 1.0))
                throw ConfigError("moments-estar: need a ladder and p > 1");
            const double top = *std::max_element(mest_R.begin(), mest_R.end());
            const auto tables = make_tables(c_mest, square_limit(2.0 * top));
            return emit(run_moments_estar(mest_R, mest_p, tables, c_mest.threads), c_mest);
        }
        if (cmd_mg->parsed()) {
            if (mg_R.empty()) throw ConfigError("moments-g: need a ladder");
            if (!(mg_sigma > 0.0) || mg_k < 1 || !(mg_sigma < sigma_bound_for_k(mg_k)))
                throw ConfigError(
                    "moments-g: the moment hypothesis requires sigma < 2/(2^(2k-1)-1) = " +
                    std::to_string(sigma_bound_for_k(std::max(mg_k, 1))) + " for k = " +
                    std::to_string(mg_k));
            return emit(run_moments_g(mg_R, mg_sigma, mg_k, c_mg.threads), c_mg);
        }
        if (cmd_gaps->parsed()) {
            const auto a = parse_complex_list(gaps_a);
            const GapProfile profile(gaps_nu, a, gaps_n);
            for (double al : gaps_alpha)
                if (!(al >= 0.0 && al <= 1.0))
                    throw ConfigError("gaps-verify: alpha must lie in [0,1]");
            return emit(run_gaps_verify(profile, gaps_alpha, c_gaps.threads), c_gaps);
        }
        if (cmd_mconv->parsed()) {
            if (mconv_N < 1 || !(mconv_K > 1.0))
                throw ConfigError("mconv-verify: need N >= 1 and K > 1");
            for (double R : mconv_R)
                if (!(R >= 4.0 * mconv_N))
                    throw ConfigError("mconv-verify: hypothesis requires R >= 4N");
            return emit(run_mconv_verify(mconv_N, mconv_K, mconv_R, mconv_V, mconv_threshold,
                                         c_mconv.threads),
                        c_mconv);
        }
        if (cmd_hold->parsed()) {
            if (hold_R.empty() || !(hold_p > 1.0))
                throw ConfigError("hoelder: need a ladder and p > 1");
            const int k = static_cast<int>(std::ceil(hold_p / (2.0 * hold_p - 2.0)));
            if (!(hold_sigma > 0.0 && hold_sigma < sigma_bound_for_k(k)))
                throw ConfigError(
                    "hoelder: the moment hypothesis requires sigma < 2/(2^(2k-1)-1) = " +
                    std::to_string(sigma_bound_for_k(k)) + " for k = " + std::to_string(k));
            const double top = *std::max_element(hold_R.begin(), hold_R.end());
            const auto tables = make_tables(c_hold, square_limit(2.0 * top));
            return emit(run_hoelder(hold_R, hold_p, hold_sigma, tables, c_hold.threads), c_hold);
        }
        if (cmd_diag->parsed()) {
            if (diag_tuple_limit < 1 || diag_cutoff < 1)
                throw ConfigError("diagonal: need positive tuple-limit and cutoff");
            const auto tables = make_tables(c_diag, std::max<std::int64_t>(diag_tuple_limit, 100));
            return emit(run_diagonal(diag_tuple_limit, diag_cutoff, tables), c_diag);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
