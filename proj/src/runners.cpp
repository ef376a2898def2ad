#include <array>
#include "rlab/runners.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rlab/parallel.hpp"

namespace rlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

CheckResult check(std::string name, bool pass, std::string detail) {
    return CheckResult{std::move(name), pass, std::move(detail)};
}

QuadraturePolicy base_policy(unsigned threads, double tol) {
    QuadraturePolicy p;
    p.threads = threads;
    p.absolute_tolerance = tol;
    p.max_refinements = 5;
    return p;
}

}  // namespace

ExperimentReport run_constants(std::int64_t prime_limit, std::int64_t alt_limit,
                               const ArithTables& tables) {
    ExperimentReport rep;
    rep.experiment = "constants";
    rep.params["prime_limit"] = static_cast<double>(prime_limit);
    rep.params["alt_limit"] = static_cast<double>(alt_limit);
    rep.prediction = "compensated = C0(limit) / C0(prime_limit)";

    const auto cr = make_constants_report(prime_limit, alt_limit, tables, 1.5);
    rep.constants["zeta3"] = cr.zeta3;
    rep.constants["C0"] = cr.C0;
    rep.constants["C0_tail_bound"] = cr.C0_tail_bound;
    rep.constants["C0_alt"] = cr.C0_alt;
    rep.constants["C0_alt_tail_bound"] = cr.C0_alt_tail_bound;
    rep.constants["C0_display"] = cr.C0_display;
    rep.constants["C"] = cr.C;
    const double seven = 7.0 / (kPi * kPi);
    rep.constants["seven_over_pi2"] = seven;

    // convergence ladder of prime limits
    for (std::int64_t lim = 1000; lim <= prime_limit; lim *= 10) {
        const auto c = euler_product_C0(lim, tables);
        rep.series.push_back({static_cast<double>(lim), c.value, c.value / cr.C0, c.bound});
    }

    const double gap = std::abs(cr.C0 - cr.C0_alt);
    rep.checks.push_back(check(
        "euler product and moebius v-sum agree within combined tail bounds",
        gap <= cr.C0_tail_bound + cr.C0_alt_tail_bound,
        "gap " + fmt(gap) + " vs bounds " + fmt(cr.C0_tail_bound + cr.C0_alt_tail_bound)));
    const double rel = std::abs(cr.C0 - seven) / seven;
    rep.checks.push_back(
        check("C0 within 4% of 7/pi^2", rel < 0.04, "relative gap " + fmt(rel)));
    rep.checks.push_back(check("zeta3 in (1.2020, 1.2021)",
                               cr.zeta3 > 1.2020 && cr.zeta3 < 1.2021, fmt(cr.zeta3)));
    const double disp_gap = std::abs(cr.C0_display - cr.C0);
    rep.checks.push_back(check(
        "variant Euler product is a genuinely different number (documented discrepancy)",
        disp_gap > 10.0 * (cr.C0_tail_bound + cr.C0_alt_tail_bound),
        "variant " + fmt(cr.C0_display) + " vs " + fmt(cr.C0)));
    return rep;
}

ExperimentReport run_v_eval(std::int64_t d_max, const ArithTables& tables) {
    ExperimentReport rep;
    rep.experiment = "v-eval";
    rep.params["d_max"] = static_cast<double>(d_max);
    rep.prediction = "compensated = v_formula(d) / v_bruteforce(d)";

    bool all_equal = true;
    for (std::int64_t d = 1; d <= std::min<std::int64_t>(d_max, 15); ++d) {
        if (tables.mu[d] == 0) continue;
        const auto vf = v_formula(d, tables);
        const auto vb = v_bruteforce(d);
        all_equal = all_equal && (vf == vb);
        rep.series.push_back({static_cast<double>(d), static_cast<double>(vf),
                              static_cast<double>(vf) / static_cast<double>(vb), 0.0});
    }
    rep.checks.push_back(check("v_formula equals v_bruteforce for squarefree d <= 15",
                               all_equal, ""));

    bool gauss_ok = true;
    std::string gauss_detail;
    for (std::int64_t p : {3, 5, 7}) {
        const double g = gauss_sum_v(p);
        const auto vf = static_cast<double>(v_formula(p, tables));
        gauss_ok = gauss_ok && std::abs(g - vf) < 1e-6 * vf;
        gauss_detail += "p=" + std::to_string(p) + ":" + fmt(g) + " ";
    }
    rep.checks.push_back(check("gauss_sum_v matches v_formula for p in {3,5,7}", gauss_ok,
                               gauss_detail));

    bool doubling_ok = true;
    for (std::int64_t d = 1; d <= 7; d += 2) {
        if (tables.mu[d] == 0) continue;
        doubling_ok = doubling_ok && (v_formula(2 * d, tables) == 8 * v_formula(d, tables));
    }
    rep.checks.push_back(check("v(2d) = 8 v(d) for odd squarefree d <= 7", doubling_ok, ""));

    bool growth_ok = true;
    for (std::int64_t d = 2; d <= std::min<std::int64_t>(tables.limit, 1000); ++d) {
        if (tables.mu[d] == 0) continue;
        double bound = std::pow(static_cast<double>(d), 4.0);
        std::int64_t n = d;
        while (n > 1) {
            const std::int64_t p = tables.spf[n];
            n /= p;
            bound *= 1.0 + 1.0 / static_cast<double>(p);
        }
        growth_ok = growth_ok && (static_cast<double>(v_formula(d, tables)) < bound);
    }
    rep.checks.push_back(check("v(d) < d^4 prod(1+1/p) for squarefree d <= 1000", growth_ok, ""));
    return rep;
}

ExperimentReport run_count(const std::vector<double>& radii, const ArithTables& tables) {
    ExperimentReport rep;
    rep.experiment = "count";
    rep.prediction = "compensated = N*(R) / ((4 pi / (3 zeta3)) R^3)";
    const double z3 = zeta3(1'000'000).value;
    rep.constants["zeta3"] = z3;
    const double coef = 4.0 * kPi / (3.0 * z3);

    bool methods_agree = true;
    for (const double R : radii) {
        const auto direct = count_visible(R, tables, VisibleMethod::direct);
        const auto moebius = count_visible(R, tables, VisibleMethod::moebius);
        methods_agree = methods_agree && (direct == moebius);
        const double dens = (R > 0.0) ? static_cast<double>(direct) / (coef * R * R * R) : 0.0;
        rep.series.push_back({R, static_cast<double>(direct), dens, 0.0});
        rep.checks.push_back(check("direct equals moebius at R = " + fmt(R), direct == moebius,
                                   "N*=" + std::to_string(direct) + ", N=" +
                                       std::to_string(count_lattice(R, tables))));
    }
    rep.checks.push_back(check("exact Moebius inversion on all requested radii", methods_agree, ""));
    return rep;
}

ExperimentReport run_error_term(double r_lo, double r_hi, const ArithTables& tables,
                                bool with_voronoi, std::int64_t voronoi_n_max,
                                double voronoi_corr_threshold, unsigned threads) {
    ExperimentReport rep;
    rep.experiment = "error-term";
    rep.params["r_lo"] = r_lo;
    rep.params["r_hi"] = r_hi;
    rep.prediction = "compensated = E*(t) / t";

    const auto series = build_error_series(r_lo, r_hi, tables);
    rep.constants["zeta3"] = series.zeta3_value;
    rep.constants["events"] = static_cast<double>(series.events());
    rep.constants["base_count"] = static_cast<double>(series.base_count);

    bool reconstruct_ok = true;
    const int samples = 32;
    for (int i = 0; i <= samples; ++i) {
        const double t = r_lo + (r_hi - r_lo) * (i + 0.31) / (samples + 1);
        const double estar = series.estar(t);
        reconstruct_ok = reconstruct_ok &&
                         (series.nstar_at(t) == count_visible(t, tables, VisibleMethod::moebius));
        rep.series.push_back({t, estar, estar / t, 0.0});
    }
    rep.checks.push_back(
        check("series reconstruction matches count_visible at sample radii", reconstruct_ok, ""));

    if (with_voronoi) {
        // correlation of the truncated Voronoi main term against exact E(t),
        // for both prefactor readings; thresholds frozen from the oracle run.
        const double R = r_lo;
        std::vector<std::int64_t> cumulative(static_cast<std::size_t>(radius_sq_floor(r_hi)) + 1);
        std::int64_t acc = 0;
        for (std::size_t m = 0; m < cumulative.size(); ++m) {
            acc += tables.r3[m];
            cumulative[m] = acc;
        }
        const int pts = 1000;
        for (auto pref : {VoronoiPrefactor::anchor_R, VoronoiPrefactor::radius_t}) {
            const VoronoiSpec spec(R, voronoi_n_max, MollifierPhi::standard(), pref);
            std::vector<double> ev(pts), ee(pts);
            parallel::for_index(pts, threads, [&](std::size_t i) {
                const double t = R + (r_hi - R) * (static_cast<double>(i) + 0.5) / pts;
                ev[i] = voronoi_E(t, spec, tables);
                ee[i] = static_cast<double>(cumulative[radius_sq_floor(t)]) -
                        4.0 * kPi / 3.0 * t * t * t;
            });
            double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            for (int i = 0; i < pts; ++i) {
                sx += ev[i];
                sy += ee[i];
                sxx += ev[i] * ev[i];
                syy += ee[i] * ee[i];
                sxy += ev[i] * ee[i];
            }
            const double cov = sxy / pts - (sx / pts) * (sy / pts);
            const double vx = sxx / pts - (sx / pts) * (sx / pts);
            const double vy = syy / pts - (sy / pts) * (sy / pts);
            const double corr = cov / std::sqrt(vx * vy);
            const bool anchor = pref == VoronoiPrefactor::anchor_R;
            rep.constants[anchor ? "voronoi_corr_prefactor_R" : "voronoi_corr_prefactor_t"] = corr;
            rep.checks.push_back(check(
                std::string("voronoi main term correlates with exact E (prefactor ") +
                    (anchor ? "R" : "t") + ")",
                corr > voronoi_corr_threshold,
                "pearson " + fmt(corr) + " vs threshold " + fmt(voronoi_corr_threshold)));
        }
    }
    return rep;
}

ExperimentReport run_correlate_I(const std::vector<double>& R_ladder, double sigma,
                                 const ArithTables& tables, double R0_negativity,
                                 unsigned threads) {
    ExperimentReport rep;
    rep.experiment = "correlate-I";
    rep.params["sigma"] = sigma;
    rep.params["R0"] = R0_negativity;
    rep.prediction = "compensated = I(R) / (-sigma C R log R)";

    const auto c0 = euler_product_C0(std::min<std::int64_t>(tables.limit, 1'000'000), tables);
    const double C = c0.value * 1.5;  // integral of t psi(t) dt = 3/2 for the unit window
    rep.constants["C0"] = c0.value;
    rep.constants["C"] = C;

    bool negative_ok = true;
    std::vector<double> comp;
    for (const double R : R_ladder) {
        const auto weight = WeightMeasure::unit_window(R);
        const auto series = build_error_series(R, 2.0 * R, tables);
        const auto point =
            correlation_I(R, sigma, series, weight, base_policy(threads, 1e-6 * R));
        const double predicted = -sigma * C * R * std::log(R);
        const double ratio = point.value / predicted;
        comp.push_back(ratio);
        rep.series.push_back({R, point.value, ratio, point.error_estimate});
        if (R >= R0_negativity && !(point.value < 0.0)) negative_ok = false;
    }
    rep.checks.push_back(check("I(R) < 0 for every ladder point with R >= R0", negative_ok, ""));
    if (comp.size() >= 2) {
        const bool drift = std::abs(comp.back() - 1.0) < std::abs(comp.front() - 1.0);
        rep.checks.push_back(check("compensated ratio drifts toward 1 across the ladder", drift,
                                   "first " + fmt(comp.front()) + ", last " + fmt(comp.back())));
    }
    return rep;
}

ExperimentReport run_m_sigma(const std::vector<double>& R_ladder, double sigma,
                             const ArithTables& tables, double bracket_lo, double bracket_hi) {
    ExperimentReport rep;
    rep.experiment = "m-sigma";
    rep.params["sigma"] = sigma;
    rep.params["bracket_lo"] = bracket_lo;
    rep.params["bracket_hi"] = bracket_hi;
    rep.prediction = "compensated = M_sigma(R) / (2 pi sigma C0 log R)";

    const auto c0 = euler_product_C0(std::min<std::int64_t>(tables.limit, 1'000'000), tables);
    rep.constants["C0"] = c0.value;

    const auto& phi = MollifierPhi::standard();
    bool bracket_ok = true;
    std::vector<double> comp;
    for (const double R : R_ladder) {
        const double m = compute_M_sigma(R, sigma, tables, phi);
        const double ratio = m / (2.0 * kPi * sigma * c0.value * std::log(R));
        comp.push_back(ratio);
        rep.series.push_back({R, m, ratio, 0.0});
        if (!(ratio >= bracket_lo && ratio <= bracket_hi)) bracket_ok = false;
    }
    rep.checks.push_back(check("compensated ratio lies in the frozen bracket", bracket_ok,
                               "[" + fmt(bracket_lo) + ", " + fmt(bracket_hi) + "]"));
    if (comp.size() >= 2) {
        const bool drift = std::abs(comp.back() - 1.0) < std::abs(comp.front() - 1.0);
        rep.checks.push_back(check("compensated ratio drifts toward 1 across the ladder", drift,
                                   "first " + fmt(comp.front()) + ", last " + fmt(comp.back())));
    }
    return rep;
}

ExperimentReport run_moments_estar(const std::vector<double>& R_ladder, double p,
                                   const ArithTables& tables, unsigned threads) {
    ExperimentReport rep;
    rep.experiment = "moments-estar";
    rep.params["p"] = p;
    rep.prediction = "compensated = moment / (R^p (log R)^{p/2})";

    for (const double R : R_ladder) {
        const auto weight = WeightMeasure::unit_window(R);
        const auto series = build_error_series(R, 2.0 * R, tables);
        const auto m =
            moment_Estar(series, p, weight, base_policy(threads, 1e-6 * std::pow(R, p)));
        const double scale = std::pow(R, p) * std::pow(std::log(R), p / 2.0);
        rep.series.push_back({R, m.value, m.value / scale, m.error_estimate});
    }
    bool positive = true;
    for (const auto& pt : rep.series) positive = positive && pt.raw > 0.0;
    rep.checks.push_back(check("moments are strictly positive", positive, ""));
    return rep;
}

ExperimentReport run_moments_g(const std::vector<double>& R_ladder, double sigma, int k,
                               unsigned threads) {
    ExperimentReport rep;
    rep.experiment = "moments-g";
    rep.params["sigma"] = sigma;
    rep.params["k"] = k;
    rep.prediction = "compensated = numeric / diagonal_prediction";

    bool within = true;
    for (const double R : R_ladder) {
        const auto weight = WeightMeasure::unit_window(R);
        const auto res = moment_g_sigma(R, sigma, k, weight, base_policy(threads, 1e-7));
        rep.series.push_back({R, res.numeric, res.numeric / res.diagonal_prediction,
                              res.error_estimate});
        within = within && std::abs(res.numeric - res.diagonal_prediction) <
                               0.05 * res.diagonal_prediction;
    }
    rep.checks.push_back(
        check("numeric within 5% of the exact diagonal at every ladder point", within, ""));
    if (rep.series.size() >= 2) {
        const double first = std::abs(rep.series.front().compensated - 1.0);
        const double last = std::abs(rep.series.back().compensated - 1.0);
        rep.checks.push_back(check("diagonal gap shrinks across the ladder", last < first,
                                   "first " + fmt(first) + ", last " + fmt(last)));
    }
    return rep;
}

ExperimentReport run_gaps_verify(const GapProfile& profile, const std::vector<double>& alphas,
                                 unsigned threads) {
    ExperimentReport rep;
    rep.experiment = "gaps-verify";
    rep.params["n_index"] = static_cast<double>(profile.n_index);
    rep.params["lambda"] = static_cast<double>(profile.gap);
    rep.params["nu_n"] = static_cast<double>(profile.nu_n());
    rep.prediction = "compensated = witness margin at alpha";

    QuadraturePolicy policy;
    policy.threads = threads;
    const auto corr = gaps_correlation(profile, policy);
    const auto expected = 0.5 * profile.a_n();
    rep.constants["correlation_re"] = corr.real();
    rep.constants["correlation_im"] = corr.imag();
    rep.checks.push_back(check("correlation equals a_n/2 to 1e-9",
                               std::abs(corr - expected) < 1e-9,
                               "got " + fmt(corr.real()) + (corr.imag() < 0 ? "-" : "+") +
                                   fmt(std::abs(corr.imag())) + "i"));

    for (const double alpha : alphas) {
        const double bound = gaps_bound(profile, alpha);
        const auto wit = gaps_witness(profile, alpha);
        rep.series.push_back({alpha, bound, wit.margin, 0.0});
        rep.checks.push_back(check("witness margin positive at alpha = " + fmt(alpha),
                                   wit.margin > 0.0,
                                   "x=" + fmt(wit.x) + " margin=" + fmt(wit.margin) +
                                       " grid_fraction=" + fmt(wit.grid_fraction)));
    }

    // grid checks of the two elementary bounds the gap argument leans on
    bool csc_ok = true;
    for (int i = 1; i <= 10'000; ++i) {
        const double t = 0.5 * static_cast<double>(i) / 10'000.0;
        const double lhs = 1.0 / std::pow(std::sin(kPi * t), 2.0);
        if (!(lhs <= 1.0 / std::pow(kPi * t, 2.0) + 0.6)) csc_ok = false;
    }
    rep.checks.push_back(check("csc^2(pi t) <= (pi t)^-2 + 0.6 on (0, 1/2]", csc_ok, ""));
    const auto fa = f_alpha_monotonicity(10'000);
    rep.checks.push_back(check("f(alpha) strictly decreasing with f(1) = 0",
                               fa.strictly_decreasing && std::abs(fa.f_at_one) < 1e-14,
                               "f(0)=" + fmt(fa.f_at_zero) + " min_gap=" + fmt(fa.min_gap)));
    return rep;
}

ExperimentReport run_mconv_verify(int N, double K, const std::vector<double>& R_ladder,
                                  const std::vector<double>& V_grid, double terminal_threshold,
                                  unsigned threads) {
    ExperimentReport rep;
    rep.experiment = "mconv-verify";
    rep.params["N"] = static_cast<double>(N);
    rep.params["K"] = K;
    rep.params["terminal_threshold"] = terminal_threshold;
    rep.prediction = "compensated = |integral - scriptB| / scriptB";

    const auto inst = fixtures::character_instance(N, K);
    rep.constants["scriptB"] = inst.scriptB;
    if (N == 5)
        rep.checks.push_back(check("hand-checked scriptB = 5 for N = 5",
                                   std::abs(inst.scriptB - 5.0) < 1e-12, fmt(inst.scriptB)));

    std::vector<double> gaps;
    for (const double R : R_ladder) {
        const auto corr = mconv_correlation(inst, R, WeightMeasure::wide_window(R),
                                            base_policy(threads, 1e-8));
        const double relgap = std::abs(corr.value - corr.scriptB) / corr.scriptB;
        gaps.push_back(relgap);
        rep.series.push_back({R, corr.value.real(), relgap, corr.error_estimate});
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) decreasing = decreasing && gaps[i] < gaps[i - 1];
    rep.checks.push_back(check("relative gap to scriptB decreases along the R ladder", decreasing,
                               ""));
    if (!gaps.empty())
        rep.checks.push_back(check("terminal relative gap below the frozen threshold",
                                   gaps.back() < terminal_threshold,
                                   fmt(gaps.back()) + " vs " + fmt(terminal_threshold)));

    if (!V_grid.empty() && !R_ladder.empty()) {
        const auto pts = mconv_hypothesis(inst, R_ladder.back(), V_grid);
        std::string detail;
        for (const auto& pt : pts)
            detail += "V=" + fmt(pt.V) + " ratio=" + fmt(pt.ratio) + "; ";
        rep.checks.push_back(
            check("hypothesis triple-sum ratios (reported, no assertion)", true, detail));
    }
    return rep;
}

ExperimentReport run_hoelder(const std::vector<double>& R_ladder, double p, double sigma,
                             const ArithTables& tables, unsigned threads) {
    ExperimentReport rep;
    rep.experiment = "hoelder";
    rep.params["p"] = p;
    rep.params["sigma"] = sigma;
    rep.prediction = "compensated = slack / rhs";

    for (const double R : R_ladder) {
        const auto weight = WeightMeasure::unit_window(R);
        const auto chain = hoelder_chain(R, p, sigma, tables, weight,
                                         base_policy(threads, 1e-6 * std::pow(R, p)));
        rep.series.push_back({R, chain.slack, chain.slack / chain.rhs, chain.combined_error});
        rep.checks.push_back(check(
            "Hoelder inequality holds with nonnegative slack at R = " + fmt(R),
            chain.slack >= -(2.0 * chain.combined_error + 1e-12),
            "|I|^p=" + fmt(chain.I_abs_p) + " rhs=" + fmt(chain.rhs) + " slack=" +
                fmt(chain.slack)));
        rep.checks.push_back(check("Lyapunov ||g||_q <= ||g||_2k at R = " + fmt(R),
                                   chain.lyapunov_lhs <=
                                       chain.lyapunov_rhs * (1.0 + 1e-9) + chain.combined_error,
                                   fmt(chain.lyapunov_lhs) + " vs " + fmt(chain.lyapunov_rhs)));
    }
    return rep;
}

ExperimentReport run_diagonal(std::int64_t tuple_limit, std::int64_t cutoff,
                              const ArithTables& tables) {
    ExperimentReport rep;
    rep.experiment = "diagonal";
    rep.params["tuple_limit"] = static_cast<double>(tuple_limit);
    rep.params["cutoff"] = static_cast<double>(cutoff);
    rep.prediction = "compensated = enumeration / closed form";

    // Besicovitch classification vs floating point over the full 4-tuple box.
    std::vector<double> root(static_cast<std::size_t>(tuple_limit) + 1);
    for (std::int64_t n = 1; n <= tuple_limit; ++n)
        root[n] = std::sqrt(static_cast<double>(n));
    std::int64_t mismatches = 0, dead_zone = 0, zeros = 0;
    std::array<std::int64_t, 4> tup{};
    for (tup[0] = 1; tup[0] <= tuple_limit; ++tup[0])
        for (tup[1] = 1; tup[1] <= tuple_limit; ++tup[1])
            for (tup[2] = 1; tup[2] <= tuple_limit; ++tup[2])
                for (tup[3] = 1; tup[3] <= tuple_limit; ++tup[3]) {
                    const bool exact = classify_L_zero(tup, tables).is_zero;
                    const double l = root[tup[0]] + root[tup[1]] - root[tup[2]] - root[tup[3]];
                    const double al = std::abs(l);
                    if (al >= 1e-9 && al < 1e-6) ++dead_zone;
                    if (exact != (al < 1e-9)) ++mismatches;
                    if (exact) ++zeros;
                }
    rep.constants["zero_tuples"] = static_cast<double>(zeros);
    rep.checks.push_back(check("classification agrees with floating point on all 4-tuples",
                               mismatches == 0, std::to_string(mismatches) + " mismatches"));
    rep.checks.push_back(check("no tuple in the dead zone [1e-9, 1e-6)", dead_zone == 0,
                               std::to_string(dead_zone) + " hits"));

    for (std::int64_t c = 1; c <= cutoff; ++c) {
        const double formula = diagonal_moment_formula(c, 2);
        const double enumerated = diagonal_moment_enumeration(c, 2);
        rep.series.push_back({static_cast<double>(c), formula, enumerated / formula, 0.0});
    }
    bool exact_match = true;
    for (const auto& pt : rep.series)
        exact_match = exact_match && std::abs(pt.compensated - 1.0) < 1e-12;
    rep.checks.push_back(
        check("k=2 enumeration equals the combinatorial formula", exact_match, ""));
    return rep;
}

}  // namespace rlab
