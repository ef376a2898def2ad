#include "rlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "int_util.hpp"

namespace rlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::int64_t ceil_at_least(double x) {
    // smallest integer >= x, snapping near-integers downward
    const double c = std::ceil(x - 1e-9 * std::max(1.0, std::abs(x)));
    return static_cast<std::int64_t>(c);
}

std::int64_t floor_strictly_below(double x) {
    // largest integer < x, snapping near-integers
    const double eps = 1e-9 * std::max(1.0, std::abs(x));
    const double r = std::round(x);
    if (std::abs(x - r) < eps) return static_cast<std::int64_t>(r) - 1;
    return static_cast<std::int64_t>(std::floor(x));
}

int mu_by_trial_division(std::int64_t n) {
    int mu = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

// ---------------------------------------------------------------------------
// correlation_I and M_sigma
// ---------------------------------------------------------------------------

CorrelationPoint correlation_I(double R, double sigma, const ErrorTermSeries& series,
                               const WeightMeasure& weight, QuadraturePolicy policy) {
    const GSigmaSpec spec(R, sigma);
    policy.max_frequency = std::pow(R, sigma / 2.0) + 3.0;
    const auto r = integrate_with_events(series, weight, policy,
                                         [&](double x) { return eval_g_sigma(x, spec); });
    return {r.value, r.error_estimate};
}

CorrelationPoint correlation_I(double R, double sigma, const ArithTables& tables,
                               const WeightMeasure& weight, QuadraturePolicy policy) {
    if (weight.scale() != R)
        throw DomainError("correlation_I: the weight must be dnu scaled by R");
    const auto series = build_error_series(weight.scaled_lo(), weight.scaled_hi(), tables);
    return correlation_I(R, sigma, series, weight, policy);
}

double compute_M_sigma(double R, double sigma, const ArithTables& tables,
                       const MollifierPhi& mollifier) {
    if (!(R > 1.0)) throw DomainError("compute_M_sigma: R must exceed 1");
    if (!(sigma > 0.0 && sigma < 2.0)) throw DomainError("compute_M_sigma: sigma must lie in (0,2)");
    const auto m_cut = static_cast<std::int64_t>(std::floor(std::pow(R, sigma) + 1e-9));
    if (m_cut > tables.limit) throw RangeError("compute_M_sigma: R^sigma beyond table limit");
    const double M = R / std::cbrt(std::log(R));
    const auto d_max = floor_strictly_below(2.0 * R);

    double sum = 0.0;
    for (std::int64_t d = 1; d <= d_max; ++d) {
        if (tables.mu[d] == 0) continue;
        const double dd = static_cast<double>(d);
        const std::int64_t m_max = std::min(m_cut, tables.limit / (d * d));
        double inner = 0.0;
        for (std::int64_t m = 1; m <= m_max; ++m) {
            const std::int64_t n = m * d * d;
            if (tables.r3[n] == 0) continue;
            const double sqrt_m = std::sqrt(static_cast<double>(m));
            const double hat = mollifier.hat(dd * sqrt_m / M);
            if (std::abs(hat) < 1e-14) continue;
            // mu(d) a_n / (d sqrt(m n)) = mu(d) r3(m d^2) hat / (d^3 m^{3/2})
            inner += static_cast<double>(tables.r3[n]) * hat /
                     (sqrt_m * static_cast<double>(m));
        }
        sum += static_cast<double>(tables.mu[d]) * inner / (dd * dd * dd);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

CorrelationPoint moment_Estar(const ErrorTermSeries& series, double p,
                              const WeightMeasure& weight, QuadraturePolicy policy) {
    if (!(p > 1.0)) throw DomainError("moment_Estar: p must exceed 1");
    const auto r = integrate_series_weighted(
        series, weight, policy,
        [p](double, double estar) { return std::pow(std::abs(estar), p); });
    return {r.value, r.error_estimate};
}

CorrelationPoint moment_Estar(double R, double p, const ArithTables& tables,
                              const WeightMeasure& weight, QuadraturePolicy policy) {
    if (weight.scale() != R)
        throw DomainError("moment_Estar: the weight must be dnu scaled by R");
    const auto series = build_error_series(weight.scaled_lo(), weight.scaled_hi(), tables);
    return moment_Estar(series, p, weight, policy);
}

double sigma_bound_for_k(int k) {
    return 2.0 / (std::pow(2.0, 2.0 * k - 1.0) - 1.0);
}

double diagonal_moment_enumeration(std::int64_t cutoff, int k) {
    if (k < 1) throw DomainError("diagonal_moment_enumeration: k must be positive");
    double work = std::pow(static_cast<double>(cutoff), 2.0 * k);
    if (work > 3e7) throw ResourceError("diagonal_moment_enumeration: cutoff^(2k) too large");

    const int tuple_len = 2 * k;
    std::vector<std::int64_t> tuple(tuple_len, 1);
    std::vector<std::int64_t> lhs(k), rhs(k);
    double sum = 0.0;
    while (true) {
        for (int i = 0; i < k; ++i) lhs[i] = tuple[i];
        for (int i = 0; i < k; ++i) rhs[i] = tuple[k + i];
        std::sort(lhs.begin(), lhs.end());
        std::sort(rhs.begin(), rhs.end());
        if (lhs == rhs) {
            double prod = 1.0;
            for (const auto n : tuple) prod *= static_cast<double>(n);
            sum += 1.0 / std::sqrt(prod);
        }
        int pos = tuple_len - 1;
        while (pos >= 0 && tuple[pos] == cutoff) {
            tuple[pos] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++tuple[pos];
    }
    return sum;
}

double diagonal_moment_formula(std::int64_t cutoff, int k) {
    double h1 = 0.0, h2 = 0.0;
    for (std::int64_t n = 1; n <= cutoff; ++n) {
        h1 += 1.0 / static_cast<double>(n);
        h2 += 1.0 / static_cast<double>(n * n);
    }
    if (k == 1) return h1;
    if (k == 2) return 2.0 * h1 * h1 - h2;
    throw DomainError("diagonal_moment_formula: closed form only for k <= 2");
}

GMomentResult moment_g_sigma(double R, double sigma, int k, const WeightMeasure& weight,
                             QuadraturePolicy policy) {
    if (k < 1) throw DomainError("moment_g_sigma: k must be positive");
    if (!(sigma < sigma_bound_for_k(k)))
        throw DomainError("moment_g_sigma: hypothesis requires sigma < 2/(2^(2k-1)-1) = " +
                          std::to_string(sigma_bound_for_k(k)) + " for k = " + std::to_string(k));
    const GSigmaSpec spec(R, sigma);
    policy.max_frequency = 2.0 * k * std::sqrt(static_cast<double>(spec.cutoff)) + 1.0;
    const auto r = integrate_weighted(
        [&](double x) {
            return std::pow(std::abs(eval_h_sigma(x, spec)), 2.0 * k);
        },
        weight, policy);

    GMomentResult out;
    out.numeric = r.value;
    out.error_estimate = r.error_estimate;
    out.diagonal_prediction = (k <= 2) ? diagonal_moment_formula(spec.cutoff, k)
                                       : diagonal_moment_enumeration(spec.cutoff, k);
    return out;
}

// ---------------------------------------------------------------------------
// classify_L_zero
// ---------------------------------------------------------------------------

LZeroClassification classify_L_zero(std::span<const std::int64_t> tuple,
                                    const ArithTables& tables) {
    if (tuple.size() % 2 != 0) throw DomainError("classify_L_zero: tuple length must be even");
    const std::size_t k = tuple.size() / 2;
    std::map<std::int64_t, LZeroGroup> groups;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        const auto dec = (tuple[i] <= tables.limit) ? squarefree_decompose(tuple[i], tables)
                                                    : squarefree_decompose(tuple[i]);
        auto& g = groups[dec.m];
        g.m = dec.m;
        if (i < k) {
            g.first_half.push_back(i);
            g.s_sum_first += dec.s;
        } else {
            g.second_half.push_back(i);
            g.s_sum_second += dec.s;
        }
    }
    LZeroClassification out;
    out.is_zero = true;
    for (auto& [m, g] : groups) {
        if (g.s_sum_first != g.s_sum_second) out.is_zero = false;
        out.groups.push_back(std::move(g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// gaps
// ---------------------------------------------------------------------------

namespace {

double gaps_bound_formula(double lambda, double alpha) {
    return std::pow(kPi, alpha - 1.0) * (1.0 - alpha * alpha) * lambda /
           (std::pow(lambda, 1.0 - alpha) - std::pow(0.2, 1.0 - alpha));
}

}  // namespace

double gaps_bound(const GapProfile& profile, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("gaps_bound: alpha must lie in [0,1]");
    const double lambda = static_cast<double>(profile.gap);
    if (alpha == 1.0) {
        const double limit_form = 2.0 * lambda / std::log(5.0 * lambda);
        const double near = gaps_bound_formula(lambda, 1.0 - 1e-8);
        if (std::abs(limit_form - near) > 1e-6 * std::abs(limit_form))
            throw PropertyError("gaps_bound: alpha -> 1 limit disagrees with the formula");
        return limit_form;
    }
    return gaps_bound_formula(lambda, alpha);
}

std::complex<double> gaps_correlation(const GapProfile& profile, const QuadraturePolicy& policy_in) {
    QuadraturePolicy policy = policy_in;
    policy.max_frequency =
        2.0 * static_cast<double>(profile.nu.back()) + static_cast<double>(profile.gap);
    if (policy.absolute_tolerance > 1e-11) policy.absolute_tolerance = 1e-11;
    const auto r = integrate_interval_complex(
        [&](double t) { return test_series_S(t, profile) * fejer_resonator(t, profile); }, -0.5,
        0.5, policy);
    // The kernel extracts the e(nu_n x) coefficient of S, which is a_n/(2i);
    // multiplying by i recovers the half amplitude a_n/2.
    return std::complex<double>(0.0, 1.0) * r.value;
}

WitnessResult gaps_witness(const GapProfile& profile, double alpha) {
    const double bound = gaps_bound(profile, alpha);
    const double amp = 0.25 * bound * std::abs(profile.a_n());
    auto margin_at = [&](double x) {
        return std::abs(test_series_S(x, profile)) - amp * std::pow(std::abs(x), alpha);
    };

    const int grid = 10'000;
    double best_x = 0.0, best = -1e300;
    std::int64_t winning = 0;
    for (int i = 0; i <= grid; ++i) {
        const double x = -0.5 + static_cast<double>(i) / grid;
        const double h = margin_at(x);
        if (h > 0.0) ++winning;
        if (h > best) {
            best = h;
            best_x = x;
        }
    }

    // golden-section refinement around the best grid point
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::max(-0.5, best_x - 1.0 / grid);
    double hi = std::min(0.5, best_x + 1.0 / grid);
    double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
    for (int it = 0; it < 80; ++it) {
        if (margin_at(c) > margin_at(d))
            hi = d;
        else
            lo = c;
        c = hi - phi * (hi - lo);
        d = lo + phi * (hi - lo);
    }
    const double x_star = 0.5 * (lo + hi);
    WitnessResult out;
    out.x = margin_at(x_star) > best ? x_star : best_x;
    out.margin = margin_at(out.x);
    out.grid_fraction = static_cast<double>(winning) / static_cast<double>(grid + 1);
    if (out.margin <= 0.0)
        throw SearchError("gaps_witness: no point beating the bound was found "
                          "(search or quadrature defect; the bound itself guarantees one)");
    return out;
}

FAlphaReport f_alpha_monotonicity(int grid_size) {
    if (grid_size < 1000) throw DomainError("f_alpha_monotonicity: grid_size must be >= 1000");
    auto f = [](double alpha) {
        return std::pow(2.0, -alpha) + 0.3 * (alpha - 1.0) -
               std::pow(kPi / 5.0, 1.0 - alpha) / (1.0 + alpha);
    };
    FAlphaReport rep;
    rep.f_at_one = f(1.0);
    rep.f_at_zero = f(0.0);
    rep.min_gap = 1e300;
    rep.strictly_decreasing = true;
    double prev = f(0.0);
    for (int i = 1; i <= grid_size; ++i) {
        const double alpha = static_cast<double>(i) / grid_size;
        const double value = f(alpha);
        rep.min_gap = std::min(rep.min_gap, prev - value);
        if (!(value < prev)) rep.strictly_decreasing = false;
        prev = value;
    }
    if (!rep.strictly_decreasing)
        throw PropertyError("f_alpha_monotonicity: f is not strictly decreasing on the grid");
    return rep;
}

// ---------------------------------------------------------------------------
// mconv
// ---------------------------------------------------------------------------

double arith_function_value(ArithFunctionKind kind, std::int64_t n) {
    switch (kind) {
        case ArithFunctionKind::moebius: return static_cast<double>(mu_by_trial_division(n));
        case ArithFunctionKind::char_mod_3: {
            const auto r = n % 3;
            return r == 0 ? 0.0 : (r == 1 ? 1.0 : -1.0);
        }
        case ArithFunctionKind::char_mod_4: {
            if (n % 2 == 0) return 0.0;
            return (n % 4 == 1) ? 1.0 : -1.0;
        }
    }
    throw DomainError("arith_function_value: unknown function");
}

MconvInstance::MconvInstance(int N_in, std::vector<std::complex<double>> a_in,
                             ArithFunctionKind f_in, double K_in)
    : N(N_in), a(std::move(a_in)), f(f_in), K(K_in) {
    if (N < 1) throw DomainError("MconvInstance: N must be positive");
    if (static_cast<int>(a.size()) != N) throw DomainError("MconvInstance: need N coefficients");
    if (!(K > 1.0)) throw DomainError("MconvInstance: K must exceed 1");
    b.resize(N);
    scriptB = 0.0;
    for (int n = 1; n <= N; ++n) {
        double divisor_sum = 0.0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) divisor_sum += arith_function_value(f, d);
        const std::complex<double> bn = a[n - 1] * divisor_sum;
        if (std::abs(bn.imag()) > 1e-12 * (1.0 + std::abs(bn.real())) || bn.real() < -1e-12)
            throw DomainError("MconvInstance: hypothesis b_n >= 0 violated at n = " +
                              std::to_string(n));
        b[n - 1] = std::max(0.0, bn.real());
        scriptB += b[n - 1];
    }
    if (!(scriptB > 0.0)) throw DomainError("MconvInstance: scriptB must be positive");
}

std::complex<double> mconv_G(double x, const MconvInstance& instance, const TransitionPhi& phi) {
    std::complex<double> sum = 0.0;
    const std::int64_t n_max = static_cast<std::int64_t>(std::floor(x + 1e-12));
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const double fn = arith_function_value(instance.f, n);
        if (fn == 0.0) continue;
        sum += fn * eval_F_thconv(x / static_cast<double>(n), instance.a, phi);
    }
    return sum;
}

MconvCorrelation mconv_correlation(const MconvInstance& instance, double R,
                                   const WeightMeasure& weight, QuadraturePolicy policy) {
    if (!(R >= 4.0 * instance.N))
        throw DomainError("mconv_correlation: hypothesis requires R >= 4N");
    policy.max_frequency = 2.0 * instance.N;
    const TransitionPhi phi;

    // f is evaluated once per integer up to the support edge.
    const auto n_cap = static_cast<std::int64_t>(std::ceil(weight.scaled_hi())) + 1;
    std::vector<double> f_values(static_cast<std::size_t>(n_cap) + 1, 0.0);
    for (std::int64_t n = 1; n <= n_cap; ++n)
        f_values[n] = arith_function_value(instance.f, n);

    auto G_fast = [&](double t) {
        std::complex<double> sum = 0.0;
        const auto n_max = static_cast<std::int64_t>(std::floor(t + 1e-12));
        for (std::int64_t n = 1; n <= n_max; ++n) {
            if (f_values[n] == 0.0) continue;
            sum += f_values[n] * eval_F_thconv(t / static_cast<double>(n), instance.a, phi);
        }
        return sum;
    };

    const auto r = integrate_weighted_complex(
        [&](double t) { return G_fast(t) * dirichlet_g(t, instance.N); }, weight, policy);
    return {r.value, instance.scriptB, r.error_estimate};
}

std::vector<MconvHypothesisPoint> mconv_hypothesis(const MconvInstance& instance, double R,
                                                   std::span<const double> V_grid) {
    std::vector<MconvHypothesisPoint> out;
    out.reserve(V_grid.size());
    for (const double V : V_grid) {
        if (!(V > 0.0)) throw DomainError("mconv_hypothesis: V must be positive");
        MconvHypothesisPoint pt;
        pt.V = V;
        const std::int64_t d_lo = std::max<std::int64_t>(1, ceil_at_least(R / (2.0 * V)));
        const auto d_hi = static_cast<std::int64_t>(std::floor(3.0 * R + 1e-9));
        double total = 0.0;
        for (std::int64_t d = d_lo; d <= d_hi; ++d) {
            const double dd = static_cast<double>(d);
            const std::int64_t r_lo = std::max<std::int64_t>(0, ceil_at_least(dd * V / R));
            const std::int64_t r_hi = floor_strictly_below(2.0 * dd * V / R);
            for (std::int64_t r = r_lo; r <= r_hi; ++r) {
                const std::int64_t rm = r % d;
                for (int n = 1; n <= instance.N; ++n) {
                    const std::int64_t nm = n % d;
                    if (nm == rm || (d - nm) % d == rm) total += std::abs(instance.a[n - 1]);
                }
            }
        }
        pt.triple_sum = total;
        pt.ratio = total / (std::pow(6.0 * V, instance.K) * instance.scriptB);
        out.push_back(pt);
    }
    return out;
}

// ---------------------------------------------------------------------------
// hoelder chain
// ---------------------------------------------------------------------------

HoelderChainReport hoelder_chain(double R, double p, double sigma, const ArithTables& tables,
                                 const WeightMeasure& weight, QuadraturePolicy policy) {
    if (!(p > 1.0)) throw DomainError("hoelder_chain: p must exceed 1");
    HoelderChainReport rep;
    rep.k = static_cast<int>(std::ceil(p / (2.0 * p - 2.0)));
    rep.q = p / (p - 1.0);
    if (!(sigma < sigma_bound_for_k(rep.k)))
        throw DomainError("hoelder_chain: hypothesis requires sigma < 2/(2^(2k-1)-1) = " +
                          std::to_string(sigma_bound_for_k(rep.k)) + " for k = " +
                          std::to_string(rep.k));

    const auto series = build_error_series(weight.scaled_lo(), weight.scaled_hi(), tables);
    const GSigmaSpec spec(R, sigma);

    const auto corr = correlation_I(R, sigma, series, weight, policy);
    rep.I = corr.value;
    rep.I_abs_p = std::pow(std::abs(corr.value), p);

    const auto me = moment_Estar(series, p, weight, policy);
    rep.moment_Estar_p = me.value;

    QuadraturePolicy gp = policy;
    gp.max_frequency = 2.0 * rep.k * std::sqrt(static_cast<double>(spec.cutoff)) + 1.0;
    const auto mq = integrate_weighted(
        [&](double x) { return std::pow(std::abs(eval_g_sigma(x, spec)), rep.q); }, weight, gp);
    const auto m2k = integrate_weighted(
        [&](double x) { return std::pow(std::abs(eval_g_sigma(x, spec)), 2.0 * rep.k); }, weight,
        gp);
    rep.moment_g_q = mq.value;
    rep.moment_g_2k = m2k.value;

    rep.rhs = rep.moment_Estar_p * std::pow(rep.moment_g_q, p / rep.q);
    rep.slack = rep.rhs - rep.I_abs_p;

    rep.lyapunov_lhs = std::pow(rep.moment_g_q, 1.0 / rep.q);
    rep.lyapunov_rhs = std::pow(rep.moment_g_2k, 1.0 / (2.0 * rep.k));

    // first-order error propagation of the three quadratures
    const double err_I = p * std::pow(std::abs(corr.value) + 1e-300, p - 1.0) * corr.error_estimate;
    const double err_rhs =
        std::pow(rep.moment_g_q, p / rep.q) * me.error_estimate +
        rep.moment_Estar_p * (p / rep.q) *
            std::pow(rep.moment_g_q + 1e-300, p / rep.q - 1.0) * mq.error_estimate;
    rep.combined_error = err_I + err_rhs;

    if (rep.slack < -(2.0 * rep.combined_error + 1e-12))
        throw PropertyError("hoelder_chain: |I|^p <= moment_Estar * moment_g_q^{p/q} violated "
                            "beyond quadrature error");
    if (rep.lyapunov_lhs > rep.lyapunov_rhs * (1.0 + 1e-9) + 2.0 * rep.combined_error)
        throw PropertyError("hoelder_chain: Lyapunov bound ||g||_q <= ||g||_2k violated");
    return rep;
}

// ---------------------------------------------------------------------------
// fixtures
// ---------------------------------------------------------------------------

namespace fixtures {

GapProfile documented_profile(int index) {
    using cplx = std::complex<double>;
    switch (index) {
        case 0:
            return GapProfile({1, 10, 25}, {cplx(1.0), cplx(1.0), cplx(1.0)}, 2);
        case 1:
            return GapProfile({2, 12, 13}, {cplx(1.0), cplx(3.0, 4.0), cplx(2.0)}, 2);
        case 2:
            return GapProfile({5, 30, 80, 100}, {cplx(1.0), cplx(-2.0), cplx(1.5), cplx(1.0)}, 3);
        default:
            throw DomainError("documented_profile: index must be 0, 1 or 2");
    }
}

MconvInstance character_instance(int N, double K) {
    std::vector<std::complex<double>> ones(static_cast<std::size_t>(N), {1.0, 0.0});
    return MconvInstance(N, std::move(ones), ArithFunctionKind::char_mod_4, K);
}

}  // namespace fixtures

}  // namespace rlab
