#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "rlab/quad.hpp"

using namespace rlab;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

QuadraturePolicy policy_with(double max_freq, double tol = 1e-9, unsigned threads = 1) {
    QuadraturePolicy p;
    p.max_frequency = max_freq;
    p.absolute_tolerance = tol;
    p.threads = threads;
    return p;
}

}  // namespace

TEST_CASE("integrate_weighted: probability mass is 1 at every scale") {
    for (double R : {10.0, 100.0, 1000.0}) {
        const auto w = WeightMeasure::unit_window(R);
        const auto r = integrate_weighted([](double) { return 1.0; }, w, policy_with(0.0, 1e-11));
        CHECK(std::abs(r.value - 1.0) < 1e-12);
        CHECK(r.error_estimate < 1e-11);
    }
}

TEST_CASE("integrate_weighted: oscillatory input integrates to nearly zero") {
    const auto w = WeightMeasure::unit_window(100.0);
    const auto r = integrate_weighted(
        [](double t) { return std::cos(kTwoPi * t * std::sqrt(2.0)); }, w,
        policy_with(std::sqrt(2.0), 1e-10));
    CHECK(std::abs(r.value) < 1e-8);
}

TEST_CASE("integrate_weighted: first moment of the unit bump, stable under node doubling") {
    const auto w = WeightMeasure::unit_window(1.0);
    auto p8 = policy_with(0.0, 1e-11);
    auto p16 = p8;
    p16.nodes_per_panel = 16;
    const auto a = integrate_weighted([](double t) { return t; }, w, p8);
    const auto b = integrate_weighted([](double t) { return t; }, w, p16);
    CHECK(std::abs(a.value - b.value) < 1e-10);
    // the bump is symmetric about 3/2, so the moment is exactly 1.5
    CHECK(a.value == doctest::Approx(1.5).epsilon(1e-11));
}

TEST_CASE("integrate_weighted: linearity within summed error estimates") {
    const auto w = WeightMeasure::unit_window(50.0);
    auto f = [](double t) { return std::sin(t * 0.1) + 0.2 * t; };
    auto g = [](double t) { return std::cos(t * 0.07); };
    const auto pf = policy_with(0.1, 1e-10);
    const auto rf = integrate_weighted(f, w, pf);
    const auto rg = integrate_weighted(g, w, pf);
    const auto rfg = integrate_weighted([&](double t) { return f(t) + g(t); }, w, pf);
    CHECK(std::abs(rfg.value - rf.value - rg.value) <=
          2.0 * (rf.error_estimate + rg.error_estimate) + 1e-12);
}

TEST_CASE("integrate_interval: complex Dirichlet kernel has mean zero") {
    const auto r = integrate_interval_complex([](double t) { return dirichlet_g(t, 6); }, -0.5,
                                              0.5, policy_with(6.0, 1e-10));
    CHECK(std::abs(r.value) < 1e-10);
}

TEST_CASE("integrate_weighted: accuracy error carries the best estimate") {
    const auto w = WeightMeasure::unit_window(1.0);
    // frequency deliberately undeclared
    auto nasty = [](double t) { return std::cos(3.0e5 * t); };
    auto p = policy_with(0.0, 1e-13);
    p.max_refinements = 1;
    CHECK_THROWS_AS(integrate_weighted(nasty, w, p), AccuracyError);
    try {
        integrate_weighted(nasty, w, p);
    } catch (const AccuracyError& e) {
        CHECK(e.error_estimate() > 1e-13);
    }
}

TEST_CASE("integrate_series_weighted: no-jump degenerate case matches smooth route") {
    ErrorTermSeries s;
    s.r_lo = 10.0;
    s.r_hi = 20.0;
    s.base_count = 0;
    s.zeta3_value = zeta3(1'000'000).value;
    s.prefix = {0};
    const auto w = WeightMeasure::unit_window(10.0);
    const double coef = s.cubic_coef();
    const auto via_series = integrate_series_weighted(
        s, w, policy_with(1.0, 1e-9), [](double, double estar) { return estar; });
    const auto smooth = integrate_weighted(
        [&](double x) { return -coef * x * x * x; }, w, policy_with(1.0, 1e-9));
    CHECK(std::abs(via_series.value - smooth.value) < 1e-10);
}

TEST_CASE("integrate_series_weighted: single step picks up the mass right of the jump") {
    ErrorTermSeries s;
    s.r_lo = 10.0;
    s.r_hi = 20.0;
    s.base_count = 0;
    s.zeta3_value = std::numeric_limits<double>::infinity();
    s.event_normsq = {225};  // jump at 15
    s.event_jump = {7};
    s.prefix = {0, 7};
    const auto w = WeightMeasure::unit_window(10.0);
    const auto r = integrate_with_events(s, w, policy_with(0.0, 1e-10),
                                         [](double) { return 1.0; });
    const auto mass_right = integrate_interval([&](double x) { return w.density(x); }, 15.0,
                                               20.0, policy_with(0.0, 1e-11));
    CHECK(std::abs(r.value - 7.0 * mass_right.value) < 1e-9);
}

TEST_CASE("integrate_with_events: full E* correlation is stable under panel doubling") {
    const auto tables = build_tables(10'000, 2);
    const auto series = build_error_series(50.0, 100.0, tables);
    const auto w = WeightMeasure::unit_window(50.0);
    const GSigmaSpec spec(50.0, 0.5);
    auto companion = [&](double x) { return eval_g_sigma(x, spec); };

    auto p1 = policy_with(std::pow(50.0, 0.25) + 3.0, 1e-6);
    auto p2 = p1;
    p2.panels_per_period = 8;
    const auto a = integrate_with_events(series, w, p1, companion);
    const auto b = integrate_with_events(series, w, p2, companion);
    CHECK(std::abs(a.value - b.value) <= 1e-3 * std::max(1.0, std::abs(a.value)));
}

TEST_CASE("integrate_with_events: agrees with a fine Riemann sum at R=20") {
    const auto tables = build_tables(1700, 2);
    const auto series = build_error_series(20.0, 40.0, tables);
    const auto w = WeightMeasure::unit_window(20.0);
    const GSigmaSpec spec(20.0, 0.5);
    auto companion = [&](double x) { return eval_g_sigma(x, spec); };

    const auto r = integrate_with_events(series, w, policy_with(std::pow(20.0, 0.25) + 3.0, 1e-8),
                                         companion);

    auto integrand = [&](double x) { return companion(x) * series.estar(x) * w.density(x); };

    // Brute-force oracle: uniform midpoint sums with step <= 1e-4 inside
    // each smooth gap, split exactly at the jump radii.
    double riemann = 0.0;
    double cursor = 20.0;
    auto flush_gap = [&](double upto) {
        if (upto <= cursor) return;
        const auto cells = static_cast<std::int64_t>(std::ceil((upto - cursor) / 1e-4));
        const double h = (upto - cursor) / static_cast<double>(cells);
        for (std::int64_t i = 0; i < cells; ++i)
            riemann += integrand(cursor + (static_cast<double>(i) + 0.5) * h) * h;
        cursor = upto;
    };
    for (std::size_t k = 0; k < series.events(); ++k)
        flush_gap(std::sqrt(static_cast<double>(series.event_normsq[k])));
    flush_gap(40.0);
    CHECK(std::abs(r.value - riemann) < 1e-4);

    // A jump-blind uniform sum converges to the event-split value only as
    // the step shrinks; check the trend.
    auto blind = [&](double step) {
        double acc = 0.0;
        for (double x = 20.0 + 0.5 * step; x < 40.0; x += step) acc += integrand(x) * step;
        return std::abs(acc - r.value);
    };
    const double e3 = blind(1e-3), e4 = blind(1e-4), e5 = blind(1e-5);
    CHECK(e4 < e3);
    CHECK(e5 < e4);
}

TEST_CASE("quadrature values are identical for any worker count") {
    const auto tables = build_tables(10'000, 2);
    const auto series = build_error_series(50.0, 100.0, tables);
    const auto w = WeightMeasure::unit_window(50.0);
    const GSigmaSpec spec(50.0, 0.5);
    auto companion = [&](double x) { return eval_g_sigma(x, spec); };
    const auto p1 = policy_with(std::pow(50.0, 0.25) + 3.0, 1e-6, 1);
    const auto p8 = policy_with(std::pow(50.0, 0.25) + 3.0, 1e-6, 8);
    const auto a = integrate_with_events(series, w, p1, companion);
    const auto b = integrate_with_events(series, w, p8, companion);
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);
}
