#include "rlab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gauss_legendre.hpp"
#include "rlab/parallel.hpp"

namespace rlab {

namespace {

struct Segment {
    double a, b;
    double nstar;  // piecewise-constant payload; unused for smooth integrands
};

// Panels are derived from segments on the fly: segment j carries
// panel_prefix[j] .. panel_prefix[j+1]-1 equal-width panels.
struct Paneling {
    std::vector<Segment> segments;
    std::vector<std::size_t> panel_prefix;
    std::size_t total() const { return panel_prefix.back(); }
};

Paneling make_paneling(const std::vector<Segment>& segments, double ppp_times_freq,
                       double min_panel_density, std::size_t refine_factor) {
    Paneling p;
    p.segments = segments;
    p.panel_prefix.resize(segments.size() + 1);
    p.panel_prefix[0] = 0;
    for (std::size_t j = 0; j < segments.size(); ++j) {
        const double w = segments[j].b - segments[j].a;
        const double want = std::max(w * ppp_times_freq, w * min_panel_density);
        const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(want)));
        p.panel_prefix[j + 1] = p.panel_prefix[j] + n * refine_factor;
    }
    return p;
}

template <class T>
struct TwoSums {
    T low{};
    T high{};
    TwoSums operator+(const TwoSums& o) const { return {low + o.low, high + o.high}; }
};

// Evaluate one panel with the low- and high-order Gauss rules.
template <class T, class Eval>
TwoSums<T> eval_panel(double a, double b, double nstar, const glq::Rule& lo_rule,
                      const glq::Rule& hi_rule, const Eval& f) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    TwoSums<T> out;
    for (std::size_t i = 0; i < lo_rule.nodes.size(); ++i)
        out.low += (half * lo_rule.weights[i]) * f(mid + half * lo_rule.nodes[i], nstar);
    for (std::size_t i = 0; i < hi_rule.nodes.size(); ++i)
        out.high += (half * hi_rule.weights[i]) * f(mid + half * hi_rule.nodes[i], nstar);
    return out;
}

template <class T, class Eval>
std::pair<T, double> run_core(const std::vector<Segment>& segments, double length,
                              const QuadraturePolicy& policy, const Eval& f,
                              const char* what) {
    const double freq = std::max(policy.max_frequency, 0.0);
    const double ppp = static_cast<double>(policy.panels_per_period);
    const auto& lo_rule = glq::rule(policy.nodes_per_panel);
    const auto& hi_rule = glq::rule(2 * policy.nodes_per_panel);
    T best{};
    double best_err = 0.0;
    for (int attempt = 0; attempt <= policy.max_refinements; ++attempt) {
        const Paneling paneling = make_paneling(segments, ppp * freq, 64.0 / length,
                                                std::size_t{1} << attempt);
        const auto total = paneling.total();
        const auto sums = parallel::pairwise_sum<TwoSums<T>>(
            total,
            [&](std::size_t idx) {
                // locate the segment that owns panel idx
                const auto it = std::upper_bound(paneling.panel_prefix.begin(),
                                                 paneling.panel_prefix.end(), idx);
                const auto j = static_cast<std::size_t>(it - paneling.panel_prefix.begin()) - 1;
                const Segment& seg = paneling.segments[j];
                const auto first = paneling.panel_prefix[j];
                const auto count = paneling.panel_prefix[j + 1] - first;
                const double h = (seg.b - seg.a) / static_cast<double>(count);
                const double a = seg.a + static_cast<double>(idx - first) * h;
                return eval_panel<T>(a, a + h, seg.nstar, lo_rule, hi_rule, f);
            },
            policy.threads);
        best = sums.high;
        best_err = std::abs(sums.high - sums.low);
        if (best_err <= policy.absolute_tolerance) return {best, best_err};
    }
    throw AccuracyError(std::string(what) + ": error estimate above tolerance after refinement cap",
                        std::abs(best), best_err);
}

std::vector<Segment> single_segment(double a, double b) { return {Segment{a, b, 0.0}}; }

}  // namespace

QuadResult integrate_weighted(const std::function<double(double)>& f,
                              const WeightMeasure& measure, const QuadraturePolicy& policy) {
    const double lo = measure.scaled_lo(), hi = measure.scaled_hi();
    auto [v, e] = run_core<double>(
        single_segment(lo, hi), hi - lo, policy,
        [&](double x, double) { return f(x) * measure.density(x); }, "integrate_weighted");
    return {v, e};
}

ComplexQuadResult integrate_weighted_complex(const std::function<std::complex<double>(double)>& f,
                                             const WeightMeasure& measure,
                                             const QuadraturePolicy& policy) {
    const double lo = measure.scaled_lo(), hi = measure.scaled_hi();
    auto [v, e] = run_core<std::complex<double>>(
        single_segment(lo, hi), hi - lo, policy,
        [&](double x, double) { return f(x) * measure.density(x); },
        "integrate_weighted_complex");
    return {v, e};
}

QuadResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                              const QuadraturePolicy& policy) {
    if (!(a < b)) throw DomainError("integrate_interval: empty interval");
    auto [v, e] = run_core<double>(single_segment(a, b), b - a, policy,
                                   [&](double x, double) { return f(x); }, "integrate_interval");
    return {v, e};
}

ComplexQuadResult integrate_interval_complex(const std::function<std::complex<double>(double)>& f,
                                             double a, double b, const QuadraturePolicy& policy) {
    if (!(a < b)) throw DomainError("integrate_interval: empty interval");
    auto [v, e] =
        run_core<std::complex<double>>(single_segment(a, b), b - a, policy,
                                       [&](double x, double) { return f(x); },
                                       "integrate_interval_complex");
    return {v, e};
}

QuadResult integrate_series_weighted(const ErrorTermSeries& series,
                                     const WeightMeasure& measure, const QuadraturePolicy& policy,
                                     const std::function<double(double, double)>& integrand) {
    const double lo = measure.scaled_lo(), hi = measure.scaled_hi();
    if (lo < series.r_lo - 1e-9 || hi > series.r_hi + 1e-9)
        throw RangeError("integrate_series_weighted: weight support outside the series interval");

    // One segment per gap between consecutive jump radii inside the support,
    // each carrying its constant N*. A gap is split once more where
    // N* - coef t^3 crosses zero (t = (N*/coef)^{1/3}); integrands of the
    // form |E*|^p are then analytic on every segment.
    const double coef = series.cubic_coef();
    std::vector<Segment> segments;
    segments.reserve(series.events() + 2);
    auto push_gap = [&](double a, double b) {
        if (!(b > a)) return;
        const auto nstar = static_cast<double>(series.nstar_at(0.5 * (a + b)));
        if (coef > 0.0 && nstar > 0.0) {
            const double root = std::cbrt(nstar / coef);
            if (root > a * (1.0 + 1e-14) && root < b * (1.0 - 1e-14)) {
                segments.push_back({a, root, nstar});
                segments.push_back({root, b, nstar});
                return;
            }
        }
        segments.push_back({a, b, nstar});
    };
    double cursor = lo;
    for (std::size_t k = 0; k < series.events(); ++k) {
        const double r = std::sqrt(static_cast<double>(series.event_normsq[k]));
        if (r <= cursor + 1e-15) continue;
        if (r >= hi) break;
        push_gap(cursor, r);
        cursor = r;
    }
    push_gap(cursor, hi);
    auto [v, e] = run_core<double>(
        segments, hi - lo, policy,
        [&](double x, double nstar) {
            const double estar = nstar - coef * x * x * x;
            return integrand(x, estar) * measure.density(x);
        },
        "integrate_series_weighted");
    return {v, e};
}

QuadResult integrate_with_events(const ErrorTermSeries& series, const WeightMeasure& measure,
                                 const QuadraturePolicy& policy,
                                 const std::function<double(double)>& companion) {
    return integrate_series_weighted(
        series, measure, policy,
        [&](double x, double estar) { return companion(x) * estar; });
}

}  // namespace rlab
