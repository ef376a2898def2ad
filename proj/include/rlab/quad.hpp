#pragma once

#include <complex>
#include <functional>

#include "rlab/lattice.hpp"
#include "rlab/resonator.hpp"

namespace rlab {

// Oscillation-aware paneling: callers declare the highest frequency of the
// integrand and panels are sized to panels_per_period panels per period.
// Error estimates come from comparing nodes_per_panel against twice that
// order on the same panels; if the estimate misses the tolerance the panel
// count doubles, up to max_refinements, before an accuracy error is raised.
struct QuadraturePolicy {
    int panels_per_period = 4;
    int nodes_per_panel = 8;
    double max_frequency = 0.0;
    double absolute_tolerance = 1e-9;
    int max_refinements = 4;
    unsigned threads = 1;  // 0 = hardware concurrency; reduction order is fixed regardless
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

struct ComplexQuadResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
};

// integral of f against the probability measure dnu = psi(x/R)/R dx.
QuadResult integrate_weighted(const std::function<double(double)>& f,
                              const WeightMeasure& measure, const QuadraturePolicy& policy);
ComplexQuadResult integrate_weighted_complex(const std::function<std::complex<double>(double)>& f,
                                             const WeightMeasure& measure,
                                             const QuadraturePolicy& policy);

// Plain integral over [a, b] (Lebesgue measure).
QuadResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                              const QuadraturePolicy& policy);
ComplexQuadResult integrate_interval_complex(const std::function<std::complex<double>(double)>& f,
                                             double a, double b, const QuadraturePolicy& policy);

// integral of integrand(x, E*(x)) dnu with panel boundaries pinned to every
// jump radius of the series, so each panel sees a smooth integrand.
QuadResult integrate_series_weighted(const ErrorTermSeries& series,
                                     const WeightMeasure& measure, const QuadraturePolicy& policy,
                                     const std::function<double(double, double)>& integrand);

// Convenience form for correlations: integral of companion(x) E*(x) dnu.
QuadResult integrate_with_events(const ErrorTermSeries& series, const WeightMeasure& measure,
                                 const QuadraturePolicy& policy,
                                 const std::function<double(double)>& companion);

}  // namespace rlab
