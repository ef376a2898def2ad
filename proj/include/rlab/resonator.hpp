#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rlab/errors.hpp"

namespace rlab {

// e(x) = exp(2 pi i x)
std::complex<double> unit_exp(double x);

// ---------------------------------------------------------------------------
// The shorter resonator g_sigma(x) = sum_{n <= R^sigma} cos(2 pi x sqrt n)/sqrt n
// and its exponential sibling used by the moment estimates.
// ---------------------------------------------------------------------------
struct GSigmaSpec {
    double R;
    double sigma;
    std::int64_t cutoff;          // floor(R^sigma)
    std::vector<double> sqrt_n;   // sqrt_n[k] = sqrt(k+1)

    GSigmaSpec(double R, double sigma);
};

double eval_g_sigma(double x, const GSigmaSpec& spec);
std::complex<double> eval_h_sigma(double x, const GSigmaSpec& spec);

// ---------------------------------------------------------------------------
// Gap profiles for the Fejer-variant resonator.
// ---------------------------------------------------------------------------
struct GapProfile {
    std::vector<std::int64_t> nu;          // strictly increasing positive integers
    std::vector<std::complex<double>> a;   // nonzero coefficients
    std::size_t n_index;                   // 1-based, strictly interior: 1 < n < N
    std::int64_t gap;                      // Lambda_n = min_{m != n} |nu_m - nu_n|

    GapProfile(std::vector<std::int64_t> nu, std::vector<std::complex<double>> a,
               std::size_t n_index_1based);

    std::int64_t nu_n() const { return nu[n_index - 1]; }
    std::complex<double> a_n() const { return a[n_index - 1]; }
};

// Shifted Fejer kernel g(x) = e(-nu_n x)/Lambda (sin(pi Lambda x)/sin(pi x))^2.
// Near integer x the closed form degenerates and the spectral sum
// sum_{|k|<=Lambda} (1-|k|/Lambda) e((k-nu_n)x) is used instead.
std::complex<double> fejer_resonator(double x, const GapProfile& profile);
std::complex<double> fejer_resonator_spectral(double x, const GapProfile& profile);

// Shifted Dirichlet kernel g(t) = sum_{n=1}^N e(-n t), geometric closed form
// with a direct-sum fallback near integer t.
std::complex<double> dirichlet_g(double t, int N);
std::complex<double> dirichlet_g_direct(double t, int N);

// S(x) = sum a_k sin(2 pi nu_k x)
std::complex<double> test_series_S(double x, std::span<const std::int64_t> nu,
                                   std::span<const std::complex<double>> a);
std::complex<double> test_series_S(double x, const GapProfile& profile);

// ---------------------------------------------------------------------------
// Smooth weights and cutoffs. All bumps are the standard exponential bump,
// fixed here so every derived constant is reproducible.
// ---------------------------------------------------------------------------

// Probability density psi(t) = c exp(-1/((t-u)(v-t))) on (u, v), plus the
// scaled measure dnu(x) = psi(x/R)/R dx supported on (R u, R v).
class WeightMeasure {
public:
    WeightMeasure(double u, double v, double scale);

    double support_lo() const { return u_; }
    double support_hi() const { return v_; }
    double scale() const { return scale_; }
    double scaled_lo() const { return scale_ * u_; }
    double scaled_hi() const { return scale_ * v_; }
    double normalization() const { return c_; }

    double density_unit(double t) const;   // psi(t)
    double density(double x) const;        // psi(x/R)/R

    // The two window shapes the experiments use.
    static WeightMeasure unit_window(double scale);   // psi in C_c^inf((1,2))
    static WeightMeasure wide_window(double scale);   // psi in C_c^inf((1/2,5/2))

private:
    double u_, v_, scale_, c_;
};

// Even bump phi in C_c^inf((-1,1)) with unit mass; hat(xi) is the Fourier
// transform, cached on a uniform grid with cubic interpolation (the grid
// step is fixed so interpolation stays below 1e-9 of direct quadrature).
class MollifierPhi {
public:
    static const MollifierPhi& standard();

    // Synthetic variant whose transform is hard-truncated beyond
    // xi_cutoff. Only used to exercise degenerate paths in tests.
    static MollifierPhi truncated(double xi_cutoff);

    double density(double x) const;             // phi(x)
    double hat(double xi) const;                // cached + interpolated
    double hat_by_quadrature(double xi) const;  // slow independent route

    double grid_step() const { return grid_step_; }
    double grid_end() const { return grid_step_ * static_cast<double>(grid_.size() - 1); }

private:
    MollifierPhi();

    double norm_c_ = 1.0;
    double grid_step_ = 1.0 / 512.0;
    std::vector<double> grid_;   // hat values at xi = k * grid_step
    double cutoff_ = -1.0;       // >= 0 for the truncated variant
};

// Smooth step: 0 for x <= 1, 1 for x >= 2, h(x-1)/(h(x-1)+h(2-x)) in between.
struct TransitionPhi {
    double operator()(double x) const;
};

// F(x) = phi(x) sum_{n=1}^N a_n e(n x); identically zero left of 1.
std::complex<double> eval_F_thconv(double x, std::span<const std::complex<double>> a,
                                   const TransitionPhi& phi);

}  // namespace rlab
