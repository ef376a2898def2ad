#include "rlab/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gauss_legendre.hpp"
#include "rlab/parallel.hpp"

namespace rlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bump_raw(double t, double u, double v) {
    if (t <= u || t >= v) return 0.0;
    return std::exp(-1.0 / ((t - u) * (v - t)));
}

// Fixed-panel Gauss-Legendre integral of f over [a, b], doubling the panel
// count until two consecutive estimates agree. Only used at construction
// time for smooth non-oscillatory bumps.
template <class F>
double integrate_smooth(const F& f, double a, double b, double rel_tol = 1e-13) {
    const auto& rule = glq::rule(16);
    double prev = 0.0;
    for (int panels = 16; panels <= 4096; panels *= 2) {
        double sum = 0.0;
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double lo = a + p * h;
            double acc = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                acc += rule.weights[i] * f(lo + 0.5 * h * (rule.nodes[i] + 1.0));
            sum += 0.5 * h * acc;
        }
        if (panels > 16 && std::abs(sum - prev) <= rel_tol * std::abs(sum)) return sum;
        prev = sum;
    }
    return prev;
}

}  // namespace

std::complex<double> unit_exp(double x) {
    const double ang = kTwoPi * x;
    return {std::cos(ang), std::sin(ang)};
}

// ---------------------------------------------------------------------------
// g_sigma
// ---------------------------------------------------------------------------

GSigmaSpec::GSigmaSpec(double R_in, double sigma_in) : R(R_in), sigma(sigma_in) {
    if (!(R > 1.0)) throw DomainError("GSigmaSpec: R must exceed 1");
    if (!(sigma > 0.0 && sigma < 2.0)) throw DomainError("GSigmaSpec: sigma must lie in (0,2)");
    cutoff = static_cast<std::int64_t>(std::floor(std::pow(R, sigma) + 1e-9));
    if (cutoff < 1) throw DomainError("GSigmaSpec: empty resonator (R^sigma < 1)");
    sqrt_n.resize(static_cast<std::size_t>(cutoff));
    for (std::int64_t n = 1; n <= cutoff; ++n)
        sqrt_n[n - 1] = std::sqrt(static_cast<double>(n));
}

double eval_g_sigma(double x, const GSigmaSpec& spec) {
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.sqrt_n.size(); ++i)
        sum += std::cos(kTwoPi * x * spec.sqrt_n[i]) / spec.sqrt_n[i];
    return sum;
}

std::complex<double> eval_h_sigma(double x, const GSigmaSpec& spec) {
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < spec.sqrt_n.size(); ++i)
        sum += unit_exp(x * spec.sqrt_n[i]) / spec.sqrt_n[i];
    return sum;
}

// ---------------------------------------------------------------------------
// Gap profile and kernels
// ---------------------------------------------------------------------------

GapProfile::GapProfile(std::vector<std::int64_t> nu_in, std::vector<std::complex<double>> a_in,
                       std::size_t n_index_1based)
    : nu(std::move(nu_in)), a(std::move(a_in)), n_index(n_index_1based) {
    const std::size_t N = nu.size();
    if (N != a.size()) throw DomainError("GapProfile: nu and a must have equal length");
    if (N < 3) throw DomainError("GapProfile: need at least three frequencies for an interior index");
    if (!(n_index > 1 && n_index < N))
        throw DomainError("GapProfile: index must be strictly interior (1 < n < N)");
    if (nu.front() < 1) throw DomainError("GapProfile: frequencies must be positive integers");
    for (std::size_t i = 1; i < N; ++i)
        if (nu[i] <= nu[i - 1]) throw DomainError("GapProfile: frequencies must be strictly increasing");
    for (const auto& c : a)
        if (c == std::complex<double>(0.0, 0.0))
            throw DomainError("GapProfile: coefficients must be nonzero");
    // Lambda_n; the minimum over all m is attained at a neighbor.
    gap = std::min(nu[n_index - 1] - nu[n_index - 2], nu[n_index] - nu[n_index - 1]);
}

std::complex<double> fejer_resonator_spectral(double x, const GapProfile& profile) {
    const double lambda = static_cast<double>(profile.gap);
    std::complex<double> sum = 0.0;
    for (std::int64_t k = -profile.gap; k <= profile.gap; ++k) {
        const double w = 1.0 - std::abs(static_cast<double>(k)) / lambda;
        sum += w * unit_exp((static_cast<double>(k) - static_cast<double>(profile.nu_n())) * x);
    }
    return sum;
}

std::complex<double> fejer_resonator(double x, const GapProfile& profile) {
    const double frac = x - std::round(x);
    if (std::abs(frac) < 1e-4) return fejer_resonator_spectral(x, profile);
    const double lambda = static_cast<double>(profile.gap);
    const double ratio = std::sin(std::numbers::pi * lambda * x) / std::sin(std::numbers::pi * x);
    return unit_exp(-static_cast<double>(profile.nu_n()) * x) * (ratio * ratio / lambda);
}

std::complex<double> dirichlet_g_direct(double t, int N) {
    std::complex<double> sum = 0.0;
    for (int n = 1; n <= N; ++n) sum += unit_exp(-static_cast<double>(n) * t);
    return sum;
}

std::complex<double> dirichlet_g(double t, int N) {
    if (N < 1) throw DomainError("dirichlet_g: N must be positive");
    const double frac = t - std::round(t);
    if (std::abs(frac) < 1e-3) return dirichlet_g_direct(t, N);
    const std::complex<double> z = unit_exp(-t);
    const std::complex<double> zN = unit_exp(-static_cast<double>(N) * t);
    return z * (zN - 1.0) / (z - 1.0);
}

std::complex<double> test_series_S(double x, std::span<const std::int64_t> nu,
                                   std::span<const std::complex<double>> a) {
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < nu.size(); ++k)
        sum += a[k] * std::sin(kTwoPi * static_cast<double>(nu[k]) * x);
    return sum;
}

std::complex<double> test_series_S(double x, const GapProfile& profile) {
    return test_series_S(x, profile.nu, profile.a);
}

// ---------------------------------------------------------------------------
// WeightMeasure
// ---------------------------------------------------------------------------

WeightMeasure::WeightMeasure(double u, double v, double scale) : u_(u), v_(v), scale_(scale) {
    if (!(v > u)) throw DomainError("WeightMeasure: empty support");
    if (!(scale > 0.0)) throw DomainError("WeightMeasure: scale must be positive");
    const double mass = integrate_smooth([&](double t) { return bump_raw(t, u_, v_); }, u_, v_);
    c_ = 1.0 / mass;
}

double WeightMeasure::density_unit(double t) const { return c_ * bump_raw(t, u_, v_); }

double WeightMeasure::density(double x) const { return density_unit(x / scale_) / scale_; }

WeightMeasure WeightMeasure::unit_window(double scale) { return WeightMeasure(1.0, 2.0, scale); }

WeightMeasure WeightMeasure::wide_window(double scale) { return WeightMeasure(0.5, 2.5, scale); }

// ---------------------------------------------------------------------------
// MollifierPhi
// ---------------------------------------------------------------------------

MollifierPhi::MollifierPhi() {
    const double raw_mass = integrate_smooth([](double x) { return bump_raw(x, -1.0, 1.0); }, -1.0, 1.0);
    norm_c_ = 1.0 / raw_mass;

    // First pass: locate where the transform falls below 1e-15 for good, by
    // direct quadrature at coarse probes. The decay is eventually monotone
    // in envelope; 1.25x headroom covers the probe spacing.
    double xi_end = 32.0;
    while (xi_end < 512.0) {
        if (std::abs(hat_by_quadrature(xi_end)) < 1e-15 &&
            std::abs(hat_by_quadrature(xi_end - 4.0)) < 1e-15 &&
            std::abs(hat_by_quadrature(xi_end - 8.0)) < 1e-15)
            break;
        xi_end += 16.0;
    }
    xi_end *= 1.25;

    // One panelization sized for xi_end serves every grid point; GL16 on
    // two oscillation periods per panel is exact to machine precision.
    const auto& rule = glq::rule(16);
    const int panels = std::max(64, static_cast<int>(std::ceil(1.25 * xi_end)));
    const std::size_t n_nodes = static_cast<std::size_t>(panels) * rule.nodes.size();
    std::vector<double> xs(n_nodes), wphi(n_nodes);
    const double h = 2.0 / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = -1.0 + p * h;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const std::size_t idx = p * rule.nodes.size() + i;
            xs[idx] = lo + 0.5 * h * (rule.nodes[i] + 1.0);
            wphi[idx] = 0.5 * h * rule.weights[i] * norm_c_ * bump_raw(xs[idx], -1.0, 1.0);
        }
    }

    // Second pass: march the grid in fixed segments of 256 points. Within a
    // segment each node's phase advances by a constant rotation; segments
    // re-seed their phases from scratch, which caps the rotation drift and
    // makes the grid independent of how many workers run the segments.
    const std::size_t total_points = static_cast<std::size_t>(std::ceil(xi_end / grid_step_)) + 1;
    const std::size_t seg_len = 256;
    const std::size_t n_segments = (total_points + seg_len - 1) / seg_len;
    grid_.assign(total_points, 0.0);
    parallel::for_index(n_segments, 0, [&](std::size_t seg) {
        const std::size_t first = seg * seg_len;
        const std::size_t last = std::min(total_points, first + seg_len);
        std::vector<std::complex<double>> phase(n_nodes), step(n_nodes);
        const double xi0 = static_cast<double>(first) * grid_step_;
        for (std::size_t i = 0; i < n_nodes; ++i) {
            phase[i] = unit_exp(-xi0 * xs[i]);
            step[i] = unit_exp(-grid_step_ * xs[i]);
        }
        for (std::size_t k = first; k < last; ++k) {
            std::complex<double> acc = 0.0;
            for (std::size_t i = 0; i < n_nodes; ++i) acc += wphi[i] * phase[i];
            grid_[k] = acc.real();
            for (std::size_t i = 0; i < n_nodes; ++i) phase[i] *= step[i];
        }
    });
}

const MollifierPhi& MollifierPhi::standard() {
    static const MollifierPhi instance;
    return instance;
}

MollifierPhi MollifierPhi::truncated(double xi_cutoff) {
    MollifierPhi m = standard();
    m.cutoff_ = xi_cutoff;
    return m;
}

double MollifierPhi::density(double x) const { return norm_c_ * bump_raw(x, -1.0, 1.0); }

double MollifierPhi::hat(double xi) const {
    const double axi = std::abs(xi);
    if (cutoff_ >= 0.0 && axi > cutoff_) return 0.0;
    const double pos = axi / grid_step_;
    const auto n = static_cast<std::ptrdiff_t>(grid_.size());
    const auto k = static_cast<std::ptrdiff_t>(std::floor(pos));
    if (k >= n - 2) return 0.0;  // beyond the grid the transform is below 1e-15
    // Cubic Lagrange on the four surrounding points; evenness supplies the
    // k = -1 neighbor at the origin.
    const double t = pos - static_cast<double>(k);
    auto value = [&](std::ptrdiff_t j) {
        const std::ptrdiff_t idx = k - 1 + j;
        return idx < 0 ? grid_[static_cast<std::size_t>(-idx)] : grid_[static_cast<std::size_t>(std::min(idx, n - 1))];
    };
    const double f0 = value(0), f1 = value(1), f2 = value(2), f3 = value(3);
    const double s = t + 1.0;  // position relative to the k-1 node
    const double l0 = (s - 1.0) * (s - 2.0) * (s - 3.0) / -6.0;
    const double l1 = s * (s - 2.0) * (s - 3.0) / 2.0;
    const double l2 = s * (s - 1.0) * (s - 3.0) / -2.0;
    const double l3 = s * (s - 1.0) * (s - 2.0) / 6.0;
    return f0 * l0 + f1 * l1 + f2 * l2 + f3 * l3;
}

double MollifierPhi::hat_by_quadrature(double xi) const {
    const double axi = std::abs(xi);
    if (cutoff_ >= 0.0 && axi > cutoff_) return 0.0;
    const int panels = std::max(16, static_cast<int>(std::ceil(2.0 * 6.0 * (axi + 1.0))));
    const auto& rule = glq::rule(16);
    double sum = 0.0;
    const double h = 2.0 / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = -1.0 + p * h;
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = lo + 0.5 * h * (rule.nodes[i] + 1.0);
            acc += rule.weights[i] * density(x) * std::cos(kTwoPi * axi * x);
        }
        sum += 0.5 * h * acc;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// TransitionPhi and F
// ---------------------------------------------------------------------------

double TransitionPhi::operator()(double x) const {
    if (x <= 1.0) return 0.0;
    if (x >= 2.0) return 1.0;
    const double a = std::exp(-1.0 / (x - 1.0));
    const double b = std::exp(-1.0 / (2.0 - x));
    return a / (a + b);
}

std::complex<double> eval_F_thconv(double x, std::span<const std::complex<double>> a,
                                   const TransitionPhi& phi) {
    const double w = phi(x);
    if (w == 0.0) return 0.0;
    const std::complex<double> z = unit_exp(x);
    std::complex<double> zn = 1.0;
    std::complex<double> sum = 0.0;
    for (const auto& an : a) {
        zn *= z;
        sum += an * zn;
    }
    return w * sum;
}

}  // namespace rlab
