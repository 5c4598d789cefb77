#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "youngmat/exact.hpp"
#include "youngmat/random.hpp"
#include "youngmat/spectra.hpp"

namespace youngmat {

/// Right end of the support of F<r>: L(r) = (r+1)^(r+1) / r^r.
struct SupportEdge {
    BigRat exact;
    double value = 0.0;
};

SupportEdge support_edge(int r);

/// The limiting spectral law of N·staircase_r shaped matrices.
struct LimitLaw {
    int r = 1;
    SupportEdge edge;
};

LimitLaw limit_law(int r);

struct StieltjesOptions {
    /// Absolute bound on the truncated geometric tail.
    double tol = 1e-15;
    /// Required relative clearance of |z| above L(r).
    double margin = 1e-3;
    std::int64_t max_terms = 2'000'000;
};

/// G(z) = Σ m_k z^-(k+1), summed term by term from the factorial form of m_k.
std::complex<double> stieltjes(int r, std::complex<double> z, const StieltjesOptions& options = {});

/// The same transform through the rF(r-1) hypergeometric term recurrence.
std::complex<double> stieltjes_hypergeometric(int r, std::complex<double> z, const StieltjesOptions& options = {});

struct DensityValue {
    double value = 0.0;
    double abs_error = 0.0;
};

/// F'<r>(x) for 0 < x < L(r) from the iterated Mellin convolution of
/// U(0, L) with the Beta factors. Reported abs_error <= tol or ToleranceNotMet.
DensityValue density(int r, double x, double tol = 1e-10);

/// Same, parametrized by the gap to the soft edge, so points very close to
/// L(r) keep full relative precision.
DensityValue density_from_gap(int r, double edge_gap, double tol = 1e-10);

/// Marchenko-Pastur density, zero outside [0, 4].
double density_mp(double x);

/// Closed-form density for r = 2, zero outside [0, 27/4].
double density_r2(double x);

/// Density samples on a graded grid x = L (1 - (1 - s^(r+1))^2), s = i/(G+1).
///
/// The grading makes density·dx/ds analytic in s at both edges, so the
/// end-corrected trapezoid weights in `weight` integrate smooth test
/// functions against the density to high order.
struct DensityGrid {
    int r = 1;
    double edge = 0.0;
    Eigen::VectorXd s;
    Eigen::VectorXd x;
    /// L(r) - x, computed without cancellation.
    Eigen::VectorXd edge_gap;
    Eigen::VectorXd density;
    Eigen::VectorXd abs_error;
    /// Quadrature weight per abscissa (already includes dx/ds).
    Eigen::VectorXd weight;
    /// Contribution of the s = 0 end node, whose density is infinite but
    /// whose density·dx/ds limit is finite; it multiplies phi(0).
    double origin_mass = 0.0;

    Eigen::Index size() const noexcept { return x.size(); }

    /// ∫ phi(x) F'(x) dx over [0, L].
    double integrate(const std::function<double(double)>& phi) const;
    double total_mass() const;
    double moment(int k) const;
    /// Error budget from the per-point density errors.
    double mass_error() const;
};

/// `tol` is the relative quadrature tolerance at each abscissa; `abs_error` holds
/// the resulting estimates. Abscissae are split across `threads` workers (0 = all cores).
DensityGrid density_grid(int r, std::int64_t grid_size, double tol = 1e-10, unsigned threads = 1);

/// Piecewise-linear CDF from the cumulative trapezoid of the grid in s,
/// with knots at 0, the grid abscissae, and L(r).
LinearCdf cdf_from_grid(const DensityGrid& grid);
LinearCdf cdf_grid(int r, std::int64_t grid_size, double tol = 1e-10, unsigned threads = 1);

/// Draws U(0, L(r)) · Π_j Beta(j/(r+1), j/(r(r+1))).
class BetaProductSampler {
public:
    explicit BetaProductSampler(int r);

    double operator()(RandomStream& stream) const;

    int order() const noexcept { return r_; }
    double scale() const noexcept { return scale_; }
    /// (a_j, b_j) for j = 1..r.
    const std::vector<std::pair<double, double>>& parameters() const noexcept { return params_; }

private:
    int r_;
    double scale_;
    std::vector<std::pair<double, double>> params_;
};

double beta_product_sample(int r, RandomStream& stream);

/// E[(U(0,L) Π B_j)^k] in exact arithmetic.
BigRat beta_product_moment(int r, std::int64_t k);

struct ContourMoment {
    double value = 0.0;
    /// Imaginary part of the same average; zero up to rounding.
    double imag = 0.0;
    std::int64_t resolution = 0;
};

/// m_k = E[U^k] · E[A^k] with A = e^{(r-1) i pi U'} (2 cos pi U')^(r+1), the
/// second factor by periodic trapezoid quadrature refined by doubling until two
/// successive resolutions agree to `tol` (relative).
ContourMoment contour_moment(int r, std::int64_t k, double tol = 1e-13, std::int64_t max_resolution = 1 << 22);

/// Dykema-Haagerup density in parametric form: (x(v), F'(x(v))) for 0 < v < pi.
std::pair<double, double> dh_density_param(double v);

/// Dykema-Haagerup density at x, inverting x(v) by bisection; 0 outside (0, e).
double dh_density(double x);

/// Probability mass per unit v: F'(x(v)) |x'(v)|.
double dh_mass_rate(double v);

/// CDF of the Dykema-Haagerup law from `points` nodes in v.
LinearCdf dh_cdf(std::int64_t points = 4096);

enum class Edge { Lower, Upper };

struct EdgeFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::int64_t points = 0;
};

/// Least-squares slope of log density against log distance to the edge over
/// a fixed window: [1e-5, 1e-2]·L at the hard edge, [1e-4, 1e-1]·L at the soft edge.
EdgeFit edge_exponent_fit(const DensityGrid& grid, Edge edge);

}  // namespace youngmat
