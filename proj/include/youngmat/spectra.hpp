#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "youngmat/error.hpp"
#include "youngmat/matrix_lab.hpp"

namespace youngmat {

/// Real eigenvalues in ascending order.
struct Spectrum {
    Eigen::VectorXd values;

    Eigen::Index dim() const noexcept { return values.size(); }
};

/// Relative tolerance used when validating Hermitian input.
inline constexpr double kHermitianTolerance = 1e-10;

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& w, double rel_tol = kHermitianTolerance) {
    if (w.rows() != w.cols()) return false;
    const double scale = std::max(1.0, static_cast<double>(w.cwiseAbs().maxCoeff()));
    return static_cast<double>((w - w.adjoint()).cwiseAbs().maxCoeff()) <= rel_tol * scale;
}

/// Full spectrum of a Hermitian matrix (NotHermitian / SolverFailure).
template <typename Derived>
Spectrum eigenvalues(const Eigen::MatrixBase<Derived>& w) {
    using MatrixType = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (!is_hermitian(w)) throw Error(ErrorCode::NotHermitian, "eigenvalues requires a Hermitian matrix");
    if (w.rows() == 0) return Spectrum{Eigen::VectorXd()};
    Eigen::SelfAdjointEigenSolver<MatrixType> solver(MatrixType(w), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "Hermitian eigensolver did not converge");
    // Eigen returns eigenvalues sorted ascending
    return Spectrum{solver.eigenvalues().template cast<double>()};
}

template <typename Scalar>
Spectrum eigenvalues(const CovarianceMatrix<Scalar>& w) {
    return eigenvalues(w.entries);
}

/// Right-continuous step CDF with mass 1/n at each atom.
class EmpiricalDistribution {
public:
    EmpiricalDistribution() = default;
    explicit EmpiricalDistribution(std::vector<double> atoms);

    /// F(x) = #{atoms <= x} / n.
    double cdf(double x) const noexcept;
    /// F(x-) = #{atoms < x} / n.
    double cdf_left(double x) const noexcept;
    /// Distinct jump locations.
    std::vector<double> knots() const;

    const std::vector<double>& atoms() const noexcept { return atoms_; }
    std::size_t total() const noexcept { return atoms_.size(); }

private:
    std::vector<double> atoms_;
};

EmpiricalDistribution empirical_cdf(const Spectrum& s);

/// Piecewise-linear CDF through (x_i, F_i); 0 left of the first knot, 1 right of the last.
class LinearCdf {
public:
    LinearCdf() = default;
    LinearCdf(std::vector<double> x, std::vector<double> f);

    double cdf(double x) const noexcept;
    double cdf_left(double x) const noexcept { return cdf(x); }
    std::vector<double> knots() const { return x_; }

    const std::vector<double>& x() const noexcept { return x_; }
    const std::vector<double>& f() const noexcept { return f_; }

private:
    std::vector<double> x_;
    std::vector<double> f_;
};

/// Anything with cdf(x), cdf_left(x) and a knot set outside which the CDF is
/// linear between consecutive knots (step and piecewise-linear CDFs both qualify).
template <typename T>
concept CdfLike = requires(const T& d, double x) {
    { d.cdf(x) } -> std::convertible_to<double>;
    { d.cdf_left(x) } -> std::convertible_to<double>;
    { d.knots() } -> std::convertible_to<std::vector<double>>;
};

/// (1/n) Σ x_i^k.
double empirical_moment(const Spectrum& s, int k);

namespace detail {

template <CdfLike F, CdfLike G>
bool levy_band_holds(const F& f, const G& g, double eps, std::span<const double> f_knots,
                     std::span<const double> g_knots) {
    constexpr double slack = 1e-12;
    auto check = [&](double x) {
        // left limits cover the points just before a jump of G or of F(x +- eps)
        const double g_at = g.cdf(x);
        const double g_left = g.cdf_left(x);
        if (f.cdf(x - eps) - eps > g_at + slack) return false;
        if (f.cdf_left(x - eps) - eps > g_left + slack) return false;
        if (g_at > f.cdf(x + eps) + eps + slack) return false;
        if (g_left > f.cdf_left(x + eps) + eps + slack) return false;
        return true;
    };
    for (double x : g_knots) {
        if (!check(x)) return false;
    }
    for (double k : f_knots) {
        if (!check(k + eps) || !check(k - eps)) return false;
    }
    return true;
}

}  // namespace detail

/// Lévy distance by bisection on eps to absolute tolerance `tol`.
template <CdfLike F, CdfLike G>
double levy_distance(const F& f, const G& g, double tol = 1e-9) {
    const std::vector<double> f_knots = f.knots();
    const std::vector<double> g_knots = g.knots();
    if (detail::levy_band_holds(f, g, 0.0, f_knots, g_knots)) return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (detail::levy_band_holds(f, g, mid, f_knots, g_knots)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

/// sup |F - G| over both knot sets, including left limits.
template <CdfLike F, CdfLike G>
double ks_distance(const F& f, const G& g) {
    double sup = 0.0;
    auto visit = [&](double x) {
        sup = std::max(sup, std::abs(f.cdf(x) - g.cdf(x)));
        sup = std::max(sup, std::abs(f.cdf_left(x) - g.cdf_left(x)));
    };
    for (double x : f.knots()) visit(x);
    for (double x : g.knots()) visit(x);
    return sup;
}

struct Histogram {
    std::vector<double> edges;
    std::vector<std::uint64_t> counts;
    std::vector<double> density;
    std::uint64_t underflow = 0;
    std::uint64_t overflow = 0;
    /// All values seen, in range or not; zero marks an empty input.
    std::uint64_t total = 0;

    std::size_t bins() const noexcept { return counts.size(); }
    double width(std::size_t i) const noexcept { return edges[i + 1] - edges[i]; }
};

/// Density histogram on [lo, hi] with `bins` equal bins; the last bin is closed.
Histogram histogram(std::span<const double> values, std::size_t bins, double lo, double hi);
inline Histogram histogram(const Spectrum& s, std::size_t bins, double lo, double hi) {
    return histogram(std::span<const double>(s.values.data(), static_cast<std::size_t>(s.values.size())), bins, lo,
                     hi);
}

struct EnsembleConfig {
    Partition shape;
    std::int64_t dilation = 1;
    EntryDistribution entries;
    int k_max = 4;
    std::int64_t replicas = 2;
    std::uint64_t seed = 0;
    /// Worker threads; 0 picks hardware concurrency. Output does not depend on it.
    unsigned threads = 1;
};

/// Spectra of all replicas, indexed by replica number.
std::vector<Spectrum> run_ensemble(const EnsembleConfig& config);

struct MomentStats {
    int k = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
};

/// Mean and unbiased variance of m_{k,N} over replicas for k = 0..k_max.
std::vector<MomentStats> moment_stats(std::span<const Spectrum> spectra, int k_max);

/// Builds shape = dilate(lambda, N), runs the ensemble, and reduces the moments.
std::vector<MomentStats> ensemble_moments(const Partition& lambda, std::int64_t n, const EntryDistribution& dist,
                                          int k_max, std::int64_t replicas, std::uint64_t seed, unsigned threads = 1);

}  // namespace youngmat
