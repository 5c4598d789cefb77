#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "youngmat/combinatorics.hpp"
#include "youngmat/error.hpp"
#include "youngmat/limitlaw.hpp"
#include "youngmat/quadrature.hpp"

using namespace youngmat;
using std::numbers::pi;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::ConfigError;
}

// Stieltjes transform of the r = 1 law, branch chosen so that G(z) ~ 1/z
std::complex<double> mp_stieltjes(std::complex<double> z) {
    return (z - std::sqrt(z) * std::sqrt(z - 4.0)) / (2.0 * z);
}

double mp_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 4.0) return 1.0;
    const double theta = std::asin(std::sqrt(x) / 2.0);
    return 2.0 / pi * (theta + 0.5 * std::sin(2.0 * theta));
}

// ∫ phi(x) density_r2(x) dx with x = L t^3 to absorb the x^(-2/3) singularity
template <typename Phi>
double integrate_r2(Phi phi, double rel_tol = 1e-13) {
    constexpr double edge = 27.0 / 4.0;
    return integrate([&](double t) { return phi(edge * t * t * t) * density_r2(edge * t * t * t) * 3.0 * edge * t * t; },
                     0.0, 1.0, rel_tol)
        .value;
}

// -(1/pi) Im G(x + i eps) for the r = 2 law, i.e. the Poisson-smoothed density
double poisson_r2(double x, double eps) {
    constexpr double edge = 27.0 / 4.0;
    auto kernel = [&](double phi) {
        const double t = x + eps * std::tan(phi);
        return (t > 0.0 && t < edge) ? density_r2(t) / pi : 0.0;
    };
    const double lo = std::atan(-x / eps);
    const double hi = std::atan((edge - x) / eps);
    // split at phi = 0 where the density is sampled at x itself
    return integrate(kernel, lo, 0.0, 1e-11, 20000).value + integrate(kernel, 0.0, hi, 1e-11, 20000).value;
}

}  // namespace

TEST_CASE("support_edge") {
    CHECK(support_edge(1).exact == 4);
    CHECK(support_edge(2).exact == BigRat(27, 4));
    CHECK(support_edge(3).exact == BigRat(256, 27));
    CHECK(support_edge(3).value == doctest::Approx(256.0 / 27.0));
    for (int r = 1; r < 12; ++r) CHECK(support_edge(r + 1).exact > support_edge(r).exact);
    CHECK(code_of([] { (void)support_edge(0); }) == ErrorCode::InvalidOrder);
    CHECK(limit_law(2).edge.exact == BigRat(27, 4));
}

TEST_CASE("stieltjes series") {
    CHECK(std::abs(stieltjes(1, 5.0) - (1.0 - std::sqrt(0.2)) / 2.0) < 1e-10);
    CHECK(std::abs(stieltjes(1, {3.0, 4.0}) - mp_stieltjes({3.0, 4.0})) < 1e-10);
    CHECK(std::abs(stieltjes(1, {-4.5, 0.5}) - mp_stieltjes({-4.5, 0.5})) < 1e-10);
    for (int r = 1; r <= 4; ++r) {
        const double z = 1e6 * support_edge(r).value;
        CHECK(std::abs(z * stieltjes(r, z) - 1.0) < 1e-5);
    }
    CHECK(code_of([] { (void)stieltjes(1, 4.001); }) == ErrorCode::OutsideDomain);
    CHECK(code_of([] { (void)stieltjes(2, {0.0, 1.0}); }) == ErrorCode::OutsideDomain);
    StieltjesOptions tight;
    tight.max_terms = 3;
    CHECK(code_of([&] { (void)stieltjes(1, 5.0, tight); }) == ErrorCode::NoConvergence);
}

TEST_CASE("stieltjes series agrees with the hypergeometric recurrence") {
    CHECK(std::abs(stieltjes(2, 10.0) - stieltjes_hypergeometric(2, 10.0)) < 1e-10);
    for (int r = 1; r <= 5; ++r) {
        const double edge = support_edge(r).value;
        for (std::complex<double> z : {std::complex<double>(1.5 * edge, 0.0), std::complex<double>(0.3 * edge, 1.4 * edge),
                                       std::complex<double>(-2.0 * edge, 0.1)}) {
            CAPTURE(r);
            CAPTURE(z);
            CHECK(std::abs(stieltjes(r, z) - stieltjes_hypergeometric(r, z)) < 1e-10);
        }
    }
}

TEST_CASE("stieltjes series matches the transform of the r = 2 closed-form density") {
    for (std::complex<double> z : {std::complex<double>(10.0, 0.0), std::complex<double>(3.0, 8.0)}) {
        const double re = integrate_r2([&](double x) { return (1.0 / (z - x)).real(); });
        const double im = integrate_r2([&](double x) { return (1.0 / (z - x)).imag(); });
        CHECK(std::abs(stieltjes(2, z) - std::complex<double>(re, im)) < 1e-9);
    }
}

TEST_CASE("property: Stieltjes inversion recovers the closed-form densities") {
    // linear Richardson extrapolation in eps from eps = 1e-3 and 1e-4
    const double e1 = 1e-3;
    const double e2 = 1e-4;
    for (double x : {0.5, 1.0, 2.0, 3.0, 3.5}) {
        const double p1 = -mp_stieltjes({x, e1}).imag() / pi;
        const double p2 = -mp_stieltjes({x, e2}).imag() / pi;
        const double extrapolated = (e1 * p2 - e2 * p1) / (e1 - e2);
        CHECK(std::abs(extrapolated - density_mp(x)) < 1e-3);
    }
    for (double x : {0.5, 1.5, 3.0, 5.0, 6.5}) {
        const double p1 = poisson_r2(x, e1);
        const double p2 = poisson_r2(x, e2);
        const double extrapolated = (e1 * p2 - e2 * p1) / (e1 - e2);
        CAPTURE(x);
        CHECK(std::abs(extrapolated - density_r2(x)) < 1e-3);
    }
}

TEST_CASE("density_mp and density_r2") {
    CHECK(density_mp(2.0) == doctest::Approx(1.0 / (2.0 * pi)));
    CHECK(density_mp(4.0) == 0.0);
    CHECK(density_mp(5.0) == 0.0);
    CHECK(density_mp(-1.0) == 0.0);
    CHECK(density_r2(27.0 / 4.0) == 0.0);
    CHECK(density_r2(7.0) == 0.0);
    CHECK(density_r2(0.0) == 0.0);
    CHECK(std::abs(integrate_r2([](double) { return 1.0; }) - 1.0) < 1e-8);
    CHECK(std::abs(integrate_r2([](double x) { return x; }) - 1.5) < 1e-6);
    CHECK(std::abs(integrate_r2([](double x) { return x * x; }) - 5.0) < 1e-6);
}

TEST_CASE("convolution density matches the closed forms") {
    CHECK(std::abs(density(1, 2.0).value - 1.0 / (2.0 * pi)) < 1e-8);
    for (int i = 1; i <= 20; ++i) {
        const double x1 = 4.0 * i / 21.0;
        CHECK(std::abs(density(1, x1).value - density_mp(x1)) < 1e-8);
        const double x2 = 6.75 * i / 21.0;
        CHECK(std::abs(density(2, x2).value - density_r2(x2)) < 1e-6);
    }
}

TEST_CASE("density reports its error and support") {
    for (int r = 1; r <= 4; ++r) {
        const double edge = support_edge(r).value;
        for (double u : {1e-6, 0.01, 0.3, 0.7, 0.999}) {
            const DensityValue d = density(r, u * edge, 1e-9);
            CHECK(d.value > 0.0);
            CHECK(d.abs_error <= 1e-9);
        }
        CHECK(code_of([&] { (void)density(r, 0.0); }) == ErrorCode::OutsideSupport);
        CHECK(code_of([&] { (void)density(r, edge); }) == ErrorCode::OutsideSupport);
        CHECK(code_of([&] { (void)density(r, -1.0); }) == ErrorCode::OutsideSupport);
        CHECK(code_of([&] { (void)density(r, 2.0 * edge); }) == ErrorCode::OutsideSupport);
    }
    CHECK(code_of([] { (void)density(2, 1.0, 1e-30); }) == ErrorCode::ToleranceNotMet);
}

TEST_CASE("density_from_gap resolves the soft edge") {
    const double edge = 27.0 / 4.0;
    for (double gap : {1e-9, 1e-6, 1e-3, 0.5}) {
        const double via_gap = density_from_gap(2, gap).value;
        CHECK(via_gap == doctest::Approx(density_r2(edge - gap)).epsilon(gap < 1e-6 ? 1e-4 : 1e-9));
    }
    // sqrt behaviour: f(L - g) / sqrt(g) settles to a constant
    const double c1 = density_from_gap(3, 1e-10).value / std::sqrt(1e-10);
    const double c2 = density_from_gap(3, 1e-12).value / std::sqrt(1e-12);
    CHECK(c1 == doctest::Approx(c2).epsilon(1e-4));
    CHECK(code_of([] { (void)density_from_gap(2, 0.0); }) == ErrorCode::OutsideSupport);
}

TEST_CASE("density grid normalization and moments") {
    for (int r = 1; r <= 4; ++r) {
        const DensityGrid grid = density_grid(r, 511);
        CAPTURE(r);
        CHECK(grid.size() == 511);
        CHECK((grid.density.array() >= 0.0).all());
        CHECK((grid.x.array() > 0.0).all());
        CHECK((grid.x.array() < grid.edge).all());
        for (Eigen::Index i = 1; i < grid.size(); ++i) REQUIRE(grid.x[i] > grid.x[i - 1]);
        CHECK(std::abs(grid.total_mass() - 1.0) < 1e-6);
        CHECK(grid.mass_error() < 1e-6);
        for (int k = 1; k <= 6; ++k) {
            const double exact = to_double(limit_moment(r, k));
            CHECK(std::abs(grid.moment(k) / exact - 1.0) < 1e-4);
        }
    }
    CHECK(std::abs(density_grid(3, 63).total_mass() - 1.0) < 1e-4);
    CHECK(code_of([] { (void)density_grid(2, 8); }) == ErrorCode::InvalidRange);
}

TEST_CASE("cdf_grid") {
    const LinearCdf f2 = cdf_grid(2, 255);
    CHECK(std::abs(f2.f().back() - 1.0) < 1e-3);
    CHECK(f2.f().front() == 0.0);
    for (std::size_t i = 1; i < f2.f().size(); ++i) REQUIRE(f2.f()[i] >= f2.f()[i - 1]);
    const LinearCdf f1 = cdf_grid(1, 511);
    CHECK(std::abs(f1.cdf(2.0) - mp_cdf(2.0)) < 1e-6);
    for (double x : {0.1, 1.0, 3.0, 3.9}) CHECK(std::abs(f1.cdf(x) - mp_cdf(x)) < 1e-5);
    CHECK(code_of([] { (void)cdf_grid(2, 15); }) == ErrorCode::InvalidRange);
}

TEST_CASE("beta product sampler") {
    const BetaProductSampler sampler(3);
    CHECK(sampler.order() == 3);
    CHECK(sampler.scale() == doctest::Approx(256.0 / 27.0));
    REQUIRE(sampler.parameters().size() == 3);
    for (const auto& [a, b] : sampler.parameters()) {
        CHECK(a > 0.0);
        CHECK(b > 0.0);
    }
    CHECK(sampler.parameters()[1].first == doctest::Approx(0.5));
    CHECK(sampler.parameters()[1].second == doctest::Approx(1.0 / 6.0));

    for (int r = 1; r <= 5; ++r) {
        RandomStream s(50, static_cast<std::uint64_t>(r));
        const double edge = support_edge(r).value;
        for (int i = 0; i < 10000; ++i) {
            const double y = beta_product_sample(r, s);
            REQUIRE(y >= 0.0);
            REQUIRE(y <= edge);
        }
    }
}

TEST_CASE("beta product moments are exact") {
    CHECK(beta_product_moment(2, 2) == 5);
    CHECK(beta_product_moment(1, 3) == 5);
    for (int r = 1; r <= 6; ++r) CHECK(beta_product_moment(r, 0) == 1);
    for (int r = 1; r <= 5; ++r) {
        for (int k = 0; k <= 8; ++k) CHECK(beta_product_moment(r, k) == limit_moment(r, k));
    }
}

TEST_CASE("property: Monte Carlo moments of the Beta product") {
    const int n = 1000000;
    for (int r = 1; r <= 4; ++r) {
        const BetaProductSampler sampler(r);
        RandomStream s(60, static_cast<std::uint64_t>(r));
        std::vector<double> sum(7, 0.0);
        std::vector<double> sum_sq(7, 0.0);
        for (int i = 0; i < n; ++i) {
            const double y = sampler(s);
            double p = 1.0;
            for (int k = 0; k <= 6; ++k) {
                sum[k] += p;
                sum_sq[k] += p * p;
                p *= y;
            }
        }
        for (int k = 1; k <= 6; ++k) {
            const double mean = sum[k] / n;
            const double se = std::sqrt((sum_sq[k] / n - mean * mean) / (n - 1));
            CAPTURE(r);
            CAPTURE(k);
            CHECK(std::abs(mean - to_double(limit_moment(r, k))) < 4.0 * se);
        }
    }
}

TEST_CASE("property: r = 1 Beta product is the MP law") {
    const int n = 1000000;
    RandomStream s(70);
    std::vector<double> draws;
    draws.reserve(n);
    for (int i = 0; i < n; ++i) draws.push_back(beta_product_sample(1, s));
    const EmpiricalDistribution empirical(draws);
    double sup = 0.0;
    for (double x : empirical.knots()) {
        sup = std::max(sup, std::abs(empirical.cdf(x) - mp_cdf(x)));
        sup = std::max(sup, std::abs(empirical.cdf_left(x) - mp_cdf(x)));
    }
    CHECK(sup < 0.005);
}

TEST_CASE("contour moments") {
    CHECK(std::abs(contour_moment(1, 2).value - 2.0) < 1e-8);
    CHECK(std::abs(contour_moment(2, 3).value - 21.0) < 1e-8);
    for (int r = 1; r <= 5; ++r) CHECK(std::abs(contour_moment(r, 0).value - 1.0) < 1e-14);
    for (int r = 1; r <= 4; ++r) {
        for (int k = 0; k <= 6; ++k) {
            const ContourMoment c = contour_moment(r, k);
            const double exact = to_double(limit_moment(r, k));
            CHECK(std::abs(c.value / exact - 1.0) < 1e-8);
            CHECK(std::abs(c.imag) < 1e-9 * exact);
        }
    }
    CHECK(code_of([] { (void)contour_moment(3, 6, 1e-13, 16); }) == ErrorCode::NoConvergence);
}

TEST_CASE("Dykema-Haagerup parametrization") {
    const auto [x, f] = dh_density_param(pi / 2);
    CHECK(x == doctest::Approx(2.0 / pi));
    CHECK(f == doctest::Approx(1.0 / pi));
    CHECK(dh_density_param(1e-6).first == doctest::Approx(std::numbers::e).epsilon(1e-9));
    CHECK(code_of([] { (void)dh_density_param(0.0); }) == ErrorCode::OutsideDomain);
    CHECK(code_of([] { (void)dh_density_param(pi); }) == ErrorCode::OutsideDomain);
    CHECK(dh_density(2.0 / pi) == doctest::Approx(1.0 / pi).epsilon(1e-10));
    CHECK(dh_density(3.0) == 0.0);
}

TEST_CASE("Dykema-Haagerup moments through the parametrization") {
    for (int k = 0; k <= 4; ++k) {
        const double m = integrate(
                             [k](double v) {
                                 if (v <= 0.0 || v >= pi) return 0.0;
                                 return std::pow(dh_density_param(v).first, k) * dh_mass_rate(v);
                             },
                             0.0, pi, 1e-12)
                             .value;
        CAPTURE(k);
        CHECK(std::abs(m - to_double(dh_moment(k))) < 1e-6);
    }
}

TEST_CASE("Dykema-Haagerup CDF") {
    const LinearCdf f = dh_cdf();
    CHECK(f.f().front() == 0.0);
    CHECK(std::abs(f.f().back() - 1.0) < 1e-6);
    CHECK(f.x().back() == doctest::Approx(std::numbers::e));
    // density from the parametrization against the CDF slope
    for (double x : {0.5, 1.0, 2.0}) {
        const double h = 1e-3;
        CHECK((f.cdf(x + h) - f.cdf(x - h)) / (2 * h) == doctest::Approx(dh_density(x)).epsilon(1e-3));
    }
}

TEST_CASE("edge exponent fits") {
    const DensityGrid g1 = density_grid(1, 511);
    CHECK(std::abs(edge_exponent_fit(g1, Edge::Lower).slope + 0.5) < 0.05);
    CHECK(std::abs(edge_exponent_fit(g1, Edge::Upper).slope - 0.5) < 0.05);
    const DensityGrid g2 = density_grid(2, 511);
    CHECK(std::abs(edge_exponent_fit(g2, Edge::Lower).slope + 2.0 / 3.0) < 0.05);
    CHECK(std::abs(edge_exponent_fit(g2, Edge::Upper).slope - 0.5) < 0.05);
    CHECK(edge_exponent_fit(g2, Edge::Lower).points >= 8);
    const DensityGrid coarse = density_grid(2, 16);
    CHECK(code_of([&] { (void)edge_exponent_fit(coarse, Edge::Lower); }) == ErrorCode::InsufficientPoints);
}

TEST_CASE("density grid is independent of the thread count") {
    const DensityGrid a = density_grid(3, 101, 1e-10, 1);
    const DensityGrid b = density_grid(3, 101, 1e-10, 3);
    CHECK(a.density == b.density);
    CHECK(a.abs_error == b.abs_error);
}

TEST_CASE("property: local hard-edge slope tends to -r/(r+1)") {
    for (int r = 1; r <= 4; ++r) {
        const double edge = support_edge(r).value;
        const double x = 1e-20 * edge;
        // absolute tolerance is meaningless for values this large
        const double a = density(r, x, 1e300).value;
        const double b = density(r, 1.1 * x, 1e300).value;
        CAPTURE(r);
        CHECK(std::log(b / a) / std::log(1.1) == doctest::Approx(-static_cast<double>(r) / (r + 1)).epsilon(1e-3));
    }
}
