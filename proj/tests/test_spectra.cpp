#include <cmath>
#include <vector>

#include "doctest.h"
#include "youngmat/combinatorics.hpp"
#include "youngmat/error.hpp"
#include "youngmat/spectra.hpp"

using namespace youngmat;

namespace {

Spectrum spectrum(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return Spectrum{v};
}

EmpiricalDistribution random_steps(RandomStream& s, int n) {
    std::vector<double> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back(std::floor(4.0 * s.uniform() * 8.0) / 8.0);
    return EmpiricalDistribution(atoms);
}

// Lévy distance straight from the definition. Atoms, eps and x all live on
// the 1/1024 lattice, so every violated interval contains a lattice point and
// the result is the smallest lattice eps at or above the true distance.
double levy_brute_force(const EmpiricalDistribution& f, const EmpiricalDistribution& g) {
    constexpr double h = 1.0 / 1024.0;
    for (int e = 0; e <= 1024; ++e) {
        const double eps = e * h;
        bool ok = true;
        for (int i = -2048; i <= 6144 && ok; ++i) {
            const double x = i * h;
            ok = f.cdf(x - eps) - eps <= g.cdf(x) + 1e-12 && g.cdf(x) <= f.cdf(x + eps) + eps + 1e-12;
        }
        if (ok) return eps;
    }
    return 1.0;
}

}  // namespace

TEST_CASE("eigenvalues of small matrices") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 2.0;
    const Spectrum s = eigenvalues(d);
    REQUIRE(s.dim() == 2);
    CHECK(s.values[0] == doctest::Approx(2.0));
    CHECK(s.values[1] == doctest::Approx(3.0));

    ShapedMatrix<double> x{Partition{1}, ComplexMatrix<double>::Constant(1, 1, 2.0), 0, 0};
    CHECK(eigenvalues(covariance(x, 1)).values[0] == doctest::Approx(4.0));

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 1) = 1.0;
    try {
        (void)eigenvalues(bad);
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotHermitian);
    }
}

TEST_CASE("eigenvalues satisfy trace and Frobenius identities") {
    for (int draw = 0; draw < 20; ++draw) {
        RandomStream s(4, static_cast<std::uint64_t>(draw));
        const auto x = sample_shaped(square(5), EntryDistribution::of(EntryKind::ComplexGaussian), s);
        const auto w = covariance(x, 1);
        const Spectrum sp = eigenvalues(w);
        CHECK(sp.values.sum() == doctest::Approx(w.entries.trace().real()).epsilon(1e-10));
        CHECK(sp.values.squaredNorm() == doctest::Approx(w.entries.squaredNorm()).epsilon(1e-9));
        for (Eigen::Index i = 1; i < sp.dim(); ++i) CHECK(sp.values[i - 1] <= sp.values[i]);
    }
}

TEST_CASE("eigenpair residuals are small") {
    RandomStream s(6);
    const auto w = covariance(sample_shaped(dilate(staircase(3), 4), EntryDistribution::of(EntryKind::RealGaussian), s), 4);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(w.entries);
    const double norm = w.entries.norm();
    for (Eigen::Index i = 0; i < w.dim(); ++i) {
        const Eigen::VectorXcd v = solver.eigenvectors().col(i);
        CHECK((w.entries * v - solver.eigenvalues()[i] * v).norm() <= 1e-9 * norm);
    }
}

TEST_CASE("property: staircase spectra have rN nonnegative values") {
    for (int r = 1; r <= 3; ++r) {
        for (int n : {1, 4, 7}) {
            RandomStream s(12, static_cast<std::uint64_t>(r * 100 + n));
            const auto w = covariance(
                sample_shaped(dilate(staircase(r), n), EntryDistribution::of(EntryKind::Rademacher), s), n);
            const Spectrum sp = eigenvalues(w);
            CHECK(sp.dim() == r * n);
            CHECK(sp.values.minCoeff() >= -1e-10 * sp.values.cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("empirical_cdf") {
    const auto f = empirical_cdf(spectrum({1, 2, 3}));
    CHECK(f.cdf(2.0) == doctest::Approx(2.0 / 3.0));
    CHECK(f.cdf(0.5) == 0.0);
    CHECK(f.cdf(3.0) == 1.0);
    CHECK(f.cdf_left(3.0) == doctest::Approx(2.0 / 3.0));
    const auto g = empirical_cdf(spectrum({1, 1, 5}));
    CHECK(g.cdf(1.0) == doctest::Approx(2.0 / 3.0));
    CHECK(g.knots() == std::vector<double>{1.0, 5.0});
    CHECK(g.total() == 3);
}

TEST_CASE("empirical_moment") {
    CHECK(empirical_moment(spectrum({1, 2, 3}), 2) == doctest::Approx(14.0 / 3.0));
    CHECK(empirical_moment(spectrum({0.3, 7.0}), 0) == 1.0);

    RandomStream s(9);
    const auto w = covariance(sample_shaped(square(6), EntryDistribution::of(EntryKind::ComplexGaussian), s), 1);
    const Eigen::MatrixXcd cube = w.entries * w.entries * w.entries;
    CHECK(empirical_moment(eigenvalues(w), 3) == doctest::Approx(cube.trace().real() / 6.0).epsilon(1e-8));
}

TEST_CASE("property: empirical_moment equals the integral against the empirical CDF") {
    const Spectrum sp = spectrum({0.5, 0.5, 1.25, 2.0, 3.5});
    const auto f = empirical_cdf(sp);
    for (int k = 0; k <= 5; ++k) {
        double integral = 0.0;
        for (double x : f.knots()) integral += std::pow(x, k) * (f.cdf(x) - f.cdf_left(x));
        CHECK(empirical_moment(sp, k) == doctest::Approx(integral).epsilon(1e-14));
    }
}

TEST_CASE("levy_distance") {
    const auto f = empirical_cdf(spectrum({0.2, 1.0, 1.7}));
    CHECK(levy_distance(f, f) == 0.0);
    const EmpiricalDistribution at0({0.0});
    const EmpiricalDistribution at_half({0.5});
    CHECK(levy_distance(at0, at_half) == doctest::Approx(0.5).epsilon(1e-8));
    const EmpiricalDistribution at3({3.0});
    CHECK(levy_distance(at0, at3) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("property: levy_distance is symmetric and matches the definition") {
    RandomStream s(13);
    for (int i = 0; i < 20; ++i) {
        const auto f = random_steps(s, 7);
        const auto g = random_steps(s, 5);
        const double d = levy_distance(f, g);
        CHECK(d == doctest::Approx(levy_distance(g, f)).epsilon(1e-8));
        const double brute = levy_brute_force(f, g);
        CHECK(d <= brute + 1e-8);
        CHECK(brute - d < 1.0 / 1024.0 + 1e-8);
        CHECK(ks_distance(f, g) >= d - 1e-9);
    }
}

TEST_CASE("property: levy_distance triangle inequality") {
    RandomStream s(14);
    for (int i = 0; i < 50; ++i) {
        const auto f = random_steps(s, 6);
        const auto g = random_steps(s, 4);
        const auto h = random_steps(s, 9);
        CHECK(levy_distance(f, h) <= levy_distance(f, g) + levy_distance(g, h) + 1e-8);
    }
}

TEST_CASE("levy_distance against a piecewise-linear CDF") {
    const LinearCdf uniform({0.0, 1.0}, {0.0, 1.0});
    std::vector<double> atoms;
    for (int i = 1; i <= 1000; ++i) atoms.push_back((i - 0.5) / 1000.0);
    const EmpiricalDistribution grid(atoms);
    CHECK(levy_distance(uniform, grid) <= 5e-4 + 1e-9);
    CHECK(ks_distance(uniform, grid) == doctest::Approx(5e-4).epsilon(1e-6));
}

TEST_CASE("ks_distance") {
    const auto f = empirical_cdf(spectrum({1, 2}));
    CHECK(ks_distance(f, f) == 0.0);
    CHECK(ks_distance(EmpiricalDistribution({0.0}), EmpiricalDistribution({1.0})) == 1.0);
}

TEST_CASE("histogram") {
    const Histogram h = histogram(spectrum({1, 1, 3}), 2, 0.0, 4.0);
    CHECK(h.density[0] == doctest::Approx(2.0 / 6.0));
    CHECK(h.density[1] == doctest::Approx(1.0 / 6.0));
    CHECK(h.counts == std::vector<std::uint64_t>{2, 1});

    const Histogram e = histogram(std::span<const double>(), 4, 0.0, 1.0);
    CHECK(e.total == 0);
    for (double d : e.density) CHECK(d == 0.0);

    const std::vector<double> v{-1.0, 0.0, 0.5, 1.0, 2.0};
    const Histogram o = histogram(v, 4, 0.0, 1.0);
    CHECK(o.underflow == 1);
    CHECK(o.overflow == 1);
    CHECK(o.counts.back() == 1);  // right edge is closed

    CHECK_THROWS_AS(histogram(v, 0, 0.0, 1.0), Error);
    CHECK_THROWS_AS(histogram(v, 3, 1.0, 1.0), Error);
}

TEST_CASE("property: histogram densities integrate to one without overflow") {
    RandomStream s(15);
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i) v.push_back(s.uniform() * 3.0);
    const Histogram h = histogram(v, 17, 0.0, 3.0);
    double mass = 0.0;
    for (std::size_t i = 0; i < h.bins(); ++i) mass += h.density[i] * h.width(i);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ensemble_moments basics") {
    const auto dist = EntryDistribution::of(EntryKind::ComplexGaussian);
    const auto stats = ensemble_moments(staircase(2), 20, dist, 2, 200, 17);
    REQUIRE(stats.size() == 3);
    CHECK(stats[0].mean == 1.0);
    CHECK(stats[0].variance == 0.0);
    const double se = std::sqrt(stats[1].variance / 200);
    CHECK(std::abs(stats[1].mean - to_double(limit_moment(2, 1))) < 4.0 * se);
    CHECK_THROWS_AS(ensemble_moments(staircase(2), 5, dist, 2, 1, 17), Error);
}

TEST_CASE("run_ensemble does not depend on the thread count") {
    EnsembleConfig config{dilate(staircase(2), 5), 5, EntryDistribution::of(EntryKind::RealGaussian), 3, 9, 77, 1};
    const auto serial = run_ensemble(config);
    config.threads = 4;
    const auto parallel = run_ensemble(config);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].values == parallel[i].values);
}

TEST_CASE("variance of m_2 shrinks like 1/N^2") {
    const auto dist = EntryDistribution::of(EntryKind::ComplexGaussian);
    const auto small = ensemble_moments(staircase(2), 15, dist, 2, 400, 101);
    const auto large = ensemble_moments(staircase(2), 30, dist, 2, 400, 202);
    const double ratio = small[2].variance / large[2].variance;
    CHECK(ratio > 2.0);
    CHECK(ratio < 8.0);
}
