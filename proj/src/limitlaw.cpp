#include "youngmat/limitlaw.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <thread>

#include "youngmat/combinatorics.hpp"
#include "youngmat/error.hpp"
#include "youngmat/quadrature.hpp"

namespace youngmat {

namespace {

void require_order(int r) {
    if (r < 1) throw Error(ErrorCode::InvalidOrder, "order r must be >= 1");
}

double edge_value(int r) { return std::pow(r + 1.0, r + 1.0) / std::pow(static_cast<double>(r), r); }

// ---------------------------------------------------------------------------
// Convolution density
//
// With P = u_1 ... u_r, u_j ~ Beta(a_j, b_j), the law Y = L U P has density
//   F'(x) = H_r(log(L/x)) / L,   H_m(t) = E[ 1/(u_1..u_m) ; u_1..u_m > e^-t ].
// H_1 is an incomplete Beta integral with first parameter a - 1 < 0, summed as
// a series. H_m for m >= 2 integrates H_{m-1} against one more Beta factor,
// after mapping u = e^{-theta t}, theta = phi^(1/b); that map absorbs both the
// (1-u)^(b-1) endpoint singularity and the scale spread when e^-t is tiny.
// Every level is carried as G_m(t) = H_m(t) e^{-d t} with d = 1 - a_1, the
// growth rate of H_1, so no large exponentials appear at large t.
// Intermediate levels are tabulated once per r as piecewise Chebyshev
// interpolants of log G_m in log t, so the top level is a single quadrature.
// ---------------------------------------------------------------------------

struct BetaFactor {
    double a;
    double b;
    double log_beta;
};

std::vector<BetaFactor> beta_factors(int r) {
    std::vector<BetaFactor> out;
    for (int j = 1; j <= r; ++j) {
        const double a = static_cast<double>(j) / (r + 1);
        const double b = static_cast<double>(j) / (static_cast<double>(r) * (r + 1));
        out.push_back({a, b, std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)});
    }
    return out;
}

// e^{-d t} ∫_v^1 u^{a-2} (1-u)^{b-1} du / B(a, b) with v = e^-t.
double incomplete_tail(double t, const BetaFactor& f, double decay) {
    if (t <= 0.0) return 0.0;
    const double p = f.a - 1.0;
    const double q = f.b;
    constexpr int kMaxTerms = 4000;
    const double v = std::exp(-t);
    double result = 0.0;
    if (v <= 0.5) {
        // B(p,q) - B_v(p,q), both by analytic continuation in p
        double sum = 0.0;
        double coef = 1.0;
        double pow_v = 1.0;
        for (int n = 0; n < kMaxTerms; ++n) {
            const double term = coef * pow_v / (p + n);
            sum += term;
            if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
            coef *= (1.0 - q + n) / (n + 1.0);
            pow_v *= v;
        }
        const double pq = p + q;
        const double complete = std::abs(pq) < 1e-14 ? 0.0 : std::tgamma(p) * std::tgamma(q) / std::tgamma(pq);
        result = complete * std::exp(-decay * t) - std::exp(-(p + decay) * t) * sum;
    } else {
        const double w = -std::expm1(-t);
        double sum = 0.0;
        double coef = 1.0;
        double pow_w = 1.0;
        for (int n = 0; n < kMaxTerms; ++n) {
            const double term = coef * pow_w / (q + n);
            sum += term;
            if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
            coef *= (1.0 - p + n) / (n + 1.0);
            pow_w *= w;
        }
        result = std::pow(w, q) * sum * std::exp(-decay * t);
    }
    return result * std::exp(-f.log_beta);
}

// log((e^s - 1) / s) for s <= 0, continuous at 0.
double log_expm1_ratio(double s) {
    if (s == 0.0) return 0.0;
    if (s > -1e-8) return 0.5 * s;
    return std::log(std::expm1(s) / s);
}

using LevelFunction = std::function<QuadResult(double)>;

// One convolution step: G_m(t) from G_{m-1} and the m-th Beta factor.
QuadResult convolve_level(const BetaFactor& f, double decay, const LevelFunction& lower, double t, double rel_tol) {
    if (t <= 0.0) return {0.0, 0.0};
    const double log_prefactor = f.b * std::log(t) - std::log(f.b) - f.log_beta;
    double inner_rel = 0.0;
    auto integrand = [&](double phi) {
        if (phi <= 0.0 || phi >= 1.0) return 0.0;
        const double log_theta = std::log(phi) / f.b;
        const double theta = std::exp(log_theta);
        const double one_minus_theta = -std::expm1(log_theta);
        const double s = -theta * t;
        const QuadResult inner = lower(one_minus_theta * t);
        if (inner.value > 0.0) inner_rel = std::max(inner_rel, inner.abs_error / inner.value);
        return std::exp((f.a - 1.0 + decay) * s + (f.b - 1.0) * log_expm1_ratio(s) + log_prefactor) * inner.value;
    };
    QuadResult out = integrate(integrand, 0.0, 1.0, rel_tol, 4000);
    out.abs_error += inner_rel * std::abs(out.value);
    return out;
}

// log G_m(t) - beta log t on panels in z = log t, Chebyshev-Lobatto nodes per
// panel with barycentric evaluation.
class LevelTable {
public:
    static constexpr int kDegree = 16;
    static constexpr double kZMin = -40.0;
    static constexpr double kZMax = 7.0;
    static constexpr double kPanelWidth = 0.5;

    LevelTable(const LevelFunction& direct, double beta) : beta_(beta) {
        const int panels = static_cast<int>(std::ceil((kZMax - kZMin) / kPanelWidth));
        values_.resize(static_cast<std::size_t>(panels));
        for (int p = 0; p < panels; ++p) {
            auto& node_values = values_[static_cast<std::size_t>(p)];
            for (int k = 0; k <= kDegree; ++k) {
                const double z = panel_node(p, k);
                const QuadResult h = direct(std::exp(z));
                node_values[static_cast<std::size_t>(k)] = std::log(h.value) - beta_ * z;
                rel_error_ = std::max(rel_error_, h.abs_error / h.value);
            }
            // size of the last Chebyshev coefficients bounds the interpolation error
            for (int j = kDegree - 1; j <= kDegree; ++j) {
                double c = 0.0;
                for (int k = 0; k <= kDegree; ++k) {
                    const double w = (k == 0 || k == kDegree) ? 0.5 : 1.0;
                    c += w * node_values[static_cast<std::size_t>(k)] * std::cos(std::numbers::pi * j * k / kDegree);
                }
                rel_error_ = std::max(rel_error_, 2.0 * std::abs(c) / kDegree);
            }
        }
    }

    bool covers(double t) const noexcept { return std::log(t) <= kZMax + 1e-12; }

    QuadResult operator()(double t) const {
        if (t <= 0.0) return {0.0, 0.0};
        const double z = std::max(std::log(t), kZMin);
        const int panels = static_cast<int>(values_.size());
        const int p = std::min(panels - 1, static_cast<int>((z - kZMin) / kPanelWidth));
        const double mid = kZMin + (p + 0.5) * kPanelWidth;
        const double y = (z - mid) / (0.5 * kPanelWidth);
        const auto& node_values = values_[static_cast<std::size_t>(p)];
        double num = 0.0;
        double den = 0.0;
        for (int k = 0; k <= kDegree; ++k) {
            const double node = std::cos(std::numbers::pi * k / kDegree);
            const double diff = y - node;
            if (diff == 0.0) {
                num = node_values[static_cast<std::size_t>(k)];
                den = 1.0;
                break;
            }
            double w = (k % 2 == 0) ? 1.0 : -1.0;
            if (k == 0 || k == kDegree) w *= 0.5;
            num += w / diff * node_values[static_cast<std::size_t>(k)];
            den += w / diff;
        }
        const double value = std::exp(num / den + beta_ * std::log(t));
        return {value, rel_error_ * value};
    }

private:
    static double panel_node(int p, int k) {
        const double mid = kZMin + (p + 0.5) * kPanelWidth;
        return mid + 0.5 * kPanelWidth * std::cos(std::numbers::pi * k / kDegree);
    }

    double beta_;
    double rel_error_ = 0.0;
    std::vector<std::array<double, kDegree + 1>> values_;
};

constexpr double kTableTolerance = 1e-13;

class ConvolutionDensity {
public:
    explicit ConvolutionDensity(int r) : factors_(beta_factors(r)), decay_(1.0 - factors_[0].a) {
        double beta = factors_[0].b;
        tables_.reserve(static_cast<std::size_t>(std::max(0, r - 2)));
        // levels 2..r-1 are tabulated; the top level is integrated on demand
        for (int m = 2; m <= r - 1; ++m) {
            beta += factors_[static_cast<std::size_t>(m - 1)].b;
            const LevelFunction lower = level_function(m - 1, kTableTolerance);
            const BetaFactor f = factors_[static_cast<std::size_t>(m - 1)];
            tables_.emplace_back([&](double t) { return convolve_level(f, decay_, lower, t, kTableTolerance); }, beta);
        }
    }

    /// H_r(t), the unscaled top level.
    QuadResult top(double t, double rel_tol) const {
        const QuadResult g = level_function(order(), rel_tol)(t);
        const double scale = std::exp(decay_ * t);
        return {g.value * scale, g.abs_error * scale};
    }

    int order() const noexcept { return static_cast<int>(factors_.size()); }

private:
    LevelFunction level_function(int m, double rel_tol) const {
        if (m == 1) {
            const BetaFactor f = factors_[0];
            return [f, decay = decay_](double t) {
                const double value = incomplete_tail(t, f, decay);
                return QuadResult{value, 1e-14 * std::abs(value)};
            };
        }
        const auto index = static_cast<std::size_t>(m - 2);
        if (index < tables_.size()) {
            const LevelTable* table = &tables_[index];
            const LevelFunction fallback = level_function_direct(m, rel_tol);
            return [table, fallback](double t) { return table->covers(t) ? (*table)(t) : fallback(t); };
        }
        return level_function_direct(m, rel_tol);
    }

    LevelFunction level_function_direct(int m, double rel_tol) const {
        const BetaFactor f = factors_[static_cast<std::size_t>(m - 1)];
        const LevelFunction lower = level_function(m - 1, std::min(rel_tol, kTableTolerance));
        return [f, decay = decay_, lower, rel_tol](double t) { return convolve_level(f, decay, lower, t, rel_tol); };
    }

    std::vector<BetaFactor> factors_;
    double decay_;
    std::vector<LevelTable> tables_;
};

const ConvolutionDensity& convolution_density(int r) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<ConvolutionDensity>> cache;
    const std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[r];
    if (!slot) slot = std::make_unique<ConvolutionDensity>(r);
    return *slot;
}

DensityValue density_at_depth(int r, double t, double rel_tol) {
    const double edge = edge_value(r);
    const QuadResult res = convolution_density(r).top(t, rel_tol);
    return {res.value / edge, res.abs_error / edge};
}

DensityValue density_with_tolerance(int r, double t, double tol) {
    for (double rel = 1e-10; rel >= 1e-14; rel *= 1e-2) {
        const DensityValue out = density_at_depth(r, t, rel);
        if (out.abs_error <= tol) return out;
    }
    throw Error(ErrorCode::ToleranceNotMet, "density quadrature could not reach the requested tolerance");
}

}  // namespace

SupportEdge support_edge(int r) {
    require_order(r);
    const BigNat num = pow(BigNat(r + 1), static_cast<unsigned>(r + 1));
    const BigNat den = pow(BigNat(r), static_cast<unsigned>(r));
    SupportEdge out{BigRat(num, den), 0.0};
    out.value = to_double(out.exact);
    return out;
}

LimitLaw limit_law(int r) { return LimitLaw{r, support_edge(r)}; }

std::complex<double> stieltjes(int r, std::complex<double> z, const StieltjesOptions& options) {
    require_order(r);
    const double edge = edge_value(r);
    if (!(std::abs(z) > edge * (1.0 + options.margin))) {
        throw Error(ErrorCode::OutsideDomain, "series needs |z| > L(r)(1 + margin)");
    }
    const double rho = edge / std::abs(z);
    const std::complex<double> inv_z = 1.0 / z;
    std::complex<double> power = inv_z;  // z^-(k+1)
    double moment = 1.0;                 // m_k
    std::complex<double> sum = 0.0;
    for (std::int64_t k = 0; k < options.max_terms; ++k) {
        const std::complex<double> term = moment * power;
        sum += term;
        // m_{k+1}/m_k < L(r), so the rest is dominated by a geometric series
        if (std::abs(term) * rho / (1.0 - rho) < options.tol) return sum;
        // m_{k+1}/m_k = [(r+1)k+1 .. (r+1)k+r+1] / ([rk+1 .. rk+r] (k+2))
        double ratio = 1.0;
        const double rk = static_cast<double>(r) * k;
        const double r1k = static_cast<double>(r + 1) * k;
        for (int i = 1; i <= r; ++i) ratio *= (r1k + i) / (rk + i);
        ratio *= (r1k + r + 1) / (k + 2.0);
        moment *= ratio;
        power *= inv_z;
    }
    throw Error(ErrorCode::NoConvergence, "Stieltjes series did not reach tolerance within the term cap");
}

std::complex<double> stieltjes_hypergeometric(int r, std::complex<double> z, const StieltjesOptions& options) {
    require_order(r);
    const double edge = edge_value(r);
    if (!(std::abs(z) > edge * (1.0 + options.margin))) {
        throw Error(ErrorCode::OutsideDomain, "series needs |z| > L(r)(1 + margin)");
    }
    const double rho = edge / std::abs(z);
    const std::complex<double> zeta = edge / z;
    std::complex<double> term = 1.0;
    std::complex<double> tail = 0.0;  // Σ_{n>=1} t_n
    for (std::int64_t n = 0; n < options.max_terms; ++n) {
        std::complex<double> factor = zeta / static_cast<double>(n + 1);
        for (int j = 1; j <= r; ++j) factor *= -static_cast<double>(j) / (r + 1) + static_cast<double>(n);
        for (int j = 1; j <= r - 1; ++j) factor /= -static_cast<double>(j) / r + static_cast<double>(n);
        term *= factor;
        tail += term;
        if (std::abs(term) * rho / (1.0 - rho) < options.tol * (r + 1)) return -tail / static_cast<double>(r + 1);
    }
    throw Error(ErrorCode::NoConvergence, "hypergeometric series did not reach tolerance within the term cap");
}

DensityValue density(int r, double x, double tol) {
    require_order(r);
    const double edge = edge_value(r);
    if (!(x > 0.0 && x < edge)) throw Error(ErrorCode::OutsideSupport, "density is defined on (0, L(r))");
    return density_with_tolerance(r, -std::log(x / edge), tol);
}

DensityValue density_from_gap(int r, double edge_gap, double tol) {
    require_order(r);
    const double edge = edge_value(r);
    if (!(edge_gap > 0.0 && edge_gap < edge)) throw Error(ErrorCode::OutsideSupport, "edge gap must lie in (0, L(r))");
    return density_with_tolerance(r, -std::log1p(-edge_gap / edge), tol);
}

double density_mp(double x) {
    if (!(x > 0.0 && x < 4.0)) return 0.0;
    return std::sqrt((4.0 - x) / x) / (2.0 * std::numbers::pi);
}

double density_r2(double x) {
    constexpr double edge = 27.0 / 4.0;
    if (!(x > 0.0 && x < edge)) return 0.0;
    const double root = std::sqrt(edge - x);
    const double s3 = std::sqrt(3.0);
    const double s27 = 3.0 * s3;
    const double bracket = (s3 + 2.0 * root) * std::cbrt(s27 - 2.0 * root) - (s3 - 2.0 * root) * std::cbrt(s27 + 2.0 * root);
    return bracket / (std::pow(2.0, 3.0 + 1.0 / 3.0) * s3 * std::numbers::pi * std::cbrt(x * x));
}

// ---------------------------------------------------------------------------
// Density grid
// ---------------------------------------------------------------------------

double DensityGrid::integrate(const std::function<double(double)>& phi) const {
    double sum = origin_mass * phi(0.0);
    for (Eigen::Index i = 0; i < size(); ++i) sum += weight[i] * density[i] * phi(x[i]);
    return sum;
}

double DensityGrid::total_mass() const { return origin_mass + weight.dot(density); }

double DensityGrid::moment(int k) const {
    if (k == 0) return total_mass();
    return integrate([k](double t) { return std::pow(t, k); });
}

double DensityGrid::mass_error() const { return weight.cwiseAbs().dot(abs_error); }

DensityGrid density_grid(int r, std::int64_t grid_size, double tol, unsigned threads) {
    require_order(r);
    if (grid_size < 16) throw Error(ErrorCode::InvalidRange, "density grid needs at least 16 points");
    const double edge = edge_value(r);
    const int p = r + 1;
    const auto n = static_cast<Eigen::Index>(grid_size);
    const double h = 1.0 / static_cast<double>(grid_size + 1);

    DensityGrid grid;
    grid.r = r;
    grid.edge = edge;
    grid.s.resize(n);
    grid.x.resize(n);
    grid.edge_gap.resize(n);
    grid.density.resize(n);
    grid.abs_error.resize(n);
    grid.weight.resize(n);
    Eigen::VectorXd jacobian(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = static_cast<double>(i + 1) * h;
        const double sp = std::pow(s, p);
        const double one_minus = 1.0 - sp;
        grid.s[i] = s;
        grid.edge_gap[i] = edge * one_minus * one_minus;
        grid.x[i] = edge * sp * (2.0 - sp);
        jacobian[i] = 2.0 * edge * one_minus * p * std::pow(s, p - 1);
    }

    auto evaluate = [&](Eigen::Index i) {
        const double t = grid.x[i] < 0.5 * edge ? -std::log(grid.x[i] / edge) : -std::log1p(-grid.edge_gap[i] / edge);
        const DensityValue v = density_at_depth(r, t, tol);
        grid.density[i] = v.value;
        grid.abs_error[i] = v.abs_error;
    };
    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    if (workers <= 1) {
        for (Eigen::Index i = 0; i < n; ++i) evaluate(i);
    } else {
        std::atomic<Eigen::Index> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (Eigen::Index i = next++; i < n; i = next++) evaluate(i);
            });
        }
        for (auto& worker : pool) worker.join();
    }

    // Gregory end-corrected trapezoid on nodes s = 0, h, ..., 1
    const Eigen::Index nodes = n + 2;
    auto gregory = [&](Eigen::Index node) {
        const Eigen::Index from_end = std::min(node, nodes - 1 - node);
        switch (from_end) {
            case 0: return 3.0 / 8.0;
            case 1: return 7.0 / 6.0;
            case 2: return 23.0 / 24.0;
            default: return 1.0;
        }
    };
    for (Eigen::Index i = 0; i < n; ++i) grid.weight[i] = h * gregory(i + 1) * jacobian[i];
    // density·dx/ds is analytic at s = 0; extrapolate its finite limit from the first nodes
    Eigen::Vector4d g;
    for (int i = 0; i < 4; ++i) g[i] = grid.density[i] * jacobian[i];
    const double g0 = 4.0 * g[0] - 6.0 * g[1] + 4.0 * g[2] - g[3];
    grid.origin_mass = h * gregory(0) * g0;
    return grid;
}

LinearCdf cdf_from_grid(const DensityGrid& grid) {
    const Eigen::Index n = grid.size();
    const double h = grid.s[0];
    std::vector<double> xs;
    std::vector<double> fs;
    xs.reserve(static_cast<std::size_t>(n) + 2);
    fs.reserve(static_cast<std::size_t>(n) + 2);
    auto rate = [&](Eigen::Index i) {
        const double s = grid.s[i];
        const int p = grid.r + 1;
        const double jac = 2.0 * grid.edge * (1.0 - std::pow(s, p)) * p * std::pow(s, p - 1);
        return grid.density[i] * jac;
    };
    // samples at s = 0, s_1..s_n and s = 1, where density·dx/ds vanishes
    std::vector<double> g(static_cast<std::size_t>(n) + 2, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) g[static_cast<std::size_t>(i) + 1] = rate(i);
    g[0] = 4.0 * g[1] - 6.0 * g[2] + 4.0 * g[3] - g[4];
    const std::size_t last = g.size() - 1;
    // cubic-interpolation panel rule; one-sided at the two ends
    auto panel = [&](std::size_t j) {
        if (j == 0) return h / 24.0 * (9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]);
        if (j + 1 == last) return h / 24.0 * (9.0 * g[last] + 19.0 * g[j] - 5.0 * g[j - 1] + g[j - 2]);
        return h / 24.0 * (13.0 * (g[j] + g[j + 1]) - g[j - 1] - g[j + 2]);
    };
    double cumulative = 0.0;
    xs.push_back(0.0);
    fs.push_back(0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        cumulative += panel(static_cast<std::size_t>(i));
        xs.push_back(grid.x[i]);
        fs.push_back(cumulative);
    }
    cumulative += panel(last - 1);
    xs.push_back(grid.edge);
    fs.push_back(cumulative);
    return LinearCdf(std::move(xs), std::move(fs));
}

LinearCdf cdf_grid(int r, std::int64_t grid_size, double tol, unsigned threads) {
    return cdf_from_grid(density_grid(r, grid_size, tol, threads));
}

// ---------------------------------------------------------------------------
// Beta-product representation
// ---------------------------------------------------------------------------

BetaProductSampler::BetaProductSampler(int r) : r_(r), scale_(0.0) {
    require_order(r);
    scale_ = edge_value(r);
    for (int j = 1; j <= r; ++j) {
        params_.emplace_back(static_cast<double>(j) / (r + 1), static_cast<double>(j) / (static_cast<double>(r) * (r + 1)));
    }
}

double BetaProductSampler::operator()(RandomStream& stream) const {
    double value = scale_ * stream.uniform();
    for (const auto& [a, b] : params_) value *= beta_variate(stream, a, b);
    return value;
}

double beta_product_sample(int r, RandomStream& stream) { return BetaProductSampler(r)(stream); }

BigRat beta_product_moment(int r, std::int64_t k) {
    require_order(r);
    if (k < 0) throw Error(ErrorCode::InvalidOrder, "moment order must be >= 0");
    const SupportEdge edge = support_edge(r);
    BigRat value = BigRat(1, k + 1);
    for (std::int64_t i = 0; i < k; ++i) value *= edge.exact;
    for (int j = 1; j <= r; ++j) {
        for (std::int64_t i = 0; i < k; ++i) {
            // (j/(r+1) + i) / (j/r + i)
            value *= BigRat(BigNat(j + i * (r + 1)) * r, BigNat(j + i * r) * (r + 1));
        }
    }
    return value;
}

ContourMoment contour_moment(int r, std::int64_t k, double tol, std::int64_t max_resolution) {
    require_order(r);
    if (k < 0) throw Error(ErrorCode::InvalidOrder, "moment order must be >= 0");
    const auto power = static_cast<int>((r + 1) * k);
    // A^k at u: (2 cos pi u)^((r+1)k) e^{i (r-1) k pi u}
    auto sample = [&](double u) {
        const double magnitude = std::pow(2.0 * std::cos(std::numbers::pi * u), power);
        return std::polar(1.0, static_cast<double>(r - 1) * k * std::numbers::pi * u) * magnitude;
    };
    std::int64_t m = 16;
    std::complex<double> sum = 0.0;
    for (std::int64_t j = 0; j < m; ++j) sum += sample(static_cast<double>(j) / m);
    std::complex<double> previous = sum / static_cast<double>(m);
    while (m < max_resolution) {
        // the doubled rule reuses the old nodes and adds the midpoints
        for (std::int64_t j = 0; j < m; ++j) sum += sample((2.0 * j + 1.0) / (2.0 * m));
        m *= 2;
        const std::complex<double> current = sum / static_cast<double>(m);
        if (std::abs(current - previous) <= tol * std::max(1.0, std::abs(current))) {
            return {current.real() / (k + 1.0), current.imag() / (k + 1.0), m};
        }
        previous = current;
    }
    throw Error(ErrorCode::NoConvergence, "contour quadrature did not stabilize");
}

// ---------------------------------------------------------------------------
// Dykema-Haagerup law
// ---------------------------------------------------------------------------

std::pair<double, double> dh_density_param(double v) {
    if (!(v > 0.0 && v < std::numbers::pi)) throw Error(ErrorCode::OutsideDomain, "parameter v must lie in (0, pi)");
    const double cot = std::cos(v) / std::sin(v);
    const double x = std::sin(v) / v * std::exp(v * cot);
    const double f = std::sin(v) * std::exp(-v * cot) / std::numbers::pi;
    return {x, f};
}

double dh_density(double x) {
    if (!(x > 0.0 && x < std::numbers::e)) return 0.0;
    // x(v) decreases from e to 0 on (0, pi)
    double lo = 0.0;
    double hi = std::numbers::pi;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (dh_density_param(mid).first > x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return dh_density_param(0.5 * (lo + hi)).second;
}

double dh_mass_rate(double v) {
    if (!(v > 0.0 && v < std::numbers::pi)) return 0.0;
    const double sn = std::sin(v);
    const double cot = std::cos(v) / sn;
    // d log x / dv = 2 cot v - 1/v - v / sin^2 v; F'(x) x(v) = sin^2 v / (pi v)
    const double dlog = 2.0 * cot - 1.0 / v - v / (sn * sn);
    return sn * sn / (std::numbers::pi * v) * std::abs(dlog);
}

LinearCdf dh_cdf(std::int64_t points) {
    if (points < 16) throw Error(ErrorCode::InvalidRange, "DH CDF needs at least 16 nodes");
    // x(v) decreases from e (v -> 0) to 0 (v -> pi): accumulate mass from v = pi downward
    const double h = std::numbers::pi / static_cast<double>(points + 1);
    std::vector<double> xs{0.0};
    std::vector<double> fs{0.0};
    double cumulative = 0.0;
    double prev = 1.0 / std::numbers::pi;  // limit of the mass rate at v = pi
    for (std::int64_t i = points; i >= 1; --i) {
        const double v = h * static_cast<double>(i);
        const double cur = dh_mass_rate(v);
        cumulative += 0.5 * h * (prev + cur);
        prev = cur;
        // x(v) underflows near v = pi; keep the knots strictly increasing
        const double x = std::max(dh_density_param(v).first, std::nextafter(xs.back(), 1.0));
        xs.push_back(x);
        fs.push_back(cumulative);
    }
    cumulative += 0.5 * h * prev;  // rate vanishes at v = 0
    xs.push_back(std::numbers::e);
    fs.push_back(cumulative);
    return LinearCdf(std::move(xs), std::move(fs));
}

// ---------------------------------------------------------------------------
// Edge exponents
// ---------------------------------------------------------------------------

EdgeFit edge_exponent_fit(const DensityGrid& grid, Edge edge) {
    const double lo = edge == Edge::Lower ? 1e-5 : 1e-4;
    const double hi = edge == Edge::Lower ? 1e-2 : 1e-1;
    std::vector<double> xs;
    std::vector<double> ys;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double distance = edge == Edge::Lower ? grid.x[i] : grid.edge_gap[i];
        const double scaled = distance / grid.edge;
        if (scaled < lo || scaled > hi || !(grid.density[i] > 0.0)) continue;
        xs.push_back(std::log(distance));
        ys.push_back(std::log(grid.density[i]));
    }
    if (xs.size() < 8) throw Error(ErrorCode::InsufficientPoints, "fewer than 8 grid points inside the fit window");
    const auto count = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx, static_cast<std::int64_t>(xs.size())};
}

}  // namespace youngmat
