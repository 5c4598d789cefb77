#include "youngmat/spectra.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace youngmat {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end());
}

double EmpiricalDistribution::cdf(double x) const noexcept {
    if (atoms_.empty()) return x >= 0.0 ? 1.0 : 0.0;
    const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
    return static_cast<double>(it - atoms_.begin()) / static_cast<double>(atoms_.size());
}

double EmpiricalDistribution::cdf_left(double x) const noexcept {
    if (atoms_.empty()) return x > 0.0 ? 1.0 : 0.0;
    const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
    return static_cast<double>(it - atoms_.begin()) / static_cast<double>(atoms_.size());
}

std::vector<double> EmpiricalDistribution::knots() const {
    std::vector<double> out(atoms_);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

EmpiricalDistribution empirical_cdf(const Spectrum& s) {
    return EmpiricalDistribution(std::vector<double>(s.values.data(), s.values.data() + s.values.size()));
}

LinearCdf::LinearCdf(std::vector<double> x, std::vector<double> f) : x_(std::move(x)), f_(std::move(f)) {
    if (x_.size() != f_.size() || x_.empty()) throw Error(ErrorCode::InvalidRange, "LinearCdf needs matching, nonempty grids");
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if (!(x_[i] > x_[i - 1])) throw Error(ErrorCode::InvalidRange, "LinearCdf abscissae must increase strictly");
    }
}

double LinearCdf::cdf(double x) const noexcept {
    if (x < x_.front()) return 0.0;
    if (x >= x_.back()) return 1.0;
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - x_.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - x_[lo]) / (x_[hi] - x_[lo]);
    return f_[lo] + t * (f_[hi] - f_[lo]);
}

double empirical_moment(const Spectrum& s, int k) {
    if (k < 0) throw Error(ErrorCode::InvalidOrder, "moment order must be >= 0");
    if (s.dim() == 0) return 0.0;
    if (k == 0) return 1.0;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < s.dim(); ++i) sum += std::pow(s.values[i], k);
    return sum / static_cast<double>(s.dim());
}

Histogram histogram(std::span<const double> values, std::size_t bins, double lo, double hi) {
    if (bins < 1 || !(lo < hi)) throw Error(ErrorCode::InvalidRange, "histogram needs bins >= 1 and lo < hi");
    Histogram h;
    h.edges.resize(bins + 1);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + width * static_cast<double>(i);
    h.edges.back() = hi;
    h.counts.assign(bins, 0);
    h.density.assign(bins, 0.0);
    for (double v : values) {
        ++h.total;
        if (v < lo) {
            ++h.underflow;
        } else if (v > hi) {
            ++h.overflow;
        } else {
            auto idx = static_cast<std::size_t>((v - lo) / width);
            if (idx >= bins) idx = bins - 1;
            // keep the bin consistent with the stored edges under rounding
            if (idx + 1 < bins && v >= h.edges[idx + 1]) ++idx;
            if (idx > 0 && v < h.edges[idx]) --idx;
            ++h.counts[idx];
        }
    }
    if (h.total == 0) return h;
    for (std::size_t i = 0; i < bins; ++i) {
        h.density[i] = static_cast<double>(h.counts[i]) / (static_cast<double>(h.total) * h.width(i));
    }
    return h;
}

std::vector<Spectrum> run_ensemble(const EnsembleConfig& config) {
    if (config.replicas < 1) throw Error(ErrorCode::ConfigError, "replicas must be >= 1");
    if (config.shape.empty()) throw Error(ErrorCode::EmptyPartition, "ensemble shape is empty");
    const auto count = static_cast<std::size_t>(config.replicas);
    std::vector<Spectrum> out(count);

    auto one = [&](std::size_t index) {
        RandomStream stream = substream(config.seed, index);
        const auto x = sample_shaped<double>(config.shape, config.entries, stream);
        out[index] = eigenvalues(covariance(x, config.dilation));
    };

    unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) one(i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    one(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& worker : pool) worker.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<MomentStats> moment_stats(std::span<const Spectrum> spectra, int k_max) {
    if (spectra.size() < 2) throw Error(ErrorCode::ConfigError, "moment statistics need at least two replicas");
    if (k_max < 0) throw Error(ErrorCode::InvalidOrder, "k_max must be >= 0");
    std::vector<MomentStats> out;
    const double m = static_cast<double>(spectra.size());
    for (int k = 0; k <= k_max; ++k) {
        double mean = 0.0;
        for (const auto& s : spectra) mean += empirical_moment(s, k);
        mean /= m;
        double ss = 0.0;
        for (const auto& s : spectra) {
            const double d = empirical_moment(s, k) - mean;
            ss += d * d;
        }
        out.push_back({k, mean, ss / (m - 1.0)});
    }
    return out;
}

std::vector<MomentStats> ensemble_moments(const Partition& lambda, std::int64_t n, const EntryDistribution& dist,
                                          int k_max, std::int64_t replicas, std::uint64_t seed, unsigned threads) {
    if (replicas < 2) throw Error(ErrorCode::ConfigError, "ensemble_moments needs replicas >= 2");
    EnsembleConfig config{dilate(lambda, n), n, dist, k_max, replicas, seed, threads};
    const auto spectra = run_ensemble(config);
    return moment_stats(spectra, k_max);
}

}  // namespace youngmat
