#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "youngmat/error.hpp"
#include "youngmat/partitions.hpp"
#include "youngmat/random.hpp"

namespace youngmat {

enum class EntryKind { ComplexGaussian, RealGaussian, Rademacher, CenteredUniform };

std::string_view to_string(EntryKind kind) noexcept;
/// Accepts the CLI spellings: complex-gaussian, real-gaussian, rademacher, centered-uniform.
EntryKind parse_entry_kind(std::string_view name);

/// Centered unit-variance entry law, optionally truncated at |X| < C and
/// re-standardized: (X 1{|X|<C} - m_C) / s_C.
struct EntryDistribution {
    EntryKind kind = EntryKind::ComplexGaussian;
    std::optional<double> truncation;
    double truncated_mean = 0.0;
    double truncated_scale = 1.0;

    static EntryDistribution of(EntryKind kind) { return EntryDistribution{kind, std::nullopt, 0.0, 1.0}; }
};

/// E|X|^2 1{|X| < C} of the untruncated base law, in closed form.
double truncated_second_moment(EntryKind kind, double cutoff);

/// Throws DegenerateTruncation when no variance survives the cutoff.
EntryDistribution truncate_standardize(const EntryDistribution& dist, double cutoff);

std::complex<double> draw_entry(const EntryDistribution& dist, RandomStream& stream);

/// ceil(i / N) for 1-based i.
std::int64_t block_index(std::int64_t i, std::int64_t n);

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// A λ-shaped matrix: ℓ(λ) x ℓ(λ') with exact zeros off the diagram.
template <typename Scalar = double>
struct ShapedMatrix {
    Partition shape;
    ComplexMatrix<Scalar> entries;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// W = X X* / N, stored as a full Hermitian matrix.
template <typename Scalar = double>
struct CovarianceMatrix {
    std::int64_t scale = 1;
    ComplexMatrix<Scalar> entries;

    Eigen::Index dim() const noexcept { return entries.rows(); }
};

/// Draws i.i.d. entries on the boxes of λ in row-major order.
template <typename Scalar = double>
ShapedMatrix<Scalar> sample_shaped(const Partition& lambda, const EntryDistribution& dist, RandomStream& stream) {
    if (lambda.empty()) throw Error(ErrorCode::EmptyPartition, "cannot sample a matrix of empty shape");
    const Eigen::Index rows = lambda.length();
    const Eigen::Index cols = lambda[1];
    ShapedMatrix<Scalar> out{lambda, ComplexMatrix<Scalar>::Zero(rows, cols), stream.seed(), stream.stream_id()};
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Eigen::Index row_len = lambda[i + 1];
        for (Eigen::Index j = 0; j < row_len; ++j) {
            out.entries(i, j) = std::complex<Scalar>(draw_entry(dist, stream));
        }
    }
    return out;
}

template <typename Scalar>
CovarianceMatrix<Scalar> covariance(const ShapedMatrix<Scalar>& x, std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::InvalidDilation, "covariance scale must be >= 1");
    const Eigen::Index dim = x.entries.rows();
    CovarianceMatrix<Scalar> w{n, ComplexMatrix<Scalar>::Zero(dim, dim)};
    w.entries.template selfadjointView<Eigen::Lower>().rankUpdate(x.entries, Scalar(1) / static_cast<Scalar>(n));
    // mirror the computed triangle so the stored matrix is exactly Hermitian
    for (Eigen::Index j = 0; j < dim; ++j) {
        w.entries(j, j) = std::complex<Scalar>(w.entries(j, j).real(), Scalar(0));
        for (Eigen::Index i = j + 1; i < dim; ++i) w.entries(j, i) = std::conj(w.entries(i, j));
    }
    return w;
}

}  // namespace youngmat
