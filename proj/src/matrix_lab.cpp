#include "youngmat/matrix_lab.hpp"

#include <cmath>
#include <numbers>

namespace youngmat {

namespace {

const double kSqrt3 = std::sqrt(3.0);

std::complex<double> draw_base(EntryKind kind, RandomStream& stream) {
    switch (kind) {
        case EntryKind::ComplexGaussian: {
            const auto z = normal_pair(stream);
            return {z[0] * std::numbers::sqrt2 / 2.0, z[1] * std::numbers::sqrt2 / 2.0};
        }
        case EntryKind::RealGaussian:
            return {standard_normal(stream), 0.0};
        case EntryKind::Rademacher:
            return {(stream.next_u32() & 1u) ? 1.0 : -1.0, 0.0};
        case EntryKind::CenteredUniform:
            return {kSqrt3 * (2.0 * stream.uniform() - 1.0), 0.0};
    }
    return {};
}

}  // namespace

std::string_view to_string(EntryKind kind) noexcept {
    switch (kind) {
        case EntryKind::ComplexGaussian: return "complex-gaussian";
        case EntryKind::RealGaussian: return "real-gaussian";
        case EntryKind::Rademacher: return "rademacher";
        case EntryKind::CenteredUniform: return "centered-uniform";
    }
    return "unknown";
}

EntryKind parse_entry_kind(std::string_view name) {
    for (EntryKind kind : {EntryKind::ComplexGaussian, EntryKind::RealGaussian, EntryKind::Rademacher,
                           EntryKind::CenteredUniform}) {
        if (name == to_string(kind)) return kind;
    }
    throw Error(ErrorCode::ConfigError, "unknown entry distribution '" + std::string(name) + "'");
}

double truncated_second_moment(EntryKind kind, double cutoff) {
    if (!(cutoff > 0.0)) throw Error(ErrorCode::DegenerateTruncation, "cutoff must be positive");
    switch (kind) {
        case EntryKind::ComplexGaussian: {
            // |X|^2 ~ Exp(1)
            const double c2 = cutoff * cutoff;
            return -std::expm1(-c2) - c2 * std::exp(-c2);
        }
        case EntryKind::RealGaussian:
            return std::erf(cutoff / std::numbers::sqrt2) -
                   std::sqrt(2.0 / std::numbers::pi) * cutoff * std::exp(-0.5 * cutoff * cutoff);
        case EntryKind::Rademacher:
            return cutoff > 1.0 ? 1.0 : 0.0;
        case EntryKind::CenteredUniform:
            return cutoff >= kSqrt3 ? 1.0 : cutoff * cutoff * cutoff / (3.0 * kSqrt3);
    }
    return 0.0;
}

EntryDistribution truncate_standardize(const EntryDistribution& dist, double cutoff) {
    if (dist.truncation) throw Error(ErrorCode::ConfigError, "distribution is already truncated");
    // all supported base laws are symmetric about zero, so m_C = 0
    const double second = truncated_second_moment(dist.kind, cutoff);
    if (!(second > 0.0)) {
        throw Error(ErrorCode::DegenerateTruncation,
                    "no mass below cutoff " + std::to_string(cutoff) + " for " + std::string(to_string(dist.kind)));
    }
    return EntryDistribution{dist.kind, cutoff, 0.0, std::sqrt(second)};
}

std::complex<double> draw_entry(const EntryDistribution& dist, RandomStream& stream) {
    const std::complex<double> raw = draw_base(dist.kind, stream);
    if (!dist.truncation) return raw;
    const std::complex<double> kept = std::abs(raw) < *dist.truncation ? raw : std::complex<double>(0.0);
    return (kept - dist.truncated_mean) / dist.truncated_scale;
}

std::int64_t block_index(std::int64_t i, std::int64_t n) {
    if (i < 1 || n < 1) throw Error(ErrorCode::IndexOutOfRange, "block index needs i >= 1 and N >= 1");
    return (i + n - 1) / n;
}

}  // namespace youngmat
