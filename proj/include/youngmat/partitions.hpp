#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "youngmat/exact.hpp"

namespace youngmat {

/// An integer partition and its Young diagram (English convention).
///
/// Parts are kept weakly decreasing with trailing zeros trimmed, so
/// (5,4,4,1) and (5,4,4,1,0,0) compare equal. Row and column indices in the
/// box-level API are 1-based, matching matrix conventions.
class Partition {
public:
    using Part = std::int64_t;

    Partition() = default;

    /// Normalizes trailing zeros; throws NegativePart / NotWeaklyDecreasing.
    explicit Partition(std::span<const Part> parts);
    Partition(std::initializer_list<Part> parts);

    const std::vector<Part>& parts() const noexcept { return parts_; }
    bool empty() const noexcept { return parts_.empty(); }

    /// Number of nonzero parts.
    std::int64_t length() const noexcept { return static_cast<std::int64_t>(parts_.size()); }
    /// Sum of parts (checked; throws Overflow).
    std::int64_t weight() const;
    /// Part i (1-based); zero beyond the length.
    Part operator[](std::int64_t i) const noexcept;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<Part> parts_;
};

Partition make_partition(std::span<const Partition::Part> parts);

/// Transpose of the diagram: j-th part is #{i : λ_i >= j}.
Partition conjugate(const Partition& lambda);

/// True iff mu_i <= lambda_i for all i, i.e. mu's diagram sits inside lambda's.
bool contains(const Partition& mu, const Partition& lambda);

/// True iff box (i, j) is in the diagram; i, j >= 1 else IndexOutOfRange.
bool has_box(const Partition& lambda, std::int64_t i, std::int64_t j);

/// Replaces every box by an N x N grid of boxes.
Partition dilate(const Partition& lambda, std::int64_t n);

/// (r, r-1, ..., 1).
Partition staircase(std::int64_t r);
/// (r, ..., r) with r parts.
Partition square(std::int64_t r);

/// |Nλ| / (N ℓ(Nλ)), which equals the expected normalized trace of W_N.
BigRat balance_ratio(const Partition& lambda, std::int64_t n);

/// Rows of box glyphs, one line per part.
std::string render_diagram(const Partition& lambda, std::string_view glyph = "[]");

std::string to_string(const Partition& lambda);

}  // namespace youngmat
