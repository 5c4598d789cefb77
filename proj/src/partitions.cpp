#include "youngmat/partitions.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "youngmat/error.hpp"

namespace youngmat {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "partition weight overflows int64");
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "dilation overflows int64");
    return out;
}

}  // namespace

Partition::Partition(std::span<const Part> parts) {
    std::size_t end = parts.size();
    while (end > 0 && parts[end - 1] == 0) --end;
    for (std::size_t i = 0; i < end; ++i) {
        if (parts[i] < 0) throw Error(ErrorCode::NegativePart, "part " + std::to_string(i + 1) + " is negative");
        if (i > 0 && parts[i] > parts[i - 1]) {
            throw Error(ErrorCode::NotWeaklyDecreasing,
                        "part " + std::to_string(i + 1) + " exceeds the part before it");
        }
    }
    parts_.assign(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(end));
}

Partition::Partition(std::initializer_list<Part> parts)
    : Partition(std::span<const Part>(parts.begin(), parts.size())) {}

std::int64_t Partition::weight() const {
    std::int64_t total = 0;
    for (Part p : parts_) total = checked_add(total, p);
    return total;
}

Partition::Part Partition::operator[](std::int64_t i) const noexcept {
    if (i < 1 || i > length()) return 0;
    return parts_[static_cast<std::size_t>(i - 1)];
}

Partition make_partition(std::span<const Partition::Part> parts) { return Partition(parts); }

Partition conjugate(const Partition& lambda) {
    if (lambda.empty()) return {};
    const auto& rows = lambda.parts();
    std::vector<Partition::Part> cols(static_cast<std::size_t>(rows.front()), 0);
    // rows are decreasing, so column j has as many boxes as rows reaching it
    for (Partition::Part row : rows) {
        for (Partition::Part j = 0; j < row; ++j) ++cols[static_cast<std::size_t>(j)];
    }
    return Partition(std::span<const Partition::Part>(cols));
}

bool contains(const Partition& mu, const Partition& lambda) {
    if (mu.length() > lambda.length()) return false;
    for (std::int64_t i = 1; i <= mu.length(); ++i) {
        if (mu[i] > lambda[i]) return false;
    }
    return true;
}

bool has_box(const Partition& lambda, std::int64_t i, std::int64_t j) {
    if (i < 1 || j < 1) throw Error(ErrorCode::IndexOutOfRange, "box indices are 1-based");
    return lambda[i] >= j;
}

Partition dilate(const Partition& lambda, std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::InvalidDilation, "dilation factor must be >= 1");
    (void)checked_mul(checked_mul(lambda.weight(), n), n);
    std::vector<Partition::Part> parts;
    parts.reserve(static_cast<std::size_t>(checked_mul(lambda.length(), n)));
    for (Partition::Part p : lambda.parts()) {
        const Partition::Part scaled = checked_mul(p, n);
        parts.insert(parts.end(), static_cast<std::size_t>(n), scaled);
    }
    return Partition(std::span<const Partition::Part>(parts));
}

Partition staircase(std::int64_t r) {
    if (r < 1) throw Error(ErrorCode::InvalidOrder, "staircase order must be >= 1");
    std::vector<Partition::Part> parts(static_cast<std::size_t>(r));
    for (std::int64_t i = 0; i < r; ++i) parts[static_cast<std::size_t>(i)] = r - i;
    return Partition(std::span<const Partition::Part>(parts));
}

Partition square(std::int64_t r) {
    if (r < 1) throw Error(ErrorCode::InvalidOrder, "square order must be >= 1");
    std::vector<Partition::Part> parts(static_cast<std::size_t>(r), r);
    return Partition(std::span<const Partition::Part>(parts));
}

BigRat balance_ratio(const Partition& lambda, std::int64_t n) {
    if (lambda.empty()) throw Error(ErrorCode::EmptyPartition, "balance ratio of the empty partition");
    const Partition dilated = dilate(lambda, n);
    return BigRat(BigNat(dilated.weight()), BigNat(n) * BigNat(dilated.length()));
}

std::string render_diagram(const Partition& lambda, std::string_view glyph) {
    std::ostringstream out;
    for (Partition::Part p : lambda.parts()) {
        for (Partition::Part j = 0; j < p; ++j) out << glyph;
        out << '\n';
    }
    return out.str();
}

std::string to_string(const Partition& lambda) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < lambda.parts().size(); ++i) {
        if (i) out << ',';
        out << lambda.parts()[i];
    }
    out << ')';
    return out.str();
}

}  // namespace youngmat
