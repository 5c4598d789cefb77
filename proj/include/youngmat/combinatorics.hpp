#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "youngmat/exact.hpp"

namespace youngmat {

/// Exact binomial coefficient; zero when k > n.
BigNat binomial(std::int64_t n, std::int64_t k);

/// C_k = binom(2k, k) / (k + 1).
BigNat catalan(std::int64_t k);

/// C<r>_k = r/(k+1) binom((r+1)k, k): the number of r-plane trees on k+1 vertices.
BigNat gen_catalan(std::int64_t r, std::int64_t k);

/// k-th moment of the limit law of N·staircase_r shaped matrices, C<r>_k / r.
BigRat limit_moment(std::int64_t r, std::int64_t k);

/// FC_{r,k} = binom(rk + k, k) / (rk + 1).
BigNat fuss_catalan(std::int64_t r, std::int64_t k);

/// Dykema-Haagerup moment k^k / ((k+1) k!), with 0^0 = 1.
BigRat dh_moment(std::int64_t k);

/// C<r>_k / r^(k+1), which tends to dh_moment(k) as r grows.
BigRat dh_scaled_gen_catalan(std::int64_t r, std::int64_t k);

/// A rooted plane tree stored as its Dyck word ('(' = step down to a new child).
class PlaneTree {
public:
    explicit PlaneTree(std::string dyck);

    const std::string& dyck() const noexcept { return dyck_; }
    std::size_t vertices() const noexcept { return parent_.size(); }
    /// Parent of each vertex in preorder; the root (vertex 0) has parent -1.
    const std::vector<int>& parents() const noexcept { return parent_; }

private:
    std::string dyck_;
    std::vector<int> parent_;
};

/// True when `word` is balanced with nonnegative prefix sums.
bool is_dyck_word(const std::string& word);

struct TreeLimits {
    /// Largest number of plane trees an enumeration may produce; the default
    /// admits every vertex count up to 12 (catalan(11) = 58786).
    std::uint64_t max_trees = 58786;
};

/// Single-pass stream of all plane trees on n vertices in lexicographic Dyck order.
class PlaneTreeEnumerator {
public:
    std::optional<PlaneTree> next();

private:
    friend PlaneTreeEnumerator enumerate_plane_trees(std::int64_t, const TreeLimits&);
    explicit PlaneTreeEnumerator(std::int64_t edges);

    std::string word_;
    bool done_ = false;
};

/// Throws ResourceLimit when catalan(n-1) exceeds the configured cap.
PlaneTreeEnumerator enumerate_plane_trees(std::int64_t n, const TreeLimits& limits = {});

struct RPlaneTree {
    PlaneTree tree;
    /// Colour in {1..r} per preorder vertex.
    std::vector<int> colouring;
};

/// c(u) + c(v) <= r + 1 on every edge and all colours in range.
bool is_r_plane_tree(const RPlaneTree& t, int r);

/// Number of admissible colourings of one tree, by depth-first backtracking.
BigNat count_colourings(const PlaneTree& tree, int r);

/// Exhaustive count of r-plane trees on n vertices over all (tree, colouring) pairs.
BigNat count_r_plane_trees(int r, std::int64_t n, const TreeLimits& limits = {});

}  // namespace youngmat
