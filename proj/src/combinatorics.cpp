#include "youngmat/combinatorics.hpp"

#include <functional>

#include "youngmat/error.hpp"

namespace youngmat {

namespace {

void require_order(std::int64_t r) {
    if (r < 1) throw Error(ErrorCode::InvalidOrder, "order r must be >= 1");
}

void require_index(std::int64_t k) {
    if (k < 0) throw Error(ErrorCode::InvalidOrder, "index k must be >= 0");
}

}  // namespace

BigNat binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    // after step i the running value is binom(n - k + i, i), so each division is exact
    BigNat value = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        value *= n - k + i;
        value /= i;
    }
    return value;
}

BigNat catalan(std::int64_t k) {
    require_index(k);
    return binomial(2 * k, k) / (k + 1);
}

BigNat gen_catalan(std::int64_t r, std::int64_t k) {
    require_order(r);
    require_index(k);
    return BigNat(r) * binomial((r + 1) * k, k) / (k + 1);
}

BigRat limit_moment(std::int64_t r, std::int64_t k) {
    require_order(r);
    require_index(k);
    return BigRat(binomial((r + 1) * k, k), BigNat(k + 1));
}

BigNat fuss_catalan(std::int64_t r, std::int64_t k) {
    require_order(r);
    require_index(k);
    return binomial(r * k + k, k) / (r * k + 1);
}

BigRat dh_moment(std::int64_t k) {
    require_index(k);
    BigNat factorial = 1;
    for (std::int64_t i = 2; i <= k; ++i) factorial *= i;
    const BigNat power = k == 0 ? BigNat(1) : pow(BigNat(k), static_cast<unsigned>(k));
    return BigRat(power, BigNat(k + 1) * factorial);
}

BigRat dh_scaled_gen_catalan(std::int64_t r, std::int64_t k) {
    require_order(r);
    require_index(k);
    return BigRat(gen_catalan(r, k), pow(BigNat(r), static_cast<unsigned>(k + 1)));
}

bool is_dyck_word(const std::string& word) {
    long depth = 0;
    for (char c : word) {
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            if (--depth < 0) return false;
        } else {
            return false;
        }
    }
    return depth == 0;
}

PlaneTree::PlaneTree(std::string dyck) : dyck_(std::move(dyck)) {
    if (!is_dyck_word(dyck_)) throw Error(ErrorCode::InvalidRange, "not a Dyck word: " + dyck_);
    parent_.push_back(-1);
    std::vector<int> path{0};
    for (char c : dyck_) {
        if (c == '(') {
            parent_.push_back(path.back());
            path.push_back(static_cast<int>(parent_.size()) - 1);
        } else {
            path.pop_back();
        }
    }
}

PlaneTreeEnumerator::PlaneTreeEnumerator(std::int64_t edges)
    : word_(std::string(static_cast<std::size_t>(edges), '(') + std::string(static_cast<std::size_t>(edges), ')')) {}

std::optional<PlaneTree> PlaneTreeEnumerator::next() {
    if (done_) return std::nullopt;
    PlaneTree current(word_);

    // Successor in lexicographic order with '(' < ')': turn the rightmost
    // flippable '(' into ')' and refill the suffix with the smallest valid tail.
    const std::size_t len = word_.size();
    const long edges = static_cast<long>(len / 2);
    long opens = 0;
    long closes = 0;
    for (std::size_t i = 0; i < len; ++i) (word_[i] == '(' ? opens : closes)++;
    bool advanced = false;
    for (std::size_t pos = len; pos-- > 0;) {
        (word_[pos] == '(' ? opens : closes)--;
        // opens/closes now count the prefix before pos
        if (word_[pos] == '(' && opens - closes >= 1 && opens < edges) {
            word_[pos] = ')';
            const long remaining_opens = edges - opens;
            std::size_t p = pos + 1;
            for (long i = 0; i < remaining_opens; ++i) word_[p++] = '(';
            while (p < len) word_[p++] = ')';
            advanced = true;
            break;
        }
    }
    if (!advanced) done_ = true;
    return current;
}

PlaneTreeEnumerator enumerate_plane_trees(std::int64_t n, const TreeLimits& limits) {
    if (n < 1) throw Error(ErrorCode::InvalidOrder, "a plane tree needs at least one vertex");
    if (catalan(n - 1) > limits.max_trees) {
        throw Error(ErrorCode::ResourceLimit, "catalan(" + std::to_string(n - 1) + ") plane trees exceed the cap of " +
                                                  std::to_string(limits.max_trees));
    }
    return PlaneTreeEnumerator(n - 1);
}

bool is_r_plane_tree(const RPlaneTree& t, int r) {
    const auto& parents = t.tree.parents();
    if (t.colouring.size() != parents.size()) return false;
    for (int c : t.colouring) {
        if (c < 1 || c > r) return false;
    }
    for (std::size_t v = 1; v < parents.size(); ++v) {
        if (t.colouring[v] + t.colouring[static_cast<std::size_t>(parents[v])] > r + 1) return false;
    }
    return true;
}

BigNat count_colourings(const PlaneTree& tree, int r) {
    require_order(r);
    const auto& parents = tree.parents();
    const std::size_t n = parents.size();
    std::vector<int> colour(n, 0);
    std::uint64_t count = 0;
    // preorder guarantees the parent is coloured before its child
    std::function<void(std::size_t)> assign = [&](std::size_t v) {
        if (v == n) {
            ++count;
            return;
        }
        const int limit = v == 0 ? r : r + 1 - colour[static_cast<std::size_t>(parents[v])];
        for (int c = 1; c <= limit; ++c) {
            colour[v] = c;
            assign(v + 1);
        }
    };
    assign(0);
    return count;
}

BigNat count_r_plane_trees(int r, std::int64_t n, const TreeLimits& limits) {
    require_order(r);
    auto trees = enumerate_plane_trees(n, limits);
    BigNat total = 0;
    while (auto tree = trees.next()) total += count_colourings(*tree, r);
    return total;
}

}  // namespace youngmat
