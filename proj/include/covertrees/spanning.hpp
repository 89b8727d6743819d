#pragma once

#include <covertrees/big_integer.hpp>
#include <covertrees/errors.hpp>
#include <covertrees/int_matrix.hpp>
#include <covertrees/multigraph.hpp>

#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace covertrees {

/// Number of spanning trees of a graph; never negative.
class TreeCount {
public:
    TreeCount() = default;

    explicit TreeCount(BigInt value) : value_(std::move(value)) {
        if (sgn(value_) < 0) throw ConsistencyError("TreeCount: negative spanning-tree count");
    }

    const BigInt& value() const noexcept { return value_; }
    std::string str() const { return to_decimal(value_); }

    friend bool operator==(const TreeCount& a, const TreeCount& b) { return a.value_ == b.value_; }
    friend bool operator==(const TreeCount& a, const BigInt& b) { return a.value_ == b; }
    friend bool operator==(const TreeCount& a, long b) { return a.value_ == b; }

    friend std::ostream& operator<<(std::ostream& os, const TreeCount& t) { return os << t.value_; }

private:
    BigInt value_ = 0;
};

/// Matrix-Tree theorem: the (last, last) principal cofactor of the Laplacian.
inline TreeCount kappa(const Multigraph& g) {
    if (g.vertex_count() == 0) throw InvalidParameter("kappa: graph has no vertices");
    const std::size_t last = g.vertex_count() - 1;
    return TreeCount(first_cofactor(laplacian(g), last, last));
}

inline constexpr std::size_t bruteforce_edge_budget = 16;

namespace detail {

// Loop-free edges only; vertex_count >= 1.
inline BigInt deletion_contraction(std::size_t vertex_count, const std::vector<Edge>& edges) {
    if (vertex_count == 1) return 1;
    if (edges.size() + 1 < vertex_count) return 0;
    {
        DisjointSets sets(vertex_count);
        std::size_t components = vertex_count;
        for (const Edge& e : edges)
            if (sets.unite(e.u, e.v)) --components;
        if (components != 1) return 0;
    }

    const Edge pivot = edges.back().canonical();
    std::vector<Edge> deleted(edges.begin(), edges.end() - 1);

    // Merge pivot.v into pivot.u, close the gap at pivot.v, and drop the loops this creates.
    auto rename = [&](Vertex w) {
        if (w == pivot.v) w = pivot.u;
        return w > pivot.v ? w - 1 : w;
    };
    std::vector<Edge> contracted;
    contracted.reserve(deleted.size());
    for (const Edge& e : deleted) {
        const Edge moved{rename(e.u), rename(e.v)};
        if (!moved.is_loop()) contracted.push_back(moved);
    }
    return deletion_contraction(vertex_count, deleted) + deletion_contraction(vertex_count - 1, contracted);
}

}  // namespace detail

/// Independent oracle: kappa(G) = kappa(G - e) + kappa(G / e), loops deleted.
inline TreeCount kappa_bruteforce(const Multigraph& g) {
    if (g.vertex_count() == 0) throw InvalidParameter("kappa_bruteforce: graph has no vertices");
    if (g.edge_count() > bruteforce_edge_budget) throw SizeLimitError("kappa_bruteforce: more than 16 edges");
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (!e.is_loop()) edges.push_back(e);
    return TreeCount(detail::deletion_contraction(g.vertex_count(), edges));
}

inline TreeCount kappa_theta(std::size_t n) {
    if (n == 0) throw InvalidParameter("kappa_theta: n must be at least 1");
    return TreeCount(BigInt(static_cast<unsigned long>(n)));
}

/// 2ab(a+b); the n-edge double covers B_{a,n-a} give 2a(n-a)n.
inline TreeCount kappa_b(std::size_t a, std::size_t b) {
    if (a == 0 && b == 0) throw InvalidParameter("kappa_b: a + b must be at least 1");
    const BigInt big_a(static_cast<unsigned long>(a));
    const BigInt big_b(static_cast<unsigned long>(b));
    return TreeCount(2 * big_a * big_b * (big_a + big_b));
}

/// Row n of Pascal's triangle, exact.
inline std::vector<BigInt> binomial_row(std::size_t n) {
    std::vector<BigInt> row{1};
    for (std::size_t r = 1; r <= n; ++r) {
        row.push_back(1);
        for (std::size_t k = r - 1; k >= 1; --k) row[k] += row[k - 1];
    }
    return row;
}

inline BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    return binomial_row(n)[k];
}

inline constexpr std::size_t max_closed_cube_dimension = 64;
// Beyond this the result needs more than 2^24 bits of storage.
inline constexpr std::size_t max_evaluable_cube_dimension = 24;

/// 2^(2^n - n - 1) * prod_{i=1..n} i^C(n,i).
inline TreeCount kappa_cube_closed(std::size_t n) {
    if (n == 0 || n > max_closed_cube_dimension)
        throw InvalidParameter("kappa_cube_closed: n must be in [1, 64]");
    if (n > max_evaluable_cube_dimension) throw SizeLimitError("kappa_cube_closed: n above 24 is too large to evaluate");
    const BigInt two_exponent = pow2(n) - BigInt(static_cast<unsigned long>(n)) - 1;
    if (!two_exponent.fits_ulong_p()) throw SizeLimitError("kappa_cube_closed: exponent too large");
    const std::vector<BigInt> row = binomial_row(n);
    BigInt result = pow2(two_exponent.get_ui());
    for (std::size_t i = 2; i <= n; ++i) {
        if (!row[i].fits_ulong_p()) throw SizeLimitError("kappa_cube_closed: exponent too large");
        result *= pow(BigInt(static_cast<unsigned long>(i)), row[i].get_ui());
    }
    return TreeCount(std::move(result));
}

inline bool divides(const TreeCount& d, const TreeCount& k) {
    if (sgn(d.value()) == 0) throw InvalidParameter("divides: divisor must be at least 1");
    return mpz_divisible_p(k.value().get_mpz_t(), d.value().get_mpz_t()) != 0;
}

}  // namespace covertrees
