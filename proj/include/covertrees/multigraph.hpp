#pragma once

#include <covertrees/errors.hpp>
#include <covertrees/int_matrix.hpp>

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace covertrees {

using Vertex = std::size_t;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    bool is_loop() const noexcept { return u == v; }
    /// Endpoints with the smaller index first.
    Edge canonical() const noexcept { return u <= v ? *this : Edge{v, u}; }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected multigraph on vertices 0..vertex_count-1. Parallel edges are
/// distinct edges; loops are allowed. Labels are cosmetic.
class Multigraph {
public:
    Multigraph() = default;

    explicit Multigraph(std::size_t vertex_count, std::vector<Edge> edges = {}, std::vector<std::string> labels = {})
        : vertex_count_(vertex_count), edges_(std::move(edges)), labels_(std::move(labels)) {
        for (const Edge& e : edges_)
            if (e.u >= vertex_count_ || e.v >= vertex_count_)
                throw IndexError("Multigraph: edge endpoint out of range");
        if (!labels_.empty() && labels_.size() != vertex_count_)
            throw InvalidParameter("Multigraph: label count does not match vertex count");
    }

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Degree counting multiplicity; a loop contributes 2.
    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> deg(vertex_count_, 0);
        for (const Edge& e : edges_) {
            ++deg[e.u];
            ++deg[e.v];
        }
        return deg;
    }

    /// Edge list sorted canonically; equal for graphs with the same edge multiset.
    std::vector<Edge> edge_multiset() const {
        std::vector<Edge> sorted;
        sorted.reserve(edges_.size());
        for (const Edge& e : edges_) sorted.push_back(e.canonical());
        std::sort(sorted.begin(), sorted.end());
        return sorted;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
};

/// Two vertices x, y joined by n parallel edges.
inline Multigraph theta(std::size_t n) {
    if (n == 0) throw InvalidParameter("theta: n must be at least 1");
    return Multigraph(2, std::vector<Edge>(n, Edge{0, 1}), {"x", "y"});
}

/// B_{a,b} on (x1, x2, y1, y2): a edges on x1-y1 and x2-y2, b edges on x1-y2 and x2-y1.
inline Multigraph b_graph(std::size_t a, std::size_t b) {
    if (a == 0 && b == 0) throw InvalidParameter("b_graph: a + b must be at least 1");
    constexpr Vertex x1 = 0, x2 = 1, y1 = 2, y2 = 3;
    std::vector<Edge> edges;
    edges.reserve(2 * (a + b));
    for (std::size_t i = 0; i < a; ++i) edges.push_back({x1, y1});
    for (std::size_t i = 0; i < a; ++i) edges.push_back({x2, y2});
    for (std::size_t i = 0; i < b; ++i) edges.push_back({x1, y2});
    for (std::size_t i = 0; i < b; ++i) edges.push_back({x2, y1});
    return Multigraph(4, std::move(edges), {"x1", "x2", "y1", "y2"});
}

inline constexpr std::size_t max_hypercube_dimension = 20;

/// The n-cube: vertex index = bitstring value, edges at Hamming distance 1.
inline Multigraph hypercube(std::size_t n) {
    if (n == 0) throw InvalidParameter("hypercube: n must be at least 1");
    if (n > max_hypercube_dimension) throw SizeLimitError("hypercube: n exceeds 20");
    const std::size_t count = std::size_t{1} << n;
    std::vector<Edge> edges;
    edges.reserve(n * count / 2);
    std::vector<std::string> labels(count);
    for (Vertex v = 0; v < count; ++v) {
        labels[v].resize(n);
        for (std::size_t bit = 0; bit < n; ++bit) {
            labels[v][n - 1 - bit] = (v >> bit) & 1 ? '1' : '0';
            const Vertex w = v ^ (Vertex{1} << bit);
            if (v < w) edges.push_back({v, w});
        }
    }
    return Multigraph(count, std::move(edges), std::move(labels));
}

/// D - A, with loops cancelling (each adds 2 to the degree and 2 to A(v,v)).
inline IntMatrix laplacian(const Multigraph& g) {
    IntMatrix l(g.vertex_count(), g.vertex_count());
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) continue;
        l(e.u, e.u) += 1;
        l(e.v, e.v) += 1;
        l(e.u, e.v) -= 1;
        l(e.v, e.u) -= 1;
    }
    return l;
}

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace detail

inline std::size_t component_count(const Multigraph& g) {
    detail::DisjointSets sets(g.vertex_count());
    std::size_t components = g.vertex_count();
    for (const Edge& e : g.edges())
        if (sets.unite(e.u, e.v)) --components;
    return components;
}

/// Exactly one component. The empty graph has zero and is not connected.
inline bool is_connected(const Multigraph& g) { return component_count(g) == 1; }

/// Same graph with vertex v renamed to perm[v].
inline Multigraph relabeled(const Multigraph& g, const std::vector<Vertex>& perm) {
    if (perm.size() != g.vertex_count()) throw InvalidParameter("relabeled: permutation size mismatch");
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges()) edges.push_back({perm.at(e.u), perm.at(e.v)});
    return Multigraph(g.vertex_count(), std::move(edges));
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_tokens(std::string_view s) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto start = s.find_first_not_of(" \t\r", pos);
        if (start == std::string_view::npos) break;
        auto end = s.find_first_of(" \t\r", start);
        if (end == std::string_view::npos) end = s.size();
        tokens.push_back(s.substr(start, end - start));
        pos = end;
    }
    return tokens;
}

inline std::size_t parse_count(std::string_view token, std::size_t line) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
    return value;
}

/// Calls on_line(line_number, tokens) for every non-blank, non-comment line.
template <typename Fn>
void for_each_content_line(std::string_view text, Fn&& on_line) {
    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_number;
        const std::string_view line = trim(text.substr(pos, end - pos));
        if (!line.empty() && line.front() != '#') on_line(line_number, split_tokens(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
}

}  // namespace detail

/// Reads the edge-list format: `vertices N` followed by `u v` lines; `#` starts a comment line.
inline Multigraph parse_edge_list(std::string_view text) {
    bool have_header = false;
    std::size_t vertex_count = 0;
    std::vector<Edge> edges;
    detail::for_each_content_line(text, [&](std::size_t line, const std::vector<std::string_view>& tokens) {
        if (!have_header) {
            if (tokens.size() != 2 || tokens[0] != "vertices")
                throw ParseError(line, "expected header 'vertices N'");
            vertex_count = detail::parse_count(tokens[1], line);
            have_header = true;
            return;
        }
        if (tokens.size() != 2) throw ParseError(line, "expected edge line 'u v'");
        const Vertex u = detail::parse_count(tokens[0], line);
        const Vertex v = detail::parse_count(tokens[1], line);
        if (u >= vertex_count || v >= vertex_count) throw ParseError(line, "edge endpoint out of range");
        edges.push_back({u, v});
    });
    if (!have_header) throw ParseError(0, "missing header 'vertices N'");
    return Multigraph(vertex_count, std::move(edges));
}

inline std::string serialize_edge_list(const Multigraph& g) {
    std::ostringstream out;
    out << "vertices " << g.vertex_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

}  // namespace covertrees
