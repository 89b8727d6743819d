#pragma once

#include <covertrees/big_integer.hpp>
#include <covertrees/errors.hpp>
#include <covertrees/int_matrix.hpp>
#include <covertrees/multigraph.hpp>
#include <covertrees/spanning.hpp>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace covertrees {

/// Element of (Z/2Z)^m; bit i is the coordinate on basis vector i.
using GroupElement = std::uint32_t;

inline constexpr std::size_t max_group_rank = 24;

/// Renders g as an m-character binary string, basis vector 0 first.
inline std::string group_element_string(GroupElement g, std::size_t rank) {
    if (rank == 0) return "-";
    std::string out(rank, '0');
    for (std::size_t i = 0; i < rank; ++i)
        if ((g >> i) & 1u) out[i] = '1';
    return out;
}

/// Inverse of group_element_string. Returns nullopt on a malformed string.
inline std::optional<GroupElement> parse_group_element(std::string_view text, std::size_t rank) {
    if (rank == 0) return text == "-" ? std::optional<GroupElement>(0) : std::nullopt;
    if (text.size() != rank) return std::nullopt;
    GroupElement g = 0;
    for (std::size_t i = 0; i < rank; ++i) {
        if (text[i] == '1') g |= GroupElement{1} << i;
        else if (text[i] != '0') return std::nullopt;
    }
    return g;
}

/// A character of (Z/2Z)^m: chi(g) = (-1)^popcount(mask & g).
class Character {
public:
    constexpr Character() = default;
    constexpr explicit Character(GroupElement mask) : mask_(mask) {}

    constexpr GroupElement mask() const noexcept { return mask_; }
    constexpr bool is_trivial() const noexcept { return mask_ == 0; }

    /// +1 or -1.
    constexpr int operator()(GroupElement g) const noexcept { return std::popcount(mask_ & g) % 2 == 0 ? 1 : -1; }

    friend constexpr bool operator==(Character, Character) = default;

private:
    GroupElement mask_ = 0;
};

/// Base multigraph with one voltage in (Z/2Z)^rank per edge, aligned with base.edges().
class VoltageGraph {
public:
    VoltageGraph(Multigraph base, std::size_t rank, std::vector<GroupElement> voltages)
        : base_(std::move(base)), rank_(rank), voltages_(std::move(voltages)) {
        if (rank_ > max_group_rank) throw SizeLimitError("VoltageGraph: rank exceeds 24");
        if (voltages_.size() != base_.edge_count())
            throw InvalidParameter("VoltageGraph: one voltage per base edge required");
        for (GroupElement g : voltages_)
            if (rank_ < 32 && (g >> rank_) != 0) throw InvalidParameter("VoltageGraph: voltage wider than rank");
    }

    const Multigraph& base() const noexcept { return base_; }
    std::size_t rank() const noexcept { return rank_; }
    const std::vector<GroupElement>& voltages() const noexcept { return voltages_; }
    std::size_t group_order() const noexcept { return std::size_t{1} << rank_; }

private:
    Multigraph base_;
    std::size_t rank_ = 0;
    std::vector<GroupElement> voltages_;
};

/// Derived graph: vertex (v, g) has id v * 2^m + g; edge {u, v} with voltage s lifts to {(u,g), (v, g^s)}.
inline Multigraph derived_graph(const VoltageGraph& vg) {
    const std::size_t order = vg.group_order();
    const Multigraph& base = vg.base();
    std::vector<Edge> edges;
    edges.reserve(order * base.edge_count());
    for (std::size_t i = 0; i < base.edge_count(); ++i) {
        const Edge e = base.edges()[i].canonical();
        const GroupElement s = vg.voltages()[i];
        for (GroupElement g = 0; g < order; ++g) edges.push_back({e.u * order + g, e.v * order + (g ^ s)});
    }
    return Multigraph(base.vertex_count() * order, std::move(edges));
}

/// Theta(n) with basis vectors on edges 0..n-2 and zero on edge n-1; its derived graph is the n-cube.
inline VoltageGraph cube_voltage_graph(std::size_t n) {
    if (n == 0) throw InvalidParameter("cube_voltage_graph: n must be at least 1");
    if (n - 1 > max_group_rank) throw SizeLimitError("cube_voltage_graph: rank exceeds 24");
    std::vector<GroupElement> voltages(n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) voltages[i] = GroupElement{1} << i;
    return VoltageGraph(theta(n), n - 1, std::move(voltages));
}

/// All 2^m - 1 nontrivial characters, mask ascending.
inline std::vector<Character> enumerate_characters(std::size_t rank) {
    if (rank > max_group_rank) throw SizeLimitError("enumerate_characters: rank exceeds 24");
    std::vector<Character> out;
    const GroupElement order = GroupElement{1} << rank;
    out.reserve(order - 1);
    for (GroupElement mask = 1; mask < order; ++mask) out.emplace_back(mask);
    return out;
}

namespace detail {

inline void require_character_in_group(const VoltageGraph& vg, Character chi, const char* who) {
    if (vg.rank() < 32 && (chi.mask() >> vg.rank()) != 0)
        throw InvalidParameter(std::string(who) + ": character mask wider than rank");
}

inline void require_nontrivial(Character chi, const char* who) {
    if (chi.is_trivial()) throw InvalidParameter(std::string(who) + ": character must be nontrivial");
}

}  // namespace detail

/// Rank-1 voltage graph whose edge voltage is 1 exactly where chi(voltage) = -1.
inline VoltageGraph double_cover_voltages(const VoltageGraph& vg, Character chi) {
    detail::require_character_in_group(vg, chi, "double_cover_voltages");
    std::vector<GroupElement> bits;
    bits.reserve(vg.voltages().size());
    for (GroupElement s : vg.voltages()) bits.push_back(chi(s) < 0 ? 1 : 0);
    return VoltageGraph(vg.base(), 1, std::move(bits));
}

/// The double cover of the base that corresponds to the kernel of chi.
inline Multigraph intermediate_double_cover(const VoltageGraph& vg, Character chi) {
    detail::require_nontrivial(chi, "intermediate_double_cover");
    return derived_graph(double_cover_voltages(vg, chi));
}

/**
 * D - A_chi where A_chi(u,v) sums chi(voltage) over u-v edges. A loop at v
 * with chi(voltage) = -1 adds 4 to the diagonal; one with chi = +1 cancels.
 * The trivial character gives the ordinary Laplacian.
 */
inline IntMatrix twisted_laplacian(const VoltageGraph& vg, Character chi) {
    detail::require_character_in_group(vg, chi, "twisted_laplacian");
    const Multigraph& base = vg.base();
    IntMatrix l(base.vertex_count(), base.vertex_count());
    for (std::size_t i = 0; i < base.edge_count(); ++i) {
        const Edge& e = base.edges()[i];
        const int sign = chi(vg.voltages()[i]);
        if (e.is_loop()) {
            l(e.u, e.u) += 2 - 2 * sign;
            continue;
        }
        l(e.u, e.u) += 1;
        l(e.v, e.v) += 1;
        l(e.u, e.v) -= sign;
        l(e.v, e.u) -= sign;
    }
    return l;
}

/// Special value at u = 1 of the Artin-Ihara L-function, realised as det of the twisted Laplacian.
inline BigInt l_special_value(const VoltageGraph& vg, Character chi) {
    detail::require_nontrivial(chi, "l_special_value");
    BigInt value = determinant(twisted_laplacian(vg, chi));
    if (sgn(value) < 0) throw ConsistencyError("l_special_value: twisted Laplacian has negative determinant");
    return value;
}

/// kappa(base) * prod_{chi != 1} l_special_value(chi) / 2^m. Zero when the derived graph is disconnected.
inline TreeCount kappa_via_characters(const VoltageGraph& vg) {
    BigInt product = kappa(vg.base()).value();
    for (Character chi : enumerate_characters(vg.rank())) {
        if (sgn(product) == 0) break;
        product *= l_special_value(vg, chi);
    }
    const BigInt order = pow2(vg.rank());
    if (!mpz_divisible_p(product.get_mpz_t(), order.get_mpz_t()))
        throw ConsistencyError("kappa_via_characters: character product not divisible by group order");
    BigInt quotient;
    mpz_divexact(quotient.get_mpz_t(), product.get_mpz_t(), order.get_mpz_t());
    return TreeCount(std::move(quotient));
}

/// Reads the voltage-graph format: `vertices N`, `rank M`, then `u v g` lines.
inline VoltageGraph parse_voltage_graph(std::string_view text) {
    std::optional<std::size_t> vertex_count;
    std::optional<std::size_t> rank;
    std::vector<Edge> edges;
    std::vector<GroupElement> voltages;
    detail::for_each_content_line(text, [&](std::size_t line, const std::vector<std::string_view>& tokens) {
        if (!tokens.empty() && (tokens[0] == "vertices" || tokens[0] == "rank")) {
            if (!edges.empty()) throw ParseError(line, "header line after edge lines");
            if (tokens.size() != 2) throw ParseError(line, "expected '" + std::string(tokens[0]) + " N'");
            auto& slot = tokens[0] == "vertices" ? vertex_count : rank;
            if (slot) throw ParseError(line, "duplicate '" + std::string(tokens[0]) + "' header");
            slot = detail::parse_count(tokens[1], line);
            if (tokens[0] == "rank" && *slot > max_group_rank) throw ParseError(line, "rank exceeds 24");
            return;
        }
        if (!vertex_count || !rank) throw ParseError(line, "expected 'vertices N' and 'rank M' before edges");
        if (tokens.size() != 3) throw ParseError(line, "expected edge line 'u v g'");
        const Vertex u = detail::parse_count(tokens[0], line);
        const Vertex v = detail::parse_count(tokens[1], line);
        if (u >= *vertex_count || v >= *vertex_count) throw ParseError(line, "edge endpoint out of range");
        const auto g = parse_group_element(tokens[2], *rank);
        if (!g)
            throw ParseError(line, "voltage must be a " + std::to_string(*rank) + "-character binary string" +
                                       (*rank == 0 ? " ('-' for rank 0)" : ""));
        edges.push_back({u, v});
        voltages.push_back(*g);
    });
    if (!vertex_count) throw ParseError(0, "missing header 'vertices N'");
    if (!rank) throw ParseError(0, "missing header 'rank M'");
    return VoltageGraph(Multigraph(*vertex_count, std::move(edges)), *rank, std::move(voltages));
}

inline std::string serialize_voltage_graph(const VoltageGraph& vg) {
    std::ostringstream out;
    out << "vertices " << vg.base().vertex_count() << '\n' << "rank " << vg.rank() << '\n';
    for (std::size_t i = 0; i < vg.base().edge_count(); ++i) {
        const Edge& e = vg.base().edges()[i];
        out << e.u << ' ' << e.v << ' ' << group_element_string(vg.voltages()[i], vg.rank()) << '\n';
    }
    return out.str();
}

}  // namespace covertrees
