#include "oracles.hpp"

#include <covertrees/covers.hpp>

#include <gtest/gtest.h>

#include <bit>
#include <numeric>
#include <random>

namespace covertrees {
namespace {

std::vector<Vertex> identity_map(std::size_t n) {
    std::vector<Vertex> map(n);
    std::iota(map.begin(), map.end(), 0);
    return map;
}

/// (x, g) -> (g, parity g), (y, g) -> (g, parity g xor 1), with the parity bit as coordinate n-1.
std::vector<Vertex> cube_isomorphism(std::size_t n) {
    const std::size_t m = n - 1;
    const std::size_t order = std::size_t{1} << m;
    std::vector<Vertex> map(2 * order);
    for (GroupElement g = 0; g < order; ++g) {
        const std::size_t parity = std::popcount(g) % 2;
        map[g] = g | (parity << m);
        map[order + g] = g | ((parity ^ 1) << m);
    }
    return map;
}

TEST(GroupElement, StringConvention) {
    EXPECT_EQ(group_element_string(0b001, 3), "100");
    EXPECT_EQ(group_element_string(0b110, 3), "011");
    EXPECT_EQ(group_element_string(0, 0), "-");
    EXPECT_EQ(parse_group_element("100", 3), GroupElement{1});
    EXPECT_EQ(parse_group_element("-", 0), GroupElement{0});
    EXPECT_FALSE(parse_group_element("10", 3));
    EXPECT_FALSE(parse_group_element("102", 3));
    EXPECT_FALSE(parse_group_element("0", 0));
}

TEST(Character, Pairing) {
    const Character chi(0b101);
    EXPECT_EQ(chi(0b000), 1);
    EXPECT_EQ(chi(0b001), -1);
    EXPECT_EQ(chi(0b101), 1);
    EXPECT_EQ(chi(0b111), 1);
    EXPECT_EQ(chi(0b100), -1);
    EXPECT_TRUE(Character(0).is_trivial());
    EXPECT_FALSE(chi.is_trivial());
}

TEST(VoltageGraph, Validation) {
    EXPECT_THROW(VoltageGraph(theta(2), 1, {1}), InvalidParameter);
    EXPECT_THROW(VoltageGraph(theta(1), 1, {2}), InvalidParameter);
    EXPECT_THROW(VoltageGraph(theta(1), 25, {0}), SizeLimitError);
}

TEST(DerivedGraph, RankZeroIsTheBase) {
    const Multigraph base(3, {{0, 1}, {2, 1}, {2, 2}});
    const Multigraph derived = derived_graph(VoltageGraph(base, 0, {0, 0, 0}));
    EXPECT_TRUE(testing::is_isomorphism(base, derived, identity_map(3)));
}

TEST(DerivedGraph, SingleEdgeWithNontrivialVoltageIsDisconnected) {
    const Multigraph derived = derived_graph(VoltageGraph(theta(1), 1, {1}));
    EXPECT_EQ(derived.vertex_count(), 4u);
    EXPECT_EQ(derived.edge_multiset(), (std::vector<Edge>{{0, 3}, {1, 2}}));
    EXPECT_EQ(kappa(derived), 0);
}

TEST(DerivedGraph, ThetaTwoGivesFourCycle) {
    const Multigraph derived = derived_graph(VoltageGraph(theta(2), 1, {1, 0}));
    EXPECT_EQ(kappa(derived), 4);
    EXPECT_TRUE(testing::is_isomorphism(derived, hypercube(2), cube_isomorphism(2)));
}

TEST(DerivedGraph, Sizes) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const VoltageGraph vg = testing::random_voltage_graph(rng, 5, 8, 3, false, true);
        const Multigraph derived = derived_graph(vg);
        EXPECT_EQ(derived.vertex_count(), vg.base().vertex_count() << vg.rank());
        EXPECT_EQ(derived.edge_count(), vg.base().edge_count() << vg.rank());
        EXPECT_EQ(derived.degrees().size(), derived.vertex_count());
    }
}

TEST(CubeVoltageGraph, Structure) {
    const VoltageGraph c1 = cube_voltage_graph(1);
    EXPECT_EQ(c1.rank(), 0u);
    EXPECT_EQ(c1.base().edge_count(), 1u);
    EXPECT_TRUE(testing::is_isomorphism(derived_graph(c1), hypercube(1), cube_isomorphism(1)));

    const VoltageGraph c2 = cube_voltage_graph(2);
    EXPECT_EQ(c2.rank(), 1u);
    EXPECT_EQ(c2.voltages(), (std::vector<GroupElement>{1, 0}));

    const VoltageGraph c3 = cube_voltage_graph(3);
    EXPECT_EQ(c3.voltages(), (std::vector<GroupElement>{0b01, 0b10, 0}));
    const Multigraph derived = derived_graph(c3);
    EXPECT_EQ(derived.vertex_count(), 8u);
    EXPECT_EQ(derived.edge_count(), 12u);
    EXPECT_EQ(kappa(derived), 384);

    EXPECT_THROW(cube_voltage_graph(0), InvalidParameter);
}

TEST(CubeVoltageGraph, ExplicitIsomorphismOntoHypercube) {
    for (std::size_t n = 1; n <= 6; ++n)
        EXPECT_TRUE(testing::is_isomorphism(derived_graph(cube_voltage_graph(n)), hypercube(n), cube_isomorphism(n)))
            << "n=" << n;
}

TEST(IntermediateDoubleCover, CubeThree) {
    const VoltageGraph vg = cube_voltage_graph(3);
    const Multigraph one_negative = intermediate_double_cover(vg, Character(0b01));
    EXPECT_TRUE(testing::is_isomorphism(one_negative, b_graph(2, 1), identity_map(4)));
    EXPECT_EQ(kappa(one_negative), 12);

    const Multigraph two_negative = intermediate_double_cover(vg, Character(0b11));
    EXPECT_TRUE(testing::is_isomorphism(two_negative, b_graph(1, 2), identity_map(4)));
    EXPECT_EQ(kappa(two_negative), 12);

    EXPECT_THROW(intermediate_double_cover(vg, Character(0)), InvalidParameter);
    EXPECT_THROW(intermediate_double_cover(vg, Character(0b100)), InvalidParameter);
}

TEST(TwistedLaplacian, Examples) {
    const VoltageGraph vg = cube_voltage_graph(3);
    EXPECT_EQ(twisted_laplacian(vg, Character(0)), laplacian(vg.base()));
    EXPECT_EQ(twisted_laplacian(vg, Character(0b01)), (IntMatrix{{3, -1}, {-1, 3}}));
    EXPECT_EQ(twisted_laplacian(vg, Character(0b11)), (IntMatrix{{3, 1}, {1, 3}}));
}

TEST(TwistedLaplacian, Loops) {
    const VoltageGraph vg(Multigraph(1, {{0, 0}, {0, 0}}), 1, {1, 0});
    EXPECT_EQ(twisted_laplacian(vg, Character(1)), (IntMatrix{{4}}));
    EXPECT_EQ(twisted_laplacian(vg, Character(0)), (IntMatrix{{0}}));
}

TEST(TwistedLaplacian, TrivialCharacterIsTheLaplacian) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 40; ++trial) {
        const VoltageGraph vg = testing::random_voltage_graph(rng, 5, 8, 3, false, true);
        EXPECT_EQ(twisted_laplacian(vg, Character(0)), laplacian(vg.base()));
    }
}

TEST(LSpecialValue, Examples) {
    EXPECT_EQ(l_special_value(cube_voltage_graph(3), Character(0b01)), 8);
    EXPECT_EQ(l_special_value(VoltageGraph(theta(2), 1, {1, 0}), Character(1)), 4);
    EXPECT_EQ(l_special_value(VoltageGraph(theta(1), 1, {1}), Character(1)), 0);
    EXPECT_THROW(l_special_value(cube_voltage_graph(3), Character(0)), InvalidParameter);
}

TEST(KappaViaCharacters, Examples) {
    EXPECT_EQ(kappa_via_characters(VoltageGraph(theta(5), 0, {0, 0, 0, 0, 0})), 5);
    EXPECT_EQ(kappa_via_characters(cube_voltage_graph(3)), 384);
    EXPECT_EQ(kappa_via_characters(VoltageGraph(theta(2), 1, {1, 0})), 4);
    EXPECT_EQ(kappa_via_characters(VoltageGraph(theta(1), 1, {1})), 0);
}

TEST(EnumerateCharacters, Counts) {
    EXPECT_TRUE(enumerate_characters(0).empty());
    const auto two = enumerate_characters(2);
    ASSERT_EQ(two.size(), 3u);
    EXPECT_EQ(two[0].mask(), 1u);
    EXPECT_EQ(two[1].mask(), 2u);
    EXPECT_EQ(two[2].mask(), 3u);
    EXPECT_EQ(enumerate_characters(4).size(), 15u);
    EXPECT_THROW(enumerate_characters(25), SizeLimitError);
}

// Connected and disconnected bases, loops included, m <= 3.
TEST(Covers, CharacterRouteMatchesMatrixTreeOnRandomVoltageGraphs) {
    std::mt19937_64 rng(1618);
    int connected_covers = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const VoltageGraph vg = testing::random_voltage_graph(rng, 5, 8, 3, trial % 5 != 0, trial % 3 == 0);
        const Multigraph derived = derived_graph(vg);
        const TreeCount direct = kappa(derived);
        connected_covers += is_connected(derived) ? 1 : 0;
        ASSERT_EQ(kappa_via_characters(vg), direct) << serialize_voltage_graph(vg);

        const BigInt base = kappa(vg.base()).value();
        for (Character chi : enumerate_characters(vg.rank())) {
            const BigInt value = l_special_value(vg, chi);
            ASSERT_GE(sgn(value), 0);
            ASSERT_EQ(base * value, 2 * kappa(intermediate_double_cover(vg, chi)).value())
                << serialize_voltage_graph(vg) << "chi " << chi.mask();
        }
    }
    EXPECT_GT(connected_covers, 20);
}

TEST(VoltageFile, Parse) {
    const VoltageGraph vg = parse_voltage_graph("# cube tower n=3\nvertices 2\nrank 2\n0 1 10\n0 1 01\n0 1 00\n");
    EXPECT_EQ(vg.rank(), 2u);
    EXPECT_EQ(vg.voltages(), cube_voltage_graph(3).voltages());
    EXPECT_EQ(vg.base().edge_multiset(), theta(3).edge_multiset());

    const VoltageGraph rank0 = parse_voltage_graph("rank 0\nvertices 2\n0 1 -\n");
    EXPECT_EQ(rank0.rank(), 0u);
    EXPECT_EQ(rank0.voltages(), (std::vector<GroupElement>{0}));
}

TEST(VoltageFile, Errors) {
    auto line_of = [](const std::string& text) {
        try {
            parse_voltage_graph(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{9999};
    };
    EXPECT_EQ(line_of("vertices 2\n0 1 1\n"), 2u);
    EXPECT_EQ(line_of("vertices 2\nrank 1\n0 1 2\n"), 3u);
    EXPECT_EQ(line_of("vertices 2\nrank 2\n0 1 1\n"), 3u);
    EXPECT_EQ(line_of("vertices 2\nrank 0\n0 1 0\n"), 3u);
    EXPECT_EQ(line_of("vertices 2\nrank 1\n0 5 1\n"), 3u);
    EXPECT_EQ(line_of("vertices 2\nrank 1\n0 1\n"), 3u);
    EXPECT_EQ(line_of("vertices 2\nvertices 3\n"), 2u);
    EXPECT_EQ(line_of("vertices 2\nrank 30\n"), 2u);
    EXPECT_EQ(line_of("vertices 2\nrank 1\n0 1 1\nrank 1\n"), 4u);
    EXPECT_EQ(line_of("vertices 2\n"), 0u);
}

TEST(VoltageFile, RoundTrip) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        const VoltageGraph vg = testing::random_voltage_graph(rng, 5, 8, 4, false, true);
        const VoltageGraph back = parse_voltage_graph(serialize_voltage_graph(vg));
        EXPECT_EQ(back.rank(), vg.rank());
        EXPECT_EQ(back.voltages(), vg.voltages());
        EXPECT_EQ(back.base().edges(), vg.base().edges());
    }
}

}  // namespace
}  // namespace covertrees
