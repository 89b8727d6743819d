#pragma once

#include <covertrees/big_integer.hpp>
#include <covertrees/covers.hpp>
#include <covertrees/errors.hpp>
#include <covertrees/multigraph.hpp>
#include <covertrees/spanning.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace covertrees {

/**
 * The closed-form constants the verifiers compare against. Defaults are the
 * true formulas; tests substitute corrupted ones to confirm that every
 * constant is actually checked.
 */
struct ClosedForms {
    std::function<TreeCount(std::size_t n)> theta = kappa_theta;
    std::function<TreeCount(std::size_t a, std::size_t b)> b_graph = kappa_b;
    std::function<TreeCount(std::size_t n)> cube = kappa_cube_closed;
    std::function<BigInt(std::size_t n, std::size_t k)> binomial = covertrees::binomial;
    /// Number of intermediate double covers of the n-cube over theta(n): 2^(n-1) - 1.
    std::function<BigInt(std::size_t n)> census_total = [](std::size_t n) { return BigInt(pow2(n - 1) - 1); };
    /// Power of two in the (Z/2Z)^m product formula: 2^m - m - 1.
    std::function<long(std::size_t m)> eq1_two_exponent = [](std::size_t m) {
        return (1L << m) - static_cast<long>(m) - 1;
    };
};

struct Check {
    std::string name;
    bool pass = false;
    std::string lhs;
    std::string rhs;
};

struct CensusRow {
    std::size_t type = 0;  // a = min(k, n - k)
    BigInt multiplicity = 0;
    TreeCount kappa;
};

struct VerificationReport {
    std::string run;
    std::vector<std::pair<std::string, std::string>> params;
    std::optional<TreeCount> kappa_direct;
    std::optional<TreeCount> kappa_eq1;
    std::optional<TreeCount> kappa_characters;
    std::optional<TreeCount> kappa_closed;
    std::optional<BigInt> quotient;
    /// Other named quantities a run produces (e.g. the L-value itself).
    std::vector<std::pair<std::string, BigInt>> values;
    std::vector<CensusRow> census;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }

    void add_check(std::string name, bool pass, std::string lhs, std::string rhs) {
        checks.push_back({std::move(name), pass, std::move(lhs), std::move(rhs)});
    }

    void add_equality(std::string name, const BigInt& lhs, const BigInt& rhs) {
        add_check(std::move(name), lhs == rhs, to_decimal(lhs), to_decimal(rhs));
    }
};

/**
 * Right-hand side of the (Z/2Z)^m cover formula,
 *   2^(2^m - m - 1) * prod_{chi != 1} kappa(H_chi) / kappa(H)^(2^m - 2),
 * with every kappa(H_chi) taken by Matrix-Tree on the intermediate double
 * cover. Exact rational; integral when the formula holds.
 */
inline BigRational eq1_rhs(const VoltageGraph& vg, const ClosedForms& closed = {}) {
    const BigInt base_kappa = kappa(vg.base()).value();
    if (sgn(base_kappa) == 0) throw PreconditionError("eq1_rhs: base graph is disconnected");

    BigInt numerator = 1;
    for (Character chi : enumerate_characters(vg.rank())) numerator *= kappa(intermediate_double_cover(vg, chi)).value();

    const long two_exponent = closed.eq1_two_exponent(vg.rank());
    const BigInt two_power = pow2(static_cast<unsigned long>(two_exponent < 0 ? -two_exponent : two_exponent));
    BigInt denominator = 1;
    if (two_exponent >= 0) numerator *= two_power;
    else denominator *= two_power;

    // kappa(H)^(2^m - 2); the exponent is -1 when m = 0.
    if (vg.rank() == 0) numerator *= base_kappa;
    else denominator *= pow(base_kappa, (1UL << vg.rank()) - 2);

    BigRational rhs(numerator, denominator);
    rhs.canonicalize();
    return rhs;
}

namespace detail {

inline std::optional<TreeCount> integral(const BigRational& value) {
    if (value.get_den() != 1 || sgn(value.get_num()) < 0) return std::nullopt;
    return TreeCount(value.get_num());
}

inline TreeCount connected_cover_kappa(const VoltageGraph& vg, const char* who) {
    TreeCount count = kappa(derived_graph(vg));
    if (sgn(count.value()) == 0) throw PreconditionError(std::string(who) + ": derived graph is disconnected");
    return count;
}

}  // namespace detail

/// Checks kappa(derived graph) against the product formula over intermediate double covers.
inline VerificationReport verify_eq1(const VoltageGraph& vg, const ClosedForms& closed = {}) {
    VerificationReport report;
    report.run = "eq1-verify";
    report.params = {{"m", std::to_string(vg.rank())},
                     {"base_vertices", std::to_string(vg.base().vertex_count())},
                     {"base_edges", std::to_string(vg.base().edge_count())}};

    const TreeCount lhs = detail::connected_cover_kappa(vg, "verify_eq1");
    const BigRational rhs = eq1_rhs(vg, closed);
    report.kappa_direct = lhs;
    report.kappa_eq1 = detail::integral(rhs);
    report.add_check("eq1.integral", report.kappa_eq1.has_value(), to_decimal(rhs), "integer");
    report.add_check("eq1", report.kappa_eq1 && *report.kappa_eq1 == lhs, lhs.str(), to_decimal(rhs));
    return report;
}

/// Checks that kappa(base) divides kappa(derived graph) and records the quotient.
inline VerificationReport verify_divisibility(const VoltageGraph& vg) {
    VerificationReport report;
    report.run = "divisibility";
    report.params = {{"m", std::to_string(vg.rank())}};

    const TreeCount cover = detail::connected_cover_kappa(vg, "verify_divisibility");
    const TreeCount base = kappa(vg.base());
    report.kappa_direct = cover;
    const bool ok = divides(base, cover);
    if (ok) report.quotient = BigInt(cover.value() / base.value());
    report.add_check("divisibility", ok, base.str(), cover.str());
    return report;
}

/// One character: det of the twisted Laplacian and kappa_H * det == 2 * kappa(H_chi).
inline VerificationReport verify_l_value(const VoltageGraph& vg, Character chi) {
    VerificationReport report;
    report.run = "lvalue";
    report.params = {{"m", std::to_string(vg.rank())}, {"chi", group_element_string(chi.mask(), vg.rank())}};

    const BigInt value = l_special_value(vg, chi);
    const BigInt base = kappa(vg.base()).value();
    const BigInt cover = kappa(intermediate_double_cover(vg, chi)).value();
    report.values = {{"l_value", value}, {"kappa_base", base}, {"kappa_double_cover", cover}};
    report.add_equality("l_value.relation", base * value, 2 * cover);
    return report;
}

/**
 * Classifies the intermediate double covers of the n-cube over theta(n) by
 * type a = min(k, n - k), k being the number of edges a character sends to
 * -1, and checks the count of each type and its tree count.
 */
inline VerificationReport census(std::size_t n, const ClosedForms& closed = {}) {
    if (n < 2) throw InvalidParameter("census: n must be at least 2");
    VerificationReport report;
    report.run = "census";
    report.params = {{"n", std::to_string(n)}};

    const VoltageGraph vg = cube_voltage_graph(n);
    struct TypeTally {
        BigInt multiplicity = 0;
        std::vector<BigInt> kappas;  // distinct values seen
    };
    std::map<std::size_t, TypeTally> tallies;
    for (std::size_t a = 1; a <= n / 2; ++a) tallies[a];

    BigInt total = 0;
    for (Character chi : enumerate_characters(vg.rank())) {
        std::size_t negative_edges = 0;
        for (GroupElement s : vg.voltages())
            if (chi(s) < 0) ++negative_edges;
        const std::size_t type = std::min(negative_edges, n - negative_edges);
        TypeTally& tally = tallies[type];
        ++tally.multiplicity;
        ++total;
        BigInt k = kappa(intermediate_double_cover(vg, chi)).value();
        if (std::find(tally.kappas.begin(), tally.kappas.end(), k) == tally.kappas.end())
            tally.kappas.push_back(std::move(k));
    }

    report.add_equality("census.total", total, closed.census_total(n));
    for (const auto& [type, tally] : tallies) {
        const std::string tag = "[a=" + std::to_string(type) + "]";
        BigInt expected_multiplicity = 0;
        if (type >= 1 && 2 * type < n) expected_multiplicity = closed.binomial(n, type);
        else if (type >= 1 && 2 * type == n) expected_multiplicity = closed.binomial(n, type) / 2;
        report.add_equality("census.multiplicity" + tag, tally.multiplicity, expected_multiplicity);

        const TreeCount expected_kappa =
            type >= 1 && type < n ? closed.b_graph(type, n - type) : TreeCount(BigInt(0));
        std::string observed;
        for (const BigInt& k : tally.kappas) observed += (observed.empty() ? "" : ",") + to_decimal(k);
        const bool uniform = tally.kappas.size() == 1 && tally.kappas.front() == expected_kappa.value();
        report.add_check("census.kappa" + tag, uniform, observed, expected_kappa.str());

        report.census.push_back(
            {type, tally.multiplicity, tally.kappas.empty() ? TreeCount() : TreeCount(tally.kappas.front())});
    }
    return report;
}

inline constexpr std::size_t max_direct_cube_dimension = 8;
inline constexpr std::size_t max_verify_cube_dimension = 20;

struct CubeOptions {
    bool skip_direct = false;
    ClosedForms closed;
};

/**
 * Computes kappa of the n-cube four ways: Matrix-Tree on the cube itself,
 * the product formula over the theta(n) tower, the character product, and
 * the closed form. Every pair of available legs is compared, and the census
 * and divisibility checks are folded in.
 */
inline VerificationReport verify_cube(std::size_t n, const CubeOptions& options = {}) {
    if (n == 0 || n > max_verify_cube_dimension) throw InvalidParameter("verify_cube: n must be in [1, 20]");
    if (n > max_direct_cube_dimension && !options.skip_direct)
        throw InvalidParameter("verify_cube: n > 8 requires skipping the direct Matrix-Tree leg");
    const ClosedForms& closed = options.closed;

    VerificationReport report;
    report.run = "cube-verify";
    report.params = {{"n", std::to_string(n)}, {"m", std::to_string(n - 1)}};

    const VoltageGraph vg = cube_voltage_graph(n);
    if (options.skip_direct) report.notes.push_back("direct Matrix-Tree leg skipped");
    else report.kappa_direct = kappa(hypercube(n));

    const BigRational rhs = eq1_rhs(vg, closed);
    report.kappa_eq1 = detail::integral(rhs);
    report.add_check("eq1.integral", report.kappa_eq1.has_value(), to_decimal(rhs), "integer");
    report.kappa_characters = kappa_via_characters(vg);
    report.kappa_closed = closed.cube(n);

    const std::pair<const char*, const std::optional<TreeCount>*> legs[] = {
        {"direct", &report.kappa_direct},
        {"eq1", &report.kappa_eq1},
        {"characters", &report.kappa_characters},
        {"closed", &report.kappa_closed},
    };
    for (std::size_t i = 0; i < std::size(legs); ++i)
        for (std::size_t j = i + 1; j < std::size(legs); ++j) {
            const auto& a = *legs[i].second;
            const auto& b = *legs[j].second;
            if (!a || !b) continue;
            report.add_equality(std::string("legs.") + legs[i].first + "=" + legs[j].first, a->value(), b->value());
        }

    const TreeCount base = kappa(vg.base());
    report.add_equality("theta.closed_form", base.value(), closed.theta(n).value());

    bool relation_holds = true;
    std::string first_failure;
    for (Character chi : enumerate_characters(vg.rank())) {
        const BigInt lhs = base.value() * l_special_value(vg, chi);
        const BigInt rhs2 = 2 * kappa(intermediate_double_cover(vg, chi)).value();
        if (lhs != rhs2 && relation_holds) {
            relation_holds = false;
            first_failure = group_element_string(chi.mask(), vg.rank());
        }
    }
    report.add_check("l_value.relation", relation_holds, relation_holds ? "all characters" : first_failure,
                     "kappa_H*det(L_chi) == 2*kappa(H_chi)");

    const TreeCount& reference = report.kappa_direct ? *report.kappa_direct : *report.kappa_characters;
    const bool divisible = sgn(base.value()) > 0 && divides(base, reference);
    if (divisible) report.quotient = BigInt(reference.value() / base.value());
    report.add_check("divisibility", divisible, base.str(), reference.str());

    if (n >= 2) {
        VerificationReport tally = census(n, closed);
        report.census = std::move(tally.census);
        for (Check& c : tally.checks) report.checks.push_back(std::move(c));
    } else {
        report.notes.push_back("census needs n >= 2");
    }
    return report;
}

}  // namespace covertrees
