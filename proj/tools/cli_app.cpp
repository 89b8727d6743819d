#include "cli_app.hpp"

#include <covertrees/covertrees.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace covertrees::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t default_max_vertices = 4096;

/// Thrown for bad invocations that CLI11 itself cannot detect.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    CLI::Option* json_option = nullptr;
    std::string json_path;
    bool deterministic = false;

    bool json_requested() const { return json_option != nullptr && json_option->count() > 0; }
    bool json_to_stdout() const { return json_requested() && (json_path.empty() || json_path == "-"); }
};

void add_output_options(CLI::App* sub, OutputOptions& options) {
    options.json_option = sub->add_option("--json", options.json_path, "Write a JSON report to PATH (stdout if omitted)")
                              ->expected(0, 1)
                              ->type_name("PATH");
    sub->add_flag("--deterministic", options.deterministic, "Omit the generated_at timestamp from JSON");
}

std::size_t max_vertices() {
    const char* raw = std::getenv("COVERTREES_MAX_VERTICES");
    if (raw == nullptr || *raw == '\0') return default_max_vertices;
    std::size_t value = 0;
    const std::string text(raw);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
        throw UsageError("COVERTREES_MAX_VERTICES must be a positive integer, got '" + text + "'");
    return value;
}

void require_vertex_budget(std::size_t vertices, const std::string& what) {
    const std::size_t cap = max_vertices();
    if (vertices > cap)
        throw UsageError(what + " has " + std::to_string(vertices) + " vertices, above COVERTREES_MAX_VERTICES=" +
                         std::to_string(cap));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm parts{};
    gmtime_r(&now, &parts);
    std::ostringstream out;
    out << std::put_time(&parts, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

void emit_json(const Json& document, const OutputOptions& options, std::ostream& out) {
    const std::string text = document.dump(2) + "\n";
    if (options.json_to_stdout()) {
        out << text;
        return;
    }
    std::ofstream file(options.json_path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + options.json_path + "'");
    file << text;
}

Json params_json(const std::vector<std::pair<std::string, std::string>>& params) {
    Json object = Json::object();
    for (const auto& [key, value] : params) object[key] = value;
    return object;
}

void print_report(const VerificationReport& report, std::ostream& out) {
    out << report.run;
    for (const auto& [key, value] : report.params) out << ' ' << key << '=' << value;
    out << '\n';

    const std::pair<const char*, const std::optional<TreeCount>*> legs[] = {
        {"direct", &report.kappa_direct},
        {"eq1", &report.kappa_eq1},
        {"characters", &report.kappa_characters},
        {"closed", &report.kappa_closed},
    };
    bool any_leg = false;
    for (const auto& [name, leg] : legs)
        if (leg->has_value()) {
            if (!any_leg) out << "\nkappa\n";
            any_leg = true;
            out << "  " << std::left << std::setw(12) << name << (*leg)->str() << '\n';
        }
    if (report.quotient) out << "  " << std::left << std::setw(12) << "quotient" << to_decimal(*report.quotient) << '\n';
    for (const auto& [name, value] : report.values)
        out << "  " << std::left << std::setw(20) << name << to_decimal(value) << '\n';

    if (!report.census.empty()) {
        out << "\ncensus\n  " << std::left << std::setw(6) << "a" << std::setw(14) << "multiplicity" << "kappa\n";
        BigInt total = 0;
        for (const CensusRow& row : report.census) {
            out << "  " << std::left << std::setw(6) << row.type << std::setw(14) << to_decimal(row.multiplicity)
                << row.kappa.str() << '\n';
            total += row.multiplicity;
        }
        out << "  total " << to_decimal(total) << '\n';
    }

    out << "\nchecks\n";
    for (const Check& check : report.checks)
        out << "  " << (check.pass ? "PASS " : "FAIL ") << check.name << "  " << check.lhs << " vs " << check.rhs
            << '\n';
    for (const std::string& note : report.notes) out << "note: " << note << '\n';
    out << "\noverall: " << (report.passed() ? "PASS" : "FAIL") << '\n';
}

int finish_report(const VerificationReport& report, const OutputOptions& options, std::ostream& out) {
    if (!options.json_to_stdout()) print_report(report, out);
    if (options.json_requested()) emit_json(Json::parse(report_json(report, options.deterministic)), options, out);
    return report.passed() ? exit_ok : exit_check_failed;
}

struct KappaArgs {
    std::string family;
    std::size_t n = 0;
    std::size_t a = 0;
    std::size_t b = 0;
    std::string file;
    OutputOptions output;
};

int cmd_kappa(const KappaArgs& args, CLI::App* sub, std::ostream& out) {
    const bool from_family = sub->count("--family") > 0;
    const bool from_file = sub->count("--file") > 0;
    if (from_family == from_file) throw UsageError("kappa: give exactly one of --family or --file");

    Multigraph graph;
    std::vector<std::pair<std::string, std::string>> params;
    if (from_file) {
        graph = parse_edge_list(read_file(args.file));
        params = {{"file", args.file}};
    } else if (args.family == "theta") {
        if (sub->count("--n") == 0) throw UsageError("kappa: --family theta needs --n");
        graph = theta(args.n);
        params = {{"family", "theta"}, {"n", std::to_string(args.n)}};
    } else if (args.family == "b") {
        if (sub->count("--a") == 0 || sub->count("--b") == 0) throw UsageError("kappa: --family b needs --a and --b");
        graph = b_graph(args.a, args.b);
        params = {{"family", "b"}, {"a", std::to_string(args.a)}, {"b", std::to_string(args.b)}};
    } else {
        if (sub->count("--n") == 0) throw UsageError("kappa: --family hypercube needs --n");
        if (args.n > 0 && args.n < 64) require_vertex_budget(std::size_t{1} << args.n, "hypercube");
        graph = hypercube(args.n);
        params = {{"family", "hypercube"}, {"n", std::to_string(args.n)}};
    }
    require_vertex_budget(graph.vertex_count(), "graph");

    const TreeCount count = kappa(graph);
    if (!args.output.json_to_stdout()) out << count.str() << '\n';
    if (args.output.json_requested()) {
        Json document;
        document["run"] = "kappa";
        document["params"] = params_json(params);
        document["kappa"] = count.str();
        if (!args.output.deterministic) document["generated_at"] = utc_timestamp();
        emit_json(document, args.output, out);
    }
    return exit_ok;
}

}  // namespace

std::string report_json(const VerificationReport& report, bool deterministic) {
    Json document;
    document["run"] = report.run;
    document["params"] = params_json(report.params);
    document["pass"] = report.passed();

    Json kappa_legs = Json::object();
    if (report.kappa_direct) kappa_legs["direct"] = report.kappa_direct->str();
    if (report.kappa_eq1) kappa_legs["eq1"] = report.kappa_eq1->str();
    if (report.kappa_characters) kappa_legs["characters"] = report.kappa_characters->str();
    if (report.kappa_closed) kappa_legs["closed"] = report.kappa_closed->str();
    document["kappa"] = kappa_legs;
    if (report.quotient) document["quotient"] = to_decimal(*report.quotient);
    if (!report.values.empty()) {
        Json values = Json::object();
        for (const auto& [name, value] : report.values) values[name] = to_decimal(value);
        document["values"] = values;
    }

    Json census = Json::array();
    for (const CensusRow& row : report.census)
        census.push_back({{"a", std::to_string(row.type)},
                          {"multiplicity", to_decimal(row.multiplicity)},
                          {"kappa", row.kappa.str()}});
    document["census"] = census;

    Json checks = Json::array();
    for (const Check& check : report.checks)
        checks.push_back({{"name", check.name}, {"pass", check.pass}, {"lhs", check.lhs}, {"rhs", check.rhs}});
    document["checks"] = checks;
    document["notes"] = report.notes;
    if (!deterministic) document["generated_at"] = utc_timestamp();
    return document.dump(2);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const ClosedForms& closed) {
    CLI::App app{"Exact spanning-tree counts for graph covers over (Z/2Z)^m", "covertrees"};
    app.require_subcommand(1);

    KappaArgs kappa_args;
    CLI::App* kappa_cmd = app.add_subcommand("kappa", "Count spanning trees of one graph");
    kappa_cmd->add_option("--family", kappa_args.family, "Graph family")
        ->check(CLI::IsMember({"theta", "b", "hypercube"}));
    kappa_cmd->add_option("--n", kappa_args.n, "Family size parameter (theta, hypercube)");
    kappa_cmd->add_option("--a", kappa_args.a, "B_{a,b}: straight edge multiplicity");
    kappa_cmd->add_option("--b", kappa_args.b, "B_{a,b}: crossed edge multiplicity");
    kappa_cmd->add_option("--file", kappa_args.file, "Edge-list file")->check(CLI::ExistingFile);
    add_output_options(kappa_cmd, kappa_args.output);

    std::size_t cube_n = 0;
    bool skip_direct = false;
    OutputOptions cube_output;
    CLI::App* cube_cmd = app.add_subcommand("cube-verify", "Verify the n-cube tree count four ways");
    cube_cmd->add_option("--n", cube_n, "Cube dimension")->required();
    cube_cmd->add_flag("--skip-direct", skip_direct, "Skip Matrix-Tree on the cube itself (needed for n > 8)");
    add_output_options(cube_cmd, cube_output);

    std::size_t census_n = 0;
    OutputOptions census_output;
    CLI::App* census_cmd = app.add_subcommand("census", "Classify the intermediate double covers of the n-cube");
    census_cmd->add_option("--n", census_n, "Cube dimension")->required();
    add_output_options(census_cmd, census_output);

    std::string eq1_file;
    OutputOptions eq1_output;
    CLI::App* eq1_cmd = app.add_subcommand("eq1-verify", "Check the (Z/2Z)^m product formula on a voltage graph");
    eq1_cmd->add_option("--file", eq1_file, "Voltage-graph file")->required()->check(CLI::ExistingFile);
    add_output_options(eq1_cmd, eq1_output);

    std::string lvalue_file;
    std::string chi_text;
    OutputOptions lvalue_output;
    CLI::App* lvalue_cmd = app.add_subcommand("lvalue", "L-function special value at u=1 for one character");
    lvalue_cmd->add_option("--file", lvalue_file, "Voltage-graph file")->required()->check(CLI::ExistingFile);
    lvalue_cmd->add_option("--chi", chi_text, "Character mask as an m-character binary string")->required();
    add_output_options(lvalue_cmd, lvalue_output);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "covertrees: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (kappa_cmd->parsed()) return cmd_kappa(kappa_args, kappa_cmd, out);

        if (cube_cmd->parsed()) {
            if (!skip_direct && cube_n >= 1 && cube_n <= max_direct_cube_dimension)
                require_vertex_budget(std::size_t{1} << cube_n, "hypercube");
            CubeOptions options;
            options.skip_direct = skip_direct;
            options.closed = closed;
            return finish_report(verify_cube(cube_n, options), cube_output, out);
        }

        if (census_cmd->parsed()) return finish_report(census(census_n, closed), census_output, out);

        if (eq1_cmd->parsed()) {
            const VoltageGraph vg = parse_voltage_graph(read_file(eq1_file));
            require_vertex_budget(vg.base().vertex_count() << vg.rank(), "derived graph");
            VerificationReport report = verify_eq1(vg, closed);
            VerificationReport divisibility = verify_divisibility(vg);
            report.quotient = divisibility.quotient;
            for (Check& check : divisibility.checks) report.checks.push_back(std::move(check));
            return finish_report(report, eq1_output, out);
        }

        if (lvalue_cmd->parsed()) {
            const VoltageGraph vg = parse_voltage_graph(read_file(lvalue_file));
            const auto mask = parse_group_element(chi_text, vg.rank());
            if (!mask)
                throw UsageError("--chi must be a " + std::to_string(vg.rank()) + "-character binary string");
            require_vertex_budget(2 * vg.base().vertex_count(), "double cover");
            return finish_report(verify_l_value(vg, Character(*mask)), lvalue_output, out);
        }
    } catch (const std::exception& e) {
        err << "covertrees: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace covertrees::cli
