#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ncgraph/analyze.hpp"
#include "ncgraph/document.hpp"
#include "ncgraph/errors.hpp"
#include "ncgraph/optics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitSolverFailure = 3;

struct GlobalFlags {
    double tolerance = 1e-7;
    long long max_iterations = 10000;
    std::uint64_t seed = 0;
    std::string format = "text";
    bool two_copy = false;
};

ncgraph::analyze::Options make_options(const GlobalFlags& flags) {
    ncgraph::analyze::Options opt;
    opt.solver.tolerance = flags.tolerance;
    opt.solver.max_iterations = flags.max_iterations;
    opt.solver.seed = flags.seed;
    opt.two_copy = flags.two_copy;
    return opt;
}

void print_issues(const std::vector<ncgraph::document::ParseIssue>& issues, const char* kind) {
    for (const auto& issue : issues) {
        std::cerr << kind << " at " << issue.path;
        if (issue.line > 0) std::cerr << " (line " << issue.line << ")";
        std::cerr << ": " << issue.message << "\n";
    }
}

int emit_report(const ncgraph::analyze::BoundsReport& report, const std::string& format) {
    if (format == "machine")
        std::cout << ncgraph::analyze::to_json(report).dump(2) << "\n";
    else
        std::cout << ncgraph::analyze::to_text(report);
    return kExitOk;
}

int cmd_analyze(const std::string& file, const GlobalFlags& flags) {
    const auto parsed = ncgraph::document::parse_scenario_file(file);
    print_issues(parsed.warnings, "warning");
    if (!parsed.ok()) {
        print_issues(parsed.errors, "error");
        return kExitInvalidInput;
    }
    return emit_report(ncgraph::analyze::run_analysis(*parsed.document, make_options(flags)),
                       flags.format);
}

int cmd_builtin(const std::string& name, const GlobalFlags& flags) {
    return emit_report(ncgraph::analyze::run_builtin(name, make_options(flags)), flags.format);
}

int cmd_exclusivity(const std::string& file, const GlobalFlags& flags) {
    const auto parsed = ncgraph::document::parse_scenario_file(file);
    print_issues(parsed.warnings, "warning");
    if (!parsed.ok()) {
        print_issues(parsed.errors, "error");
        return kExitInvalidInput;
    }
    const auto& doc = *parsed.document;
    std::vector<ncgraph::scenario::Event> events;
    for (const auto& term : doc.inequality.terms) events.push_back(term.event);
    const auto graph = ncgraph::scenario::derive_exclusivity_graph(doc.scenario, events);

    if (flags.format == "machine") {
        nlohmann::ordered_json j;
        j["scenario"] = doc.name;
        j["vertices"] = graph.n;
        auto labels = nlohmann::ordered_json::array();
        for (const auto& e : events) labels.push_back(ncgraph::scenario::describe(e));
        j["labels"] = labels;
        auto edges = nlohmann::ordered_json::array();
        for (const auto& [a, b] : graph.edges) edges.push_back({a, b});
        j["edges"] = edges;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "scenario: " << doc.name << "\n"
                  << "exclusivity graph: " << graph.n << " vertices, " << graph.edges.size()
                  << " edges\n";
        for (int i = 0; i < graph.n; ++i)
            std::cout << "  [" << i << "] " << ncgraph::scenario::describe(events[i]) << "\n";
        for (const auto& [a, b] : graph.edges)
            std::cout << "  edge (" << a << "," << b << ")\n";
    }
    return kExitOk;
}

int cmd_simulate(const std::string& name, const GlobalFlags& flags) {
    std::vector<ncgraph::optics::BunchingEventSpec> specs;
    if (name == "bunching-kcbs")
        specs = ncgraph::optics::bunching_kcbs_specs();
    else if (name == "bunching-specker")
        specs = ncgraph::optics::bunching_specker_specs();
    else
        throw ncgraph::ScenarioError("unknown simulation '" + name +
                                     "' (expected bunching-kcbs or bunching-specker)");

    double sum = 0.0;
    nlohmann::ordered_json events = nlohmann::ordered_json::array();
    for (const auto& spec : specs) {
        const double p = ncgraph::optics::click_probability(spec);
        sum += p;
        if (flags.format == "machine") {
            nlohmann::ordered_json e;
            e["label"] = spec.label;
            e["predicate"] = spec.predicate_clicks ? "clicks" : "no-click";
            e["probability"] = p;
            events.push_back(e);
        } else {
            std::cout << "P(" << spec.label << ", detector "
                      << (spec.predicate_clicks ? "clicks" : "does not click") << ") = " << p
                      << "\n";
        }
    }
    if (flags.format == "machine") {
        nlohmann::ordered_json j;
        j["experiment"] = name;
        j["events"] = events;
        j["sum"] = sum;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "sum = " << sum << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exclusivity-graph bounds for noncontextuality inequalities, with a "
                 "linear-optics simulator for the bosonic-bunching arrangements"};
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_option("--tolerance", flags.tolerance, "SDP solver certified-gap tolerance")
        ->capture_default_str();
    app.add_option("--max-iterations", flags.max_iterations, "SDP solver iteration cap")
        ->capture_default_str();
    app.add_option("--seed", flags.seed, "seed for randomized initialization (reserved)")
        ->capture_default_str();
    app.add_option("--format", flags.format, "output format: text or machine")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();
    app.add_flag("--two-copy", flags.two_copy,
                 "also compute the two-copy exclusivity-principle bound (strong product)");

    std::string analyze_file;
    auto* analyze_cmd = app.add_subcommand("analyze", "run the bounds pipeline on a scenario file");
    analyze_cmd->fallthrough();
    analyze_cmd->add_option("file", analyze_file, "scenario JSON file")->required();

    std::string builtin_name;
    auto* builtin_cmd = app.add_subcommand(
        "builtin", "analyze a built-in scenario (kcbs, specker, bunching-kcbs, bunching-specker)");
    builtin_cmd->fallthrough();
    builtin_cmd->add_option("name", builtin_name, "builtin name")->required();

    std::string exclusivity_file;
    auto* exclusivity_cmd =
        app.add_subcommand("exclusivity", "derive only the exclusivity graph of a scenario file");
    exclusivity_cmd->fallthrough();
    exclusivity_cmd->add_option("file", exclusivity_file, "scenario JSON file")->required();

    std::string simulate_name;
    auto* simulate_cmd = app.add_subcommand(
        "simulate", "run only the optical simulation (bunching-kcbs, bunching-specker)");
    simulate_cmd->fallthrough();
    simulate_cmd->add_option("name", simulate_name, "experiment name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(analyze_file, flags);
        if (builtin_cmd->parsed()) return cmd_builtin(builtin_name, flags);
        if (exclusivity_cmd->parsed()) return cmd_exclusivity(exclusivity_file, flags);
        if (simulate_cmd->parsed()) return cmd_simulate(simulate_name, flags);
    } catch (const ncgraph::CapacityError& e) {
        std::cerr << "error (capacity, stage limit " << e.limit() << "): " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const ncgraph::ConvergenceError& e) {
        std::cerr << "error (convergence): " << e.what() << "\n"
                  << "best value " << e.best_value() << " with certified gap " << e.best_gap()
                  << "\n";
        return kExitSolverFailure;
    } catch (const ncgraph::ScenarioError& e) {
        std::cerr << "error (input): " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const ncgraph::DomainError& e) {
        std::cerr << "error (domain): " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailure;
    }
    return kExitOk;
}
