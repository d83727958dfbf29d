#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncgraph/document.hpp"
#include "ncgraph/graphs.hpp"
#include "ncgraph/theta.hpp"

namespace ncgraph::analyze {

struct Options {
    theta::SolverConfig solver;
    bool two_copy = false;  // also compute sqrt(alpha(G boxtimes G))
};

// Optical simulation attached to the bunching builtins.
struct SimulationSection {
    std::vector<std::pair<std::string, double>> event_probabilities;
    double sum = 0.0;
    std::optional<Rational> reference_bound;  // the bound the experiment claims to test
    std::string note;
};

struct KcbsRealizationSection {
    double sum = 0.0;
    std::vector<double> terms;
    double max_consecutive_overlap = 0.0;
};

// Everything the bounds pipeline produces for one inequality.
struct BoundsReport {
    std::string scenario_name;
    scenario::RequirementReport requirements;

    int vertex_count = 0;
    std::vector<std::string> vertex_labels;
    std::vector<std::pair<int, int>> exclusivity_edges;

    Rational nchv_bound;                 // weighted independence number, exact
    std::vector<int> nchv_witness;
    double qm_upper = 0.0;               // weighted Lovasz number
    double qm_gap = 0.0;
    long long qm_iterations = 0;
    Rational single_copy_e_bound;        // fractional packing value, exact
    std::vector<Rational> packing_probabilities;
    std::optional<double> two_copy_e_bound;

    std::optional<Rational> claimed_nchv_bound;
    std::optional<double> claimed_qm_bound;

    bool valid_contextuality_test = false;
    std::vector<std::string> verdicts;

    std::optional<SimulationSection> simulation;
    std::optional<KcbsRealizationSection> realization;
};

// Pipeline: exclusivity graph -> independence number -> Lovasz theta ->
// fractional packing -> optional two-copy bound -> requirement check.
BoundsReport run_analysis(const document::ScenarioDocument& doc, const Options& options = {});

// Built-in scenarios. Valid names: kcbs, specker, bunching-kcbs,
// bunching-specker.
document::ScenarioDocument builtin_document(const std::string& name);
BoundsReport run_builtin(const std::string& name, const Options& options = {});

nlohmann::ordered_json to_json(const BoundsReport& report);
std::string to_text(const BoundsReport& report);

}  // namespace ncgraph::analyze
