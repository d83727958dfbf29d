#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncgraph/scenario.hpp"

namespace ncgraph::document {

// One experiment description: the scenario, its event pool, and the
// inequality under analysis.
struct ScenarioDocument {
    std::string name;
    scenario::CompatibilityScenario scenario;
    std::vector<scenario::Event> events;
    scenario::Inequality inequality;
};

struct ParseIssue {
    std::string path;     // JSON field path, e.g. "events[2].assignment.B"
    std::string message;
    int line = 0;         // 1-based source line for syntax errors, 0 otherwise
};

// Every validation error is collected, not just the first. A document is
// produced only when there are no errors. Events whose assignment domain sits
// in no declared context are legal input (the defective arrangements need
// them) and surface as warnings.
struct ParseResult {
    std::optional<ScenarioDocument> document;
    std::vector<ParseIssue> errors;
    std::vector<ParseIssue> warnings;

    bool ok() const { return document.has_value(); }
};

// Parses the JSON scenario format (see README for the grammar).
ParseResult parse_scenario(const std::string& text, const std::string& name = "scenario");

ParseResult parse_scenario_file(const std::string& path);

}  // namespace ncgraph::document
