#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncgraph/graph.hpp"
#include "ncgraph/rational.hpp"

namespace ncgraph::scenario {

// A repeatable test with a finite outcome set. Outcome labels are opaque
// symbols; no arithmetic is ever done on them.
struct Test {
    std::string id;
    std::vector<std::string> outcomes;
};

// A set of mutually compatible tests measured together.
using Context = std::set<std::string>;

// A joint outcome assignment under a fixed preparation. The assignment maps
// test ids to outcome labels; equality is structural.
struct Event {
    std::string preparation;
    std::map<std::string, std::string> assignment;

    bool operator==(const Event&) const = default;
    auto operator<=>(const Event&) const = default;
};

struct InequalityTerm {
    Rational coefficient;  // nonnegative
    Event event;
};

struct Inequality {
    std::vector<InequalityTerm> terms;
    std::optional<Rational> claimed_nchv_bound;
    std::optional<double> claimed_qm_bound;
};

// Tests, contexts and preparations of one experimental arrangement. Events
// whose assignment domain lies in no declared context are representable (the
// defective arrangements need them) and are flagged by the requirement
// checker rather than rejected here.
class CompatibilityScenario {
  public:
    CompatibilityScenario() = default;
    CompatibilityScenario(std::vector<Test> tests, std::vector<Context> contexts,
                          std::vector<std::string> preparations);

    const std::vector<Test>& tests() const { return tests_; }
    const std::vector<Context>& contexts() const { return contexts_; }
    const std::vector<std::string>& preparations() const { return preparations_; }

    const Test* find_test(const std::string& id) const;
    bool has_preparation(const std::string& id) const;

    // Throws ScenarioError if the event references unknown tests, unknown
    // outcomes, an unknown preparation, or has an empty assignment.
    void require_valid(const Event& e) const;

    // True iff the assignment domain is a subset of some declared context.
    bool domain_in_some_context(const Event& e) const;

  private:
    std::vector<Test> tests_;
    std::vector<Context> contexts_;
    std::vector<std::string> preparations_;
};

enum class Exclusivity { Exclusive, NotExclusive };

// The experimentally decidable criterion: exclusive iff both events have the
// same preparation and some shared test is assigned different outcomes.
// Nothing model-dependent is admitted.
Exclusivity decide_exclusivity(const CompatibilityScenario& sc, const Event& e1, const Event& e2);

// Vertex i is events[i]; edges are the Exclusive pairs.
ExclusivityGraph derive_exclusivity_graph(const CompatibilityScenario& sc,
                                          const std::vector<Event>& events);

struct RequirementCheck {
    bool pass = true;
    std::vector<std::string> witnesses;  // nonempty whenever pass is false
};

// The three conditions any contextuality experiment must satisfy:
// (i) one common preparation, (ii) each event inside a declared context,
// (iii) each used test in at least two contexts.
struct RequirementReport {
    RequirementCheck same_state;
    RequirementCheck compatible_tests_only;
    RequirementCheck tests_in_multiple_contexts;

    bool all_pass() const {
        return same_state.pass && compatible_tests_only.pass && tests_in_multiple_contexts.pass;
    }
};

RequirementReport check_requirements(const CompatibilityScenario& sc,
                                     const Inequality& inequality);

// Sum of coefficient * P(event); exact over the rationals.
Rational evaluate_inequality(const Inequality& inequality,
                             const std::map<Event, Rational>& probabilities);
double evaluate_inequality(const Inequality& inequality,
                           const std::map<Event, double>& probabilities);

std::string describe(const Event& e);

}  // namespace ncgraph::scenario
