#include "ncgraph/scenario.hpp"

#include <algorithm>

#include "ncgraph/errors.hpp"

namespace ncgraph::scenario {

CompatibilityScenario::CompatibilityScenario(std::vector<Test> tests,
                                             std::vector<Context> contexts,
                                             std::vector<std::string> preparations)
    : tests_(std::move(tests)), contexts_(std::move(contexts)),
      preparations_(std::move(preparations)) {
    std::set<std::string> seen;
    for (const auto& t : tests_) {
        if (t.outcomes.size() < 2)
            throw ScenarioError("test '" + t.id + "' needs at least 2 outcomes");
        if (!seen.insert(t.id).second)
            throw ScenarioError("duplicate test id '" + t.id + "'");
    }
    std::set<Context> cseen;
    for (const auto& ctx : contexts_) {
        if (ctx.empty()) throw ScenarioError("empty context");
        for (const auto& id : ctx)
            if (!find_test(id))
                throw ScenarioError("context references unknown test '" + id + "'");
        if (!cseen.insert(ctx).second) throw ScenarioError("duplicate context");
    }
    std::set<std::string> pseen;
    for (const auto& p : preparations_)
        if (!pseen.insert(p).second)
            throw ScenarioError("duplicate preparation id '" + p + "'");
}

const Test* CompatibilityScenario::find_test(const std::string& id) const {
    for (const auto& t : tests_)
        if (t.id == id) return &t;
    return nullptr;
}

bool CompatibilityScenario::has_preparation(const std::string& id) const {
    return std::find(preparations_.begin(), preparations_.end(), id) != preparations_.end();
}

void CompatibilityScenario::require_valid(const Event& e) const {
    if (e.assignment.empty())
        throw ScenarioError("event with empty assignment");
    if (!has_preparation(e.preparation))
        throw ScenarioError("event references unknown preparation '" + e.preparation + "'");
    for (const auto& [test_id, outcome] : e.assignment) {
        const Test* t = find_test(test_id);
        if (!t) throw ScenarioError("event references unknown test '" + test_id + "'");
        if (std::find(t->outcomes.begin(), t->outcomes.end(), outcome) == t->outcomes.end())
            throw ScenarioError("outcome '" + outcome + "' not in outcome set of test '" +
                                test_id + "'");
    }
}

bool CompatibilityScenario::domain_in_some_context(const Event& e) const {
    for (const auto& ctx : contexts_) {
        bool inside = true;
        for (const auto& [test_id, _] : e.assignment)
            if (!ctx.count(test_id)) {
                inside = false;
                break;
            }
        if (inside) return true;
    }
    return false;
}

Exclusivity decide_exclusivity(const CompatibilityScenario& sc, const Event& e1,
                               const Event& e2) {
    sc.require_valid(e1);
    sc.require_valid(e2);
    if (e1.preparation != e2.preparation) return Exclusivity::NotExclusive;
    // Exclusivity is certified only through a shared test with differing
    // outcomes; that test alone decides it.
    for (const auto& [test_id, outcome] : e1.assignment) {
        const auto it = e2.assignment.find(test_id);
        if (it != e2.assignment.end() && it->second != outcome)
            return Exclusivity::Exclusive;
    }
    return Exclusivity::NotExclusive;
}

ExclusivityGraph derive_exclusivity_graph(const CompatibilityScenario& sc,
                                          const std::vector<Event>& events) {
    const int n = static_cast<int>(events.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (decide_exclusivity(sc, events[i], events[j]) == Exclusivity::Exclusive)
                edges.emplace_back(i, j);
    return ExclusivityGraph(n, std::move(edges));
}

RequirementReport check_requirements(const CompatibilityScenario& sc,
                                     const Inequality& inequality) {
    RequirementReport report;
    if (inequality.terms.empty())
        throw ScenarioError("inequality has no terms");
    for (const auto& term : inequality.terms) sc.require_valid(term.event);

    // (i) all events on one preparation
    std::set<std::string> preps;
    for (const auto& term : inequality.terms) preps.insert(term.event.preparation);
    if (preps.size() > 1) {
        report.same_state.pass = false;
        report.same_state.witnesses.assign(preps.begin(), preps.end());
    }

    // (ii) each event's domain inside a declared context
    for (const auto& term : inequality.terms) {
        if (!sc.domain_in_some_context(term.event)) {
            report.compatible_tests_only.pass = false;
            report.compatible_tests_only.witnesses.push_back(describe(term.event));
        }
    }

    // (iii) each used test in >= 2 distinct contexts
    std::set<std::string> used;
    for (const auto& term : inequality.terms)
        for (const auto& [test_id, _] : term.event.assignment) used.insert(test_id);
    for (const auto& test_id : used) {
        int appearances = 0;
        for (const auto& ctx : sc.contexts()) appearances += ctx.count(test_id) ? 1 : 0;
        if (appearances < 2) {
            report.tests_in_multiple_contexts.pass = false;
            report.tests_in_multiple_contexts.witnesses.push_back(test_id);
        }
    }
    return report;
}

Rational evaluate_inequality(const Inequality& inequality,
                             const std::map<Event, Rational>& probabilities) {
    Rational total(0);
    for (const auto& term : inequality.terms) {
        const auto it = probabilities.find(term.event);
        if (it == probabilities.end())
            throw ScenarioError("incomplete model: no probability for event " +
                                describe(term.event));
        if (it->second < 0 || it->second > 1)
            throw DomainError("probability outside [0,1] for event " + describe(term.event));
        total += term.coefficient * it->second;
    }
    return total;
}

double evaluate_inequality(const Inequality& inequality,
                           const std::map<Event, double>& probabilities) {
    double total = 0.0;
    for (const auto& term : inequality.terms) {
        const auto it = probabilities.find(term.event);
        if (it == probabilities.end())
            throw ScenarioError("incomplete model: no probability for event " +
                                describe(term.event));
        if (it->second < 0.0 || it->second > 1.0)
            throw DomainError("probability outside [0,1] for event " + describe(term.event));
        total += to_double(term.coefficient) * it->second;
    }
    return total;
}

std::string describe(const Event& e) {
    std::string s = "(" + e.preparation + ";";
    bool first = true;
    for (const auto& [test_id, outcome] : e.assignment) {
        s += (first ? " " : ", ") + test_id + "=" + outcome;
        first = false;
    }
    return s + ")";
}

}  // namespace ncgraph::scenario
