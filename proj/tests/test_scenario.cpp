#include <doctest.h>

#include <random>

#include "ncgraph/errors.hpp"
#include "ncgraph/scenario.hpp"

using namespace ncgraph;
using namespace ncgraph::scenario;

namespace {

// Pentagon arrangement: tests A..E with +/-1 outcomes, the five adjacent-pair
// contexts, one preparation and the five standard events.
struct Pentagon {
    CompatibilityScenario sc;
    std::vector<Event> events;

    Pentagon() {
        const std::vector<std::string> ids = {"A", "B", "C", "D", "E"};
        std::vector<Test> tests;
        std::vector<Context> contexts;
        for (int i = 0; i < 5; ++i) {
            tests.push_back({ids[i], {"+1", "-1"}});
            contexts.push_back({ids[i], ids[(i + 1) % 5]});
        }
        sc = CompatibilityScenario(tests, contexts, {"rho"});
        for (int i = 0; i < 5; ++i)
            events.push_back({"rho", {{ids[i], "+1"}, {ids[(i + 1) % 5], "-1"}}});
    }

    Inequality unit_inequality() const {
        Inequality ineq;
        for (const auto& e : events) ineq.terms.push_back({Rational(1), e});
        return ineq;
    }
};

CompatibilityScenario bunching_scenario() {
    std::vector<Test> tests;
    std::vector<std::string> preps = {"one-photon-A", "two-photon-AB", "one-photon-B",
                                      "two-photon-BC", "one-photon-C"};
    for (int i = 0; i < 5; ++i)
        tests.push_back({"D" + std::to_string(i), {"click", "no-click"}});
    return CompatibilityScenario(tests, {}, preps);
}

std::vector<Event> bunching_events() {
    return {
        {"one-photon-A", {{"D0", "click"}}},    {"two-photon-AB", {{"D1", "no-click"}}},
        {"one-photon-B", {{"D2", "click"}}},    {"two-photon-BC", {{"D3", "no-click"}}},
        {"one-photon-C", {{"D4", "click"}}},
    };
}

}  // namespace

TEST_CASE("exclusivity is decided through a shared test with differing outcomes") {
    Pentagon p;
    // (rho; B=-1, A=1) vs (rho; B=1, C=-1): B differs, A/C compatibility is irrelevant
    Event e1{"rho", {{"B", "-1"}, {"A", "+1"}}};
    Event e2{"rho", {{"B", "+1"}, {"C", "-1"}}};
    CHECK(decide_exclusivity(p.sc, e1, e2) == Exclusivity::Exclusive);

    // identical events are never exclusive
    Event e3{"rho", {{"A", "+1"}}};
    CHECK(decide_exclusivity(p.sc, e3, e3) == Exclusivity::NotExclusive);

    // shared test with the SAME outcome certifies nothing
    Event e4{"rho", {{"B", "+1"}, {"A", "+1"}}};
    Event e5{"rho", {{"B", "+1"}, {"C", "-1"}}};
    CHECK(decide_exclusivity(p.sc, e4, e5) == Exclusivity::NotExclusive);
}

TEST_CASE("events on different preparations are never exclusive") {
    auto sc = bunching_scenario();
    Event one_photon{"one-photon-A", {{"D0", "click"}}};
    Event two_photon{"two-photon-AB", {{"D1", "no-click"}}};
    CHECK(decide_exclusivity(sc, one_photon, two_photon) == Exclusivity::NotExclusive);
    // even a shared test with differing outcomes cannot override it
    Event a{"one-photon-A", {{"D0", "click"}}};
    Event b{"two-photon-AB", {{"D0", "no-click"}}};
    CHECK(decide_exclusivity(sc, a, b) == Exclusivity::NotExclusive);
}

TEST_CASE("unknown references are scenario-integrity errors") {
    Pentagon p;
    Event unknown_test{"rho", {{"Z", "+1"}}};
    CHECK_THROWS_AS(decide_exclusivity(p.sc, unknown_test, p.events[0]), ScenarioError);
    Event unknown_outcome{"rho", {{"A", "2"}}};
    CHECK_THROWS_AS(decide_exclusivity(p.sc, unknown_outcome, p.events[0]), ScenarioError);
    Event unknown_prep{"sigma", {{"A", "+1"}}};
    CHECK_THROWS_AS(decide_exclusivity(p.sc, unknown_prep, p.events[0]), ScenarioError);
    Event empty{"rho", {}};
    CHECK_THROWS_AS(decide_exclusivity(p.sc, empty, p.events[0]), ScenarioError);
}

TEST_CASE("exclusivity is symmetric and irreflexive on random event pairs") {
    Pentagon p;
    std::mt19937_64 rng(7);
    const std::vector<std::string> ids = {"A", "B", "C", "D", "E"};
    auto random_event = [&]() {
        Event e;
        e.preparation = "rho";
        const int k = 1 + static_cast<int>(rng() % 2);
        while (static_cast<int>(e.assignment.size()) < k)
            e.assignment[ids[rng() % 5]] = (rng() % 2) ? "+1" : "-1";
        return e;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const Event a = random_event();
        const Event b = random_event();
        CHECK(decide_exclusivity(p.sc, a, b) == decide_exclusivity(p.sc, b, a));
        CHECK(decide_exclusivity(p.sc, a, a) == Exclusivity::NotExclusive);

        // disjoint domains are never exclusive
        bool disjoint = true;
        for (const auto& [t, _] : a.assignment)
            if (b.assignment.count(t)) disjoint = false;
        if (disjoint) CHECK(decide_exclusivity(p.sc, a, b) == Exclusivity::NotExclusive);
    }
}

TEST_CASE("derived graphs: pentagon, triangle, isolated vertices") {
    Pentagon p;
    const auto pentagon = derive_exclusivity_graph(p.sc, p.events);
    CHECK(pentagon.n == 5);
    CHECK(pentagon.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}});

    // triangle from the three-test cyclic arrangement
    std::vector<Test> tests = {{"A", {"+1", "-1"}}, {"B", {"+1", "-1"}}, {"C", {"+1", "-1"}}};
    std::vector<Context> contexts = {{"A", "B"}, {"B", "C"}, {"C", "A"}};
    CompatibilityScenario tri(tests, contexts, {"rho"});
    std::vector<Event> tri_events = {{"rho", {{"A", "+1"}, {"B", "-1"}}},
                                     {"rho", {{"B", "+1"}, {"C", "-1"}}},
                                     {"rho", {{"C", "+1"}, {"A", "-1"}}}};
    const auto triangle = derive_exclusivity_graph(tri, tri_events);
    CHECK(triangle.n == 3);
    CHECK(triangle.edges.size() == 3);

    // five bunching events with per-event preparations: no edges at all
    const auto isolated = derive_exclusivity_graph(bunching_scenario(), bunching_events());
    CHECK(isolated.n == 5);
    CHECK(isolated.edges.empty());
}

TEST_CASE("duplicate events yield no self-loops") {
    Pentagon p;
    std::vector<Event> twice = {p.events[0], p.events[0], p.events[1]};
    const auto g = derive_exclusivity_graph(p.sc, twice);
    CHECK(g.n == 3);
    // the two copies of event 0 are not exclusive with each other
    CHECK(!g.has_edge(0, 1));
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(1, 2));
}

TEST_CASE("edge count equals the pairwise brute-force count") {
    Pentagon p;
    std::mt19937_64 rng(19);
    const std::vector<std::string> ids = {"A", "B", "C", "D", "E"};
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Event> events;
        const int n = 2 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) {
            Event e;
            e.preparation = "rho";
            const int k = 1 + static_cast<int>(rng() % 2);
            while (static_cast<int>(e.assignment.size()) < k)
                e.assignment[ids[rng() % 5]] = (rng() % 2) ? "+1" : "-1";
            events.push_back(e);
        }
        const auto g = derive_exclusivity_graph(p.sc, events);
        std::size_t expected = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                expected +=
                    decide_exclusivity(p.sc, events[i], events[j]) == Exclusivity::Exclusive;
        CHECK(g.edges.size() == expected);
        CHECK(g.n == n);
    }
}

TEST_CASE("requirement checker on the pentagon arrangement") {
    Pentagon p;
    const auto report = check_requirements(p.sc, p.unit_inequality());
    CHECK(report.same_state.pass);
    CHECK(report.compatible_tests_only.pass);
    CHECK(report.tests_in_multiple_contexts.pass);
    CHECK(report.all_pass());
}

TEST_CASE("requirement checker on the bunching arrangement fails all three") {
    auto sc = bunching_scenario();
    Inequality ineq;
    for (const auto& e : bunching_events()) ineq.terms.push_back({Rational(1), e});
    const auto report = check_requirements(sc, ineq);
    CHECK(!report.same_state.pass);
    CHECK(report.same_state.witnesses.size() == 5);
    CHECK(!report.compatible_tests_only.pass);
    CHECK(!report.compatible_tests_only.witnesses.empty());
    CHECK(!report.tests_in_multiple_contexts.pass);
    CHECK(report.tests_in_multiple_contexts.witnesses.size() == 5);
}

TEST_CASE("a single-context arrangement fails only requirement (iii)") {
    std::vector<Test> tests = {{"A", {"+1", "-1"}}, {"B", {"+1", "-1"}}};
    CompatibilityScenario sc(tests, {{"A", "B"}}, {"rho"});
    Inequality ineq;
    ineq.terms.push_back({Rational(1), Event{"rho", {{"A", "+1"}, {"B", "-1"}}}});
    const auto report = check_requirements(sc, ineq);
    CHECK(report.same_state.pass);
    CHECK(report.compatible_tests_only.pass);
    CHECK(!report.tests_in_multiple_contexts.pass);
    CHECK(report.tests_in_multiple_contexts.witnesses == std::vector<std::string>{"A", "B"});
}

TEST_CASE("evaluate_inequality is exact over the rationals") {
    Pentagon p;
    const auto ineq = p.unit_inequality();
    std::map<Event, Rational> half;
    for (const auto& e : p.events) half[e] = Rational(1, 2);
    CHECK(evaluate_inequality(ineq, half) == Rational(5, 2));

    std::map<Event, Rational> zero;
    for (const auto& e : p.events) zero[e] = Rational(0);
    CHECK(evaluate_inequality(ineq, zero) == Rational(0));

    // three unit-weight events at 1/2 each
    Inequality three;
    for (int i = 0; i < 3; ++i) three.terms.push_back({Rational(1), p.events[i]});
    CHECK(evaluate_inequality(three, half) == Rational(3, 2));
}

TEST_CASE("evaluate_inequality error paths") {
    Pentagon p;
    const auto ineq = p.unit_inequality();
    std::map<Event, Rational> incomplete;
    incomplete[p.events[0]] = Rational(1, 2);
    CHECK_THROWS_AS(evaluate_inequality(ineq, incomplete), ScenarioError);

    std::map<Event, Rational> outside;
    for (const auto& e : p.events) outside[e] = Rational(3, 2);
    CHECK_THROWS_AS(evaluate_inequality(ineq, outside), DomainError);

    std::map<Event, double> negative;
    for (const auto& e : p.events) negative[e] = -0.1;
    CHECK_THROWS_AS(evaluate_inequality(ineq, negative), DomainError);
}

TEST_CASE("scenario construction validates structure") {
    CHECK_THROWS_AS(CompatibilityScenario({{"A", {"+1"}}}, {}, {}), ScenarioError);
    CHECK_THROWS_AS(
        CompatibilityScenario({{"A", {"+1", "-1"}}, {"A", {"+1", "-1"}}}, {}, {}), ScenarioError);
    CHECK_THROWS_AS(CompatibilityScenario({{"A", {"+1", "-1"}}}, {{"B"}}, {}), ScenarioError);
    CHECK_THROWS_AS(CompatibilityScenario({{"A", {"+1", "-1"}}}, {{}}, {}), ScenarioError);
    CHECK_THROWS_AS(CompatibilityScenario({{"A", {"+1", "-1"}}}, {{"A"}, {"A"}}, {}),
                    ScenarioError);
    CHECK_THROWS_AS(CompatibilityScenario({}, {}, {"rho", "rho"}), ScenarioError);
}
