#include "ncgraph/analyze.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "ncgraph/errors.hpp"
#include "ncgraph/optics.hpp"

namespace ncgraph::analyze {

using scenario::Event;

namespace {

bool unit_coefficients(const scenario::Inequality& ineq) {
    for (const auto& term : ineq.terms)
        if (term.coefficient != 1) return false;
    return true;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

BoundsReport run_analysis(const document::ScenarioDocument& doc, const Options& options) {
    if (doc.inequality.terms.empty()) throw ScenarioError("inequality has no terms");

    BoundsReport report;
    report.scenario_name = doc.name;

    std::vector<Event> events;
    std::vector<Rational> weights;
    for (const auto& term : doc.inequality.terms) {
        events.push_back(term.event);
        weights.push_back(term.coefficient);
        report.vertex_labels.push_back(scenario::describe(term.event));
    }

    auto graph = scenario::derive_exclusivity_graph(doc.scenario, events);
    const bool unweighted = unit_coefficients(doc.inequality);
    if (!unweighted) graph.weights = weights;
    report.vertex_count = graph.n;
    report.exclusivity_edges = graph.edges;

    const auto alpha = graphs::independence_number(graph);
    report.nchv_bound = alpha.value;
    report.nchv_witness = alpha.witness;

    const auto th = theta::lovasz_theta(graph, options.solver);
    report.qm_upper = th.value;
    report.qm_gap = th.dual_gap;
    report.qm_iterations = th.iterations;

    const auto packing = graphs::fractional_packing(graph);
    report.single_copy_e_bound = packing.value;
    report.packing_probabilities = packing.vertex_probabilities;

    if (options.two_copy && unweighted)
        report.two_copy_e_bound = graphs::two_copy_e_bound(graph);

    report.requirements = scenario::check_requirements(doc.scenario, doc.inequality);
    report.claimed_nchv_bound = doc.inequality.claimed_nchv_bound;
    report.claimed_qm_bound = doc.inequality.claimed_qm_bound;

    report.valid_contextuality_test = report.requirements.all_pass();
    if (report.valid_contextuality_test) {
        report.verdicts.push_back(
            "all three requirements pass: violating the NCHV bound is meaningful evidence of "
            "contextuality");
    } else {
        std::vector<std::string> failed;
        if (!report.requirements.same_state.pass) failed.push_back("(i) same preparation");
        if (!report.requirements.compatible_tests_only.pass)
            failed.push_back("(ii) events inside declared contexts");
        if (!report.requirements.tests_in_multiple_contexts.pass)
            failed.push_back("(iii) each test in >= 2 contexts");
        report.verdicts.push_back("not a contextuality test: fails " + join(failed, ", ") +
                                  "; comparison with any NC-inequality bound is meaningless");
    }

    if (report.claimed_nchv_bound) {
        if (*report.claimed_nchv_bound == report.nchv_bound)
            report.verdicts.push_back("claimed NCHV bound " + to_string(report.nchv_bound) +
                                      " matches the independence number");
        else
            report.verdicts.push_back(
                "claimed NCHV bound " + to_string(*report.claimed_nchv_bound) +
                " differs from the independence number " + to_string(report.nchv_bound) +
                " of the derived exclusivity graph");
    }
    if (report.claimed_qm_bound) {
        std::ostringstream s;
        s.precision(10);
        if (std::abs(*report.claimed_qm_bound - report.qm_upper) <= report.qm_gap + 1e-6) {
            s << "claimed QM bound " << *report.claimed_qm_bound
              << " is consistent with the Lovasz number " << report.qm_upper;
        } else {
            s << "claimed QM bound " << *report.claimed_qm_bound << " deviates from the Lovasz number "
              << report.qm_upper << " (certified gap " << report.qm_gap << ")";
        }
        report.verdicts.push_back(s.str());
    }
    return report;
}

document::ScenarioDocument builtin_document(const std::string& name) {
    using scenario::CompatibilityScenario;
    using scenario::Context;
    using scenario::Test;
    document::ScenarioDocument doc;
    doc.name = name;

    const std::vector<std::string> pm = {"+1", "-1"};
    const std::vector<std::string> click = {"click", "no-click"};

    if (name == "kcbs") {
        const std::vector<std::string> ids = {"A", "B", "C", "D", "E"};
        std::vector<Test> tests;
        std::vector<Context> contexts;
        for (int i = 0; i < 5; ++i) {
            tests.push_back({ids[i], pm});
            contexts.push_back({ids[i], ids[(i + 1) % 5]});
        }
        doc.scenario = CompatibilityScenario(tests, contexts, {"rho"});
        for (int i = 0; i < 5; ++i) {
            Event e{"rho", {{ids[i], "+1"}, {ids[(i + 1) % 5], "-1"}}};
            doc.events.push_back(e);
            doc.inequality.terms.push_back({Rational(1), e});
        }
        doc.inequality.claimed_nchv_bound = Rational(2);
        doc.inequality.claimed_qm_bound = std::sqrt(5.0);
    } else if (name == "specker") {
        const std::vector<std::string> ids = {"A", "B", "C"};
        std::vector<Test> tests;
        std::vector<Context> contexts;
        for (int i = 0; i < 3; ++i) {
            tests.push_back({ids[i], pm});
            contexts.push_back({ids[i], ids[(i + 1) % 3]});
        }
        doc.scenario = CompatibilityScenario(tests, contexts, {"rho"});
        for (int i = 0; i < 3; ++i) {
            Event e{"rho", {{ids[i], "+1"}, {ids[(i + 1) % 3], "-1"}}};
            doc.events.push_back(e);
            doc.inequality.terms.push_back({Rational(1), e});
        }
        doc.inequality.claimed_nchv_bound = Rational(1);
        doc.inequality.claimed_qm_bound = 1.0;
    } else if (name == "bunching-kcbs" || name == "bunching-specker") {
        const auto specs = (name == "bunching-kcbs") ? optics::bunching_kcbs_specs()
                                                     : optics::bunching_specker_specs();
        // Each beam-splitter setting is physically its own detector test; the
        // arrangements share no contexts and use a distinct preparation per
        // event, which is exactly what the requirement checker flags.
        std::vector<Test> tests;
        std::vector<std::string> preps;
        for (std::size_t i = 0; i < specs.size(); ++i) {
            tests.push_back({"D" + std::to_string(i), click});
            preps.push_back(specs[i].label);
        }
        doc.scenario = CompatibilityScenario(tests, {}, preps);
        for (std::size_t i = 0; i < specs.size(); ++i) {
            Event e{specs[i].label,
                    {{"D" + std::to_string(i), specs[i].predicate_clicks ? "click" : "no-click"}}};
            doc.events.push_back(e);
            doc.inequality.terms.push_back({Rational(1), e});
        }
        if (name == "bunching-kcbs") {
            doc.inequality.claimed_nchv_bound = Rational(2);
            doc.inequality.claimed_qm_bound = std::sqrt(5.0);
        } else {
            doc.inequality.claimed_nchv_bound = Rational(1);
            doc.inequality.claimed_qm_bound = 1.0;
        }
    } else {
        throw ScenarioError("unknown builtin '" + name +
                            "' (expected kcbs, specker, bunching-kcbs or bunching-specker)");
    }
    return doc;
}

BoundsReport run_builtin(const std::string& name, const Options& options) {
    const auto doc = builtin_document(name);
    BoundsReport report = run_analysis(doc, options);

    if (name == "bunching-kcbs" || name == "bunching-specker") {
        const auto specs = (name == "bunching-kcbs") ? optics::bunching_kcbs_specs()
                                                     : optics::bunching_specker_specs();
        SimulationSection sim;
        std::map<scenario::Event, double> probabilities;
        for (std::size_t i = 0; i < specs.size(); ++i) {
            const double p = optics::click_probability(specs[i]);
            sim.event_probabilities.emplace_back(specs[i].label, p);
            probabilities[doc.events[i]] = p;
        }
        sim.sum = scenario::evaluate_inequality(doc.inequality, probabilities);
        sim.reference_bound = doc.inequality.claimed_nchv_bound;
        std::ostringstream note;
        note.precision(10);
        note << "simulated sum " << sim.sum << " vs claimed NCHV bound "
             << to_string(*sim.reference_bound);
        if (!report.valid_contextuality_test)
            note << ": requirements fail; comparison meaningless";
        sim.note = note.str();
        report.simulation = std::move(sim);
    } else if (name == "kcbs") {
        const auto real = theta::kcbs_realization_check();
        KcbsRealizationSection section;
        section.sum = real.sum;
        section.terms.assign(real.term_probabilities, real.term_probabilities + 5);
        section.max_consecutive_overlap = real.max_consecutive_overlap;
        report.realization = section;
    }
    return report;
}

nlohmann::ordered_json to_json(const BoundsReport& report) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["scenario"] = report.scenario_name;

    auto check = [](const scenario::RequirementCheck& c) {
        ordered_json out;
        out["pass"] = c.pass;
        out["witnesses"] = c.witnesses;
        return out;
    };
    j["requirements"]["same_state"] = check(report.requirements.same_state);
    j["requirements"]["compatible_tests_only"] = check(report.requirements.compatible_tests_only);
    j["requirements"]["tests_in_multiple_contexts"] =
        check(report.requirements.tests_in_multiple_contexts);

    j["exclusivity"]["vertices"] = report.vertex_count;
    j["exclusivity"]["labels"] = report.vertex_labels;
    auto edges = ordered_json::array();
    for (const auto& [a, b] : report.exclusivity_edges) edges.push_back({a, b});
    j["exclusivity"]["edges"] = edges;

    j["bounds"]["nchv"]["value"] = to_string(report.nchv_bound);
    j["bounds"]["nchv"]["witness"] = report.nchv_witness;
    j["bounds"]["qm_upper"]["value"] = report.qm_upper;
    j["bounds"]["qm_upper"]["dual_gap"] = report.qm_gap;
    j["bounds"]["qm_upper"]["iterations"] = report.qm_iterations;
    j["bounds"]["single_copy_e"]["value"] = to_string(report.single_copy_e_bound);
    auto probs = ordered_json::array();
    for (const auto& p : report.packing_probabilities) probs.push_back(to_string(p));
    j["bounds"]["single_copy_e"]["vertex_probabilities"] = probs;
    if (report.two_copy_e_bound) j["bounds"]["two_copy_e"]["value"] = *report.two_copy_e_bound;

    if (report.claimed_nchv_bound)
        j["claims"]["nchv_bound"] = to_string(*report.claimed_nchv_bound);
    if (report.claimed_qm_bound) j["claims"]["qm_bound"] = *report.claimed_qm_bound;

    j["valid_contextuality_test"] = report.valid_contextuality_test;
    j["verdicts"] = report.verdicts;

    if (report.simulation) {
        auto sim = ordered_json::object();
        auto ev = ordered_json::array();
        for (const auto& [label, p] : report.simulation->event_probabilities) {
            ordered_json e;
            e["label"] = label;
            e["probability"] = p;
            ev.push_back(e);
        }
        sim["events"] = ev;
        sim["sum"] = report.simulation->sum;
        if (report.simulation->reference_bound)
            sim["reference_bound"] = to_string(*report.simulation->reference_bound);
        sim["note"] = report.simulation->note;
        j["simulation"] = sim;
    }
    if (report.realization) {
        auto r = ordered_json::object();
        r["sum"] = report.realization->sum;
        r["terms"] = report.realization->terms;
        r["max_consecutive_overlap"] = report.realization->max_consecutive_overlap;
        j["kcbs_realization"] = r;
    }
    return j;
}

std::string to_text(const BoundsReport& report) {
    std::ostringstream out;
    out << "scenario: " << report.scenario_name << "\n";
    out << "exclusivity graph: " << report.vertex_count << " vertices, "
        << report.exclusivity_edges.size() << " edges\n";
    for (std::size_t i = 0; i < report.vertex_labels.size(); ++i)
        out << "  [" << i << "] " << report.vertex_labels[i] << "\n";
    if (!report.exclusivity_edges.empty()) {
        out << "  edges:";
        for (const auto& [a, b] : report.exclusivity_edges) out << " (" << a << "," << b << ")";
        out << "\n";
    }

    auto req = [&](const char* label, const scenario::RequirementCheck& c) {
        out << "  " << label << ": " << (c.pass ? "pass" : "FAIL");
        if (!c.pass) out << "  [witnesses: " << join(c.witnesses, "; ") << "]";
        out << "\n";
    };
    out << "requirements:\n";
    req("(i)   same preparation          ", report.requirements.same_state);
    req("(ii)  events inside contexts    ", report.requirements.compatible_tests_only);
    req("(iii) tests in >= 2 contexts    ", report.requirements.tests_in_multiple_contexts);

    out << "bounds:\n";
    out << "  NCHV (independence number)   = " << to_string(report.nchv_bound) << "   witness {";
    for (std::size_t i = 0; i < report.nchv_witness.size(); ++i)
        out << (i ? "," : "") << report.nchv_witness[i];
    out << "}\n";
    out.precision(10);
    out << "  QM upper (Lovasz number)     = " << report.qm_upper << "  (gap "
        << report.qm_gap << ", " << report.qm_iterations << " iterations)\n";
    out << "  single-copy E (frac packing) = " << to_string(report.single_copy_e_bound) << "\n";
    if (report.two_copy_e_bound)
        out << "  two-copy E bound             = " << *report.two_copy_e_bound << "\n";
    if (report.claimed_nchv_bound || report.claimed_qm_bound) {
        out << "claims:";
        if (report.claimed_nchv_bound)
            out << " NCHV <= " << to_string(*report.claimed_nchv_bound);
        if (report.claimed_qm_bound) out << "  QM <= " << *report.claimed_qm_bound;
        out << "\n";
    }

    if (report.simulation) {
        out << "simulation:\n";
        for (const auto& [label, p] : report.simulation->event_probabilities)
            out << "  P(" << label << ") = " << p << "\n";
        out << "  sum = " << report.simulation->sum << "\n";
        out << "  " << report.simulation->note << "\n";
    }
    if (report.realization) {
        out << "kcbs realization: sum = " << report.realization->sum
            << ", max consecutive overlap = " << report.realization->max_consecutive_overlap
            << "\n";
    }

    out << "verdicts:\n";
    for (const auto& v : report.verdicts) out << "  - " << v << "\n";
    return out.str();
}

}  // namespace ncgraph::analyze
