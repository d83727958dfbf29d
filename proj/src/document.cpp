#include "ncgraph/document.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ncgraph::document {

using nlohmann::json;

namespace {

struct Collector {
    std::vector<ParseIssue>& errors;
    void add(const std::string& path, const std::string& message) {
        errors.push_back({path, message, 0});
    }
};

int line_of_byte(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

std::optional<Rational> coefficient_from(const json& j) {
    if (j.is_number_unsigned() || j.is_number_integer())
        return Rational(BigInt(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    return std::nullopt;
}

}  // namespace

ParseResult parse_scenario(const std::string& text, const std::string& name) {
    ParseResult result;
    Collector err{result.errors};

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        result.errors.push_back(
            {"$", std::string("JSON syntax error: ") + e.what(), line_of_byte(text, e.byte)});
        return result;
    }
    if (!root.is_object()) {
        err.add("$", "top level must be an object");
        return result;
    }
    for (const char* key : {"tests", "contexts", "preparations", "events", "inequality"})
        if (!root.contains(key)) err.add("$", std::string("missing required field '") + key + "'");
    if (!result.errors.empty()) return result;

    // --- tests ---
    std::vector<scenario::Test> tests;
    std::set<std::string> test_ids;
    if (!root["tests"].is_array()) {
        err.add("tests", "must be an array");
    } else {
        int i = 0;
        for (const auto& jt : root["tests"]) {
            const std::string path = "tests[" + std::to_string(i++) + "]";
            if (!jt.is_object() || !jt.contains("id") || !jt.contains("outcomes") ||
                !jt["id"].is_string() || !jt["outcomes"].is_array()) {
                err.add(path, "each test needs a string 'id' and an array 'outcomes'");
                continue;
            }
            scenario::Test t;
            t.id = jt["id"].get<std::string>();
            std::set<std::string> outcome_set;
            for (const auto& o : jt["outcomes"]) {
                if (!o.is_string()) {
                    err.add(path + ".outcomes", "outcome labels must be strings");
                    continue;
                }
                const auto label = o.get<std::string>();
                if (!outcome_set.insert(label).second)
                    err.add(path + ".outcomes", "duplicate outcome label '" + label + "'");
                t.outcomes.push_back(label);
            }
            if (t.outcomes.size() < 2) err.add(path, "test '" + t.id + "' needs >= 2 outcomes");
            if (!test_ids.insert(t.id).second)
                err.add(path, "duplicate test id '" + t.id + "'");
            else
                tests.push_back(std::move(t));
        }
    }

    // --- contexts ---
    std::vector<scenario::Context> contexts;
    std::set<scenario::Context> context_set;
    if (!root["contexts"].is_array()) {
        err.add("contexts", "must be an array of arrays of test ids");
    } else {
        int i = 0;
        for (const auto& jc : root["contexts"]) {
            const std::string path = "contexts[" + std::to_string(i++) + "]";
            if (!jc.is_array()) {
                err.add(path, "must be an array of test ids");
                continue;
            }
            scenario::Context ctx;
            for (const auto& id : jc) {
                if (!id.is_string()) {
                    err.add(path, "test ids must be strings");
                    continue;
                }
                const auto s = id.get<std::string>();
                if (!test_ids.count(s)) err.add(path, "unknown test id '" + s + "'");
                ctx.insert(s);
            }
            if (ctx.empty()) err.add(path, "context must be nonempty");
            if (!context_set.insert(ctx).second)
                err.add(path, "duplicate context");
            else
                contexts.push_back(std::move(ctx));
        }
    }

    // --- preparations ---
    std::vector<std::string> preparations;
    std::set<std::string> prep_ids;
    if (!root["preparations"].is_array()) {
        err.add("preparations", "must be an array of strings");
    } else {
        int i = 0;
        for (const auto& jp : root["preparations"]) {
            const std::string path = "preparations[" + std::to_string(i++) + "]";
            if (!jp.is_string()) {
                err.add(path, "preparation ids must be strings");
                continue;
            }
            const auto id = jp.get<std::string>();
            if (!prep_ids.insert(id).second)
                err.add(path, "duplicate preparation id '" + id + "'");
            else
                preparations.push_back(id);
        }
    }

    // --- events ---
    std::vector<scenario::Event> events;
    if (!root["events"].is_array()) {
        err.add("events", "must be an array");
    } else {
        int i = 0;
        for (const auto& je : root["events"]) {
            const std::string path = "events[" + std::to_string(i++) + "]";
            if (!je.is_object() || !je.contains("preparation") || !je.contains("assignment") ||
                !je["preparation"].is_string() || !je["assignment"].is_object()) {
                err.add(path, "each event needs a string 'preparation' and an object 'assignment'");
                events.emplace_back();
                continue;
            }
            scenario::Event e;
            e.preparation = je["preparation"].get<std::string>();
            if (!prep_ids.count(e.preparation))
                err.add(path + ".preparation", "unknown preparation '" + e.preparation + "'");
            for (const auto& [test_id, outcome] : je["assignment"].items()) {
                const std::string apath = path + ".assignment." + test_id;
                if (!outcome.is_string()) {
                    err.add(apath, "outcome must be a string");
                    continue;
                }
                const auto label = outcome.get<std::string>();
                if (!test_ids.count(test_id)) {
                    err.add(apath, "unknown test id '" + test_id + "'");
                } else {
                    const auto it = std::find_if(tests.begin(), tests.end(),
                                                 [&](const auto& t) { return t.id == test_id; });
                    if (std::find(it->outcomes.begin(), it->outcomes.end(), label) ==
                        it->outcomes.end())
                        err.add(apath, "outcome '" + label + "' not in outcome set of test '" +
                                           test_id + "'");
                }
                e.assignment[test_id] = label;
            }
            if (e.assignment.empty()) err.add(path + ".assignment", "assignment must be nonempty");
            events.push_back(std::move(e));
        }
    }

    // --- inequality ---
    scenario::Inequality ineq;
    const auto& ji = root["inequality"];
    if (!ji.is_object() || !ji.contains("terms") || !ji["terms"].is_array()) {
        err.add("inequality", "must be an object with a 'terms' array");
    } else {
        int i = 0;
        for (const auto& jt : ji["terms"]) {
            const std::string path = "inequality.terms[" + std::to_string(i++) + "]";
            if (!jt.is_object() || !jt.contains("coefficient") || !jt.contains("event")) {
                err.add(path, "each term needs 'coefficient' and 'event' (index into events)");
                continue;
            }
            const auto coeff = coefficient_from(jt["coefficient"]);
            if (!coeff)
                err.add(path + ".coefficient",
                        "coefficient must be an integer or a rational string like \"5/2\"");
            else if (*coeff < 0)
                err.add(path + ".coefficient", "coefficient must be nonnegative");
            if (!jt["event"].is_number_integer()) {
                err.add(path + ".event", "event must be an index into the events array");
                continue;
            }
            const auto idx = jt["event"].get<long long>();
            if (idx < 0 || idx >= static_cast<long long>(events.size())) {
                err.add(path + ".event", "event index " + std::to_string(idx) + " out of range");
                continue;
            }
            if (coeff) ineq.terms.push_back({*coeff, events[static_cast<std::size_t>(idx)]});
        }
        if (ji["terms"].empty()) err.add("inequality.terms", "at least one term required");
        if (ji.contains("claimed_nchv_bound")) {
            const auto b = coefficient_from(ji["claimed_nchv_bound"]);
            if (!b)
                err.add("inequality.claimed_nchv_bound",
                        "must be an integer or a rational string");
            else
                ineq.claimed_nchv_bound = *b;
        }
        if (ji.contains("claimed_qm_bound")) {
            if (!ji["claimed_qm_bound"].is_number())
                err.add("inequality.claimed_qm_bound", "must be a number");
            else
                ineq.claimed_qm_bound = ji["claimed_qm_bound"].get<double>();
        }
    }

    if (!result.errors.empty()) return result;

    ScenarioDocument doc;
    doc.name = name;
    doc.scenario =
        scenario::CompatibilityScenario(std::move(tests), std::move(contexts), std::move(preparations));
    doc.events = std::move(events);
    doc.inequality = std::move(ineq);

    // Representable-but-flagged: events outside every declared context.
    for (std::size_t i = 0; i < doc.events.size(); ++i) {
        if (!doc.scenario.domain_in_some_context(doc.events[i]))
            result.warnings.push_back(
                {"events[" + std::to_string(i) + "]",
                 "assignment domain of " + scenario::describe(doc.events[i]) +
                     " lies in no declared context; the requirement checker will flag it",
                 0});
    }

    result.document = std::move(doc);
    return result;
}

ParseResult parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult r;
        r.errors.push_back({"$", "cannot open file '" + path + "'", 0});
        return r;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string base = path;
    if (const auto slash = base.find_last_of('/'); slash != std::string::npos)
        base = base.substr(slash + 1);
    if (const auto dot = base.find_last_of('.'); dot != std::string::npos) base = base.substr(0, dot);
    return parse_scenario(buf.str(), base);
}

}  // namespace ncgraph::document
