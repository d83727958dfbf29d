// Acceptance suite: one pass/fail line per criterion, covering the pentagon
// and triangle invariants, the built-in pipelines, the strong-product and
// packing bounds, the bunching reproductions, and the randomized oracle
// suites. Exit code = number of failed criteria.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ncgraph/analyze.hpp"
#include "ncgraph/graphs.hpp"
#include "ncgraph/kernels.hpp"
#include "ncgraph/optics.hpp"
#include "ncgraph/theta.hpp"
#include "oracles.hpp"

using namespace ncgraph;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void criterion(int number, const std::string& description, const std::function<bool(std::string&)>& run) {
    std::string detail;
    bool ok = false;
    try {
        ok = run(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number, description.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

json run_cli_json(const std::string& args) {
    const std::string cmd =
        std::string(NCGRAPH_CLI_PATH) + " --format machine " + args + " 2>/dev/null";
    std::array<char, 4096> chunk{};
    std::string output;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("cannot launch CLI");
    std::size_t got;
    while ((got = fread(chunk.data(), 1, chunk.size(), pipe)) > 0) output.append(chunk.data(), got);
    if (pclose(pipe) != 0) throw std::runtime_error("CLI exited nonzero for: " + args);
    return json::parse(output);
}

}  // namespace

int main() {
    const auto suite_start = Clock::now();
    const double sqrt5 = std::sqrt(5.0);

    criterion(1, "pentagon: alpha(C5) = 2 exactly, theta(C5) = 2.2360680 +- 1e-5, < 1 s",
              [&](std::string& detail) {
                  const auto t0 = Clock::now();
                  const auto alpha = graphs::independence_number(cycle_graph(5));
                  const auto th = theta::lovasz_theta(cycle_graph(5));
                  const double elapsed = seconds_since(t0);
                  std::ostringstream s;
                  s.precision(9);
                  s << "alpha=" << to_string(alpha.value) << " theta=" << th.value << " ("
                    << elapsed << " s)";
                  detail = s.str();
                  return alpha.value == Rational(2) && std::abs(th.value - 2.2360680) <= 1e-5 &&
                         elapsed < 1.0;
              });

    criterion(2, "triangle: alpha(K3) = 1, theta(K3) = 1 +- 1e-6, < 1 s",
              [&](std::string& detail) {
                  const auto t0 = Clock::now();
                  const auto alpha = graphs::independence_number(complete_graph(3));
                  const auto th = theta::lovasz_theta(complete_graph(3));
                  const double elapsed = seconds_since(t0);
                  std::ostringstream s;
                  s.precision(9);
                  s << "alpha=" << to_string(alpha.value) << " theta=" << th.value;
                  detail = s.str();
                  return alpha.value == Rational(1) && std::abs(th.value - 1.0) <= 1e-6 &&
                         elapsed < 1.0;
              });

    criterion(3,
              "builtin kcbs: NCHV bound 2, qm_upper sqrt(5) +- 1e-5; realization sqrt(5) +- 1e-6 "
              "with orthogonality <= 1e-12; shipped kcbs.json gives the same bounds",
              [&](std::string& detail) {
                  const auto j = run_cli_json("builtin kcbs");
                  const double qm = j["bounds"]["qm_upper"]["value"].get<double>();
                  const double real_sum = j["kcbs_realization"]["sum"].get<double>();
                  const double overlap =
                      j["kcbs_realization"]["max_consecutive_overlap"].get<double>();
                  const auto from_file =
                      run_cli_json("analyze " + std::string(NCGRAPH_DATA_DIR) + "/kcbs.json");
                  const bool file_matches = from_file["bounds"] == j["bounds"] &&
                                            from_file["requirements"] == j["requirements"];
                  std::ostringstream s;
                  s.precision(9);
                  s << "nchv=" << j["bounds"]["nchv"]["value"].get<std::string>() << " qm=" << qm
                    << " realization=" << real_sum << " overlap=" << overlap
                    << " file-matches=" << (file_matches ? "yes" : "no");
                  detail = s.str();
                  return j["bounds"]["nchv"]["value"] == "2" && std::abs(qm - sqrt5) <= 1e-5 &&
                         std::abs(real_sum - sqrt5) <= 1e-6 && overlap <= 1e-12 && file_matches;
              });

    criterion(4, "builtin specker: NCHV bound 1 and qm_upper 1 +- 1e-6",
              [&](std::string& detail) {
                  const auto j = run_cli_json("builtin specker");
                  const double qm = j["bounds"]["qm_upper"]["value"].get<double>();
                  std::ostringstream s;
                  s.precision(9);
                  s << "nchv=" << j["bounds"]["nchv"]["value"].get<std::string>() << " qm=" << qm;
                  detail = s.str();
                  return j["bounds"]["nchv"]["value"] == "1" && std::abs(qm - 1.0) <= 1e-6;
              });

    criterion(5,
              "two-copy: alpha(C5 boxtimes C5) = 5 by branch-and-bound AND brute force; "
              "two_copy_e_bound(C5) = sqrt(5) +- 1e-12, < 5 s",
              [&](std::string& detail) {
                  const auto t0 = Clock::now();
                  const auto product = graphs::strong_product(cycle_graph(5), cycle_graph(5));
                  const auto bb = graphs::independence_number(product);
                  const auto brute = kernels::alpha_bruteforce(product.adjacency_masks());
                  const double bound = graphs::two_copy_e_bound(cycle_graph(5));
                  const double elapsed = seconds_since(t0);
                  std::ostringstream s;
                  s.precision(15);
                  s << "bb=" << to_string(bb.value) << " brute=" << brute.size
                    << " bound=" << bound << " (" << elapsed << " s)";
                  detail = s.str();
                  return bb.value == Rational(5) && brute.size == 5 &&
                         std::abs(bound - sqrt5) <= 1e-12 && elapsed < 5.0;
              });

    criterion(6,
              "single-copy E bound: fractional_packing(C5) = 5/2 exactly, the value the bunching "
              "sum saturates",
              [&](std::string& detail) {
                  const auto packing = graphs::fractional_packing(cycle_graph(5));
                  const double sum = optics::bunching_kcbs_value();
                  std::ostringstream s;
                  s.precision(15);
                  s << "packing=" << to_string(packing.value) << " simulated sum=" << sum;
                  detail = s.str();
                  return packing.value == Rational(5, 2) &&
                         std::abs(sum - to_double(packing.value)) <= 1e-12;
              });

    criterion(7,
              "builtin bunching-kcbs: every event 1/2 +- 1e-12, sum 5/2 +- 1e-12, edgeless graph, "
              "requirements (i),(ii),(iii) all fail with witnesses",
              [&](std::string& detail) {
                  const auto j = run_cli_json("builtin bunching-kcbs");
                  bool events_half = true;
                  for (const auto& e : j["simulation"]["events"])
                      if (std::abs(e["probability"].get<double>() - 0.5) > 1e-12)
                          events_half = false;
                  const double sum = j["simulation"]["sum"].get<double>();
                  const bool edgeless = j["exclusivity"]["edges"].empty();
                  const auto& req = j["requirements"];
                  bool all_fail_with_witnesses = true;
                  for (const char* key :
                       {"same_state", "compatible_tests_only", "tests_in_multiple_contexts"}) {
                      if (req[key]["pass"].get<bool>() || req[key]["witnesses"].empty())
                          all_fail_with_witnesses = false;
                  }
                  // the shipped file reproduces the same defective structure
                  const auto from_file = run_cli_json(
                      "analyze " + std::string(NCGRAPH_DATA_DIR) + "/bunching_kcbs.json");
                  const bool file_matches = from_file["requirements"] == j["requirements"] &&
                                            from_file["exclusivity"]["edges"].empty();
                  std::ostringstream s;
                  s.precision(15);
                  s << "sum=" << sum << " edges=" << j["exclusivity"]["edges"].size()
                    << " requirements all fail=" << (all_fail_with_witnesses ? "yes" : "no")
                    << " file-matches=" << (file_matches ? "yes" : "no");
                  detail = s.str();
                  return events_half && std::abs(sum - 2.5) <= 1e-12 && edgeless &&
                         all_fail_with_witnesses && file_matches;
              });

    criterion(8,
              "bunching-specker: sum 3/2 +- 1e-12 against the bound 1; requirements all fail",
              [&](std::string& detail) {
                  const auto j = run_cli_json("builtin bunching-specker");
                  const double sum = j["simulation"]["sum"].get<double>();
                  const auto& req = j["requirements"];
                  bool all_fail = true;
                  for (const char* key :
                       {"same_state", "compatible_tests_only", "tests_in_multiple_contexts"})
                      if (req[key]["pass"].get<bool>()) all_fail = false;
                  std::ostringstream s;
                  s.precision(15);
                  s << "sum=" << sum << " vs claimed bound "
                    << j["claims"]["nchv_bound"].get<std::string>()
                    << (sum > 1.0 ? " (exceeded)" : "");
                  detail = s.str();
                  return std::abs(sum - 1.5) <= 1e-12 && sum > 1.0 && all_fail &&
                         j["claims"]["nchv_bound"] == "1";
              });

    criterion(9, "HOM: coincidence 0 +- 1e-12 from (1,1), bunched outcomes 1/2 each",
              [&](std::string& detail) {
                  const auto dist = optics::output_distribution(optics::FockState{{1, 1}},
                                                                optics::beam_splitter_50_50());
                  const double coincidence = dist.at(optics::FockState{{1, 1}});
                  const double both_up = dist.at(optics::FockState{{2, 0}});
                  const double both_down = dist.at(optics::FockState{{0, 2}});
                  std::ostringstream s;
                  s.precision(15);
                  s << "P(1,1)=" << coincidence << " P(2,0)=" << both_up << " P(0,2)=" << both_down;
                  detail = s.str();
                  return std::abs(coincidence) <= 1e-12 && std::abs(both_up - 0.5) <= 1e-12 &&
                         std::abs(both_down - 0.5) <= 1e-12;
              });

    criterion(10, "oracle suites (a)-(d), total suite < 2 min", [&](std::string& detail) {
        std::ostringstream s;

        // (a) exact independence vs exhaustive enumeration, 200 graphs <= 18
        std::mt19937_64 rng_a(1001);
        int mismatches = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 1 + static_cast<int>(rng_a() % 18);
            const double density = 0.15 + 0.7 * (trial % 5) / 4.0;
            const auto g = oracles::random_graph(rng_a, n, density);
            const auto bb = graphs::independence_number(g);
            const auto brute = kernels::alpha_bruteforce(g.adjacency_masks());
            if (bb.value != Rational(brute.size)) ++mismatches;
        }
        s << "(a) mismatches=" << mismatches;

        // (b) permanent vs naive permutation expansion, 100 matrices <= 5x5
        std::mt19937_64 rng_b(1002);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        double worst_perm = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 1 + static_cast<int>(rng_b() % 5);
            kernels::CMat m(n, n);
            for (auto& v : m.a) v = {unif(rng_b), unif(rng_b)};
            const auto fast = optics::permanent(m);
            const auto naive = kernels::permanent_naive(m);
            worst_perm = std::max(worst_perm, std::abs(fast - naive) / (1.0 + std::abs(naive)));
        }
        s << " (b) worst=" << worst_perm;

        // (c) sandwich alpha <= theta <= packing within the certified gap,
        //     100 graphs <= 14
        std::mt19937_64 rng_c(1003);
        theta::SolverConfig cfg;
        cfg.tolerance = 1e-7;
        cfg.max_iterations = 100000;
        int sandwich_failures = 0;
        double worst_gap = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + static_cast<int>(rng_c() % 13);
            const double density = 0.2 + 0.6 * (trial % 4) / 3.0;
            const auto g = oracles::random_graph(rng_c, n, density);
            const double alpha = to_double(graphs::independence_number(g).value);
            const double packing = to_double(graphs::fractional_packing(g).value);
            double value = 0.0, gap = 0.0;
            try {
                const auto th = theta::lovasz_theta(g, cfg);
                value = th.value;
                gap = th.dual_gap;
            } catch (const ConvergenceError& e) {
                value = e.best_value();
                gap = e.best_gap();
            }
            worst_gap = std::max(worst_gap, gap);
            if (alpha > value + gap + 1e-9 || value > packing + gap + 1e-9) ++sandwich_failures;
        }
        s << " (c) failures=" << sandwich_failures << " worst gap=" << worst_gap;

        // (d) optics distributions vs the labeled-expansion oracle, <= 3 photons
        std::mt19937_64 rng_d(1004);
        double worst_optics = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const int m = 2 + static_cast<int>(rng_d() % 2);
            const auto u = oracles::random_unitary(rng_d, m);
            std::vector<int> occ(m, 0);
            const int photons = 1 + static_cast<int>(rng_d() % 3);
            for (int k = 0; k < photons; ++k) ++occ[rng_d() % m];
            const auto dist =
                optics::output_distribution(optics::FockState{occ}, optics::Interferometer{u});
            const auto oracle = oracles::distribution_by_expansion(occ, u);
            for (const auto& [pattern, p] : dist)
                worst_optics = std::max(worst_optics, std::abs(p - oracle.at(pattern.occupations)));
        }
        s << " (d) worst=" << worst_optics;

        const double elapsed = seconds_since(suite_start);
        s << "; suite " << elapsed << " s";
        detail = s.str();
        return mismatches == 0 && worst_perm <= 1e-12 && sandwich_failures == 0 &&
               worst_optics <= 1e-10 && elapsed < 120.0;
    });

    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures;
}
