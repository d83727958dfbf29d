#pragma once

#include <vector>

#include "ncgraph/graph.hpp"
#include "ncgraph/rational.hpp"

namespace ncgraph::graphs {

// Exact-solve size limits. Defaults keep every run well under a second.
struct Limits {
    int alpha_unweighted = 64;
    int alpha_weighted = 50;
    int product_vertices = 4096;
    int max_cliques = 4096;
};

struct IndependentSetResult {
    Rational value;
    std::vector<int> witness;  // lexicographically least among optima, ascending
};

struct PackingResult {
    Rational value;
    std::vector<Rational> vertex_probabilities;  // all in [0, 1]
};

// Maximum-weight independent set, exact. Branch and bound over bitmask
// candidate sets with a greedy clique-cover upper bound; branching order is
// descending degree with ties by index. The witness is the lexicographically
// least optimum in vertex order, recovered by a second bounded pass.
IndependentSetResult independence_number(const ExclusivityGraph& g, const Limits& limits = {});

// All maximal cliques, Bron-Kerbosch with Tomita pivoting. Each clique is
// sorted ascending and the list itself is sorted lexicographically.
std::vector<std::vector<int>> maximal_cliques(const ExclusivityGraph& g,
                                              const Limits& limits = {});

// Fractional packing: max sum w_i p_i subject to p >= 0 and
// sum_{i in Q} p_i <= 1 for every maximal clique Q. Solved exactly over the
// rationals (simplex with Bland's rule).
PackingResult fractional_packing(const ExclusivityGraph& g, const Limits& limits = {});

// Strong product: (u1,v1) ~ (u2,v2) iff both coordinates are equal-or-adjacent
// and the pairs differ. Vertex (u, v) maps to index u * h.n + v.
ExclusivityGraph strong_product(const ExclusivityGraph& g, const ExclusivityGraph& h,
                                const Limits& limits = {});

// sqrt(alpha(G boxtimes G)): the per-copy bound obtained by applying the
// pairwise-exclusivity principle to two independent copies of the experiment.
// For the pentagon this already equals the quantum bound sqrt(5), because
// alpha(C5 boxtimes C5) = 5; that coincidence is a property of C5, not of the
// two-copy construction in general.
double two_copy_e_bound(const ExclusivityGraph& g, const Limits& limits = {});

}  // namespace ncgraph::graphs
