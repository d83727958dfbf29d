#include "ncgraph/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "ncgraph/simplex.hpp"

namespace ncgraph::graphs {

namespace {

using std::uint64_t;

// Branch-and-bound maximum-weight independent set over bitmask candidate
// sets. Vertices are pre-sorted by descending degree (ties by index); the
// greedy clique cover of the candidate set gives the upper bound (sum of the
// heaviest vertex per cover clique).
template <typename W>
class AlphaSolver {
  public:
    AlphaSolver(std::vector<uint64_t> adj, std::vector<W> w)
        : adj_(std::move(adj)), w_(std::move(w)), n_(static_cast<int>(adj_.size())) {}

    W max_weight(uint64_t candidates) {
        best_ = W(0);
        descend(candidates, W(0));
        return best_;
    }

  private:
    W cover_bound(uint64_t p) const {
        W bound(0);
        while (p) {
            const int v = std::countr_zero(p);
            uint64_t avail = p & adj_[v];
            W heaviest = w_[v];
            uint64_t clique = uint64_t(1) << v;
            while (avail) {
                const int u = std::countr_zero(avail);
                clique |= uint64_t(1) << u;
                if (w_[u] > heaviest) heaviest = w_[u];
                avail &= adj_[u];
            }
            bound += heaviest;
            p &= ~clique;
        }
        return bound;
    }

    void descend(uint64_t p, W current) {
        if (p == 0) {
            if (current > best_) best_ = current;
            return;
        }
        if (current + cover_bound(p) <= best_) return;
        const int v = std::countr_zero(p);
        descend(p & ~adj_[v] & ~(uint64_t(1) << v), current + w_[v]);
        descend(p & ~(uint64_t(1) << v), current);
    }

    std::vector<uint64_t> adj_;
    std::vector<W> w_;
    int n_;
    W best_{};
};

// Degree-descending branch order; returns position -> original vertex.
std::vector<int> branch_order(const ExclusivityGraph& g) {
    std::vector<int> deg(g.n, 0);
    for (const auto& [a, b] : g.edges) {
        ++deg[a];
        ++deg[b];
    }
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        if (deg[x] != deg[y]) return deg[x] > deg[y];
        return x < y;
    });
    return order;
}

template <typename W>
IndependentSetResult solve_alpha(const ExclusivityGraph& g, const std::vector<W>& weights) {
    const int n = g.n;
    const std::vector<int> order = branch_order(g);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    // adjacency in branch-order space
    std::vector<uint64_t> adj(n, 0);
    for (const auto& [a, b] : g.edges) {
        adj[pos[a]] |= uint64_t(1) << pos[b];
        adj[pos[b]] |= uint64_t(1) << pos[a];
    }
    std::vector<W> w(n);
    for (int v = 0; v < n; ++v) w[pos[v]] = weights[v];

    AlphaSolver<W> solver(adj, w);
    const uint64_t full = (n == 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
    const W optimum = solver.max_weight(full);

    // Second pass: lexicographically least witness in original vertex order.
    // Vertex v joins iff the optimum stays reachable with v forced in.
    std::vector<int> witness;
    uint64_t rest = full;  // in branch-order space
    W chosen_weight(0);
    for (int v = 0; v < n; ++v) {
        const uint64_t bit = uint64_t(1) << pos[v];
        if (!(rest & bit)) continue;
        const uint64_t rest_if_taken = rest & ~bit & ~adj[pos[v]];
        if (chosen_weight + weights[v] + solver.max_weight(rest_if_taken) == optimum) {
            witness.push_back(v);
            chosen_weight += weights[v];
            rest = rest_if_taken;
        } else {
            rest &= ~bit;
        }
    }

    IndependentSetResult res;
    res.value = Rational(optimum);
    res.witness = std::move(witness);
#ifndef NDEBUG
    for (std::size_t i = 0; i < res.witness.size(); ++i)
        for (std::size_t j = i + 1; j < res.witness.size(); ++j)
            assert(!g.has_edge(res.witness[i], res.witness[j]));
    Rational check(0);
    for (int v : res.witness) check += g.weight(v);
    assert(check == res.value);
#endif
    return res;
}

void bron_kerbosch(const std::vector<uint64_t>& adj, uint64_t r, uint64_t p, uint64_t x,
                   std::vector<uint64_t>& out, std::size_t max_count) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        if (out.size() > max_count)
            throw CapacityError("maximal_cliques: clique count exceeds limit " +
                                    std::to_string(max_count),
                                static_cast<long long>(max_count));
        return;
    }
    // Tomita pivot: maximize |P & N(u)| over u in P|X, ties to smallest index.
    int pivot = -1, best = -1;
    for (uint64_t t = p | x; t;) {
        const int u = std::countr_zero(t);
        const int cnt = std::popcount(p & adj[u]);
        if (cnt > best) {
            best = cnt;
            pivot = u;
        }
        t &= t - 1;
    }
    uint64_t ext = p & ~adj[pivot];
    while (ext) {
        const int v = std::countr_zero(ext);
        const uint64_t bit = uint64_t(1) << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out, max_count);
        p &= ~bit;
        x |= bit;
        ext &= ~bit;
    }
}

}  // namespace

IndependentSetResult independence_number(const ExclusivityGraph& g, const Limits& limits) {
    const int limit = g.weighted() ? limits.alpha_weighted : limits.alpha_unweighted;
    if (g.n > limit || g.n > 64)
        throw CapacityError("independence_number: " + std::to_string(g.n) +
                                " vertices exceeds exact-solve limit " + std::to_string(limit),
                            limit);
    if (g.n == 0) return {Rational(0), {}};
    if (g.weighted()) {
        return solve_alpha<Rational>(g, g.weights);
    }
    std::vector<long long> unit(g.n, 1);
    return solve_alpha<long long>(g, unit);
}

std::vector<std::vector<int>> maximal_cliques(const ExclusivityGraph& g, const Limits& limits) {
    if (g.n > 64)
        throw CapacityError("maximal_cliques: " + std::to_string(g.n) +
                                " vertices exceeds exact-solve limit 64",
                            64);
    if (g.n == 0) return {};
    const auto adj = g.adjacency_masks();
    std::vector<uint64_t> masks;
    const uint64_t full = (g.n == 64) ? ~uint64_t(0) : ((uint64_t(1) << g.n) - 1);
    bron_kerbosch(adj, 0, full, 0, masks, static_cast<std::size_t>(limits.max_cliques));

    std::vector<std::vector<int>> cliques;
    cliques.reserve(masks.size());
    for (uint64_t m : masks) {
        std::vector<int> q;
        for (uint64_t t = m; t; t &= t - 1) q.push_back(std::countr_zero(t));
        cliques.push_back(std::move(q));
    }
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

PackingResult fractional_packing(const ExclusivityGraph& g, const Limits& limits) {
    const auto cliques = maximal_cliques(g, limits);
    std::vector<Rational> c(g.n);
    for (int v = 0; v < g.n; ++v) c[v] = g.weight(v);
    std::vector<std::vector<Rational>> a(cliques.size(), std::vector<Rational>(g.n, Rational(0)));
    std::vector<Rational> b(cliques.size(), Rational(1));
    for (std::size_t q = 0; q < cliques.size(); ++q)
        for (int v : cliques[q]) a[q][v] = 1;

    const auto sol = simplex::maximize(c, a, b);

    // The solution must satisfy every clique constraint exactly; anything else
    // is an internal simplex fault.
    for (std::size_t q = 0; q < cliques.size(); ++q) {
        Rational s(0);
        for (int v : cliques[q]) s += sol.x[v];
        if (s > 1) throw std::logic_error("fractional_packing: clique constraint violated");
    }
    return {sol.objective, sol.x};
}

ExclusivityGraph strong_product(const ExclusivityGraph& g, const ExclusivityGraph& h,
                                const Limits& limits) {
    if (g.weighted() || h.weighted())
        throw ScenarioError("strong_product: defined for unweighted graphs only");
    const long long product_n = static_cast<long long>(g.n) * h.n;
    if (product_n > limits.product_vertices)
        throw CapacityError("strong_product: " + std::to_string(product_n) +
                                " vertices exceeds limit " +
                                std::to_string(limits.product_vertices),
                            limits.product_vertices);

    std::vector<std::pair<int, int>> edges;
    auto adjacent_or_equal = [](const ExclusivityGraph& k, int a, int b) {
        return a == b || k.has_edge(a, b);
    };
    for (int u1 = 0; u1 < g.n; ++u1)
        for (int v1 = 0; v1 < h.n; ++v1) {
            const int i = u1 * h.n + v1;
            for (int u2 = u1; u2 < g.n; ++u2)
                for (int v2 = 0; v2 < h.n; ++v2) {
                    const int j = u2 * h.n + v2;
                    if (j <= i) continue;
                    if (adjacent_or_equal(g, u1, u2) && adjacent_or_equal(h, v1, v2))
                        edges.emplace_back(i, j);
                }
        }
    return ExclusivityGraph(static_cast<int>(product_n), std::move(edges));
}

double two_copy_e_bound(const ExclusivityGraph& g, const Limits& limits) {
    if (g.weighted())
        throw ScenarioError("two_copy_e_bound: defined for unweighted graphs only");
    const auto product = strong_product(g, g, limits);
    const auto alpha = independence_number(product, limits);
    return std::sqrt(to_double(alpha.value));
}

}  // namespace ncgraph::graphs
