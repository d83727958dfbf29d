#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "ncgraph/errors.hpp"
#include "ncgraph/rational.hpp"

namespace ncgraph {

// Undirected simple graph whose vertices are events and whose edges join
// operationally exclusive pairs. Vertex weights are optional; an empty
// weight vector means all weights are 1.
struct ExclusivityGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // normalized: first < second, sorted, unique
    std::vector<Rational> weights;           // empty or size n, entries >= 0

    ExclusivityGraph() = default;

    ExclusivityGraph(int vertex_count, std::vector<std::pair<int, int>> edge_list,
                     std::vector<Rational> vertex_weights = {})
        : n(vertex_count), edges(std::move(edge_list)), weights(std::move(vertex_weights)) {
        if (n < 0) throw ScenarioError("graph: negative vertex count");
        for (auto& e : edges) {
            if (e.first == e.second) throw ScenarioError("graph: self-loop rejected");
            if (e.first > e.second) std::swap(e.first, e.second);
            if (e.first < 0 || e.second >= n)
                throw ScenarioError("graph: edge endpoint out of range");
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        if (!weights.empty()) {
            if (static_cast<int>(weights.size()) != n)
                throw ScenarioError("graph: weight vector length must equal vertex count");
            for (const auto& w : weights)
                if (w < 0) throw ScenarioError("graph: negative vertex weight");
        }
    }

    bool weighted() const { return !weights.empty(); }

    Rational weight(int v) const { return weights.empty() ? Rational(1) : weights[v]; }

    bool has_edge(int a, int b) const {
        if (a > b) std::swap(a, b);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
    }

    int degree(int v) const {
        int d = 0;
        for (const auto& [a, b] : edges) d += (a == v || b == v);
        return d;
    }

    // Adjacency rows as bitmasks; only valid for n <= 64.
    std::vector<std::uint64_t> adjacency_masks() const {
        std::vector<std::uint64_t> adj(n, 0);
        for (const auto& [a, b] : edges) {
            adj[a] |= std::uint64_t(1) << b;
            adj[b] |= std::uint64_t(1) << a;
        }
        return adj;
    }
};

inline ExclusivityGraph cycle_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    if (n == 2) e = {{0, 1}};
    return ExclusivityGraph(n, std::move(e));
}

inline ExclusivityGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return ExclusivityGraph(n, std::move(e));
}

inline ExclusivityGraph edgeless_graph(int n) { return ExclusivityGraph(n, {}); }

}  // namespace ncgraph
