#pragma once

#include <cstdint>

#include "ncgraph/graph.hpp"
#include "ncgraph/kernels.hpp"
#include "ncgraph/scenario.hpp"

namespace ncgraph::theta {

struct SolverConfig {
    double tolerance = 1e-7;     // certified gap at which the solve stops
    long long max_iterations = 10000;
    std::uint64_t seed = 0;      // reserved; the solver's initialization is deterministic
    int max_vertices = 200;
};

struct ThetaResult {
    double value = 0.0;        // objective of the returned feasible primal matrix
    kernels::Mat primal_matrix;  // trace 1, zero on edges, PSD up to roundoff
    double dual_gap = 0.0;     // |value - theta| <= dual_gap, certified
    long long iterations = 0;
};

// Weighted Lovasz number: max <W, X> with W_ij = sqrt(w_i w_j), subject to
// trace(X) = 1, X_ij = 0 on edges, X PSD. Solved by ADMM alternating the
// affine projection (closed form) with the PSD-cone projection (dense Jacobi
// eigendecomposition). The reported gap comes from an always-valid dual
// certificate: lambda_max of W with its edge entries replaced by the scaled
// dual iterate.
ThetaResult lovasz_theta(const ExclusivityGraph& g, const SolverConfig& cfg = {});

// Upper bound on the quantum value of the inequality: weighted theta of its
// exclusivity graph, with term coefficients as vertex weights.
double qm_upper_bound(const scenario::CompatibilityScenario& sc,
                      const scenario::Inequality& inequality, const SolverConfig& cfg = {});

// The symmetric qutrit realization of the pentagon inequality: five unit
// vectors, consecutive pairs orthogonal, arranged around the state (0,0,1).
// Returns the sum of the five projection probabilities (= sqrt(5)).
struct KcbsRealization {
    double sum = 0.0;
    double term_probabilities[5] = {};
    double max_consecutive_overlap = 0.0;  // |<v_j, v_{j+1 mod 5}>|, worst pair
};
KcbsRealization kcbs_realization_check();

}  // namespace ncgraph::theta
