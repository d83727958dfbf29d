#include "ncgraph/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ncgraph/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ncgraph::theta {

using kernels::Mat;

namespace {

constexpr double kRelaxation = 1.6;  // over-relaxation factor
constexpr int kCheckEvery = 10;      // iterations between certificate evaluations

struct Certificate {
    double primal = 0.0;
    double dual = 0.0;
    double gap = 0.0;
    Mat feasible;
};

// Orthogonal projection onto {A symmetric : A_ij = 0 on edges, tr(A) = 1}:
// zero the edge entries, then shift the diagonal uniformly.
void project_affine(Mat& m, const std::vector<std::pair<int, int>>& edges) {
    const int n = m.rows;
    for (const auto& [a, b] : edges) {
        m(a, b) = 0.0;
        m(b, a) = 0.0;
    }
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += m(i, i);
    const double shift = (1.0 - tr) / n;
    for (int i = 0; i < n; ++i) m(i, i) += shift;
}

// Builds the certificate pair from the current iterates:
//  - primal: X is exactly affine-feasible; a uniform diagonal lift by its
//    most negative eigenvalue makes it PSD, and the lift is renormalized to
//    trace 1. The result is a genuinely feasible point, so its objective is
//    a lower bound on theta.
//  - dual: for ANY symmetric M supported on the edge set,
//    <W, X> = <W + M, X> <= lambda_max(W + M) holds for every feasible X;
//    the scaled negative eigenpart Z of the splitting supplies the edge
//    entries that make this bound tight at convergence.
Certificate certify(const Mat& x, const Mat& z, const Mat& w,
                    const std::vector<std::pair<int, int>>& edges) {
    const int n = x.rows;
    Certificate cert;

    const auto ex = kernels::jacobi_eigh(x);
    const double lift = std::max(0.0, -ex.values.front());
    cert.feasible = x;
    for (int i = 0; i < n; ++i) cert.feasible(i, i) += lift;
    const double scale = 1.0 + n * lift;
    for (double& v : cert.feasible.a) v /= scale;
    double p = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p += w(i, j) * cert.feasible(i, j);
    cert.primal = p;

    Mat c = w;
    for (const auto& [a, b] : edges) {
        c(a, b) = -z(a, b);
        c(b, a) = -z(a, b);
    }
    const auto ec = kernels::jacobi_eigh(c);
    // Inflate by the eigensolver's own residual so the bound stays valid.
    cert.dual = ec.values.back() + 1e-11 * (1.0 + std::abs(ec.values.back()));
    cert.gap = std::max(cert.dual - cert.primal, 0.0);
    return cert;
}

}  // namespace

ThetaResult lovasz_theta(const ExclusivityGraph& g, const SolverConfig& cfg) {
    const int n = g.n;
    if (n < 1) throw ScenarioError("lovasz_theta: graph must have at least one vertex");
    if (n > cfg.max_vertices)
        throw CapacityError("lovasz_theta: " + std::to_string(n) +
                                " vertices exceeds SDP limit " +
                                std::to_string(cfg.max_vertices),
                            cfg.max_vertices);
    if (cfg.tolerance <= 0) throw ScenarioError("lovasz_theta: tolerance must be positive");

    // Objective matrix W_ij = sqrt(w_i w_j); the all-ones matrix when
    // unweighted.
    std::vector<double> sw(n, 1.0);
    if (g.weighted())
        for (int i = 0; i < n; ++i) sw[i] = std::sqrt(to_double(g.weights[i]));
    Mat w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = sw[i] * sw[j];

    // Deterministic start: X = I/n, the maximally mixed feasible point.
    Mat x(n, n), y(n, n), u(n, n);
    for (int i = 0; i < n; ++i) {
        x(i, i) = 1.0 / n;
        y(i, i) = 1.0 / n;
    }
    double rho = static_cast<double>(n);

    ThetaResult best;
    best.dual_gap = std::numeric_limits<double>::infinity();
    double last_gap = -1.0;
    int plateau = 0;

    for (long long it = 1; it <= cfg.max_iterations; ++it) {
        // X-step: affine projection of Y - U + W/rho.
        for (std::size_t k = 0; k < x.a.size(); ++k) x.a[k] = y.a[k] - u.a[k] + w.a[k] / rho;
        project_affine(x, g.edges);

        // Y-step: PSD projection of the over-relaxed point plus the dual.
        Mat mid(n, n);
        for (std::size_t k = 0; k < mid.a.size(); ++k)
            mid.a[k] = kRelaxation * x.a[k] + (1.0 - kRelaxation) * y.a[k] + u.a[k];
        const auto eig = kernels::jacobi_eigh(mid);

        const Mat y_prev = y;
        Mat z(n, n);  // rho * negative part: an exactly-PSD dual ingredient
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= 64)
#endif
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double pos = 0.0, neg = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double prod = eig.vectors(i, k) * eig.vectors(j, k);
                    if (eig.values[k] > 0)
                        pos += eig.values[k] * prod;
                    else
                        neg -= eig.values[k] * prod;
                }
                y(i, j) = pos;
                z(i, j) = rho * neg;
            }

        // Dual update.
        for (std::size_t k = 0; k < u.a.size(); ++k)
            u.a[k] += kRelaxation * x.a[k] + (1.0 - kRelaxation) * y_prev.a[k] - y.a[k];

        if (it % kCheckEvery == 0 || it == cfg.max_iterations) {
            const Certificate cert = certify(x, z, w, g.edges);
            if (cert.gap < best.dual_gap) {
                best.value = cert.primal;
                best.primal_matrix = cert.feasible;
                best.dual_gap = cert.gap;
                best.iterations = it;
            }
            if (best.dual_gap <= cfg.tolerance) {
                best.iterations = it;
                return best;
            }
            // When the gap plateaus the primal residual is the laggard;
            // raising rho squeezes it without disturbing the dual bound.
            if (last_gap >= 0 && cert.gap > 0.7 * last_gap) {
                if (++plateau >= 5) {
                    rho *= 4.0;
                    for (double& v : u.a) v /= 4.0;
                    plateau = 0;
                }
            } else {
                plateau = 0;
            }
            last_gap = cert.gap;
        } else if (it % kCheckEvery == 5) {
            // Residual balancing keeps the two ADMM residuals comparable.
            double r = 0.0, s = 0.0;
            for (std::size_t k = 0; k < x.a.size(); ++k) {
                const double dxy = x.a[k] - y.a[k];
                const double dyy = y.a[k] - y_prev.a[k];
                r += dxy * dxy;
                s += dyy * dyy;
            }
            r = std::sqrt(r);
            s = rho * std::sqrt(s);
            if (r > 10.0 * s) {
                rho *= 2.0;
                for (double& v : u.a) v /= 2.0;
            } else if (s > 10.0 * r) {
                rho /= 2.0;
                for (double& v : u.a) v *= 2.0;
            }
        }
    }

    throw ConvergenceError("lovasz_theta: gap " + std::to_string(best.dual_gap) +
                               " above tolerance " + std::to_string(cfg.tolerance) + " after " +
                               std::to_string(cfg.max_iterations) + " iterations",
                           best.value, best.dual_gap, cfg.max_iterations);
}

double qm_upper_bound(const scenario::CompatibilityScenario& sc,
                      const scenario::Inequality& inequality, const SolverConfig& cfg) {
    std::vector<scenario::Event> events;
    std::vector<Rational> weights;
    for (const auto& term : inequality.terms) {
        events.push_back(term.event);
        weights.push_back(term.coefficient);
    }
    auto graph = scenario::derive_exclusivity_graph(sc, events);
    graph.weights = std::move(weights);
    return lovasz_theta(graph, cfg).value;
}

KcbsRealization kcbs_realization_check() {
    // Five unit vectors v_j = (sin t cos(4 pi j / 5), sin t sin(4 pi j / 5), cos t)
    // with cos^2 t = cos(pi/5) / (1 + cos(pi/5)); consecutive pairs are then
    // orthogonal and each |<v_j|psi>|^2 with psi = (0,0,1) equals 1/sqrt(5).
    const double c5 = std::cos(M_PI / 5.0);
    const double cos2t = c5 / (1.0 + c5);
    const double ct = std::sqrt(cos2t);
    const double st = std::sqrt(1.0 - cos2t);

    double v[5][3];
    for (int j = 0; j < 5; ++j) {
        const double phi = 4.0 * M_PI * j / 5.0;
        v[j][0] = st * std::cos(phi);
        v[j][1] = st * std::sin(phi);
        v[j][2] = ct;
    }

    KcbsRealization out;
    for (int j = 0; j < 5; ++j) {
        const double amp = v[j][2];  // <v_j | (0,0,1)>
        out.term_probabilities[j] = amp * amp;
        out.sum += amp * amp;
        const int k = (j + 1) % 5;
        const double overlap = std::abs(v[j][0] * v[k][0] + v[j][1] * v[k][1] + v[j][2] * v[k][2]);
        out.max_consecutive_overlap = std::max(out.max_consecutive_overlap, overlap);
    }
    return out;
}

}  // namespace ncgraph::theta
