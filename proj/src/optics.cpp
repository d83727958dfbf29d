#include "ncgraph/optics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ncgraph/errors.hpp"

namespace ncgraph::optics {

using kernels::CMat;

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void require_unitary(const CMat& u) {
    if (u.rows != u.cols) throw ScenarioError("interferometer matrix must be square");
    const int m = u.rows;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::complex<double> s = 0.0;
            for (int k = 0; k < m; ++k) s += u(i, k) * std::conj(u(j, k));
            const double target = (i == j) ? 1.0 : 0.0;
            if (std::abs(s - target) > 1e-10)
                throw ScenarioError("interferometer matrix is not unitary to 1e-10");
        }
}

// All occupation patterns of `photons` photons over `modes` modes, in
// lexicographic order.
void enumerate_patterns(int modes, int photons, std::vector<int>& prefix,
                        std::vector<std::vector<int>>& out) {
    if (modes == 1) {
        prefix.push_back(photons);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int k = 0; k <= photons; ++k) {
        prefix.push_back(k);
        enumerate_patterns(modes - 1, photons - k, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

Interferometer beam_splitter_50_50() {
    const double r = 1.0 / std::sqrt(2.0);
    CMat u(2, 2);
    u(0, 0) = r;
    u(0, 1) = r;
    u(1, 0) = r;
    u(1, 1) = -r;
    return {u};
}

std::complex<double> permanent(const CMat& m, const Limits& limits) {
    if (m.rows != m.cols) throw ScenarioError("permanent: matrix must be square");
    if (m.rows > limits.max_photons)
        throw CapacityError("permanent: dimension " + std::to_string(m.rows) +
                                " exceeds photon-number limit " +
                                std::to_string(limits.max_photons),
                            limits.max_photons);
    return kernels::permanent_ryser(m);
}

std::map<FockState, double> output_distribution(const FockState& input, const Interferometer& u,
                                                const Limits& limits) {
    const int m = u.modes();
    if (input.modes() != m)
        throw ScenarioError("output_distribution: input mode count does not match interferometer");
    for (int o : input.occupations)
        if (o < 0) throw ScenarioError("output_distribution: negative occupation");
    const int photons = input.photons();
    if (photons > limits.max_photons)
        throw CapacityError("output_distribution: " + std::to_string(photons) +
                                " photons exceeds limit " + std::to_string(limits.max_photons),
                            limits.max_photons);
    require_unitary(u.unitary);

    std::vector<int> in_cols;
    for (int j = 0; j < m; ++j)
        for (int c = 0; c < input.occupations[j]; ++c) in_cols.push_back(j);

    double in_fact = 1.0;
    for (int o : input.occupations) in_fact *= factorial(o);

    std::vector<std::vector<int>> patterns;
    std::vector<int> prefix;
    enumerate_patterns(m, photons, prefix, patterns);

    std::map<FockState, double> dist;
    double total = 0.0;
    for (const auto& pattern : patterns) {
        std::vector<int> out_rows;
        for (int i = 0; i < m; ++i)
            for (int c = 0; c < pattern[i]; ++c) out_rows.push_back(i);

        CMat sub(photons, photons);
        for (int r = 0; r < photons; ++r)
            for (int c = 0; c < photons; ++c) sub(r, c) = u.unitary(out_rows[r], in_cols[c]);

        double out_fact = 1.0;
        for (int o : pattern) out_fact *= factorial(o);

        const std::complex<double> amp =
            kernels::permanent_ryser(sub) / std::sqrt(in_fact * out_fact);
        const double p = std::norm(amp);
        dist[FockState{pattern}] = p;
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::logic_error("output_distribution: probabilities sum to " +
                               std::to_string(total));
    return dist;
}

double click_probability(const BunchingEventSpec& spec, const Limits& limits) {
    if (spec.detector_mode < 0 || spec.detector_mode >= spec.interferometer.modes())
        throw ScenarioError("click_probability: detector mode out of range");
    const auto dist = output_distribution(spec.input, spec.interferometer, limits);
    double clicks = 0.0;
    for (const auto& [pattern, p] : dist)
        if (pattern.occupations[spec.detector_mode] >= 1) clicks += p;
    return spec.predicate_clicks ? clicks : 1.0 - clicks;
}

// Pentagon-style arrangement: fibers A, B, C feed a 50:50 beam splitter in
// five settings, alternating the one-photon event (detector clicks) with the
// two-photon bunching event (detector does not click) along consecutive
// fiber pairs. The routing is one fixed choice; any alternating assignment
// gives the same per-event probability, 1/2.
std::vector<BunchingEventSpec> bunching_kcbs_specs() {
    const auto bs = beam_splitter_50_50();
    std::vector<BunchingEventSpec> specs;
    specs.push_back({"one-photon-A", FockState{{1, 0}}, bs, 0, true});
    specs.push_back({"two-photon-AB", FockState{{1, 1}}, bs, 0, false});
    specs.push_back({"one-photon-B", FockState{{1, 0}}, bs, 0, true});
    specs.push_back({"two-photon-BC", FockState{{1, 1}}, bs, 0, false});
    specs.push_back({"one-photon-C", FockState{{1, 0}}, bs, 0, true});
    return specs;
}

// Triangle-style variant: three two-photon events over the fiber pairs
// (A,B), (A,C), (B,C), alternating the no-click and click predicates.
std::vector<BunchingEventSpec> bunching_specker_specs() {
    const auto bs = beam_splitter_50_50();
    std::vector<BunchingEventSpec> specs;
    specs.push_back({"two-photon-AB", FockState{{1, 1}}, bs, 0, false});
    specs.push_back({"two-photon-AC", FockState{{1, 1}}, bs, 0, true});
    specs.push_back({"two-photon-BC", FockState{{1, 1}}, bs, 0, false});
    return specs;
}

double bunching_kcbs_value() {
    double sum = 0.0;
    for (const auto& spec : bunching_kcbs_specs()) sum += click_probability(spec);
    return sum;
}

double bunching_specker_value() {
    double sum = 0.0;
    for (const auto& spec : bunching_specker_specs()) sum += click_probability(spec);
    return sum;
}

}  // namespace ncgraph::optics
