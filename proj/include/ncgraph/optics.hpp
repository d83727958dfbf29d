#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncgraph/kernels.hpp"

namespace ncgraph::optics {

struct Limits {
    int max_photons = 6;  // keeps the Ryser cost negligible; configurable upward
};

// Photon occupation per mode.
struct FockState {
    std::vector<int> occupations;

    int modes() const { return static_cast<int>(occupations.size()); }
    int photons() const {
        int n = 0;
        for (int o : occupations) n += o;
        return n;
    }
    bool operator<(const FockState& rhs) const { return occupations < rhs.occupations; }
    bool operator==(const FockState& rhs) const = default;
};

// Passive linear network; the matrix must be unitary to 1e-10.
struct Interferometer {
    kernels::CMat unitary;
    int modes() const { return unitary.rows; }
};

// U = [[1, 1], [1, -1]] / sqrt(2). The phase convention is irrelevant for
// every probability computed here.
Interferometer beam_splitter_50_50();

// Threshold detection only: a mode's detector clicks iff >= 1 photon lands
// in it.
struct DetectionModel {
    enum class Kind { Threshold } kind = Kind::Threshold;
    int detector_mode = 0;
};

struct BunchingEventSpec {
    std::string label;
    FockState input;
    Interferometer interferometer;
    int detector_mode = 0;
    bool predicate_clicks = true;  // true: detector clicks; false: it does not
};

// Permanent with the module's photon-number cap applied (the kernels-level
// routines are uncapped).
std::complex<double> permanent(const kernels::CMat& m, const Limits& limits = {});

// Output occupation distribution: the amplitude for pattern T from input S is
// perm(U_{S,T}) / sqrt(prod s_i! prod t_j!), with rows of U repeated per
// output occupation and columns per input occupation. Throws if the matrix is
// not unitary or the photon number exceeds the cap; the returned map sums to
// 1 within 1e-10.
std::map<FockState, double> output_distribution(const FockState& input, const Interferometer& u,
                                                const Limits& limits = {});

double click_probability(const BunchingEventSpec& spec, const Limits& limits = {});

// The five alternating one- and two-photon beam-splitter events of the
// pentagon-style bunching experiment, and the three two-photon events of the
// triangle-style one. Every event has probability 1/2, so the sums are 5/2
// and 3/2.
std::vector<BunchingEventSpec> bunching_kcbs_specs();
std::vector<BunchingEventSpec> bunching_specker_specs();

double bunching_kcbs_value();
double bunching_specker_value();

}  // namespace ncgraph::optics
