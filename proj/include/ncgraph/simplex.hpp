#pragma once

#include <vector>

#include "ncgraph/rational.hpp"

namespace ncgraph::simplex {

// Exact rational simplex for small dense LPs in the form
//     max c.x   s.t.   A x <= b,  x >= 0,
// with b >= 0 (the origin is feasible, so no phase-1 is needed here).
// Bland's smallest-index rule throughout, which excludes cycling.
struct Solution {
    Rational objective;
    std::vector<Rational> x;
};

Solution maximize(const std::vector<Rational>& c,
                  const std::vector<std::vector<Rational>>& a,
                  const std::vector<Rational>& b);

}  // namespace ncgraph::simplex
