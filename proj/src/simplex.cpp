#include "ncgraph/simplex.hpp"

#include <stdexcept>

namespace ncgraph::simplex {

Solution maximize(const std::vector<Rational>& c,
                  const std::vector<std::vector<Rational>>& a,
                  const std::vector<Rational>& b) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(c.size());
    if (static_cast<int>(b.size()) != m)
        throw std::invalid_argument("simplex: rhs length mismatch");
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("simplex: row length mismatch");
    for (const auto& bi : b)
        if (bi < 0) throw std::invalid_argument("simplex: negative rhs unsupported");

    // Tableau over variables [x_0..x_{n-1}, s_0..s_{m-1}], slack basis start.
    const int cols = n + m;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][cols] = b[i];
    }
    std::vector<Rational> z(cols + 1);  // reduced-cost row: z_j - c_j
    for (int j = 0; j < n; ++j) z[j] = -c[j];
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        // Bland: entering = smallest index with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < cols; ++j) {
            if (z[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;  // optimal

        // Leaving: min ratio, ties broken by smallest basis variable index.
        int leave = -1;
        Rational best_ratio;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][cols] / t[i][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave < 0)
            throw std::runtime_error("simplex: objective unbounded");

        // Pivot on (leave, enter).
        const Rational piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
        }
        if (z[enter] != 0) {
            const Rational f = z[enter];
            for (int j = 0; j <= cols; ++j) z[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    Solution out;
    out.x.assign(n, Rational(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) out.x[basis[i]] = t[i][cols];
    out.objective = 0;
    for (int j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
    return out;
}

}  // namespace ncgraph::simplex
