#include "ncgraph/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ncgraph::kernels {

namespace {

// Number of independent work chunks for range-splitting kernels. Fixed by the
// problem size, never by the thread count, so partial-sum combination order
// (and therefore the floating point result) is stable across machines.
std::uint64_t chunk_count(std::uint64_t range) {
    const std::uint64_t target = 64;
    return range < target ? (range == 0 ? 1 : range) : target;
}

}  // namespace

std::complex<double> permanent_naive(const CMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("permanent: matrix must be square");
    const int n = m.rows;
    if (n == 0) return {1.0, 0.0};
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::complex<double> sum = 0.0;
    do {
        std::complex<double> prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

namespace {

// Ryser over the Gray-coded subset range [first, last) of {1, ..., 2^n - 1}.
// Row sums for the initial subset are built from scratch, then each step
// toggles exactly one column.
std::complex<double> ryser_range_impl(const CMat& m, std::uint64_t first, std::uint64_t last) {
    const int n = m.rows;
    std::vector<std::complex<double>> rowsum(n, 0.0);
    std::uint64_t gray = first ^ (first >> 1);
    for (int j = 0; j < n; ++j) {
        if (gray & (std::uint64_t(1) << j))
            for (int i = 0; i < n; ++i) rowsum[i] += m(i, j);
    }
    std::complex<double> acc = 0.0;
    for (std::uint64_t k = first;;) {
        const int bits = std::popcount(gray);
        std::complex<double> prod = (bits & 1) ? -1.0 : 1.0;
        if (n & 1) prod = -prod;  // fold Ryser's global (-1)^n here
        for (int i = 0; i < n; ++i) prod *= rowsum[i];
        acc += prod;
        if (++k >= last) break;
        const std::uint64_t next_gray = k ^ (k >> 1);
        const std::uint64_t diff = gray ^ next_gray;
        const int j = std::countr_zero(diff);
        if (next_gray & diff) {
            for (int i = 0; i < n; ++i) rowsum[i] += m(i, j);
        } else {
            for (int i = 0; i < n; ++i) rowsum[i] -= m(i, j);
        }
        gray = next_gray;
    }
    return acc;
}

}  // namespace

std::complex<double> permanent_ryser_serial(const CMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("permanent: matrix must be square");
    const int n = m.rows;
    if (n == 0) return {1.0, 0.0};
    if (n > 62) throw std::invalid_argument("permanent: dimension too large for 64-bit subsets");
    const std::uint64_t total = (std::uint64_t(1) << n) - 1;
    return ryser_range_impl(m, 1, total + 1);
}

std::complex<double> permanent_ryser(const CMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("permanent: matrix must be square");
    const int n = m.rows;
    if (n == 0) return {1.0, 0.0};
    if (n > 62) throw std::invalid_argument("permanent: dimension too large for 64-bit subsets");
    const std::uint64_t total = (std::uint64_t(1) << n) - 1;
    if (n <= 10) return ryser_range_impl(m, 1, total + 1);  // not worth splitting

    const std::uint64_t chunks = chunk_count(total);
    const std::uint64_t base = total / chunks;
    std::vector<std::complex<double>> partial(chunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        const std::uint64_t first = 1 + base * static_cast<std::uint64_t>(c);
        const std::uint64_t last =
            (c + 1 == static_cast<std::int64_t>(chunks)) ? total + 1 : first + base;
        if (first < last) partial[c] = ryser_range_impl(m, first, last);
    }
    std::complex<double> sum = 0.0;
    for (const auto& p : partial) sum += p;  // fixed chunk order
    return sum;
}

namespace {

BruteForceAlpha alpha_range(std::span<const std::uint64_t> adj, std::uint64_t first,
                            std::uint64_t last) {
    BruteForceAlpha best;
    for (std::uint64_t s = first; s < last; ++s) {
        const int size = std::popcount(s);
        if (size <= best.size && !(size == best.size && s < best.witness)) continue;
        bool independent = true;
        for (std::uint64_t t = s; t;) {
            const int v = std::countr_zero(t);
            if (adj[v] & s) {
                independent = false;
                break;
            }
            t &= t - 1;
        }
        if (independent) {
            if (size > best.size || (size == best.size && s < best.witness)) {
                best.size = size;
                best.witness = s;
            }
        }
    }
    return best;
}

BruteForceAlpha combine(const BruteForceAlpha& a, const BruteForceAlpha& b) {
    if (b.size > a.size || (b.size == a.size && b.witness < a.witness)) return b;
    return a;
}

}  // namespace

BruteForceAlpha alpha_bruteforce_serial(std::span<const std::uint64_t> adjacency) {
    const int n = static_cast<int>(adjacency.size());
    if (n == 0) return {};
    if (n > 25) throw std::invalid_argument("alpha_bruteforce: enumeration over 2^n limited to n <= 25");
    return alpha_range(adjacency, 0, std::uint64_t(1) << n);
}

BruteForceAlpha alpha_bruteforce(std::span<const std::uint64_t> adjacency) {
    const int n = static_cast<int>(adjacency.size());
    if (n == 0) return {};
    if (n > 25) throw std::invalid_argument("alpha_bruteforce: enumeration over 2^n limited to n <= 25");
    const std::uint64_t total = std::uint64_t(1) << n;
    if (n <= 16) return alpha_range(adjacency, 0, total);

    const std::uint64_t chunks = chunk_count(total);
    std::vector<BruteForceAlpha> partial(chunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        const std::uint64_t first = (total / chunks) * static_cast<std::uint64_t>(c);
        const std::uint64_t last =
            (c + 1 == static_cast<std::int64_t>(chunks)) ? total : first + total / chunks;
        partial[c] = alpha_range(adjacency, first, last);
    }
    BruteForceAlpha best;
    for (const auto& p : partial) best = combine(best, p);
    return best;
}

namespace {

double offdiag_norm(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

// Stable Jacobi rotation parameters (Golub & Van Loan convention): returns
// {c, s, t} zeroing a(p, q).
struct Rotation {
    double c = 1.0, s = 0.0, t = 0.0;
};

Rotation make_rotation(double app, double aqq, double apq) {
    Rotation r;
    const double theta = (aqq - app) / (2.0 * apq);
    r.t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    r.c = 1.0 / std::sqrt(r.t * r.t + 1.0);
    r.s = r.t * r.c;
    return r;
}

EighResult sort_eigenpairs(const Mat& a, const Mat& v) {
    const int n = a.rows;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x) < a(y, y); });
    EighResult res;
    res.values.resize(n);
    res.vectors = Mat(n, n);
    for (int k = 0; k < n; ++k) {
        res.values[k] = a(order[k], order[k]);
        for (int i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
    }
    return res;
}

double convergence_threshold(const Mat& a) {
    double frob = 0.0;
    for (double x : a.a) frob += x * x;
    frob = std::sqrt(frob);
    return 1e-11 * (frob > 0 ? frob : 1.0);
}

constexpr int kMaxSweeps = 64;

}  // namespace

EighResult jacobi_eigh_serial(const Mat& sym) {
    if (sym.rows != sym.cols) throw std::invalid_argument("jacobi: matrix must be square");
    const int n = sym.rows;
    Mat a = sym;
    Mat v(n, n);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;
    const double tol = convergence_threshold(a);

    for (int sweep = 0; sweep < kMaxSweeps && offdiag_norm(a) > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= tol / (n * n)) continue;
                const double app = a(p, p), aqq = a(q, q);
                const auto [c, s, t] = make_rotation(app, aqq, apq);
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(p, k) = a(k, p);
                    a(k, q) = s * akp + c * akq;
                    a(q, k) = a(k, q);
                }
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    return sort_eigenpairs(a, v);
}

EighResult jacobi_eigh(const Mat& sym) {
    if (sym.rows != sym.cols) throw std::invalid_argument("jacobi: matrix must be square");
    const int n = sym.rows;
    if (n < 32) return jacobi_eigh_serial(sym);  // not worth the phased layout

    Mat a = sym;
    Mat v(n, n);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;
    const double tol = convergence_threshold(a);

    // Round-robin schedule over m slots (m even, one padding slot when n is
    // odd): in round r, slot m-1 plays (r mod m-1) and slot k plays slot
    // (2r - k) mod (m-1). Every round is a set of disjoint pairs and every
    // pair appears exactly once per sweep.
    const int m = n + (n & 1);
    const int rounds = m - 1;
    std::vector<std::pair<int, int>> pairs(m / 2);
    std::vector<Rotation> rot(m / 2);

    for (int sweep = 0; sweep < kMaxSweeps && offdiag_norm(a) > tol; ++sweep) {
        for (int round = 0; round < rounds; ++round) {
            int live = 0;
            for (int k = 0; k < m / 2; ++k) {
                int p, q;
                if (k == 0) {
                    p = m - 1;
                    q = round % (m - 1);
                } else {
                    p = (round + k) % (m - 1);
                    q = ((round - k) % (m - 1) + (m - 1)) % (m - 1);
                }
                if (p >= n || q >= n) continue;  // padding slot
                if (p > q) std::swap(p, q);
                const double apq = a(p, q);
                if (std::abs(apq) <= tol / (n * n)) continue;
                pairs[live] = {p, q};
                rot[live] = make_rotation(a(p, p), a(q, q), apq);
                ++live;
            }
            if (live == 0) continue;

            // phase 1: rows p and q combine in place; a pair's rows are
            // touched by no other pair of the round
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
            for (int i = 0; i < live; ++i) {
                const auto [p, q] = pairs[i];
                const double c = rot[i].c, s = rot[i].s;
                for (int j = 0; j < n; ++j) {
                    const double apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
            }
            // phase 2: columns p and q combine in place
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
            for (int i = 0; i < live; ++i) {
                const auto [p, q] = pairs[i];
                const double c = rot[i].c, s = rot[i].s;
                for (int j = 0; j < n; ++j) {
                    const double ajp = a(j, p), ajq = a(j, q);
                    a(j, p) = c * ajp - s * ajq;
                    a(j, q) = s * ajp + c * ajq;
                }
            }
            // eigenvectors: V = V J
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
            for (int i = 0; i < live; ++i) {
                const auto [p, q] = pairs[i];
                const double c = rot[i].c, s = rot[i].s;
                for (int j = 0; j < n; ++j) {
                    const double vjp = v(j, p), vjq = v(j, q);
                    v(j, p) = c * vjp - s * vjq;
                    v(j, q) = s * vjp + c * vjq;
                }
            }
        }
    }
    return sort_eigenpairs(a, v);
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
    Mat out(a.rows, b.cols);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (a.rows >= 64)
#endif
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

}  // namespace ncgraph::kernels
