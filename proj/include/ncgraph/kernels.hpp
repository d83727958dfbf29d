#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ncgraph::kernels {

// Row-major dense matrices used by the numeric kernels. Deliberately minimal;
// this is not a linear algebra library.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

struct CMat {
    int rows = 0, cols = 0;
    std::vector<std::complex<double>> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
    std::complex<double>& operator()(int i, int j) {
        return a[static_cast<std::size_t>(i) * cols + j];
    }
    std::complex<double> operator()(int i, int j) const {
        return a[static_cast<std::size_t>(i) * cols + j];
    }
};

// ---------------------------------------------------------------------------
// Matrix permanent.
//
// permanent_naive is the reference: a literal sum over all n! permutations.
// permanent_ryser_serial walks the 2^n - 1 nonempty column subsets in Gray
// code order, updating row sums by one entry per step.
// permanent_ryser splits the Gray code range into a fixed number of chunks
// (independent of thread count), evaluates chunks in parallel with OpenMP,
// and combines partial sums in chunk order, so the result is identical for
// every thread count.
// All three require square matrices; n = 0 yields 1.
// ---------------------------------------------------------------------------
std::complex<double> permanent_naive(const CMat& m);
std::complex<double> permanent_ryser_serial(const CMat& m);
std::complex<double> permanent_ryser(const CMat& m);

// ---------------------------------------------------------------------------
// Unweighted maximum independent set by exhaustive subset enumeration,
// n <= 25 recommended (cost 2^n). Serves as the independent oracle for the
// branch-and-bound solver and as a benchmark kernel. The parallel variant
// chunks the subset range; ties between equal-size sets resolve to the
// smaller bitmask in both variants.
// ---------------------------------------------------------------------------
struct BruteForceAlpha {
    int size = 0;
    std::uint64_t witness = 0;
};
BruteForceAlpha alpha_bruteforce_serial(std::span<const std::uint64_t> adjacency);
BruteForceAlpha alpha_bruteforce(std::span<const std::uint64_t> adjacency);

// ---------------------------------------------------------------------------
// Symmetric eigendecomposition by Jacobi rotations, converged when the
// off-diagonal Frobenius norm drops below 1e-11 * ||A||_F. Returns
// eigenvalues ascending with matching eigenvector columns.
//
// jacobi_eigh_serial is the reference: classic cyclic-by-row sweeps.
// jacobi_eigh orders each sweep as round-robin rounds of pairwise-disjoint
// rotations; all rotations of a round are computed from one snapshot and
// applied in two data-parallel phases (row combinations, then column
// combinations), so every entry has exactly one writer and the result is
// identical for every thread count. The two variants use different rotation
// orders and therefore agree to eigensolver accuracy, not bitwise.
// ---------------------------------------------------------------------------
struct EighResult {
    std::vector<double> values;  // ascending
    Mat vectors;                 // column k pairs with values[k]
};
EighResult jacobi_eigh_serial(const Mat& sym);
EighResult jacobi_eigh(const Mat& sym);

// A @ B for small dense matrices, OpenMP over output rows (one writer per
// entry, deterministic).
Mat matmul(const Mat& a, const Mat& b);

}  // namespace ncgraph::kernels
