// Benchmark comparing the serial reference kernels against their
// OpenMP-parallel counterparts, with an agreement check on each pair.
#include <chrono>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include <CLI11.hpp>

#include "ncgraph/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ncgraph::kernels;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(const char* kernel, double serial_ms, double parallel_ms, double agreement) {
    std::printf("%-22s %10.1f ms %12.1f ms %8.2fx   max |diff| = %.2e\n", kernel, serial_ms,
                parallel_ms, serial_ms / parallel_ms, agreement);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel benchmark"};
    int perm_n = 20;
    int alpha_n = 24;
    int eigh_n = 144;
    int repeats = 3;
    app.add_option("--permanent-size", perm_n, "matrix dimension for the Ryser permanent")
        ->capture_default_str();
    app.add_option("--alpha-size", alpha_n, "vertex count for brute-force independence")
        ->capture_default_str();
    app.add_option("--eigh-size", eigh_n, "matrix dimension for the Jacobi eigensolver")
        ->capture_default_str();
    app.add_option("--repeats", repeats, "timed repetitions per kernel")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial build)\n");
#endif
    std::printf("%-22s %13s %15s %9s\n", "kernel", "serial", "parallel", "speedup");

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    {
        CMat m(perm_n, perm_n);
        for (auto& v : m.a) v = {unif(rng), unif(rng)};
        std::complex<double> a, b;
        auto t0 = Clock::now();
        for (int r = 0; r < repeats; ++r) a = permanent_ryser_serial(m);
        const double ts = ms_since(t0) / repeats;
        t0 = Clock::now();
        for (int r = 0; r < repeats; ++r) b = permanent_ryser(m);
        const double tp = ms_since(t0) / repeats;
        report("permanent (Ryser)", ts, tp, std::abs(a - b) / std::abs(a));
    }

    {
        std::vector<std::uint64_t> adj(alpha_n, 0);
        std::bernoulli_distribution edge(0.15);
        for (int i = 0; i < alpha_n; ++i)
            for (int j = i + 1; j < alpha_n; ++j)
                if (edge(rng)) {
                    adj[i] |= std::uint64_t(1) << j;
                    adj[j] |= std::uint64_t(1) << i;
                }
        BruteForceAlpha a, b;
        auto t0 = Clock::now();
        for (int r = 0; r < repeats; ++r) a = alpha_bruteforce_serial(adj);
        const double ts = ms_since(t0) / repeats;
        t0 = Clock::now();
        for (int r = 0; r < repeats; ++r) b = alpha_bruteforce(adj);
        const double tp = ms_since(t0) / repeats;
        report("alpha (brute force)", ts, tp,
               std::abs(a.size - b.size) + std::abs(double(a.witness) - double(b.witness)));
    }

    {
        Mat m(eigh_n, eigh_n);
        for (int i = 0; i < eigh_n; ++i)
            for (int j = i; j < eigh_n; ++j) {
                m(i, j) = unif(rng);
                m(j, i) = m(i, j);
            }
        EighResult a, b;
        auto t0 = Clock::now();
        for (int r = 0; r < repeats; ++r) a = jacobi_eigh_serial(m);
        const double ts = ms_since(t0) / repeats;
        t0 = Clock::now();
        for (int r = 0; r < repeats; ++r) b = jacobi_eigh(m);
        const double tp = ms_since(t0) / repeats;
        double diff = 0.0;
        for (int k = 0; k < eigh_n; ++k) diff = std::max(diff, std::abs(a.values[k] - b.values[k]));
        report("eigh (cyclic Jacobi)", ts, tp, diff);
    }

    return 0;
}
