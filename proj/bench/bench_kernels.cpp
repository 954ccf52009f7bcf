// Serial vs parallel kernel timings on random Jacobians.
//
//   bench_kernels [--seed N] [--reps N] [--max-n N] [--degree D]

#include "nilmap/generators.hpp"
#include "nilmap/jacobian.hpp"
#include "nilmap/kernels.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>

using namespace nilmap;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
        best = std::min(best, dt.count());
    }
    return best;
}

void row(const char* kernel, std::size_t n, double serial, double parallel, bool same) {
    std::printf("%-20s n=%-3zu serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx  %s\n", kernel, n, serial, parallel,
                serial / parallel, same ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kernel benchmark"};
    std::uint64_t seed = 1;
    int reps = 3;
    std::size_t max_n = 7;
    unsigned degree = 3;
    app.add_option("--seed", seed);
    app.add_option("--reps", reps)->check(CLI::PositiveNumber);
    app.add_option("--max-n", max_n)->check(CLI::Range(2, 10));
    app.add_option("--degree", degree)->check(CLI::Range(1, 6));
    CLI11_PARSE(app, argc, argv);

    std::printf("openmp %s, %d threads\n", kernels::openmp_enabled() ? "on" : "off", kernels::max_threads());
    gen::Engine rng(seed);
    bool ok = true;
    for (std::size_t n = 3; n <= max_n; ++n) {
        const PolyMatrix j = jacobian(gen::random_map(rng, n, degree));

        PolyMatrix ps(1, 1, n), pp(1, 1, n);
        const double ms = best_of(reps, [&] { ps = kernels::multiply_serial(j, j); });
        const double mp = best_of(reps, [&] { pp = kernels::multiply_parallel(j, j); });
        row("matrix product", n, ms, mp, ps == pp);
        ok = ok && ps == pp;

        const std::size_t k = (n + 1) / 2;
        Polynomial ss, sp;
        const double ts = best_of(reps, [&] { ss = kernels::principal_minor_sum_serial(j, k); });
        const double tp = best_of(reps, [&] { sp = kernels::principal_minor_sum_parallel(j, k); });
        row("principal minors", n, ts, tp, ss == sp);
        ok = ok && ss == sp;
    }
    return ok ? 0 : 1;
}
