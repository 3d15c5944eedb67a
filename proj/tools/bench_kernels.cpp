// Times the node/mode kernels serial vs OpenMP and reports the speedup.
// The two paths must agree bitwise; this tool also spot-checks that.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "plapwave/function_space.hpp"
#include "plapwave/kernels.hpp"

using namespace plapwave;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double time_loop(int reps, F&& body) {
    body();  // warm up
    const double t0 = now_seconds();
    for (int i = 0; i < reps; ++i) body();
    return (now_seconds() - t0) / reps;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

namespace {

int run_case(int n_modes, int n_nodes, int reps) {
    const double p = 2.5;

    std::printf("\nmodes=%d nodes=%d reps=%d\n", n_modes, n_nodes, reps);

    std::uint64_t rng = 42;
    std::vector<double> table(static_cast<size_t>(n_modes) * n_nodes);
    std::vector<double> coeffs(n_modes), weights(n_nodes), grad(n_nodes);
    for (double& x : table) x = uniform_pm1(rng);
    for (double& x : coeffs) x = uniform_pm1(rng);
    for (double& x : weights) x = 0.5 + 0.5 * uniform_pm1(rng);
    for (double& x : grad) x = 2.0 * uniform_pm1(rng);

    std::vector<double> out_s(n_nodes), out_p(n_nodes);
    std::vector<double> load_s(n_modes), load_p(n_modes);
    std::vector<double> flux_s(n_nodes), flux_p(n_nodes);

    struct RowResult {
        const char* name;
        double serial, parallel;
        bool match;
    };
    std::vector<RowResult> rows;

    {
        const double ts = time_loop(reps, [&] {
            kernels::synthesize_serial(table, n_modes, n_nodes, coeffs, out_s);
        });
        const double tp = time_loop(reps, [&] {
            kernels::synthesize_parallel(table, n_modes, n_nodes, coeffs, out_p);
        });
        rows.push_back({"synthesize", ts, tp, bitwise_equal(out_s, out_p)});
    }
    {
        const double ts = time_loop(reps, [&] {
            kernels::assemble_load_serial(table, n_modes, n_nodes, weights, load_s);
        });
        const double tp = time_loop(reps, [&] {
            kernels::assemble_load_parallel(table, n_modes, n_nodes, weights, load_p);
        });
        rows.push_back({"assemble_load", ts, tp, bitwise_equal(load_s, load_p)});
    }
    {
        const double ts = time_loop(reps, [&] {
            kernels::pflux_density_serial(grad, weights, p, flux_s);
        });
        const double tp = time_loop(reps, [&] {
            kernels::pflux_density_parallel(grad, weights, p, flux_p);
        });
        rows.push_back({"pflux_density", ts, tp, bitwise_equal(flux_s, flux_p)});
    }

    std::printf("%-14s %12s %12s %8s %8s\n", "kernel", "serial(us)", "parallel(us)",
                "speedup", "bitwise");
    bool all_match = true;
    for (const RowResult& r : rows) {
        std::printf("%-14s %12.2f %12.2f %8.2f %8s\n", r.name, r.serial * 1e6,
                    r.parallel * 1e6, r.serial / r.parallel, r.match ? "ok" : "DIFF");
        all_match = all_match && r.match;
    }
    if (!all_match) {
        std::fprintf(stderr, "serial and parallel kernels disagree\n");
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::printf("kernel benchmark: openmp=%s threads=%d\n",
                kernels::openmp_enabled() ? "yes" : "no", kernels::max_threads());
    if (argc > 1) {
        const int n_modes = std::atoi(argv[1]);
        const int subintervals = argc > 2 ? std::atoi(argv[2]) : 256;
        const int reps = argc > 3 ? std::atoi(argv[3]) : 1000;
        return run_case(n_modes, subintervals * 8, reps);
    }
    // Default sizes: one below the dispatch cutoff, one well above it.
    int rc = run_case(16, 2048, 2000);
    rc |= run_case(64, 16384, 300);
    return rc;
}
