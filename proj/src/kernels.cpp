#include "plapwave/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plapwave::kernels {

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Exec default_exec() {
    return openmp_enabled() ? Exec::Parallel : Exec::Serial;
}

namespace {
// Below these sizes the fork/join cost exceeds the loop body; the dispatch
// wrappers fall back to the serial path (identical bits either way).
constexpr long kMatvecCutoff = 1L << 18;
constexpr long kPointwiseCutoff = 1L << 16;

bool use_parallel_matvec(Exec exec, long work) {
    return exec == Exec::Parallel && openmp_enabled() && work >= kMatvecCutoff;
}

bool use_parallel_pointwise(Exec exec, long n) {
    return exec == Exec::Parallel && openmp_enabled() && n >= kPointwiseCutoff;
}
}  // namespace

bool pointwise_parallel(Exec exec, long n) { return use_parallel_pointwise(exec, n); }

double abs_power(double z, double e) {
    const double a = std::abs(z);
    if (e == 0.0) return 1.0;
    if (a == 0.0) return 0.0;
    if (e == 0.5) return std::sqrt(a);
    if (e == 1.0) return a;
    if (e == 1.5) return a * std::sqrt(a);
    if (e == 2.0) return a * a;
    if (e == 2.5) return a * a * std::sqrt(a);
    if (e == 3.0) return a * a * a;
    // Quarter-integer exponents via sqrt(sqrt(.)) and binary exponentiation;
    // much cheaper than pow and exact enough for every tolerance in use.
    const double e4 = 4.0 * e;
    if (e4 > 0.0 && e4 <= 64.0 && e4 == static_cast<double>(static_cast<int>(e4))) {
        int n = static_cast<int>(e4);
        double base = std::sqrt(std::sqrt(a));
        double result = 1.0;
        while (n > 0) {
            if (n & 1) result *= base;
            base *= base;
            n >>= 1;
        }
        return result;
    }
    return std::pow(a, e);
}

double signed_power(double z, double e) {
    const double m = abs_power(z, e);
    return z < 0.0 ? -m : m;
}

void synthesize_serial(std::span<const double> table, int n_modes, int n_nodes,
                       std::span<const double> coeffs, std::span<double> out) {
    for (int k = 0; k < n_nodes; ++k) {
        double acc = 0.0;
        for (int j = 0; j < n_modes; ++j)
            acc += coeffs[j] * table[static_cast<size_t>(j) * n_nodes + k];
        out[k] = acc;
    }
}

void synthesize_parallel(std::span<const double> table, int n_modes, int n_nodes,
                         std::span<const double> coeffs, std::span<double> out) {
    const double* tab = table.data();
    const double* cf = coeffs.data();
    double* o = out.data();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int k = 0; k < n_nodes; ++k) {
        double acc = 0.0;
        for (int j = 0; j < n_modes; ++j)
            acc += cf[j] * tab[static_cast<size_t>(j) * n_nodes + k];
        o[k] = acc;
    }
}

void synthesize(std::span<const double> table, int n_modes, int n_nodes,
                std::span<const double> coeffs, std::span<double> out, Exec exec) {
    if (use_parallel_matvec(exec, static_cast<long>(n_modes) * n_nodes))
        synthesize_parallel(table, n_modes, n_nodes, coeffs, out);
    else
        synthesize_serial(table, n_modes, n_nodes, coeffs, out);
}

void assemble_load_serial(std::span<const double> table, int n_modes, int n_nodes,
                          std::span<const double> density, std::span<double> out) {
    for (int j = 0; j < n_modes; ++j) {
        const double* row = table.data() + static_cast<size_t>(j) * n_nodes;
        double acc = 0.0;
        for (int k = 0; k < n_nodes; ++k) acc += density[k] * row[k];
        out[j] = acc;
    }
}

void assemble_load_parallel(std::span<const double> table, int n_modes, int n_nodes,
                            std::span<const double> density, std::span<double> out) {
    const double* tab = table.data();
    const double* den = density.data();
    double* o = out.data();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < n_modes; ++j) {
        const double* row = tab + static_cast<size_t>(j) * n_nodes;
        double acc = 0.0;
        for (int k = 0; k < n_nodes; ++k) acc += den[k] * row[k];
        o[j] = acc;
    }
}

void assemble_load(std::span<const double> table, int n_modes, int n_nodes,
                   std::span<const double> density, std::span<double> out, Exec exec) {
    if (use_parallel_matvec(exec, static_cast<long>(n_modes) * n_nodes))
        assemble_load_parallel(table, n_modes, n_nodes, density, out);
    else
        assemble_load_serial(table, n_modes, n_nodes, density, out);
}

void pflux_density_serial(std::span<const double> grad, std::span<const double> weight,
                          double p, std::span<double> out) {
    const double e = p - 1.0;
    for (size_t k = 0; k < grad.size(); ++k)
        out[k] = weight[k] * signed_power(grad[k], e);
}

void pflux_density_parallel(std::span<const double> grad, std::span<const double> weight,
                            double p, std::span<double> out) {
    const double e = p - 1.0;
    const double* g = grad.data();
    const double* w = weight.data();
    double* o = out.data();
    const long n = static_cast<long>(grad.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long k = 0; k < n; ++k) o[k] = w[k] * signed_power(g[k], e);
}

void pflux_density(std::span<const double> grad, std::span<const double> weight,
                   double p, std::span<double> out, Exec exec) {
    if (use_parallel_pointwise(exec, static_cast<long>(grad.size())))
        pflux_density_parallel(grad, weight, p, out);
    else
        pflux_density_serial(grad, weight, p, out);
}

}  // namespace plapwave::kernels
