#pragma once

#include <span>

namespace plapwave::kernels {

// Execution mode for the node/mode loops.  Serial is the reference
// implementation; Parallel uses OpenMP when compiled in and must produce
// bit-identical results (every output element is an independent serial sum,
// so the schedule cannot change the arithmetic).
enum class Exec { Serial, Parallel };

Exec default_exec();
bool openmp_enabled();
int max_threads();

// out[k] = sum_j coeffs[j] * table[j*n_nodes + k],  k = 0..n_nodes-1.
// `table` is mode-major (row j holds mode j sampled at all nodes).
void synthesize(std::span<const double> table, int n_modes, int n_nodes,
                std::span<const double> coeffs, std::span<double> out, Exec exec);
void synthesize_serial(std::span<const double> table, int n_modes, int n_nodes,
                       std::span<const double> coeffs, std::span<double> out);
void synthesize_parallel(std::span<const double> table, int n_modes, int n_nodes,
                         std::span<const double> coeffs, std::span<double> out);

// out[j] = sum_k density[k] * table[j*n_nodes + k],  j = 0..n_modes-1.
void assemble_load(std::span<const double> table, int n_modes, int n_nodes,
                   std::span<const double> density, std::span<double> out, Exec exec);
void assemble_load_serial(std::span<const double> table, int n_modes, int n_nodes,
                          std::span<const double> density, std::span<double> out);
void assemble_load_parallel(std::span<const double> table, int n_modes, int n_nodes,
                            std::span<const double> density, std::span<double> out);

// out[k] = weight[k] * |g[k]|^(p-2) g[k]  (the p-Laplacian flux density).
void pflux_density(std::span<const double> grad, std::span<const double> weight,
                   double p, std::span<double> out, Exec exec);
void pflux_density_serial(std::span<const double> grad, std::span<const double> weight,
                          double p, std::span<double> out);
void pflux_density_parallel(std::span<const double> grad, std::span<const double> weight,
                            double p, std::span<double> out);

// True when the dispatch wrappers would take the OpenMP path for a pointwise
// loop of n elements; other modules reuse it for their own node loops.
bool pointwise_parallel(Exec exec, long n);

// sign(z)|z|^e with the continuous extension 0 at z = 0.  Half-integer
// exponents take a sqrt-based fast path; the branch depends only on `e`,
// so a fixed exponent always evaluates through the same instructions.
double signed_power(double z, double e);
double abs_power(double z, double e);

}  // namespace plapwave::kernels
