#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "plapwave/kernels.hpp"
#include "plapwave/robin_spectrum.hpp"

namespace plapwave {

enum class Region { Interior, Boundary };

// Nodal view of a function on the quadrature grid: values and first
// derivatives at all nodes plus the two endpoint traces.  Everything in this
// module is defined on such views, so test oracles can evaluate functionals
// on exact closed-form data without going through a basis expansion.
struct FieldSample {
    const QuadratureRule* quad = nullptr;
    std::vector<double> values;
    std::vector<double> derivs;
    double trace0 = 0.0;
    double traceL = 0.0;
};

// u_N = sum_j c_j w_j with cached nodal values, derivatives and traces.
class DiscreteFunction {
public:
    DiscreteFunction(const SpectralBasis& basis, std::vector<double> coeffs,
                     kernels::Exec exec = kernels::default_exec());

    const SpectralBasis& basis() const { return *basis_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const FieldSample& sample() const { return sample_; }

private:
    const SpectralBasis* basis_;
    std::vector<double> coeffs_;
    FieldSample sample_;
};

FieldSample sample_coeffs(const SpectralBasis& basis, std::span<const double> coeffs,
                          kernels::Exec exec = kernels::default_exec());

// ||u||_{L^s} over the interval, or the two-point boundary norm
// (|u(0)|^s + |u(L)|^s)^{1/s}.
double lp_norm(const FieldSample& u, double s, Region region);
double lp_norm(const DiscreteFunction& u, double s, Region region);

// ||u||_{1,p} = (int |u'|^p dx + |u(0)|^p + |u(L)|^p)^{1/p}.
double w1p_norm(const FieldSample& u, double p);
double w1p_norm(const DiscreteFunction& u, double p);

// <-Delta_p u, phi> = int |u'|^{p-2} u' phi' dx + sum_{x in {0,L}} |u|^{p-2} u phi.
// At nodes where u' = 0 the integrand is 0 by continuous extension.
double plap_pairing(const FieldSample& u, const FieldSample& phi, double p);
double plap_pairing(const DiscreteFunction& u, const DiscreteFunction& phi, double p);

// The damping pairing is the p = 2 case.
double damping_pairing(const FieldSample& v, const FieldSample& phi);
double damping_pairing(const DiscreteFunction& v, const DiscreteFunction& phi);

struct DualNormReport {
    int trials = 0;
    double max_ratio = 0.0;
    std::vector<double> worst_phi;  // coefficients of the maximizing test function
};

// Checks |<-Delta_p u, phi>| <= 2 ||u||_{1,p}^{p-1} ||phi||_{1,p} against
// `trials` random phi in the basis span; returns the largest observed ratio.
// Throws BoundViolation (carrying the witness) if any ratio exceeds
// 1 + 1e-8.
DualNormReport dual_norm_bound_check(const DiscreteFunction& u, double p, int trials,
                                     std::uint64_t rng_seed);

// Deterministic uniform double in [-1, 1) from a 64-bit generator state;
// used wherever reproducible random coefficients are needed.
double uniform_pm1(std::uint64_t& state);

}  // namespace plapwave
