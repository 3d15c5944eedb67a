#include "plapwave/function_space.hpp"

#include <cmath>

#include "plapwave/errors.hpp"

namespace plapwave {

double uniform_pm1(std::uint64_t& state) {
    // splitmix64; fixed algorithm so sequences are stable across platforms.
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
}

FieldSample sample_coeffs(const SpectralBasis& basis, std::span<const double> coeffs,
                          kernels::Exec exec) {
    const QuadratureRule& quad = basis.quad();
    FieldSample s;
    s.quad = &quad;
    s.values.resize(quad.size());
    s.derivs.resize(quad.size());
    const int n = static_cast<int>(coeffs.size());
    kernels::synthesize(basis.value_table(), n, quad.size(), coeffs, s.values, exec);
    kernels::synthesize(basis.deriv_table(), n, quad.size(), coeffs, s.derivs, exec);
    double t0 = 0.0, tL = 0.0;
    for (int j = 0; j < n; ++j) {
        t0 += coeffs[j] * basis.trace0(j + 1);
        tL += coeffs[j] * basis.traceL(j + 1);
    }
    s.trace0 = t0;
    s.traceL = tL;
    return s;
}

DiscreteFunction::DiscreteFunction(const SpectralBasis& basis, std::vector<double> coeffs,
                                   kernels::Exec exec)
    : basis_(&basis), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) > basis.size())
        throw IndexOutOfRange("DiscreteFunction: more coefficients than modes");
    sample_ = sample_coeffs(basis, coeffs_, exec);
}

double lp_norm(const FieldSample& u, double s, Region region) {
    if (region == Region::Boundary)
        return std::pow(kernels::abs_power(u.trace0, s) + kernels::abs_power(u.traceL, s),
                        1.0 / s);
    double acc = 0.0;
    for (size_t k = 0; k < u.values.size(); ++k)
        acc += u.quad->weights[k] * kernels::abs_power(u.values[k], s);
    return std::pow(acc, 1.0 / s);
}

double lp_norm(const DiscreteFunction& u, double s, Region region) {
    return lp_norm(u.sample(), s, region);
}

double w1p_norm(const FieldSample& u, double p) {
    double acc = 0.0;
    for (size_t k = 0; k < u.derivs.size(); ++k)
        acc += u.quad->weights[k] * kernels::abs_power(u.derivs[k], p);
    acc += kernels::abs_power(u.trace0, p) + kernels::abs_power(u.traceL, p);
    return std::pow(acc, 1.0 / p);
}

double w1p_norm(const DiscreteFunction& u, double p) { return w1p_norm(u.sample(), p); }

double plap_pairing(const FieldSample& u, const FieldSample& phi, double p) {
    const double e = p - 1.0;
    double acc = 0.0;
    for (size_t k = 0; k < u.derivs.size(); ++k)
        acc += u.quad->weights[k] * kernels::signed_power(u.derivs[k], e) * phi.derivs[k];
    acc += kernels::signed_power(u.trace0, e) * phi.trace0;
    acc += kernels::signed_power(u.traceL, e) * phi.traceL;
    return acc;
}

double plap_pairing(const DiscreteFunction& u, const DiscreteFunction& phi, double p) {
    return plap_pairing(u.sample(), phi.sample(), p);
}

double damping_pairing(const FieldSample& v, const FieldSample& phi) {
    return plap_pairing(v, phi, 2.0);
}

double damping_pairing(const DiscreteFunction& v, const DiscreteFunction& phi) {
    return plap_pairing(v.sample(), phi.sample(), 2.0);
}

DualNormReport dual_norm_bound_check(const DiscreteFunction& u, double p, int trials,
                                     std::uint64_t rng_seed) {
    if (trials < 1) throw Error("dual_norm_bound_check: need trials >= 1");
    const SpectralBasis& basis = u.basis();
    const double u_norm = w1p_norm(u, p);
    const double bound_base = 2.0 * kernels::abs_power(u_norm, p - 1.0);

    DualNormReport report;
    report.trials = trials;
    std::uint64_t state = rng_seed;
    std::vector<double> phi_coeffs(basis.size());
    for (int trial = 0; trial < trials; ++trial) {
        for (double& c : phi_coeffs) c = uniform_pm1(state);
        DiscreteFunction phi(basis, phi_coeffs);
        const double pairing = plap_pairing(u, phi, p);
        const double denom = bound_base * w1p_norm(phi, p);
        const double ratio = denom > 0.0 ? std::abs(pairing) / denom
                                         : (pairing == 0.0 ? 0.0 : HUGE_VAL);
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.worst_phi = phi_coeffs;
        }
    }
    if (report.max_ratio > 1.0 + 1e-8)
        throw BoundViolation("dual norm bound violated: ratio " +
                                 std::to_string(report.max_ratio),
                             report.worst_phi);
    return report;
}

}  // namespace plapwave
