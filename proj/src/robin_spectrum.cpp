#include "plapwave/robin_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "plapwave/errors.hpp"
#include "plapwave/kernels.hpp"

namespace plapwave {

namespace {

// Unnormalized eigenfunction satisfying the left Robin condition w'(0) = w(0).
double raw_value(double mu, double x) {
    return mu * std::cos(mu * x) + std::sin(mu * x);
}

double raw_deriv(double mu, double x) {
    return -mu * mu * std::sin(mu * x) + mu * std::cos(mu * x);
}

double residual_derivative(double mu, double L) {
    // d/dmu of (1 - mu^2) sin(mu L) + 2 mu cos(mu L)
    return -2.0 * mu * std::sin(mu * L) + (1.0 - mu * mu) * L * std::cos(mu * L) +
           2.0 * std::cos(mu * L) - 2.0 * mu * L * std::sin(mu * L);
}

// Bisection to width `tol` inside a sign-change bracket, then a short Newton
// polish that is rejected if it leaves the bracket.  The polish is what
// drives |R(mu)| to rounding level; bisection alone leaves a residual of
// order tol * |R'|.
double refine_root(double lo, double hi, double L, double tol) {
    double flo = characteristic_residual(lo, L);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = characteristic_residual(mid, L);
        if (fmid == 0.0) return mid;
        if ((flo < 0.0) == (fmid < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    double best = 0.5 * (lo + hi);
    double best_abs = std::abs(characteristic_residual(best, L));
    double x = best;
    for (int iter = 0; iter < 6; ++iter) {
        const double d = residual_derivative(x, L);
        if (d == 0.0) break;
        const double step = characteristic_residual(x, L) / d;
        const double next = x - step;
        if (next < lo || next > hi) break;
        x = next;
        const double r = std::abs(characteristic_residual(x, L));
        if (r < best_abs) {
            best = x;
            best_abs = r;
        }
        if (std::abs(step) < 1e-16 * std::max(1.0, x)) break;
    }
    return best;
}

}  // namespace

double characteristic_residual(double mu, double length) {
    return (1.0 - mu * mu) * std::sin(mu * length) + 2.0 * mu * std::cos(mu * length);
}

std::vector<RobinEigenpair> compute_eigenpairs(const DomainSpec& domain, int n_modes,
                                               double tol, const QuadratureRule& quad) {
    if (n_modes < 1) throw Error("compute_eigenpairs: need n_modes >= 1");
    if (tol <= 0.0) throw Error("compute_eigenpairs: need tol > 0");
    const double L = domain.length;
    if (L <= 0.0) throw Error("compute_eigenpairs: need positive length");

    // mu = 0 admits only the trivial solution, so the scan starts just above 0.
    const double step = std::min(0.1, std::numbers::pi / (4.0 * L));
    const double mu_max = (n_modes + 2) * std::numbers::pi / L + 2.0;

    std::vector<double> roots;
    double mu_prev = step;
    double f_prev = characteristic_residual(mu_prev, L);
    while (mu_prev < mu_max && static_cast<int>(roots.size()) < n_modes) {
        const double mu_next = mu_prev + step;
        const double f_next = characteristic_residual(mu_next, L);
        if (f_prev == 0.0) {
            roots.push_back(mu_prev);
        } else if ((f_prev < 0.0) != (f_next < 0.0)) {
            roots.push_back(refine_root(mu_prev, mu_next, L, tol));
        }
        mu_prev = mu_next;
        f_prev = f_next;
    }
    if (static_cast<int>(roots.size()) < n_modes)
        throw BracketFailure("compute_eigenpairs: found " +
                             std::to_string(roots.size()) + " sign changes, need " +
                             std::to_string(n_modes) +
                             " (scan window too small?)");

    std::vector<RobinEigenpair> pairs;
    pairs.reserve(n_modes);
    for (int j = 0; j < n_modes; ++j) {
        const double mu = roots[j];
        double nrm2 = 0.0;
        for (int k = 0; k < quad.size(); ++k) {
            const double w = raw_value(mu, quad.nodes[k]);
            nrm2 += quad.weights[k] * w * w;
        }
        RobinEigenpair pair;
        pair.index = j + 1;
        pair.mu = mu;
        pair.lambda = mu * mu;
        pair.norm_const = 1.0 / std::sqrt(nrm2);  // positive by convention
        pairs.push_back(pair);
    }
    return pairs;
}

SpectralBasis::SpectralBasis(DomainSpec domain, std::vector<RobinEigenpair> pairs,
                             QuadratureRule quad)
    : domain_(domain), pairs_(std::move(pairs)), quad_(std::move(quad)) {
    const int n = size();
    const int m = quad_.size();
    values_.resize(static_cast<size_t>(n) * m);
    derivs_.resize(static_cast<size_t>(n) * m);
    trace0_.resize(n);
    traceL_.resize(n);
    lambdas_.resize(n);
    for (int j = 0; j < n; ++j) {
        const double mu = pairs_[j].mu;
        const double c = pairs_[j].norm_const;
        double* vrow = values_.data() + static_cast<size_t>(j) * m;
        double* drow = derivs_.data() + static_cast<size_t>(j) * m;
        for (int k = 0; k < m; ++k) {
            vrow[k] = c * raw_value(mu, quad_.nodes[k]);
            drow[k] = c * raw_deriv(mu, quad_.nodes[k]);
        }
        trace0_[j] = c * raw_value(mu, 0.0);
        traceL_[j] = c * raw_value(mu, domain_.length);
        lambdas_[j] = pairs_[j].lambda;
    }
}

const RobinEigenpair& SpectralBasis::pair(int j) const {
    if (j < 1 || j > size())
        throw IndexOutOfRange("SpectralBasis::pair: index " + std::to_string(j));
    return pairs_[j - 1];
}

double SpectralBasis::evaluate(int j, double x, int derivative_order) const {
    if (j < 1 || j > size())
        throw IndexOutOfRange("SpectralBasis::evaluate: index " + std::to_string(j));
    const double mu = pairs_[j - 1].mu;
    const double c = pairs_[j - 1].norm_const;
    return derivative_order == 0 ? c * raw_value(mu, x) : c * raw_deriv(mu, x);
}

std::span<const double> SpectralBasis::values(int j) const {
    return {values_.data() + static_cast<size_t>(j - 1) * quad_.size(),
            static_cast<size_t>(quad_.size())};
}

std::span<const double> SpectralBasis::derivs(int j) const {
    return {derivs_.data() + static_cast<size_t>(j - 1) * quad_.size(),
            static_cast<size_t>(quad_.size())};
}

SpectralBasis build_basis(const DomainSpec& domain, int n_modes,
                          const QuadratureRule& quad, double tol) {
    return SpectralBasis(domain, compute_eigenpairs(domain, n_modes, tol, quad), quad);
}

std::vector<double> fractional_power_apply(const SpectralBasis& basis, double s,
                                           std::span<const double> coeffs) {
    if (static_cast<int>(coeffs.size()) > basis.size())
        throw IndexOutOfRange("fractional_power_apply: more coefficients than modes");
    std::vector<double> out(coeffs.begin(), coeffs.end());
    if (s == 0.0) return out;
    for (size_t j = 0; j < out.size(); ++j)
        out[j] *= std::pow(basis.lambda(static_cast<int>(j) + 1), s);
    return out;
}

std::vector<double> project(const SpectralBasis& basis,
                            const std::function<double(double)>& f) {
    const QuadratureRule& quad = basis.quad();
    std::vector<double> weighted(quad.size());
    for (int k = 0; k < quad.size(); ++k)
        weighted[k] = quad.weights[k] * f(quad.nodes[k]);
    std::vector<double> out(basis.size());
    kernels::assemble_load(basis.value_table(), basis.size(), quad.size(), weighted,
                           out, kernels::Exec::Serial);
    return out;
}

}  // namespace plapwave
