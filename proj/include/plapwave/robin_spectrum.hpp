#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "plapwave/quadrature.hpp"

namespace plapwave {

// The interval [0, L] with outward normals -1 at x=0 and +1 at x=L.
struct DomainSpec {
    double length = 3.14159265358979323846;
};

// One eigenpair of A = -d^2/dx^2 under the Robin condition dnu(w) + w = 0 at
// both endpoints.  The left condition forces w(x) = mu*cos(mu x) + sin(mu x)
// up to scale; the right condition holds exactly when
//     R(mu) = (1 - mu^2) sin(mu L) + 2 mu cos(mu L) = 0.
// norm_const rescales so ||w||_L2 = 1 under the attached quadrature rule.
struct RobinEigenpair {
    int index = 0;       // 1-based
    double mu = 0.0;     // sqrt(lambda)
    double lambda = 0.0;
    double norm_const = 0.0;
};

double characteristic_residual(double mu, double length);

// Eigenbasis of A with cached values of w_j and w_j' at every quadrature node
// and both endpoints.  Immutable once built; safe to share across threads.
class SpectralBasis {
public:
    SpectralBasis(DomainSpec domain, std::vector<RobinEigenpair> pairs,
                  QuadratureRule quad);

    int size() const { return static_cast<int>(pairs_.size()); }
    const DomainSpec& domain() const { return domain_; }
    const QuadratureRule& quad() const { return quad_; }
    const std::vector<RobinEigenpair>& pairs() const { return pairs_; }
    const RobinEigenpair& pair(int j) const;  // 1-based

    // Closed-form w_j(x) (order 0) or w_j'(x) (order 1); throws
    // IndexOutOfRange for j outside [1, N].
    double evaluate(int j, double x, int derivative_order) const;

    // Mode-major cache tables, row j-1 = mode j at all quadrature nodes.
    std::span<const double> value_table() const { return values_; }
    std::span<const double> deriv_table() const { return derivs_; }
    std::span<const double> values(int j) const;
    std::span<const double> derivs(int j) const;
    double trace0(int j) const { return trace0_[j - 1]; }
    double traceL(int j) const { return traceL_[j - 1]; }
    std::span<const double> trace0_all() const { return trace0_; }
    std::span<const double> traceL_all() const { return traceL_; }
    double lambda(int j) const { return pairs_[j - 1].lambda; }
    std::span<const double> lambdas() const { return lambdas_; }

private:
    DomainSpec domain_;
    std::vector<RobinEigenpair> pairs_;
    QuadratureRule quad_;
    std::vector<double> values_;   // size N * nodes
    std::vector<double> derivs_;
    std::vector<double> trace0_, traceL_;
    std::vector<double> lambdas_;
};

// Scans mu on a uniform grid, brackets sign changes of the characteristic
// residual, refines each root by bisection to width `tol` and a terminal
// Newton polish.  Throws BracketFailure if fewer than n_modes sign changes
// are found in the scan window.
std::vector<RobinEigenpair> compute_eigenpairs(const DomainSpec& domain, int n_modes,
                                               double tol, const QuadratureRule& quad);

SpectralBasis build_basis(const DomainSpec& domain, int n_modes,
                          const QuadratureRule& quad, double tol = 1e-12);

// A^s on coefficient vectors: component j scaled by lambda_j^s.
std::vector<double> fractional_power_apply(const SpectralBasis& basis, double s,
                                           std::span<const double> coeffs);

// L2 projection onto span{w_1..w_N}: returns ((f, w_j))_j via quadrature.
std::vector<double> project(const SpectralBasis& basis,
                            const std::function<double(double)>& f);

}  // namespace plapwave
