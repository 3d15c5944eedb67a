#pragma once

#include <vector>

namespace plapwave {

// Composite Gauss-Legendre rule on [0, L]: `subintervals` equal panels with
// `points_per_subinterval` nodes each.  Exact for polynomials of degree
// 2*points-1 on each panel; weights are positive and sum to L.
struct QuadratureRule {
    int subintervals = 0;
    int points_per_subinterval = 0;
    double length = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

QuadratureRule composite_gauss_legendre(double length, int subintervals,
                                        int points_per_subinterval);

// Nodes/weights of the n-point rule on [-1, 1], computed by Newton iteration
// on the Legendre polynomial from Chebyshev initial guesses.
void gauss_legendre_reference(int n, std::vector<double>& nodes,
                              std::vector<double>& weights);

}  // namespace plapwave
