#include "plapwave/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "plapwave/errors.hpp"

namespace plapwave {

void gauss_legendre_reference(int n, std::vector<double>& nodes,
                              std::vector<double>& weights) {
    if (n < 1) throw Error("gauss_legendre_reference: need n >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev guess, then Newton on P_n via the three-term recurrence.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadratureRule composite_gauss_legendre(double length, int subintervals,
                                        int points_per_subinterval) {
    if (length <= 0.0) throw Error("quadrature: length must be positive");
    if (subintervals < 1 || points_per_subinterval < 1)
        throw Error("quadrature: subintervals and points must be >= 1");

    std::vector<double> ref_nodes, ref_weights;
    gauss_legendre_reference(points_per_subinterval, ref_nodes, ref_weights);

    QuadratureRule rule;
    rule.subintervals = subintervals;
    rule.points_per_subinterval = points_per_subinterval;
    rule.length = length;
    rule.nodes.reserve(static_cast<size_t>(subintervals) * points_per_subinterval);
    rule.weights.reserve(rule.nodes.capacity());

    const double h = length / subintervals;
    for (int s = 0; s < subintervals; ++s) {
        const double a = s * h;
        for (int i = 0; i < points_per_subinterval; ++i) {
            rule.nodes.push_back(a + 0.5 * h * (ref_nodes[i] + 1.0));
            rule.weights.push_back(0.5 * h * ref_weights[i]);
        }
    }
    return rule;
}

}  // namespace plapwave
