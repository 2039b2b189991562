#pragma once

#include <functional>
#include <vector>

namespace entroclust {

// Nodes/weights for E[f(N)], N ~ N(0,1): Gauss-Hermite in probabilist
// normalization (weights sum to 1, second moment 1).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;

    template <class F>
    double expect(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

QuadratureRule gauss_hermite(int order);

// Default rule shared by the risk engine (order 64), built once.
const QuadratureRule& default_quadrature();

// Adaptive oracle for cross-checks: integrates f over [lo, hi] to rel_tol.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double rel_tol = 1e-12);

}  // namespace entroclust
