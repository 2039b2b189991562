#include "entroclust/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace entroclust {

QuadratureRule gauss_hermite(int order) {
    if (order < 1) throw std::domain_error("gauss_hermite: order must be >= 1");
    const int n = order;
    QuadratureRule rule;
    rule.order = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    // Roots of the physicists' Hermite polynomial H_n by Newton iteration,
    // working with the orthonormalized recurrence to avoid overflow.
    const double pi_m4 = 0.7511255444649425;  // pi^{-1/4}
    std::vector<double> x(n), w(n);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * x[1];
        else
            z = 2.0 * z - x[i - 2];
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pi_m4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }

    // Physicists' convention integrates against e^{-t^2}; rescale to N(0,1).
    const double sqrt_pi = std::sqrt(std::acos(-1.0));
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = x[n - 1 - i] * std::sqrt(2.0);  // ascending order
        rule.weights[i] = w[n - 1 - i] / sqrt_pi;
    }
    return rule;
}

const QuadratureRule& default_quadrature() {
    static const QuadratureRule rule = gauss_hermite(64);
    return rule;
}

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 15>::integrate(f, lo, hi, 15, rel_tol);
}

}  // namespace entroclust
