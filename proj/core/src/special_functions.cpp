#include "entroclust/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace entroclust {

namespace {

void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(who) + ": non-finite input");
}

// e^x / (1 + e^x)^2 = sigma(x) sigma(-x), computed from t = e^{-|x|} so the
// exponential never overflows. Even in x.
double sigmoid_product(double x) {
    const double t = std::exp(-std::abs(x));
    const double s = 1.0 + t;
    return t / (s * s);
}

constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2 pi)
constexpr double kInvSqrt2 = 0.7071067811865475244;    // 1/sqrt(2)

}  // namespace

double logistic_entropy(double x) {
    require_finite(x, "logistic_entropy");
    const double ax = std::abs(x);
    const double t = std::exp(-ax);
    // rho(x) = log1p(t) + |x| t / (1 + t), valid for all x by evenness.
    return std::log1p(t) + ax * t / (1.0 + t);
}

double entropy_score(double x) {
    require_finite(x, "entropy_score");
    return x * sigmoid_product(x);
}

double curvature(double x) {
    require_finite(x, "curvature");
    // alpha(x) = -pq (1 - x tanh(x/2)); both factors are even in x.
    return -sigmoid_product(x) * (1.0 - x * std::tanh(0.5 * x));
}

double curvature_deriv(double x) {
    require_finite(x, "curvature_deriv");
    // (1 - tanh^2(x/2))/4 = pq, evaluated as sigmoid_product to keep full
    // relative precision in the tails.
    const double s = std::tanh(0.5 * x);
    return sigmoid_product(x) * (0.5 * x * (1.0 - 3.0 * s * s) + 2.0 * s);
}

double find_curvature_root() {
    static const double root = [] {
        double lo = 1.5, hi = 1.6;
        if (!(curvature(lo) < 0.0 && curvature(hi) > 0.0))
            throw std::logic_error("find_curvature_root: bracket failure");
        while (hi - lo > 1e-13) {
            const double mid = 0.5 * (lo + hi);
            (curvature(mid) < 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return root;
}

double gaussian_pdf(double x) {
    require_finite(x, "gaussian_pdf");
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double gaussian_tail(double x) {
    require_finite(x, "gaussian_tail");
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double mills_ratio(double x) {
    require_finite(x, "mills_ratio");
    if (x < 5.0) {
        // Direct ratio; fine while erfc carries enough bits (x < 5 keeps the
        // tail above 3e-7) and pdf does not underflow (needs x > -38).
        return gaussian_tail(x) / gaussian_pdf(x);
    }
    // Laplace continued fraction G(x) = 1/(x + 1/(x + 2/(x + 3/(...)))),
    // evaluated by backward recurrence; converges fast for x >= 5.
    double f = x;
    for (int k = 60; k >= 1; --k) f = x + k / f;
    return 1.0 / f;
}

std::array<double, 3> mills_ode_residuals(double x) {
    require_finite(x, "mills_ode_residuals");
    const double h = 5e-3;
    double f[5];
    for (int i = 0; i < 5; ++i) f[i] = mills_ratio(x + (i - 2) * h);
    const double g0 = f[2];
    // Five-point stencils (O(h^4) for g1/g2, O(h^2) for g3).
    const double g1 = (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * h);
    const double g2 = (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12.0 * h * h);
    const double g3 = (f[4] - 2.0 * f[3] + 2.0 * f[1] - f[0]) / (2.0 * h * h * h);
    const double scale = std::max(1.0, std::abs(g0) * (1.0 + x * x));
    return {(x * g0 - g1 - 1.0) / scale, (g2 - x * g1 - g0) / scale,
            (g3 - 2.0 * g1 - x * g2) / scale};
}

TheoryConstants make_theory_constants(LipschitzMode mode) {
    TheoryConstants c;
    c.x1 = find_curvature_root();
    c.lipschitz_mode = mode;
    if (mode == LipschitzMode::paper_bound) {
        c.L = 2.5;
    } else {
        // max|g| is attained where g' = -alpha vanishes, i.e. at x1.
        c.L = entropy_score(c.x1);
    }
    return c;
}

}  // namespace entroclust
