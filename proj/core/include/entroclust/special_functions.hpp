#pragma once

#include <array>

namespace entroclust {

// Logistic entropy loss: rho(x) = log(1 + e^x) - x e^x / (1 + e^x).
// Even, bounded in [0, log 2], overflow-safe for |x| up to ~700.
double logistic_entropy(double x);

// g(x) = x e^x / (1 + e^x)^2 = -rho'(x). Odd; positive for x > 0.
double entropy_score(double x);

// Curvature kernel alpha(x) = -e^x/(1+e^x)^2 (1 + x (1-e^x)/(1+e^x)) = -g'(x).
// Even; alpha(0) = -1/4; unique positive root x1 ~ 1.5434.
double curvature(double x);

// alpha'(x) = 1/4 (1 - tanh^2(x/2)) [x/2 (1 - 3 tanh^2(x/2)) + 2 tanh(x/2)].
double curvature_deriv(double x);

// Unique positive root of `curvature`, by bisection on [1.5, 1.6] to 1e-13.
double find_curvature_root();

// Standard Gaussian density, upper tail, and Mill's ratio G = tail/density.
// mills_ratio uses a continued-fraction branch for large x; stable to x = 40.
double gaussian_pdf(double x);
double gaussian_tail(double x);
double mills_ratio(double x);

// Residuals of the three Mill's-ratio identities
//   x G - G' = 1,  G'' - x G' - G = 0,  G''' - 2 G' - x G'' = 0
// with derivatives taken by central finite differences of mills_ratio.
// Each residual is normalized by the local equation scale
// max(1, |G(x)| (1 + x^2)) so the tolerance is meaningful where G blows up
// (G ~ e^{x^2/2} for x -> -inf).
std::array<double, 3> mills_ode_residuals(double x);

enum class LipschitzMode { exact, paper_bound };

struct TheoryConstants {
    double x1;  // positive root of the curvature kernel
    double L;   // Lipschitz constant of the loss: max|g| in exact mode, 2.5 otherwise
    LipschitzMode lipschitz_mode;
};

TheoryConstants make_theory_constants(LipschitzMode mode = LipschitzMode::exact);

}  // namespace entroclust
