#pragma once

#include "entroclust/data_gen.hpp"
#include "entroclust/quadrature.hpp"

#include <span>
#include <vector>

namespace entroclust {

// The population risk of a direction beta depends on beta only through
// mu = beta^t a and r = ||beta||_2: it equals E[rho(mu + r N)], N ~ N(0,1).
struct RiskPoint {
    double mu = 0.0;
    double r = 0.0;
    double value = 0.0;
    double d_mu = 0.0;
    double d_r = 0.0;
};

// Closed-form constants of the local quadratic growth of the excess risk.
struct GrowthConstants {
    double R = 0.0;
    double a_norm = 0.0;
    double lambda_min_bound = 0.0;  // curvature floor at the minimizer
    double eps_max = 0.0;           // radius where the local expansion applies
    double c0 = 0.0;                // global growth constant over the half-ball
};

double population_risk(double mu, double r, const QuadratureRule& quad = default_quadrature());
double risk_gradient_mu(double mu, double r, const QuadratureRule& quad = default_quadrature());
double risk_gradient_r(double u, double r, const QuadratureRule& quad = default_quadrature());
RiskPoint evaluate_risk_point(double mu, double r,
                              const QuadratureRule& quad = default_quadrature());

double population_risk_of_beta(std::span<const double> beta, std::span<const double> a,
                               const QuadratureRule& quad = default_quadrature());

// R(beta) - R(beta0) with beta0 = R a/||a||, the ball minimizer.
double excess_risk(std::span<const double> beta, std::span<const double> a, double R,
                   const QuadratureRule& quad = default_quadrature());

double empirical_risk(std::span<const double> beta, const Dataset& data);
std::vector<double> empirical_gradient(std::span<const double> beta, const Dataset& data);

// Quadratic form of the risk Hessian at beta0 on a unit vector whose
// component along beta0 has norm eta:
//   eta^2 E[(Z^t beta0)^2 alpha(Z^t beta0)]/R^2 + (1-eta^2) E[alpha(Z^t beta0)]
// with Z^t beta0 ~ N(R ||a||, R^2).
double hessian_quadratic_form_at_beta0(double a_norm, double R, double eta,
                                       const QuadratureRule& quad = default_quadrature());

// Dense d x d population Hessian E[X_u X_v alpha(X^t beta)] (the +alpha
// convention), reduced to one-dimensional Gaussian integrals.
std::vector<double> population_hessian(std::span<const double> beta, std::span<const double> a,
                                       const QuadratureRule& quad = default_quadrature());

// (nu/4)(Phi^c(||a|| - x1/R) - Phi^c(||a|| + x1/R)) with nu = 0.95.
// Requires ||a|| >= 2R and R >= sqrt(x1 + 0.08); otherwise hypothesis_error.
double lambda_min_lower_bound(double a_norm, double R);

// R(1 - (R - ||a|| + (x1+0.08)/R) G(x1/R + R - ||a||))
//   >= (1+nu) (e^{x1}/4) G(||a|| - x1/R), monotone in ||a||.
bool condition_inequality_holds(double a_norm, double R, double nu);

GrowthConstants growth_constants(double a_norm, double R);

// Lower bound on the directional derivative (d_beta R)(nu_dir), valid when
// a^t beta - 2||beta||^2 >= 0 and <nu_dir, beta> <= 0.
double linear_form_lower_bound(std::span<const double> beta, std::span<const double> nu_dir,
                               std::span<const double> a);

// Upper bound on the operator norm of the third derivative of the risk.
double trilinear_norm_bound(std::span<const double> beta, std::span<const double> a);

// Closed forms of int_z^inf x e^{-xi x} N(x; R||a||, R^2) dx and
// int_z^inf e^{-xi x} N(x; R||a||, R^2) dx.
double J_integral(double xi, double z, double a_norm, double R);
double K_integral(double xi, double z, double a_norm, double R);

// 2 (x1/R) gamma(||a|| + x1/R), a floor for the Gaussian-slab mass
// Phi^c(||a|| - x1/R) - Phi^c(||a|| + x1/R).
double tail_gap_lower_bound(double a_norm, double R);

// Reference ball radius sqrt(x1 + 0.08).
double reference_radius();

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

}  // namespace entroclust
