#pragma once

#include "entroclust/data_gen.hpp"
#include "entroclust/special_functions.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace entroclust {

struct FitConfig {
    double R = 0.0;             // ball radius; 0 => sqrt(x1 + 0.08)
    double lambda = 0.0;        // l1 weight
    double T = 1.5;             // margin factor used when lambda derives from lambda0
    double step_init = 0.0;     // 0 => 1/(L * mean row l2 norm^2)
    double backtrack_factor = 0.5;
    double tol_objective = 1e-10;
    int max_iter = 1000;
    int restarts = 3;           // random starts; a spectral warm start is always added
    std::uint64_t seed = 0;
    std::vector<double> u_direction;  // empty => seeded random unit direction
    int threads = 1;
};

struct FitResult {
    std::vector<double> beta_hat;
    double objective = 0.0;
    std::vector<double> objective_trace;  // winning start, one value per accepted step
    int n_iter_total = 0;
    int restart_winner = 0;  // 0 = spectral warm start, k >= 1 = k-th random start
    std::vector<int> active_set;
    bool aligned = false;    // beta_hat^t U >= 0 after the final sign flip
    bool converged = false;  // every start met tol_objective before max_iter
    double lambda = 0.0;     // effective l1 weight
    std::vector<double> u_direction;
};

struct SupportError {
    double l1_off_support = 0.0;
    bool exact_recovery = false;
};

// Truncation level ||a||_inf + sqrt(2 log d) + sqrt(2 log(1+n)).
double mn_constant(int n, int d, double a_inf);

// Noise level 3 L Mn (5 sqrt(3 log 2d) log n + 4) / sqrt(n); requires n >= 2.
double lambda0(int n, int d, double a_inf, const TheoryConstants& constants);

std::vector<double> soft_threshold(std::span<const double> beta, double t);
std::vector<double> project_to_ball(std::span<const double> beta, double R);

// One solver update: project soft_threshold(beta - step * grad, step * lambda)
// onto the radius-R ball.
std::vector<double> proximal_step(std::span<const double> beta, std::span<const double> grad,
                                  double step, double lambda, double R);

// Multistart proximal gradient minimization of the penalized empirical risk
// over the ball, with the sign chosen so that beta_hat^t U >= 0.
FitResult fit(const Dataset& data, const FitConfig& config);

std::vector<int> predict(std::span<const double> beta_hat, const Dataset& X_new);

SupportError support_error(std::span<const double> beta_hat, const MixtureSpec& spec, double R);

// JSON document per the external schema: beta_hat, objective, n_iter_total,
// restart_winner, active_set, l1_off_support, config_echo.
std::string fit_result_to_json(const FitResult& result, const FitConfig& config,
                               std::optional<double> l1_off_support,
                               std::optional<double> lambda0_value = std::nullopt,
                               std::optional<double> mn_value = std::nullopt);

}  // namespace entroclust
