#pragma once

#include "entroclust/data_gen.hpp"
#include "entroclust/estimator.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace entroclust {

enum class CheckStatus { pass, fail, skipped };

struct LemmaReport {
    std::string lemma_id;
    CheckStatus status = CheckStatus::fail;
    double worst_violation = 0.0;  // positive means the inequality was broken by this much
    std::size_t grid_size = 0;
    double tolerance = 0.0;
    std::string notes;
};

struct CheckOptions {
    bool quick = false;          // shrink grids / Monte Carlo budgets
    std::uint64_t seed = 1234;   // base seed for randomized checks
    int threads = 1;             // checks run in a shared pool when > 1
};

// Every check id the suite knows about, in canonical report order.
std::vector<std::string> known_checks();

std::vector<LemmaReport> run_checks(std::span<const std::string> ids, const CheckOptions& opts);
std::vector<LemmaReport> run_all_checks(const CheckOptions& opts);

// Serialize reports as a JSON array (each element carries "schema": 1).
std::string report_to_json(std::span<const LemmaReport> reports);
void emit_report(std::span<const LemmaReport> reports, const std::string& path);

// Granular entry points used by tests and by the batch runner.
LemmaReport check_sign_lemma(std::span<const double> mu_grid, std::span<const double> r_grid,
                             int mc_samples, std::uint64_t seed);
LemmaReport check_hessian_theorem(std::span<const double> a_norm_grid, double R);
LemmaReport check_quadratic_growth(double a_norm, double R, int n_samples, std::uint64_t seed);
LemmaReport check_essential_and_oracle_inequalities(const FitResult& fit, const Dataset& data,
                                                    const MixtureSpec& spec,
                                                    const FitConfig& config);
std::vector<LemmaReport> check_scalar_lemmas(bool quick);

}  // namespace entroclust
