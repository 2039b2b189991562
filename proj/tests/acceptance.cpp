// Acceptance suite: twelve criteria, one PASS/FAIL line each.
// Exit code = number of failed criteria.
#include "entroclust/data_gen.hpp"
#include "entroclust/estimator.hpp"
#include "entroclust/quadrature.hpp"
#include "entroclust/risk.hpp"
#include "entroclust/rng.hpp"
#include "entroclust/special_functions.hpp"
#include "entroclust/verification.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace entroclust;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void criterion(int idx, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << idx << ": " << detail << "\n";
    if (!ok) ++failures;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool all_pass(const std::vector<LemmaReport>& reports) {
    for (const auto& r : reports)
        if (r.status == CheckStatus::fail) return false;
    return true;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(5);
    os << v;
    return os.str();
}

}  // namespace

int main() {
    const double R = reference_radius();           // sqrt(x1 + 0.08) = 1.2741...
    const double a_ref = 2.0 * R;                  // 2.5482...
    CheckOptions opts;

    // 1: curvature root
    {
        const auto t0 = Clock::now();
        const double x1 = find_curvature_root();
        const double ms = ms_since(t0);
        criterion(1, x1 >= 1.54340462 && x1 <= 1.54340464 && ms < 1.0,
                  "x1 = " + fmt(x1) + " in [1.54340462, 1.54340464], " + fmt(ms) + " ms");
    }

    // 2: particular-case inequality with its quoted decimals
    {
        const auto t0 = Clock::now();
        const double x1 = find_curvature_root();
        const bool holds = condition_inequality_holds(a_ref, R, 0.95);
        const double lhs =
            R * (1.0 - (R - a_ref + (x1 + 0.08) / R) * mills_ratio(x1 / R + R - a_ref));
        const double rhs = 1.95 * (std::exp(x1) / 4.0) * mills_ratio(a_ref - x1 / R);
        const double ms = ms_since(t0);
        const bool ok = holds && std::abs(lhs - 1.2741) < 5e-4 && std::abs(rhs - 1.2668) < 5e-4 &&
                        ms < 1.0;
        criterion(2, ok, "condition holds with LHS = " + fmt(lhs) + ", RHS = " + fmt(rhs) +
                             ", " + fmt(ms) + " ms");
    }

    // 3: Mill's ratio sandwich, monotonicity, ODE residuals
    {
        const auto reports =
            run_checks(std::vector<std::string>{"mills_sandwich", "mills_decreasing",
                                                "mills_ode"},
                       opts);
        double ode_worst = 0.0;
        for (const auto& r : reports)
            if (r.lemma_id == "mills_ode") ode_worst = r.worst_violation;
        criterion(3, all_pass(reports) && ode_worst <= 1e-6,
                  "sandwich + strict decrease on the grid, ODE residuals " + fmt(ode_worst) +
                      " <= 1e-6");
    }

    // 4: Hessian theorem at three separations, plus dense d=6 eigen agreement
    {
        const auto t0 = Clock::now();
        const std::vector<double> grid = {a_ref, 3.0, 5.0};
        const auto rep = check_hessian_theorem(grid, R);
        const double ms = ms_since(t0);
        criterion(4, rep.status == CheckStatus::pass && ms < 10000.0,
                  "eta-scan minimum beats the closed-form floor at |a| in {2R, 3, 5}; "
                  "dense finite-difference eigenvalue agrees to 1e-4 rel; " + fmt(ms) + " ms");
    }

    // 5: derivative consistency (gradients, +curvature Hessian convention)
    {
        const auto t0 = Clock::now();
        const auto reports = run_checks(
            std::vector<std::string>{"derivative_formulas", "hessian_reduction"}, opts);
        const double ms = ms_since(t0);
        criterion(5, all_pass(reports) && ms < 5000.0,
                  "population/empirical gradients and the positive-curvature Hessian match "
                  "finite differences; " + fmt(ms) + " ms");
    }

    // 6: J/K closed forms to 1e-9 relative at >= 10 random points
    {
        const auto t0 = Clock::now();
        const auto reports = run_checks(std::vector<std::string>{"jk_closed_forms"}, opts);
        const double ms = ms_since(t0);
        const auto& r = reports[0];
        criterion(6, r.status == CheckStatus::pass && r.worst_violation <= 1e-9 &&
                         r.grid_size >= 10 && ms < 2000.0,
                  "worst relative error " + fmt(r.worst_violation) + " at " +
                      std::to_string(r.grid_size) + " random points; " + fmt(ms) + " ms");
    }

    // 7: risk geometry + a 1e4-sample global-minimizer spot check
    {
        const auto t0 = Clock::now();
        const auto reports = run_checks(
            std::vector<std::string>{"risk_symmetry", "ray_monotonicity", "global_minimizer"},
            opts);
        const MixtureSpec spec = make_spec(5, 2, a_ref);
        const double v0 = population_risk(R * a_ref, R);
        RngStream rng(2024, 7);
        double best_gap = 0.0;
        for (int k = 0; k < 10000; ++k) {
            std::vector<double> beta(5);
            double n2 = 0.0;
            for (auto& x : beta) {
                x = rng.next_normal();
                n2 += x * x;
            }
            const double radius = R * std::pow(rng.next_double(), 0.2);
            for (auto& x : beta) x *= radius / std::sqrt(n2);
            best_gap = std::min(best_gap,
                                population_risk(dot(beta, spec.a), norm2(beta)) - v0);
        }
        const double ms = ms_since(t0);
        criterion(7, all_pass(reports) && best_gap >= -1e-10 && ms < 30000.0,
                  "symmetry/monotonicity checks pass; no ball sample beats the minimizer by "
                  "more than 1e-10 (worst gap " + fmt(best_gap) + "); " + fmt(ms) + " ms");
    }

    // 8: quadratic growth with margin over c0
    {
        const auto t0 = Clock::now();
        const GrowthConstants gc = growth_constants(a_ref, R);
        const int d = 6;
        const MixtureSpec spec = make_spec(d, 3, a_ref);
        std::vector<double> beta0(d);
        for (int i = 0; i < d; ++i) beta0[i] = R * spec.a[i] / a_ref;
        RngStream rng(512, 1);
        const auto& quad = default_quadrature();
        const double base = population_risk(R * a_ref, R);
        double min_ratio = std::numeric_limits<double>::infinity();
        int used = 0;
        while (used < 10000) {
            std::vector<double> beta(d);
            double n2 = 0.0;
            for (auto& x : beta) {
                x = rng.next_normal();
                n2 += x * x;
            }
            const double radius = R * std::pow(rng.next_double(), 1.0 / d);
            for (auto& x : beta) x *= radius / std::sqrt(n2);
            if (dot(beta, beta0) <= 0.0) continue;  // half-ball of the minimizer
            double dist2 = 0.0;
            for (int i = 0; i < d; ++i) dist2 += (beta[i] - beta0[i]) * (beta[i] - beta0[i]);
            if (dist2 < 1e-6) continue;
            const double mu = dot(beta, spec.a);
            const double r = norm2(beta);
            const double excess = quad.expect([&](double w) {
                return logistic_entropy(mu + r * w) - logistic_entropy(R * a_ref + R * w);
            });
            (void)base;
            min_ratio = std::min(min_ratio, excess / dist2);
            ++used;
        }
        const double ms = ms_since(t0);
        const double margin = min_ratio / gc.c0;
        criterion(8, min_ratio >= gc.c0 && margin >= 1e3 && ms < 60000.0,
                  "half-ball infimum of excess/dist^2 = " + fmt(min_ratio) + " vs c0 = " +
                      fmt(gc.c0) + " (margin " + fmt(margin) + "x); " + fmt(ms) + " ms");
    }

    // 9 + 10: desk-scale rate experiment with the auto-scaled penalty
    {
        const auto t0 = Clock::now();
        const int d = 200, s = 5, replicates = 20;
        const std::vector<int> n_grid = {500, 1000, 2000, 4000, 8000};
        const double T = 1.5;
        const MixtureSpec spec = make_spec(d, s, a_ref);
        const TheoryConstants tc = make_theory_constants();  // exact-L mode
        struct Task {
            int n, rep;
            std::uint64_t stream;
        };
        std::vector<Task> tasks;
        std::uint64_t stream = 0;
        for (int n : n_grid)
            for (int rep = 0; rep < replicates; ++rep) tasks.push_back({n, rep, stream++});
        struct Out {
            int n;
            double excess, l1_off;
            bool essential_ok;
        };
        std::vector<Out> outs(tasks.size());
        const auto& quad = default_quadrature();
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                const Task& t = tasks[i];
                const std::uint64_t seed = RngStream::derive(90210, t.stream);
                const Dataset data = sample(spec, t.n, seed);
                const double l0 = lambda0(t.n, d, spec.a_norm_inf, tc);
                FitConfig config;
                config.T = T;
                config.lambda = 3.0 * T * l0;
                config.restarts = 2;
                config.max_iter = 300;
                config.seed = seed;
                const FitResult fr = fit(data, config);
                const double r = norm2(fr.beta_hat);
                const double mu = dot(fr.beta_hat, spec.a);
                const double excess =
                    r > 0.0 ? quad.expect([&](double w) {
                        return logistic_entropy(mu + r * w) -
                               logistic_entropy(R * a_ref + R * w);
                    })
                            : std::log(2.0) - population_risk(R * a_ref, R);
                const auto rep10 =
                    check_essential_and_oracle_inequalities(fr, data, spec, config);
                outs[i] = {t.n, excess, support_error(fr.beta_hat, spec, R).l1_off_support,
                           rep10.status == CheckStatus::pass};
            }
        };
        const unsigned hw = std::max(2u, std::thread::hardware_concurrency());
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < hw; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();

        std::vector<double> med_ex, med_l1, log_n, log_ex;
        bool essential_all = true;
        for (int n : n_grid) {
            std::vector<double> ex, l1;
            for (const auto& o : outs)
                if (o.n == n) {
                    ex.push_back(o.excess);
                    l1.push_back(o.l1_off);
                    essential_all = essential_all && o.essential_ok;
                }
            med_ex.push_back(median(ex));
            med_l1.push_back(median(l1));
            if (med_ex.back() > 0.0) {
                log_n.push_back(std::log(static_cast<double>(n)));
                log_ex.push_back(std::log(med_ex.back()));
            }
        }
        bool ex_decreasing = true, l1_decreasing = true;
        for (std::size_t i = 0; i + 1 < med_ex.size(); ++i) {
            ex_decreasing = ex_decreasing && med_ex[i + 1] < med_ex[i];
            l1_decreasing = l1_decreasing && med_l1[i + 1] < med_l1[i];
        }
        double slope = 0.0;
        if (log_n.size() >= 2) {
            double mx = 0, my = 0;
            for (std::size_t i = 0; i < log_n.size(); ++i) {
                mx += log_n[i];
                my += log_ex[i];
            }
            mx /= log_n.size();
            my /= log_n.size();
            double sxy = 0, sxx = 0;
            for (std::size_t i = 0; i < log_n.size(); ++i) {
                sxy += (log_n[i] - mx) * (log_ex[i] - my);
                sxx += (log_n[i] - mx) * (log_n[i] - mx);
            }
            slope = sxx > 0 ? sxy / sxx : 0.0;
        }
        const double ms = ms_since(t0);
        std::ostringstream meds;
        for (double m : med_ex) meds << " " << fmt(m);
        criterion(9, ex_decreasing && l1_decreasing && slope <= -0.6 && ms < 600000.0,
                  "median excess per n:" + meds.str() + "; log-log slope " + fmt(slope) +
                      " (gate <= -0.6); the auto-scaled penalty 3*T*lambda0 exceeds the "
                      "soft-threshold survival scale at every n here, so the estimator "
                      "returns 0 and the medians cannot decrease; " + fmt(ms) + " ms");
        criterion(10, essential_all,
                  "essential and proof-form oracle inequalities hold on every fit of the "
                  "rate experiment (100 fits)");
    }

    // 11: sign lemma on 100 nonzero-mu grid points with Monte Carlo agreement
    {
        const auto t0 = Clock::now();
        std::vector<double> mu_grid;
        for (int i = 1; i <= 25; ++i) mu_grid.push_back(-3.0 + 6.0 * i / 26.0);
        mu_grid.erase(std::remove_if(mu_grid.begin(), mu_grid.end(),
                                     [](double m) { return std::abs(m) < 1e-9; }),
                      mu_grid.end());
        while (mu_grid.size() < 25) mu_grid.push_back(3.0 + 0.1 * mu_grid.size());
        const std::vector<double> r_grid = {0.3, 1.0, R, 5.0};
        const auto rep = check_sign_lemma(mu_grid, r_grid, 100000, 31337);
        const double ms = ms_since(t0);
        criterion(11, rep.status == CheckStatus::pass && rep.grid_size >= 100 && ms < 10000.0,
                  "sign agreement at " + std::to_string(rep.grid_size) +
                      " (mu, r) points, Monte Carlo within 5 sigma; " + fmt(ms) + " ms");
    }

    // 12: full quick suite
    {
        const auto t0 = Clock::now();
        CheckOptions quick;
        quick.quick = true;
        quick.threads = static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));
        const auto reports = run_all_checks(quick);
        const double ms = ms_since(t0);
        int failed = 0;
        for (const auto& r : reports) failed += r.status == CheckStatus::fail ? 1 : 0;
        criterion(12, failed == 0 && ms < 120000.0,
                  std::to_string(reports.size()) + " checks, " + std::to_string(failed) +
                      " failures; " + fmt(ms) + " ms");
    }

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) +
                                                            " criterion/criteria failed")
              << "\n";
    return failures;
}
