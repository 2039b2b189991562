#include "entroclust/estimator.hpp"

#include "entroclust/risk.hpp"
#include "entroclust/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

namespace entroclust {

namespace {

constexpr std::uint64_t kUStream = 0x5e1f;
constexpr std::uint64_t kSpectralStream = 0x5bec;
constexpr std::uint64_t kRestartStreamBase = 0x1000;

struct StartResult {
    std::vector<double> beta;
    double objective = 0.0;
    std::vector<double> trace;
    int iterations = 0;
    bool converged = false;
};

double penalized_objective(std::span<const double> beta, const Dataset& data, double lambda) {
    double l1 = 0.0;
    for (double b : beta) l1 += std::abs(b);
    return empirical_risk(beta, data) + lambda * l1;
}

StartResult descend(std::vector<double> beta, const Dataset& data, const FitConfig& cfg,
                    double R, double lambda, double step_init) {
    StartResult out;
    double step = step_init;
    double obj = penalized_objective(beta, data, lambda);
    out.trace.push_back(obj);
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        ++out.iterations;
        const double f = empirical_risk(beta, data);
        const std::vector<double> grad = empirical_gradient(beta, data);
        std::vector<double> cand;
        double cand_obj = obj;
        bool accepted = false;
        while (step > 1e-18) {
            cand = proximal_step(beta, grad, step, lambda, R);
            double diff_sq = 0.0, grad_dot_diff = 0.0;
            for (std::size_t j = 0; j < beta.size(); ++j) {
                const double dj = cand[j] - beta[j];
                diff_sq += dj * dj;
                grad_dot_diff += grad[j] * dj;
            }
            const double f_cand = empirical_risk(cand, data);
            cand_obj = f_cand;
            for (double b : cand) cand_obj += lambda * std::abs(b);
            // Sufficient decrease on the smooth part plus plain descent on the
            // penalized objective (the ball projection is composed after the
            // shrinkage step, so the standard majorization alone is not enough).
            if (f_cand <= f + grad_dot_diff + 0.5 * diff_sq / step && cand_obj <= obj) {
                accepted = true;
                break;
            }
            step *= cfg.backtrack_factor;
        }
        if (!accepted) break;
        const double drop = obj - cand_obj;
        beta = std::move(cand);
        obj = cand_obj;
        out.trace.push_back(obj);
        if (drop <= cfg.tol_objective) {
            out.converged = true;
            break;
        }
    }
    out.beta = std::move(beta);
    out.objective = obj;
    return out;
}

std::vector<double> spectral_start(const Dataset& data, double R, std::uint64_t seed) {
    // Top eigenvector of the sample second-moment matrix by power iteration,
    // using only matrix-vector products through the rows.
    const int d = data.d;
    RngStream rng(seed, kSpectralStream);
    std::vector<double> v(d);
    for (double& x : v) x = rng.next_normal();
    std::vector<double> xv(data.n), next(d);
    for (int it = 0; it < 60; ++it) {
        for (int i = 0; i < data.n; ++i) {
            const double* row = data.row(i);
            double m = 0.0;
            for (int j = 0; j < d; ++j) m += row[j] * v[j];
            xv[i] = m;
        }
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < data.n; ++i) {
            const double* row = data.row(i);
            const double w = xv[i] / data.n;
            for (int j = 0; j < d; ++j) next[j] += w * row[j];
        }
        const double nrm = norm2(next);
        if (!(nrm > 0.0)) break;
        for (int j = 0; j < d; ++j) v[j] = next[j] / nrm;
    }
    for (double& x : v) x *= R;
    return v;
}

std::vector<double> random_ball_start(int d, double R, std::uint64_t seed, std::uint64_t id) {
    RngStream rng(seed, kRestartStreamBase + id);
    std::vector<double> v(d);
    for (double& x : v) x = rng.next_normal();
    double nrm = norm2(v);
    if (!(nrm > 0.0)) {
        v[0] = 1.0;
        nrm = 1.0;
    }
    const double radius = R * std::pow(rng.next_double(), 1.0 / d);
    for (double& x : v) x *= radius / nrm;
    return v;
}

}  // namespace

double mn_constant(int n, int d, double a_inf) {
    if (n < 1 || d < 1) throw std::domain_error("mn_constant: n and d must be positive");
    return a_inf + std::sqrt(2.0 * std::log(static_cast<double>(d))) +
           std::sqrt(2.0 * std::log(1.0 + n));
}

double lambda0(int n, int d, double a_inf, const TheoryConstants& constants) {
    if (n < 2) throw std::domain_error("lambda0: requires n >= 2");
    if (d < 1) throw std::domain_error("lambda0: d must be positive");
    const double mn = mn_constant(n, d, a_inf);
    const double logn = std::log(static_cast<double>(n));
    return 3.0 * constants.L * mn * (5.0 * std::sqrt(3.0 * std::log(2.0 * d)) * logn + 4.0) /
           std::sqrt(static_cast<double>(n));
}

std::vector<double> soft_threshold(std::span<const double> beta, double t) {
    std::vector<double> out(beta.size());
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const double z = beta[i];
        out[i] = z > t ? z - t : (z < -t ? z + t : 0.0);
    }
    return out;
}

std::vector<double> project_to_ball(std::span<const double> beta, double R) {
    std::vector<double> out(beta.begin(), beta.end());
    const double nrm = norm2(beta);
    if (nrm > R) {
        const double scale = R / nrm;
        for (double& x : out) x *= scale;
    }
    return out;
}

std::vector<double> proximal_step(std::span<const double> beta, std::span<const double> grad,
                                  double step, double lambda, double R) {
    if (!(step > 0.0)) throw std::domain_error("proximal_step: step must be positive");
    if (beta.size() != grad.size()) throw std::domain_error("proximal_step: dimension mismatch");
    std::vector<double> shifted(beta.size());
    for (std::size_t i = 0; i < beta.size(); ++i) shifted[i] = beta[i] - step * grad[i];
    return project_to_ball(soft_threshold(shifted, step * lambda), R);
}

FitResult fit(const Dataset& data, const FitConfig& config) {
    if (data.n < 1 || data.d < 1) throw std::domain_error("fit: empty dataset");
    if (!config.u_direction.empty() &&
        static_cast<int>(config.u_direction.size()) != data.d)
        throw std::domain_error("fit: u_direction dimension mismatch");
    if (config.restarts < 1) throw std::domain_error("fit: restarts must be >= 1");
    if (!(config.backtrack_factor > 0.0 && config.backtrack_factor < 1.0))
        throw std::domain_error("fit: backtrack_factor must lie in (0,1)");

    const double R = config.R > 0.0 ? config.R : reference_radius();
    const double lambda = config.lambda;

    double step_init = config.step_init;
    if (!(step_init > 0.0)) {
        double mean_row_sq = 0.0;
        for (int i = 0; i < data.n; ++i) {
            const double* row = data.row(i);
            double s = 0.0;
            for (int j = 0; j < data.d; ++j) s += row[j] * row[j];
            mean_row_sq += s;
        }
        mean_row_sq /= data.n;
        step_init = 1.0 / (make_theory_constants(LipschitzMode::exact).L *
                           std::max(mean_row_sq, 1e-12));
    }

    std::vector<double> u = config.u_direction;
    if (u.empty()) {
        RngStream rng(config.seed, kUStream);
        u.resize(data.d);
        for (double& x : u) x = rng.next_normal();
    }
    const double u_norm = norm2(u);
    if (!(u_norm > 0.0)) throw std::domain_error("fit: u_direction must be nonzero");
    for (double& x : u) x /= u_norm;

    const int n_starts = config.restarts + 1;  // index 0 is the spectral warm start
    std::vector<StartResult> results(n_starts);
    auto run_start = [&](int k) {
        std::vector<double> start =
            k == 0 ? spectral_start(data, R, config.seed)
                   : random_ball_start(data.d, R, config.seed, static_cast<std::uint64_t>(k));
        return descend(std::move(start), data, config, R, lambda, step_init);
    };
    if (config.threads > 1) {
        std::vector<std::future<StartResult>> futures;
        futures.reserve(n_starts);
        for (int k = 0; k < n_starts; ++k)
            futures.push_back(std::async(std::launch::async, run_start, k));
        for (int k = 0; k < n_starts; ++k) results[k] = futures[k].get();
    } else {
        for (int k = 0; k < n_starts; ++k) results[k] = run_start(k);
    }

    int winner = 0;
    for (int k = 1; k < n_starts; ++k)
        if (results[k].objective < results[winner].objective) winner = k;

    FitResult out;
    out.beta_hat = std::move(results[winner].beta);
    out.objective = results[winner].objective;
    out.objective_trace = std::move(results[winner].trace);
    out.restart_winner = winner;
    out.lambda = lambda;
    out.u_direction = u;
    out.converged = true;
    for (const StartResult& r : results) {
        out.n_iter_total += r.iterations;
        out.converged = out.converged && r.converged;
    }

    // The empirical risk and the penalty are both even, so flipping the sign
    // preserves the objective; align to the half-space beta^t U > 0.
    if (dot(out.beta_hat, u) < 0.0)
        for (double& x : out.beta_hat) x = -x;
    out.aligned = true;

    const double threshold = 1e-8 * R;
    for (int j = 0; j < data.d; ++j)
        if (std::abs(out.beta_hat[j]) > threshold) out.active_set.push_back(j);
    return out;
}

std::vector<int> predict(std::span<const double> beta_hat, const Dataset& X_new) {
    if (static_cast<int>(beta_hat.size()) != X_new.d)
        throw std::domain_error("predict: dimension mismatch");
    std::vector<int> labels(X_new.n);
    for (int i = 0; i < X_new.n; ++i) {
        const double* row = X_new.row(i);
        double m = 0.0;
        for (int j = 0; j < X_new.d; ++j) m += row[j] * beta_hat[j];
        labels[i] = m < 0.0 ? -1 : 1;
    }
    return labels;
}

SupportError support_error(std::span<const double> beta_hat, const MixtureSpec& spec, double R) {
    if (static_cast<int>(beta_hat.size()) != spec.d)
        throw std::domain_error("support_error: dimension mismatch");
    const double threshold = 1e-8 * R;
    SupportError out;
    std::vector<int> active;
    for (int j = 0; j < spec.d; ++j) {
        const bool on_support = spec.a[j] != 0.0;
        if (!on_support) out.l1_off_support += std::abs(beta_hat[j]);
        if (std::abs(beta_hat[j]) > threshold) active.push_back(j);
    }
    out.exact_recovery = active == spec.support;
    return out;
}

std::string fit_result_to_json(const FitResult& result, const FitConfig& config,
                               std::optional<double> l1_off_support,
                               std::optional<double> lambda0_value,
                               std::optional<double> mn_value) {
    nlohmann::json j;
    j["beta_hat"] = result.beta_hat;
    j["objective"] = result.objective;
    j["n_iter_total"] = result.n_iter_total;
    j["restart_winner"] = result.restart_winner;
    j["active_set"] = result.active_set;
    if (l1_off_support)
        j["l1_off_support"] = *l1_off_support;
    else
        j["l1_off_support"] = nullptr;
    nlohmann::json echo;
    echo["R"] = config.R > 0.0 ? config.R : reference_radius();
    echo["lambda"] = result.lambda;
    echo["T"] = config.T;
    echo["restarts"] = config.restarts;
    echo["max_iter"] = config.max_iter;
    echo["tol_objective"] = config.tol_objective;
    echo["seed"] = config.seed;
    echo["converged"] = result.converged;
    echo["aligned"] = result.aligned;
    if (lambda0_value) echo["lambda0"] = *lambda0_value;
    if (mn_value) echo["Mn"] = *mn_value;
    j["config_echo"] = echo;
    return j.dump(2);
}

}  // namespace entroclust
