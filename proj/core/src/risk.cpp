#include "entroclust/risk.hpp"

#include "entroclust/errors.hpp"
#include "entroclust/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace entroclust {

namespace {

void require_hypotheses(double a_norm, double R, const char* who) {
    const double R_min = reference_radius();
    if (R < R_min - 1e-9)
        throw hypothesis_error(std::string(who) + ": requires R >= sqrt(x1 + 0.08)");
    if (a_norm < 2.0 * R - 1e-9)
        throw hypothesis_error(std::string(who) + ": requires ||a|| >= 2R");
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::domain_error("dot: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double reference_radius() {
    static const double R = std::sqrt(find_curvature_root() + 0.08);
    return R;
}

double population_risk(double mu, double r, const QuadratureRule& quad) {
    if (!(r > 0.0)) throw std::domain_error("population_risk: r must be positive");
    return quad.expect([&](double t) { return logistic_entropy(mu + r * t); });
}

double risk_gradient_mu(double mu, double r, const QuadratureRule& quad) {
    if (!(r > 0.0)) throw std::domain_error("risk_gradient_mu: r must be positive");
    return -quad.expect([&](double t) { return entropy_score(mu + r * t); });
}

double risk_gradient_r(double u, double r, const QuadratureRule& quad) {
    if (!(r > 0.0)) throw std::domain_error("risk_gradient_r: r must be positive");
    // d/dr E[rho(r N_u)], N_u ~ N(u,1): the integrand is N_u g(r N_u).
    return -quad.expect([&](double t) { return (u + t) * entropy_score(r * (u + t)); });
}

RiskPoint evaluate_risk_point(double mu, double r, const QuadratureRule& quad) {
    RiskPoint p;
    p.mu = mu;
    p.r = r;
    p.value = population_risk(mu, r, quad);
    p.d_mu = risk_gradient_mu(mu, r, quad);
    p.d_r = risk_gradient_r(mu / r, r, quad);
    return p;
}

double population_risk_of_beta(std::span<const double> beta, std::span<const double> a,
                               const QuadratureRule& quad) {
    const double r = norm2(beta);
    if (!(r > 0.0)) throw std::domain_error("population_risk_of_beta: beta must be nonzero");
    return population_risk(dot(beta, a), r, quad);
}

double excess_risk(std::span<const double> beta, std::span<const double> a, double R,
                   const QuadratureRule& quad) {
    const double a_norm = norm2(a);
    return population_risk_of_beta(beta, a, quad) - population_risk(R * a_norm, R, quad);
}

double empirical_risk(std::span<const double> beta, const Dataset& data) {
    if (static_cast<int>(beta.size()) != data.d)
        throw std::domain_error("empirical_risk: dimension mismatch");
    if (data.n < 1) throw std::domain_error("empirical_risk: empty dataset");
    double acc = 0.0;
    for (int i = 0; i < data.n; ++i) {
        const double* row = data.row(i);
        double m = 0.0;
        for (int j = 0; j < data.d; ++j) m += row[j] * beta[j];
        acc += logistic_entropy(m);
    }
    return acc / data.n;
}

std::vector<double> empirical_gradient(std::span<const double> beta, const Dataset& data) {
    if (static_cast<int>(beta.size()) != data.d)
        throw std::domain_error("empirical_gradient: dimension mismatch");
    if (data.n < 1) throw std::domain_error("empirical_gradient: empty dataset");
    std::vector<double> grad(data.d, 0.0);
    for (int i = 0; i < data.n; ++i) {
        const double* row = data.row(i);
        double m = 0.0;
        for (int j = 0; j < data.d; ++j) m += row[j] * beta[j];
        const double w = -entropy_score(m) / data.n;
        for (int j = 0; j < data.d; ++j) grad[j] += w * row[j];
    }
    return grad;
}

double hessian_quadratic_form_at_beta0(double a_norm, double R, double eta,
                                       const QuadratureRule& quad) {
    if (!(a_norm > 0.0) || !(R > 0.0))
        throw std::domain_error("hessian_quadratic_form_at_beta0: a_norm and R must be positive");
    const double mean = R * a_norm;
    double e_alpha = 0.0, e_x2_alpha = 0.0;
    for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
        const double x = mean + R * quad.nodes[i];
        const double al = curvature(x);
        e_alpha += quad.weights[i] * al;
        e_x2_alpha += quad.weights[i] * x * x * al;
    }
    const double eta2 = eta * eta;
    return eta2 * e_x2_alpha / (R * R) + (1.0 - eta2) * e_alpha;
}

std::vector<double> population_hessian(std::span<const double> beta, std::span<const double> a,
                                       const QuadratureRule& quad) {
    const std::size_t d = beta.size();
    if (a.size() != d) throw std::domain_error("population_hessian: dimension mismatch");
    const double r = norm2(beta);
    if (!(r > 0.0)) throw std::domain_error("population_hessian: beta must be nonzero");
    const double mu = dot(beta, a);

    // H_uv = E[Z_u Z_v alpha(Z^t beta)], Z ~ N(a, I). Splitting N along
    // beta/r and its complement reduces every entry to the three scalar
    // moments E[alpha], E[W alpha], E[W^2 alpha] with W ~ N(0,1).
    double e0 = 0.0, e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
        const double w = quad.nodes[i];
        const double al = quad.weights[i] * curvature(mu + r * w);
        e0 += al;
        e1 += al * w;
        e2 += al * w * w;
    }
    std::vector<double> H(d * d);
    for (std::size_t u = 0; u < d; ++u) {
        for (std::size_t v = u; v < d; ++v) {
            const double bu = beta[u] / r, bv = beta[v] / r;
            const double kron = u == v ? 1.0 : 0.0;
            const double val = e0 * (a[u] * a[v] + kron - bu * bv) +
                               e1 * (a[u] * bv + a[v] * bu) + e2 * bu * bv;
            H[u * d + v] = val;
            H[v * d + u] = val;
        }
    }
    return H;
}

double lambda_min_lower_bound(double a_norm, double R) {
    require_hypotheses(a_norm, R, "lambda_min_lower_bound");
    const double x1 = find_curvature_root();
    const double nu = 0.95;
    return 0.25 * nu * (gaussian_tail(a_norm - x1 / R) - gaussian_tail(a_norm + x1 / R));
}

bool condition_inequality_holds(double a_norm, double R, double nu) {
    if (!(a_norm > 0.0) || !(R > 0.0) || !(nu > 0.0))
        throw std::domain_error("condition_inequality_holds: inputs must be positive");
    const double x1 = find_curvature_root();
    const double lhs =
        R * (1.0 - (R - a_norm + (x1 + 0.08) / R) * mills_ratio(x1 / R + R - a_norm));
    const double rhs = (1.0 + nu) * 0.25 * std::exp(x1) * mills_ratio(a_norm - x1 / R);
    return lhs >= rhs;
}

GrowthConstants growth_constants(double a_norm, double R) {
    require_hypotheses(a_norm, R, "growth_constants");
    GrowthConstants g;
    g.R = R;
    g.a_norm = a_norm;
    g.lambda_min_bound = lambda_min_lower_bound(a_norm, R);
    const double gap = a_norm - R;
    const double gap2 = 1.0 + gap * gap;
    const double a4 = a_norm * a_norm * a_norm * a_norm;
    g.eps_max = gap2 / (768.0 * a4) *
                std::exp(-0.5 * R * R - gap2 / (384.0 * a_norm * a_norm * a_norm *
                                                std::exp(0.5 * R * R)));
    g.c0 = std::pow(gap, 6) / (9.0 * 4194304.0 * a4 * a4 * R * R) *
           std::exp(-a_norm * R - 2.0 * R * R);
    return g;
}

double linear_form_lower_bound(std::span<const double> beta, std::span<const double> nu_dir,
                               std::span<const double> a) {
    const double beta_sq = dot(beta, beta);
    if (!(beta_sq > 0.0)) throw std::domain_error("linear_form_lower_bound: beta must be nonzero");
    const double mu = dot(beta, a);
    if (mu - 2.0 * beta_sq < -1e-12)
        throw hypothesis_error("linear_form_lower_bound: requires a^t beta - 2||beta||^2 >= 0");
    const double nu_beta = dot(nu_dir, beta);
    if (nu_beta > 1e-12)
        throw hypothesis_error("linear_form_lower_bound: requires <nu, beta> <= 0");
    const double gap = mu - beta_sq;
    return 0.125 * std::exp(-0.5 * (2.0 * mu - beta_sq)) * (-nu_beta / beta_sq) *
           (beta_sq + gap * gap);
}

double trilinear_norm_bound(std::span<const double> beta, std::span<const double> a) {
    const double beta_sq = dot(beta, beta);
    const double mu = dot(beta, a);
    const double a_norm = norm2(a);
    const double u = mu - 2.0 * beta_sq;
    const double a6 = std::pow(a_norm, 6);
    // E[N^6] = 15 for a standard normal; the inner bracket is
    // ||beta||^2 + (u+1)^2, a perfect square plus the norm term.
    const double inner = beta_sq + u * u + 2.0 * u + 1.0;
    return 8.0 * std::exp(-(mu - beta_sq)) * std::sqrt(2.0 * (a6 + 15.0) * inner);
}

double J_integral(double xi, double z, double a_norm, double R) {
    if (!(R > 0.0)) throw std::domain_error("J_integral: R must be positive");
    const double arg = z / R + R * xi - a_norm;
    return R * (1.0 + (a_norm - R * xi) * mills_ratio(arg)) * gaussian_pdf(z / R - a_norm) *
           std::exp(-xi * z);
}

double K_integral(double xi, double z, double a_norm, double R) {
    if (!(R > 0.0)) throw std::domain_error("K_integral: R must be positive");
    const double arg = z / R + R * xi - a_norm;
    return gaussian_pdf(z / R - a_norm) * mills_ratio(arg) * std::exp(-xi * z);
}

double tail_gap_lower_bound(double a_norm, double R) {
    if (!(a_norm > 0.0) || !(R > 0.0))
        throw std::domain_error("tail_gap_lower_bound: inputs must be positive");
    const double x1 = find_curvature_root();
    return 2.0 * (x1 / R) * gaussian_pdf(a_norm + x1 / R);
}

}  // namespace entroclust
