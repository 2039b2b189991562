#include "entroclust/data_gen.hpp"
#include "entroclust/errors.hpp"
#include "entroclust/estimator.hpp"
#include "entroclust/quadrature.hpp"
#include "entroclust/risk.hpp"
#include "entroclust/rng.hpp"
#include "entroclust/special_functions.hpp"
#include "entroclust/verification.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace entroclust;
using nlohmann::json;

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

int env_threads() {
    if (const char* v = std::getenv("ENTROCLUST_THREADS")) {
        const int t = std::atoi(v);
        if (t > 0) return t;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// shortest round-trip decimal, locale independent
std::string num(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// mu = beta^t a, r = |beta|; r = 0 degenerates to the constant loss log 2
double excess_risk_mu_r(double mu, double r, double a_norm, double R) {
    const double base = population_risk(R * a_norm, R);
    if (r <= 0.0) return std::log(2.0) - base;
    return population_risk(mu, r) - base;
}

Placement parse_placement(const std::string& s) {
    if (s == "first_s") return Placement::first_s;
    if (s == "random") return Placement::random;
    throw CLI::ValidationError("--placement", "must be first_s or random");
}

// 95th percentile of the per-coordinate medians of |X_ij|: a crude data-driven
// stand-in for ||a||_inf when the generating spec is unknown
double plugin_a_inf(const Dataset& data) {
    std::vector<double> med(data.d);
    std::vector<double> col(data.n);
    for (int j = 0; j < data.d; ++j) {
        for (int i = 0; i < data.n; ++i) col[i] = std::abs(data.row(i)[j]);
        std::nth_element(col.begin(), col.begin() + data.n / 2, col.end());
        med[j] = col[data.n / 2];
    }
    std::sort(med.begin(), med.end());
    const std::size_t k = std::min<std::size_t>(med.size() - 1,
                                                static_cast<std::size_t>(0.95 * med.size()));
    return med[k];
}

// --------------------------------------------------------------------------
// generate
// --------------------------------------------------------------------------

struct GenerateArgs {
    int d = 0, s = 0, n = 0;
    double a_norm = 0.0;
    std::uint64_t seed = 0;
    std::string placement = "first_s";
    std::string out = "dataset.csv";
};

int cmd_generate(const GenerateArgs& a) {
    const MixtureSpec spec = make_spec(a.d, a.s, a.a_norm, parse_placement(a.placement), a.seed);
    const Dataset data = sample(spec, a.n, a.seed);
    save_dataset(data, a.out);
    std::cout << "n=" << a.n << " d=" << a.d << " s=" << a.s << " anorm=" << num(a.a_norm)
              << " seed=" << a.seed << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// fit
// --------------------------------------------------------------------------

struct FitArgs {
    std::string data_path;
    double R = 0.0;
    double lambda = -1.0;
    bool lambda_auto = false;
    double T = 1.5;
    int restarts = 3;
    std::uint64_t seed = 0;
    std::string mode = "plugin";
    int s = 0;
    double a_norm = 0.0;
    std::string placement = "first_s";
    std::uint64_t spec_seed = 0;
    std::string out = "fit.json";
};

int cmd_fit(const FitArgs& a) {
    const Dataset data = load_dataset(a.data_path);
    std::optional<MixtureSpec> spec;
    if (a.s > 0 && a.a_norm > 0.0)
        spec = make_spec(data.d, a.s, a.a_norm, parse_placement(a.placement), a.spec_seed);
    if (a.mode == "oracle" && !spec)
        throw CLI::ValidationError("--mode",
                                   "oracle mode needs --s and --a-norm to rebuild the spec");
    const double a_inf = a.mode == "oracle" ? spec->a_norm_inf : plugin_a_inf(data);

    FitConfig config;
    config.R = a.R;
    config.T = a.T;
    config.restarts = a.restarts;
    config.seed = a.seed;
    config.threads = env_threads();

    std::optional<double> l0, mn;
    if (a.lambda_auto) {
        const TheoryConstants tc = make_theory_constants();
        l0 = lambda0(data.n, data.d, a_inf, tc);
        mn = mn_constant(data.n, data.d, a_inf);
        config.lambda = 3.0 * a.T * *l0;
    } else {
        config.lambda = a.lambda;
    }

    const FitResult result = fit(data, config);
    std::optional<double> l1_off;
    if (spec) {
        const double R = config.R > 0.0 ? config.R : reference_radius();
        l1_off = support_error(result.beta_hat, *spec, R).l1_off_support;
    }
    std::ofstream outf(a.out);
    if (!outf) throw std::runtime_error("cannot write " + a.out);
    outf << fit_result_to_json(result, config, l1_off, l0, mn) << "\n";
    std::cout << "objective=" << num(result.objective)
              << " active=" << result.active_set.size() << " lambda=" << num(result.lambda)
              << " out=" << a.out << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// sweep
// --------------------------------------------------------------------------

struct SweepRow {
    int n = 0, replicate = 0;
    double excess_risk = 0, l1_off_support = 0, misclass = 0, lambda = 0, lambda0_v = 0,
           wall_ms = 0;
    bool exact_recovery = false;
};

int cmd_sweep(const std::string& plan_path, int threads_flag) {
    std::ifstream in(plan_path);
    if (!in) throw CLI::ValidationError("plan", "cannot open plan file " + plan_path);
    json plan;
    try {
        plan = json::parse(in);
    } catch (const json::exception& e) {
        throw CLI::ValidationError("plan", std::string("plan is not valid JSON: ") + e.what());
    }

    std::vector<std::string> errs;
    auto need = [&](const char* key) {
        if (!plan.contains(key)) errs.push_back(std::string("missing field: ") + key);
    };
    for (const char* k : {"name", "d", "s", "a_norm", "n_grid", "replicates", "outputs",
                          "master_seed"})
        need(k);
    if (!errs.empty()) {
        for (auto& e : errs) std::cerr << "plan error: " << e << "\n";
        return kExitUsage;
    }
    const int d = plan["d"], s = plan["s"];
    const double a_norm = plan["a_norm"];
    const std::vector<int> n_grid = plan["n_grid"];
    const int replicates = plan["replicates"];
    const std::uint64_t master_seed = plan["master_seed"];
    const std::string outputs = plan["outputs"];
    const double R = plan.value("R", 0.0);
    const double T = plan.value("T", 1.5);
    const bool lambda_auto = plan.value("lambda_auto", false);
    const double lambda_fixed = plan.value("lambda", 0.0);
    const int restarts = plan.value("restarts", 3);
    const int max_iter = plan.value("max_iter", 1000);
    const std::string placement = plan.value("placement", "first_s");

    if (d <= 0) errs.push_back("d must be positive");
    if (s <= 0 || s > d) errs.push_back("need 0 < s <= d");
    if (a_norm <= 0) errs.push_back("a_norm must be positive");
    if (replicates < 1) errs.push_back("replicates must be >= 1");
    if (n_grid.empty()) errs.push_back("n_grid must be nonempty");
    for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
        if (n_grid[i] >= n_grid[i + 1]) errs.push_back("n_grid must be strictly increasing");
    if (!lambda_auto && lambda_fixed <= 0.0)
        errs.push_back("need lambda > 0 or lambda_auto = true");
    if (!errs.empty()) {
        for (auto& e : errs) std::cerr << "plan error: " << e << "\n";
        return kExitUsage;
    }

    std::filesystem::create_directories(outputs);
    const MixtureSpec spec = make_spec(d, s, a_norm, parse_placement(placement), master_seed);
    const double R_eff = R > 0.0 ? R : reference_radius();
    const TheoryConstants tc = make_theory_constants();

    struct Task {
        int n, replicate;
        std::uint64_t stream;
    };
    std::vector<Task> tasks;
    std::uint64_t stream = 0;
    for (int n : n_grid)
        for (int rep = 0; rep < replicates; ++rep) tasks.push_back({n, rep, stream++});
    std::vector<SweepRow> rows(tasks.size());

    auto run_task = [&](std::size_t i) {
        const Task& t = tasks[i];
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t seed = RngStream::derive(master_seed, t.stream);
        const Dataset data = sample(spec, t.n, seed);
        const double l0 = lambda0(t.n, d, spec.a_norm_inf, tc);
        FitConfig config;
        config.R = R_eff;
        config.T = T;
        config.lambda = lambda_auto ? 3.0 * T * l0 : lambda_fixed;
        config.restarts = restarts;
        config.max_iter = max_iter;
        config.seed = seed;
        const FitResult fr = fit(data, config);
        SweepRow row;
        row.n = t.n;
        row.replicate = t.replicate;
        row.excess_risk =
            excess_risk_mu_r(dot(fr.beta_hat, spec.a), norm2(fr.beta_hat), a_norm, R_eff);
        const SupportError se = support_error(fr.beta_hat, spec, R_eff);
        row.l1_off_support = se.l1_off_support;
        row.exact_recovery = se.exact_recovery;
        row.misclass = misclassification(predict(fr.beta_hat, data), data.labels);
        row.lambda = config.lambda;
        row.lambda0_v = l0;
        row.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        rows[i] = row;
    };

    const int threads =
        std::max(1, std::min<int>(threads_flag > 0 ? threads_flag : env_threads(),
                                  static_cast<int>(tasks.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            run_task(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    // rows already sit in deterministic (n, replicate) order
    {
        std::ofstream csv(outputs + "/results.csv");
        csv << "n,replicate,excess_risk,l1_off_support,exact_recovery,misclassification,"
               "lambda,lambda0,wall_ms\n";
        for (const auto& r : rows)
            csv << r.n << ',' << r.replicate << ',' << num(r.excess_risk) << ','
                << num(r.l1_off_support) << ',' << (r.exact_recovery ? 1 : 0) << ','
                << num(r.misclass) << ',' << num(r.lambda) << ',' << num(r.lambda0_v) << ','
                << num(r.wall_ms) << "\n";
    }
    json summary;
    summary["name"] = plan["name"];
    json per_n = json::array();
    std::vector<double> log_n, log_med;
    for (int n : n_grid) {
        std::vector<double> ex, l1, mc;
        int exact = 0, count = 0;
        for (const auto& r : rows)
            if (r.n == n) {
                ex.push_back(r.excess_risk);
                l1.push_back(r.l1_off_support);
                mc.push_back(r.misclass);
                exact += r.exact_recovery ? 1 : 0;
                ++count;
            }
        const double med_ex = median(ex);
        per_n.push_back({{"n", n},
                         {"median_excess_risk", med_ex},
                         {"median_l1_off_support", median(l1)},
                         {"median_misclassification", median(mc)},
                         {"exact_recovery_rate", static_cast<double>(exact) / count}});
        if (med_ex > 0.0) {
            log_n.push_back(std::log(static_cast<double>(n)));
            log_med.push_back(std::log(med_ex));
        }
    }
    summary["per_n"] = per_n;
    if (log_n.size() >= 2) {
        const double mx = std::accumulate(log_n.begin(), log_n.end(), 0.0) / log_n.size();
        const double my = std::accumulate(log_med.begin(), log_med.end(), 0.0) / log_med.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < log_n.size(); ++i) {
            sxy += (log_n[i] - mx) * (log_med[i] - my);
            sxx += (log_n[i] - mx) * (log_n[i] - mx);
        }
        summary["log_excess_vs_log_n_slope"] = sxx > 0 ? sxy / sxx : 0.0;
    }
    std::ofstream(outputs + "/summary.json") << summary.dump(2) << "\n";
    json meta;
    meta["threads"] = threads;
    meta["wall_ms_total"] =
        std::accumulate(rows.begin(), rows.end(), 0.0,
                        [](double acc, const SweepRow& r) { return acc + r.wall_ms; });
    meta["finished_at_unix"] = std::chrono::duration_cast<std::chrono::seconds>(
                                   std::chrono::system_clock::now().time_since_epoch())
                                   .count();
    std::ofstream(outputs + "/metadata.json") << meta.dump(2) << "\n";
    std::cout << "sweep done: " << rows.size() << " rows -> " << outputs << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// verify
// --------------------------------------------------------------------------

int cmd_verify(const std::string& only, bool quick, std::uint64_t seed, const std::string& out) {
    CheckOptions opts;
    opts.quick = quick;
    opts.seed = seed;
    opts.threads = env_threads();
    std::vector<std::string> ids;
    if (!only.empty()) {
        std::stringstream ss(only);
        std::string id;
        while (std::getline(ss, id, ','))
            if (!id.empty()) ids.push_back(id);
    } else {
        ids = known_checks();
    }
    std::vector<LemmaReport> reports;
    try {
        reports = run_checks(ids, opts);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\nvalid ids:\n";
        for (const auto& k : known_checks()) std::cerr << "  " << k << "\n";
        return kExitUsage;
    }
    emit_report(reports, out);
    int failures = 0;
    for (const auto& r : reports) {
        const char* status = r.status == CheckStatus::pass
                                 ? "pass"
                                 : (r.status == CheckStatus::fail ? "FAIL" : "skipped");
        std::cout << status << "  " << r.lemma_id << "  worst=" << num(r.worst_violation)
                  << " tol=" << num(r.tolerance) << "\n";
        failures += r.status == CheckStatus::fail ? 1 : 0;
    }
    std::cout << "report -> " << out << "\n";
    return failures == 0 ? 0 : kExitCheckFailure;
}

// --------------------------------------------------------------------------
// landscape
// --------------------------------------------------------------------------

std::vector<double> parse_grid(const std::string& s, const std::string& flag) {
    // "lo:hi:count"
    double lo, hi;
    int count;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count <= 0)
        throw CLI::ValidationError(flag, "expected lo:hi:count with count > 0, got " + s);
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    return g;
}

int cmd_landscape(double a_norm, double R, const std::string& mu_spec,
                  const std::string& r_spec, const std::string& out) {
    const auto mu_grid = parse_grid(mu_spec, "--mu-grid");
    const auto r_grid = parse_grid(r_spec, "--r-grid");
    std::ofstream csv(out);
    if (!csv) throw std::runtime_error("cannot write " + out);
    csv << "mu,r,risk,d_mu,d_r\n";
    for (double mu : mu_grid)
        for (double r : r_grid) {
            if (r <= 0.0) continue;
            const RiskPoint p = evaluate_risk_point(mu, r);
            csv << num(mu) << ',' << num(r) << ',' << num(p.value) << ',' << num(p.d_mu) << ','
                << num(p.d_r) << "\n";
        }
    std::cout << "landscape (" << mu_grid.size() << " x " << r_grid.size() << ", |a|="
              << num(a_norm) << ", R=" << num(R) << ") -> " << out << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// report show
// --------------------------------------------------------------------------

int cmd_report_show(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("path", "cannot open report " + path);
    json rep;
    try {
        rep = json::parse(in);
    } catch (const json::exception& e) {
        throw CLI::ValidationError("path", std::string("not valid JSON: ") + e.what());
    }
    if (!rep.is_array()) throw CLI::ValidationError("path", "report must be a JSON array");
    for (const auto& e : rep) {
        std::cout << e.value("status", "?") << "  " << e.value("lemma_id", "?")
                  << "  worst_violation=" << num(e.value("worst_violation", 0.0))
                  << " tolerance=" << num(e.value("tolerance", 0.0))
                  << " grid=" << e.value("grid_size", 0) << "\n";
        const std::string notes = e.value("notes", "");
        if (!notes.empty()) std::cout << "        " << notes << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-component Gaussian mixture clustering via penalized entropy risk"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "sample a dataset and write it as CSV");
    g->add_option("--d", gen.d, "ambient dimension")->required();
    g->add_option("--s", gen.s, "support size")->required();
    g->add_option("--a-norm", gen.a_norm, "l2 norm of the separation vector")->required();
    g->add_option("--n", gen.n, "sample size")->required();
    g->add_option("--seed", gen.seed, "RNG seed")->required();
    g->add_option("--placement", gen.placement, "support placement: first_s|random");
    g->add_option("--out", gen.out, "output CSV path");

    FitArgs fa;
    auto* f = app.add_subcommand("fit", "fit the penalized estimator to a dataset");
    f->add_option("--data", fa.data_path, "dataset CSV")->required()->check(CLI::ExistingFile);
    f->add_option("--R", fa.R, "ball radius (0 = reference radius)");
    auto* lam = f->add_option("--lambda", fa.lambda, "l1 penalty weight");
    auto* lauto = f->add_flag("--lambda-auto", fa.lambda_auto, "set lambda = 3 T lambda0");
    lam->excludes(lauto);
    f->add_option("--T", fa.T, "margin multiplier");
    f->add_option("--restarts", fa.restarts, "random restarts");
    f->add_option("--seed", fa.seed, "RNG seed");
    f->add_option("--mode", fa.mode, "noise-level mode: oracle|plugin")
        ->check(CLI::IsMember({"oracle", "plugin"}));
    f->add_option("--s", fa.s, "true support size (oracle spec)");
    f->add_option("--a-norm", fa.a_norm, "true separation norm (oracle spec)");
    f->add_option("--placement", fa.placement, "oracle spec placement");
    f->add_option("--spec-seed", fa.spec_seed, "oracle spec placement seed");
    f->add_option("--out", fa.out, "output JSON path");

    std::string plan_path;
    int sweep_threads = 0;
    auto* sw = app.add_subcommand("sweep", "run an experiment plan over (n, replicate)");
    sw->add_option("plan", plan_path, "plan JSON file")->required();
    sw->add_option("--threads", sweep_threads, "worker threads (default ENTROCLUST_THREADS)");

    std::string only, report_out = "lemma-report.json";
    bool quick = false;
    std::uint64_t vseed = 1234;
    auto* v = app.add_subcommand("verify", "run the lemma verification suite");
    v->add_option("--only", only, "comma-separated check ids");
    v->add_flag("--quick", quick, "reduced grids and Monte Carlo budgets");
    v->add_option("--seed", vseed, "base seed for randomized checks");
    v->add_option("--out", report_out, "report path");

    double ls_a = 2.5482579448856495, ls_R = 1.2741289724428247;
    std::string mu_spec, r_spec, ls_out = "landscape.csv";
    auto* ls = app.add_subcommand("landscape", "tabulate the population risk surface");
    ls->add_option("--a-norm", ls_a, "separation norm (metadata only)");
    ls->add_option("--R", ls_R, "ball radius (metadata only)");
    ls->add_option("--mu-grid", mu_spec, "mu grid, lo:hi:count")->required();
    ls->add_option("--r-grid", r_spec, "r grid, lo:hi:count")->required();
    ls->add_option("--out", ls_out, "output CSV path");

    auto* rep = app.add_subcommand("report", "report utilities");
    std::string rep_path = "lemma-report.json";
    auto* shw = rep->add_subcommand("show", "pretty-print a lemma report");
    shw->add_option("path", rep_path, "report JSON file");
    rep->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*g) return cmd_generate(gen);
        if (*f) return cmd_fit(fa);
        if (*sw) return cmd_sweep(plan_path, sweep_threads);
        if (*v) return cmd_verify(only, quick, vseed, report_out);
        if (*ls) return cmd_landscape(ls_a, ls_R, mu_spec, r_spec, ls_out);
        if (*shw) return cmd_report_show(rep_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitCheckFailure;
    }
    return 0;
}
