#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "entroclust/data_gen.hpp"
#include "entroclust/errors.hpp"
#include "entroclust/estimator.hpp"
#include "entroclust/risk.hpp"
#include "entroclust/verification.hpp"

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace entroclust;

TEST_CASE("check manifest covers the full catalogue") {
    const auto ids = known_checks();
    CHECK(ids.size() == 27);
    for (const char* expected :
         {"alpha_study", "alpha_concavity", "alpha_phi_lower_bound", "alpha_phi_tail",
          "mills_sandwich", "mills_decreasing", "mills_ode", "jk_closed_forms", "tail_gap",
          "condition_monotone", "particular_case", "hessian_split_bounds",
          "condition_implies_curvature", "risk_symmetry", "ray_monotonicity",
          "global_minimizer", "derivative_formulas", "hessian_reduction", "sign_lemma",
          "hessian_lower_bound", "scalar_product_bound", "linear_form_bound",
          "trilinear_bound", "local_growth", "quadratic_growth", "essential_and_oracle",
          "concentration_event"})
        CHECK(std::find(ids.begin(), ids.end(), expected) != ids.end());
}

TEST_CASE("unknown check id raises") {
    CheckOptions opts;
    const std::vector<std::string> bad = {"particular_case", "no_such_check"};
    CHECK_THROWS_AS((void)run_checks(bad, opts), std::invalid_argument);
}

TEST_CASE("reports come back in catalogue order regardless of request order") {
    CheckOptions opts;
    opts.quick = true;
    const std::vector<std::string> shuffled = {"tail_gap", "alpha_study", "mills_sandwich"};
    const auto reports = run_checks(shuffled, opts);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].lemma_id == "alpha_study");
    CHECK(reports[1].lemma_id == "mills_sandwich");
    CHECK(reports[2].lemma_id == "tail_gap");
}

TEST_CASE("parallel pool merges deterministically") {
    CheckOptions serial, parallel;
    serial.quick = parallel.quick = true;
    serial.threads = 1;
    parallel.threads = 4;
    const std::vector<std::string> ids = {"alpha_study", "mills_sandwich", "tail_gap",
                                          "particular_case", "mills_ode"};
    const auto a = run_checks(ids, serial);
    const auto b = run_checks(ids, parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].lemma_id == b[i].lemma_id);
        CHECK(a[i].status == b[i].status);
        CHECK(a[i].worst_violation == b[i].worst_violation);
    }
}

TEST_CASE("scalar bundle is the first thirteen checks and passes") {
    const auto reports = check_scalar_lemmas(true);
    REQUIRE(reports.size() == 13);
    CHECK(reports.front().lemma_id == "alpha_study");
    CHECK(reports.back().lemma_id == "condition_implies_curvature");
    for (const auto& r : reports) {
        INFO(r.lemma_id << ": " << r.notes);
        CHECK(r.status == CheckStatus::pass);
        // invariant: pass <=> worst violation within tolerance
        CHECK((r.status == CheckStatus::pass) == (r.worst_violation <= r.tolerance));
    }
}

TEST_CASE("report json carries the schema marker and required fields") {
    CheckOptions opts;
    opts.quick = true;
    const std::vector<std::string> ids = {"particular_case"};
    const auto reports = run_checks(ids, opts);
    const auto doc = nlohmann::json::parse(report_to_json(reports));
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["schema"] == 1);
    CHECK(doc[0]["lemma_id"] == "particular_case");
    CHECK(doc[0]["status"] == "pass");
    for (const char* key : {"worst_violation", "grid_size", "tolerance", "notes"})
        CHECK(doc[0].contains(key));
    const std::string path = "report_roundtrip.json";
    emit_report(reports, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    const auto back = nlohmann::json::parse(in);
    CHECK(back == doc);
    std::filesystem::remove(path);
}

TEST_CASE("sign lemma rejects undersized Monte Carlo budgets") {
    const std::vector<double> mu = {1.0};
    const std::vector<double> r = {1.0};
    CHECK_THROWS_AS((void)check_sign_lemma(mu, r, 1000, 1), std::domain_error);
    const auto rep = check_sign_lemma(mu, r, 100000, 1);
    CHECK(rep.status == CheckStatus::pass);
}

TEST_CASE("hessian theorem check skips out-of-hypothesis points") {
    const double R = reference_radius();
    const std::vector<double> too_small = {1.0};  // < 2R
    const auto rep = check_hessian_theorem(too_small, R);
    CHECK(rep.status == CheckStatus::skipped);
    CHECK(rep.grid_size == 0);
}

TEST_CASE("negative control: quadratic growth outside its hypotheses throws") {
    CHECK_THROWS_AS((void)check_quadratic_growth(2.5482579448856495, 0.9, 500, 1),
                    hypothesis_error);
    CHECK_THROWS_AS((void)check_quadratic_growth(1.0, reference_radius(), 500, 1),
                    hypothesis_error);
}

TEST_CASE("negative control: a corrupted fit violates the essential inequality") {
    const MixtureSpec spec = make_spec(20, 3, 2.5482579448856495);
    const Dataset data = sample(spec, 400, 77);
    FitConfig config;
    config.lambda = 0.08;
    config.restarts = 2;
    config.seed = 77;
    const FitResult good = fit(data, config);
    const auto good_rep = check_essential_and_oracle_inequalities(good, data, spec, config);
    CHECK(good_rep.status == CheckStatus::pass);

    FitResult corrupted = good;
    // a unit off-support spike is far from any penalized minimizer
    std::fill(corrupted.beta_hat.begin(), corrupted.beta_hat.end(), 0.0);
    corrupted.beta_hat[19] = reference_radius();
    const auto bad_rep = check_essential_and_oracle_inequalities(corrupted, data, spec, config);
    CHECK(bad_rep.status == CheckStatus::fail);
    CHECK(bad_rep.worst_violation > bad_rep.tolerance);
}

TEST_CASE("negative control: emit_report to an unwritable path throws") {
    CheckOptions opts;
    opts.quick = true;
    const std::vector<std::string> ids = {"particular_case"};
    const auto reports = run_checks(ids, opts);
    CHECK_THROWS((void)emit_report(reports, "/no/such/dir/report.json"));
}

TEST_CASE("randomized checks are reproducible for a fixed seed") {
    CheckOptions a, b;
    a.quick = b.quick = true;
    a.seed = b.seed = 99;
    const std::vector<std::string> ids = {"jk_closed_forms", "quadratic_growth"};
    const auto ra = run_checks(ids, a);
    const auto rb = run_checks(ids, b);
    for (std::size_t i = 0; i < ra.size(); ++i)
        CHECK(ra[i].worst_violation == rb[i].worst_violation);
}
