#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "entroclust/quadrature.hpp"
#include "entroclust/special_functions.hpp"

#include <cmath>
#include <numbers>

using namespace entroclust;

TEST_CASE("gauss-hermite integrates gaussian moments exactly") {
    const QuadratureRule q = gauss_hermite(32);
    CHECK(q.expect([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.expect([](double x) { return x; }) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(q.expect([](double x) { return x * x; }) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(q.expect([](double x) { return x * x * x * x; }) ==
          doctest::Approx(3.0).epsilon(1e-13));
    CHECK(q.expect([](double x) { return std::pow(x, 6); }) ==
          doctest::Approx(15.0).epsilon(1e-12));
}

TEST_CASE("expectation of a shifted exponential matches the mgf") {
    const QuadratureRule& q = default_quadrature();
    for (double t : {-1.0, 0.3, 1.5}) {
        CHECK(q.expect([&](double x) { return std::exp(t * x); }) ==
              doctest::Approx(std::exp(t * t / 2)).epsilon(1e-12));
    }
}

TEST_CASE("default rule reproduces E[logistic_entropy(mu + rN)] against adaptive") {
    const QuadratureRule& q = default_quadrature();
    for (double mu : {0.0, 1.2, 3.5}) {
        for (double r : {0.4, 1.2741}) {
            const double fixed =
                q.expect([&](double w) { return logistic_entropy(mu + r * w); });
            const double adaptive = integrate_adaptive(
                [&](double w) { return logistic_entropy(mu + r * w) * gaussian_pdf(w); }, -40.0,
                40.0, 1e-13);
            CHECK(fixed == doctest::Approx(adaptive).epsilon(1e-12));
        }
    }
}

TEST_CASE("adaptive integrator handles kinks and tails") {
    // |x| has a kink at 0
    CHECK(integrate_adaptive([](double x) { return std::abs(x) * gaussian_pdf(x); }, -30.0, 30.0,
                             1e-12) ==
          doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-11));
    // one-sided gaussian mass
    CHECK(integrate_adaptive([](double x) { return gaussian_pdf(x); }, 2.0, 40.0, 1e-12) ==
          doctest::Approx(gaussian_tail(2.0)).epsilon(1e-11));
}
