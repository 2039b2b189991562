#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "entroclust/special_functions.hpp"

#include <cmath>
#include <numbers>

using namespace entroclust;

TEST_CASE("logistic entropy basics") {
    CHECK(logistic_entropy(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(logistic_entropy(50.0) < 1e-18);
    CHECK(logistic_entropy(-50.0) < 1e-18);
    for (double x : {0.1, 0.7, 3.0, 12.0, 29.0}) {
        CHECK(logistic_entropy(x) == doctest::Approx(logistic_entropy(-x)).epsilon(1e-15));
        CHECK(logistic_entropy(x) > 0.0);
        CHECK(logistic_entropy(x) <= std::log(2.0));
    }
    // no overflow deep in the tails
    CHECK(std::isfinite(logistic_entropy(900.0)));
    CHECK(std::isfinite(logistic_entropy(-900.0)));
}

TEST_CASE("score function is odd and positive on the right half line") {
    CHECK(entropy_score(0.0) == 0.0);
    for (double x : {1e-8, 0.5, 2.0, 10.0, 40.0}) {
        CHECK(entropy_score(x) > 0.0);
        CHECK(entropy_score(-x) == doctest::Approx(-entropy_score(x)).epsilon(1e-15));
    }
    // matches a central finite difference of the loss
    const double h = 1e-5;
    for (double x : {-3.0, -0.4, 0.9, 5.0}) {
        const double fd = (logistic_entropy(x + h) - logistic_entropy(x - h)) / (2 * h);
        CHECK(entropy_score(x) == doctest::Approx(-fd).epsilon(1e-8));
    }
}

TEST_CASE("curvature root x1 matches its frozen 18-digit value") {
    const double x1 = find_curvature_root();
    CHECK(x1 == doctest::Approx(1.543404638418208448).epsilon(1e-14));
    CHECK(std::abs(curvature(x1)) < 1e-14);
    CHECK(curvature(x1 - 1e-6) < 0.0);
    CHECK(curvature(x1 + 1e-6) > 0.0);
}

TEST_CASE("curvature is even, bounded below by -1/4 attained at 0") {
    CHECK(curvature(0.0) == doctest::Approx(-0.25).epsilon(1e-15));
    for (double x : {0.3, 1.0, 2.5, 7.0, 22.0}) {
        CHECK(curvature(x) == doctest::Approx(curvature(-x)).epsilon(1e-14));
        CHECK(curvature(x) >= -0.25);
    }
}

TEST_CASE("theory constants") {
    const TheoryConstants exact = make_theory_constants();
    CHECK(exact.x1 == doctest::Approx(1.543404638418208448).epsilon(1e-14));
    CHECK(exact.L == doctest::Approx(0.22387160234715142459).epsilon(1e-13));
    // the score peaks where its derivative -alpha vanishes, i.e. at x1
    CHECK(exact.L == doctest::Approx(entropy_score(exact.x1)).epsilon(1e-13));
    const TheoryConstants stated = make_theory_constants(LipschitzMode::paper_bound);
    CHECK(stated.L == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("gaussian pdf and tail") {
    CHECK(gaussian_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi)));
    CHECK(gaussian_tail(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gaussian_tail(-10.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gaussian_tail(5.0) == doctest::Approx(2.866515718791939e-7).epsilon(1e-10));
}

TEST_CASE("mills ratio: value at 0, smooth switch at x = 5, deep-tail asymptote") {
    CHECK(mills_ratio(0.0) == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-14));
    // the two evaluation branches agree near the switch point: the difference
    // across it is exactly the true slope G'(x) = xG(x) - 1 times the step
    const double a = mills_ratio(4.999999), b = mills_ratio(5.000001);
    CHECK(b - a == doctest::Approx((5.0 * b - 1.0) * 2e-6).epsilon(1e-3));
    // x G(x) -> 1
    CHECK(30.0 * mills_ratio(30.0) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(200.0 * mills_ratio(200.0) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("negative control: a perturbed Mill's ratio breaks the sandwich") {
    // the upper bound is attained at x = 0, so any upward drift breaks it there
    const double upper0 = 2.0 / std::sqrt(8.0 / std::numbers::pi);
    CHECK(mills_ratio(0.0) <= upper0 + 1e-15);
    CHECK(mills_ratio(0.0) + 1e-9 > upper0);
}
