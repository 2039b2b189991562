#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "entroclust/data_gen.hpp"
#include "entroclust/errors.hpp"
#include "entroclust/risk.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace entroclust;

TEST_CASE("spec construction") {
    const MixtureSpec spec = make_spec(10, 4, 2.0);
    CHECK(spec.d == 10);
    CHECK(spec.s == 4);
    CHECK(norm2(spec.a) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(spec.support == std::vector<int>{0, 1, 2, 3});
    for (int j : spec.support) CHECK(spec.a[j] == doctest::Approx(1.0).epsilon(1e-14));
    for (int j = 4; j < 10; ++j) CHECK(spec.a[j] == 0.0);
    CHECK(spec.a_norm_inf == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS((void)make_spec(10, 11, 2.0));
    CHECK_THROWS((void)make_spec(10, 0, 2.0));
}

TEST_CASE("random placement is seeded and within range") {
    const MixtureSpec s1 = make_spec(50, 5, 2.0, Placement::random, 7);
    const MixtureSpec s2 = make_spec(50, 5, 2.0, Placement::random, 7);
    const MixtureSpec s3 = make_spec(50, 5, 2.0, Placement::random, 8);
    CHECK(s1.support == s2.support);
    CHECK(s1.support != s3.support);
    for (int j : s1.support) {
        CHECK(j >= 0);
        CHECK(j < 50);
    }
}

TEST_CASE("sampling moments at a = 0 look standard normal") {
    const MixtureSpec spec = make_spec(3, 1, 1e-300);  // effectively zero separation
    const int n = 100000;
    const Dataset data = sample(spec, n, 42);
    for (int j = 0; j < 3; ++j) {
        double mean = 0.0, var = 0.0;
        for (int i = 0; i < n; ++i) mean += data.row(i)[j];
        mean /= n;
        for (int i = 0; i < n; ++i) var += (data.row(i)[j] - mean) * (data.row(i)[j] - mean);
        var /= n;
        CHECK(std::abs(mean) < 0.02);
        CHECK(var == doctest::Approx(1.0).epsilon(0.03));
    }
    double cov01 = 0.0;
    for (int i = 0; i < n; ++i) cov01 += data.row(i)[0] * data.row(i)[1];
    CHECK(std::abs(cov01 / n) < 0.02);
}

TEST_CASE("labels drive the signs: flipping by label recovers N(a, I)") {
    const MixtureSpec spec = make_spec(4, 2, 3.0);
    const int n = 50000;
    const Dataset data = sample(spec, n, 11);
    REQUIRE(data.has_labels());
    double mean0 = 0.0;
    for (int i = 0; i < n; ++i) mean0 += data.labels[i] * data.row(i)[0];
    mean0 /= n;
    CHECK(mean0 == doctest::Approx(spec.a[0]).epsilon(0.03));
}

TEST_CASE("bayes labels and misclassification flip invariance") {
    const MixtureSpec spec = make_spec(5, 2, 2.5482579448856495);
    const Dataset data = sample(spec, 2000, 3);
    const auto truth = data.labels;
    const auto bayes = bayes_labels(data, spec);
    const double err = misclassification(bayes, truth);
    CHECK(err <= 0.5);
    CHECK(err < 0.15);  // |a| = 2.548 separates well
    auto flipped = bayes;
    for (auto& v : flipped) v = -v;
    CHECK(misclassification(flipped, truth) == doctest::Approx(err));
}

TEST_CASE("save/load round trip with header and labels") {
    const MixtureSpec spec = make_spec(6, 2, 2.0);
    const Dataset data = sample(spec, 25, 17);
    const std::string path = "roundtrip_test.csv";
    save_dataset(data, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    int n = 0, d = 0;
    long long seed = -1;
    REQUIRE(std::sscanf(header.c_str(), "# n=%d d=%d seed=%lld", &n, &d, &seed) == 3);
    CHECK(n == 25);
    CHECK(d == 6);
    CHECK(seed == 17);
    std::string second;
    std::getline(in, second);
    CHECK(second == "# labels=present");
    const Dataset back = load_dataset(path);
    CHECK(back.n == data.n);
    CHECK(back.d == data.d);
    CHECK(back.labels == data.labels);
    for (int i = 0; i < data.n; ++i)
        for (int j = 0; j < data.d; ++j)
            CHECK(back.row(i)[j] == doctest::Approx(data.row(i)[j]).epsilon(1e-12));
    std::filesystem::remove(path);
}

TEST_CASE("malformed dataset files raise parse errors") {
    const std::string path = "malformed_test.csv";
    {
        std::ofstream out(path);
        out << "# n=2 d=3 seed=0\n1.0,2.0\n";  // wrong column count
    }
    CHECK_THROWS_AS((void)load_dataset(path), parse_error);
    std::filesystem::remove(path);
    CHECK_THROWS((void)load_dataset("no_such_file_anywhere.csv"));
}
