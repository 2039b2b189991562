#include "entroclust/data_gen.hpp"
#include "entroclust/estimator.hpp"
#include "entroclust/risk.hpp"
#include "entroclust/special_functions.hpp"

#include <benchmark/benchmark.h>

using namespace entroclust;

static void BM_logistic_entropy(benchmark::State& state) {
    double x = -8.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(logistic_entropy(x));
        x += 1e-4;
        if (x > 8.0) x = -8.0;
    }
}
BENCHMARK(BM_logistic_entropy);

static void BM_mills_ratio(benchmark::State& state) {
    double x = -5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mills_ratio(x));
        x += 1e-4;
        if (x > 30.0) x = -5.0;
    }
}
BENCHMARK(BM_mills_ratio);

static void BM_population_risk(benchmark::State& state) {
    double mu = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(population_risk(mu, 1.0));
        mu += 1e-3;
        if (mu > 4.0) mu = 0.0;
    }
}
BENCHMARK(BM_population_risk);

static void BM_empirical_gradient(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const MixtureSpec spec = make_spec(d, 3, 2.5482579448856495);
    const Dataset data = sample(spec, 500, 7);
    std::vector<double> beta(d, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(empirical_gradient(beta, data));
}
BENCHMARK(BM_empirical_gradient)->Arg(10)->Arg(50)->Arg(200);

static void BM_fit(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const MixtureSpec spec = make_spec(d, 3, 2.5482579448856495);
    const Dataset data = sample(spec, 300, 11);
    FitConfig cfg;
    cfg.lambda = 0.08;
    cfg.restarts = 1;
    cfg.max_iter = 150;
    cfg.seed = 3;
    for (auto _ : state) benchmark::DoNotOptimize(fit(data, cfg));
}
BENCHMARK(BM_fit)->Arg(10)->Arg(30);

BENCHMARK_MAIN();
