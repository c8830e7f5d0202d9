// Parallel kernels against their serial reference implementations.
// Run with --benchmark_time_unit=ms for readable numbers at large n.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "logitkit/logit.hpp"
#include "logitkit/reference.hpp"
#include "logitkit/rng.hpp"
#include "logitkit/simulate.hpp"

namespace {

using namespace logitkit;

Dataset make_dataset(std::size_t n, std::size_t p) {
    SynthSpec spec;
    spec.n = n;
    spec.seed = 0xBE7C4ull + n + p;
    spec.true_coefficients.intercept = 0.2;
    for (std::size_t j = 0; j < p; ++j) {
        const std::string name = "X" + std::to_string(j + 1);
        spec.generators.push_back({name, NormalGen{0.0, 1.0}});
        spec.true_coefficients.names.push_back(name);
        spec.true_coefficients.slopes.push_back(j % 2 == 0 ? 0.4 : -0.3);
    }
    return generate(spec);
}

std::vector<double> make_beta(std::size_t k) {
    std::vector<double> beta(k);
    Rng rng(0xBE7A, 1);
    for (auto& b : beta) b = rng.next_range(-0.7, 0.7);
    return beta;
}

void bm_log_likelihood_serial(benchmark::State& state) {
    const Dataset ds = make_dataset(static_cast<std::size_t>(state.range(0)), 4);
    const DesignMatrix d(ds);
    const auto beta = make_beta(d.n_params());
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::log_likelihood(d, beta));
}

void bm_log_likelihood_parallel(benchmark::State& state) {
    const Dataset ds = make_dataset(static_cast<std::size_t>(state.range(0)), 4);
    const DesignMatrix d(ds);
    const auto beta = make_beta(d.n_params());
    for (auto _ : state)
        benchmark::DoNotOptimize(log_likelihood(d, beta));
}

void bm_score_serial(benchmark::State& state) {
    const Dataset ds = make_dataset(static_cast<std::size_t>(state.range(0)), 4);
    const DesignMatrix d(ds);
    const auto beta = make_beta(d.n_params());
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::score(d, beta));
}

void bm_score_parallel(benchmark::State& state) {
    const Dataset ds = make_dataset(static_cast<std::size_t>(state.range(0)), 4);
    const DesignMatrix d(ds);
    const auto beta = make_beta(d.n_params());
    for (auto _ : state)
        benchmark::DoNotOptimize(score(d, beta));
}

void bm_information_serial(benchmark::State& state) {
    const Dataset ds = make_dataset(static_cast<std::size_t>(state.range(0)), 4);
    const DesignMatrix d(ds);
    const auto beta = make_beta(d.n_params());
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::information_matrix(d, beta));
}

void bm_information_parallel(benchmark::State& state) {
    const Dataset ds = make_dataset(static_cast<std::size_t>(state.range(0)), 4);
    const DesignMatrix d(ds);
    const auto beta = make_beta(d.n_params());
    for (auto _ : state)
        benchmark::DoNotOptimize(information_matrix(d, beta));
}

std::pair<std::vector<double>, std::vector<double>> tied_groups(std::size_t n1,
                                                                std::size_t n0) {
    Rng rng(0xBE7B, 2);
    std::vector<double> ones(n1);
    std::vector<double> zeros(n0);
    for (auto& v : ones) v = std::floor(rng.next_u01() * 128.0) / 128.0;
    for (auto& v : zeros) v = std::floor(rng.next_u01() * 128.0) / 128.0;
    std::sort(ones.begin(), ones.end());
    std::sort(zeros.begin(), zeros.end());
    return {ones, zeros};
}

void bm_count_pairs_quadratic(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto [ones, zeros] = tied_groups(n / 2, n / 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::count_pairs(ones, zeros));
}

void bm_count_pairs_fast(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto [ones, zeros] = tied_groups(n / 2, n / 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(count_pairs_fast(ones, zeros));
}

}  // namespace

BENCHMARK(bm_log_likelihood_serial)->Arg(100000)->Arg(1000000);
BENCHMARK(bm_log_likelihood_parallel)->Arg(100000)->Arg(1000000);
BENCHMARK(bm_score_serial)->Arg(100000)->Arg(1000000);
BENCHMARK(bm_score_parallel)->Arg(100000)->Arg(1000000);
BENCHMARK(bm_information_serial)->Arg(100000)->Arg(1000000);
BENCHMARK(bm_information_parallel)->Arg(100000)->Arg(1000000);
BENCHMARK(bm_count_pairs_quadratic)->Arg(2000)->Arg(20000);
BENCHMARK(bm_count_pairs_fast)->Arg(2000)->Arg(20000);
