// Copyright 2026 The pqmsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts. Set
// OMP_NUM_THREADS to vary the thread count.

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "pqmsel/crossval.h"
#include "pqmsel/kernels.h"
#include "pqmsel/pqm.h"
#include "pqmsel/superposition.h"

using namespace pqmsel;
using kernels::cplx;

namespace {

std::vector<cplx> random_state(int qubits) {
    std::mt19937_64 rng(qubits);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> amps(std::size_t{1} << qubits);
    for (auto &a : amps) a = {g(rng), g(rng)};
    return amps;
}

const kernels::Mat2 kHadamard{M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2};

template <void (*Apply)(std::span<cplx>, std::uint64_t, int, const kernels::Mat2 &)>
void bm_mat2(benchmark::State &state) {
    const int q = static_cast<int>(state.range(0));
    auto amps = random_state(q);
    for (auto _ : state) {
        Apply(amps, 0b10, 0, kHadamard);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <double (*Norm)(std::span<const cplx>)>
void bm_norm(benchmark::State &state) {
    const auto amps = random_state(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Norm(amps));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <std::vector<double> (*Marginal)(std::span<const cplx>, std::span<const int>)>
void bm_marginal(benchmark::State &state) {
    const auto amps = random_state(static_cast<int>(state.range(0)));
    const std::vector<int> qubits = {1, 3, 5, 7, 9};
    for (auto _ : state) benchmark::DoNotOptimize(Marginal(amps, qubits));
}

template <std::vector<double> (*Mixture)(std::span<const double>, std::size_t, int)>
void bm_mixture(benchmark::State &state) {
    const std::size_t k = 69;
    std::vector<double> weights(k + 1);
    std::iota(weights.begin(), weights.end(), 1.0);
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (auto &w : weights) w /= total;
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(Mixture(weights, k, d));
}

void bm_ensemble(benchmark::State &state) {
    const auto ds = superposition::xor_toy(400, 1);
    const auto folds = crossval::make_folds(ds.size(), 10, 1);
    mlp::MlpConfig cfg;
    cfg.max_iter = 20;
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(crossval::train_ensemble(ds, folds, 8, 4, 1, cfg, jobs));
}

}  // namespace

BENCHMARK(bm_mat2<kernels::serial::apply_mat2>)->Name("mat2/serial")->Arg(16)->Arg(20)->Arg(22);
BENCHMARK(bm_mat2<kernels::omp::apply_mat2>)->Name("mat2/omp")->Arg(16)->Arg(20)->Arg(22);
BENCHMARK(bm_norm<kernels::serial::norm_squared>)->Name("norm/serial")->Arg(16)->Arg(20)->Arg(22);
BENCHMARK(bm_norm<kernels::omp::norm_squared>)->Name("norm/omp")->Arg(16)->Arg(20)->Arg(22);
BENCHMARK(bm_marginal<kernels::serial::marginal>)->Name("marginal/serial")->Arg(16)->Arg(20);
BENCHMARK(bm_marginal<kernels::omp::marginal>)->Name("marginal/omp")->Arg(16)->Arg(20);
BENCHMARK(bm_mixture<pqm::serial::binomial_mixture>)->Name("mixture/serial")->Arg(100)->Arg(1000);
BENCHMARK(bm_mixture<pqm::omp::binomial_mixture>)->Name("mixture/omp")->Arg(100)->Arg(1000);
BENCHMARK(bm_ensemble)->Name("ensemble/jobs")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
