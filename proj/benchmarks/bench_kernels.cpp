// Copyright 2026 The locoh Authors
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

#include <benchmark/benchmark.h>

#include "locoh/localization.hpp"
#include "locoh/random_states.hpp"
#include "locoh/spreading.hpp"
#include "locoh/toric.hpp"

using namespace locoh;

static void BM_PartialTrace(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng = stream_rng(1, 0);
    const long d = 1L << n;
    const ComplexMatrix rho = random_density_matrix(d, d, rng);
    const auto s = TensorStructure::uniform(n, 2);
    const std::vector<int> keep{0, 1};
    for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, s, keep));
}
BENCHMARK(BM_PartialTrace)->DenseRange(4, 8, 2);

static void BM_NonSelective(benchmark::State &state) {
    const long da = state.range(0);
    Rng rng = stream_rng(2, 0);
    const DensityMatrix rho(random_density_matrix(2 * da, 2 * da, rng), TensorStructure::bipartite(2, da));
    const auto b = FactorizedBasis::computational(2, da);
    for (auto _ : state) benchmark::DoNotOptimize(c_nonselective(rho, b, Measure::kC2));
}
BENCHMARK(BM_NonSelective)->RangeMultiplier(4)->Range(2, 32);

static void BM_HaarUnitary(benchmark::State &state) {
    Rng rng = stream_rng(3, 0);
    for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(state.range(0), rng));
}
BENCHMARK(BM_HaarUnitary)->RangeMultiplier(2)->Range(4, 64);

static void BM_EvaluatePure(benchmark::State &state) {
    const long da = state.range(0);
    Rng rng = stream_rng(4, 0);
    const auto s = TensorStructure::bipartite(2, static_cast<int>(da));
    const StateVector psi = haar_state(2 * da, rng);
    const auto b = FactorizedBasis::computational(2, da);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_pure(psi, s, b, Measure::kC2));
}
BENCHMARK(BM_EvaluatePure)->RangeMultiplier(4)->Range(2, 64);

static void BM_McEstimate(benchmark::State &state) {
    const auto spec = SamplerSpec::global_haar(2, 2, 5);
    for (auto _ : state) benchmark::DoNotOptimize(mc_estimate(spec, Functional::kPostSelected, 1000));
}
BENCHMARK(BM_McEstimate)->Unit(benchmark::kMillisecond);

static void BM_ToricGroundState(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_ground_state(n, alpha_uniform()));
}
BENCHMARK(BM_ToricGroundState)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

static void BM_TfimEvolver(benchmark::State &state) {
    const auto ham = build_tfim(static_cast<int>(state.range(0)), 1.0, 1.05, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(Evolver(ham).energies());
}
BENCHMARK(BM_TfimEvolver)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
