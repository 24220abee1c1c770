// Copyright 2026 The AGF Workbench Authors
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

#include <memory>

#include "agf/ensembles.hpp"
#include "agf/estimators.hpp"
#include "agf/gf2m.hpp"
#include "agf/noise.hpp"
#include "agf/prg.hpp"

namespace {

void BM_FieldMul(benchmark::State &state) {
    const auto &f = agf::GF2mField::standard(static_cast<int>(state.range(0)));
    agf::CounterStream rng(1);
    std::vector<std::uint64_t> w(f.words() + 1);
    for (auto &x : w) x = rng.next_u64();
    auto a = f.from_bits(w, 0);
    const auto b = f.from_bits(w, 1);
    for (auto _ : state) {
        a = f.mul(a, b);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_FieldMul)->Arg(64)->Arg(679)->Arg(2048);

void BM_GenerateTape(benchmark::State &state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const auto theta = agf::Theta::from_log2_inv(300);
    agf::EntropySource e(2);
    const auto seed = e.take_bitstring(agf::tape_seed_length(50, n, theta));
    for (auto _ : state) benchmark::DoNotOptimize(agf::generate_tape(50, n, theta, seed));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_GenerateTape)->Arg(1 << 14)->Arg(1 << 18);

void BM_HaarSample(benchmark::State &state) {
    agf::EntropySource e(3);
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(agf::haar_random_unitary(d, e));
}
BENCHMARK(BM_HaarSample)->Arg(2)->Arg(8)->Arg(32);

void BM_TpeLambda(benchmark::State &state) {
    const auto c = agf::clifford1q();
    const int t = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(agf::tpe_lambda(c, t));
}
BENCHMARK(BM_TpeLambda)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_KwiseEstimate(benchmark::State &state) {
    agf::EstimationConfig cfg;
    cfg.algorithm = agf::Algorithm::KwiseDesign;
    cfg.epsilon = 0.05;
    cfg.delta = 0.1;
    cfg.ensemble = std::make_shared<const agf::UnitaryEnsemble>(agf::clifford1q());
    const auto ch = agf::parse_noise("depolarizing:0.2", 2);
    std::uint64_t i = 0;
    for (auto _ : state) {
        cfg.seed = agf::Seed::from_key(++i);
        benchmark::DoNotOptimize(agf::run_estimator(ch.channel, cfg));
    }
}
BENCHMARK(BM_KwiseEstimate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
