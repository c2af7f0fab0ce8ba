// Copyright 2026 The lerw Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "lerw/erasure.hpp"
#include "lerw/erasure_law.hpp"
#include "lerw/fractal.hpp"
#include "lerw/verify.hpp"

namespace lerw {
namespace {

Path gasket_walk(int m, std::uint64_t seed) {
  const auto g = gasket_graph(m);
  const auto walk = walk_from_network(uniform_network<double>(g));
  const auto c = g.corners();
  RngStream rng(seed, 0);
  return sample_until_entry(walk, c[0], StateSet{c[1], c[2]}, rng);
}

void BM_LoopErase(benchmark::State& state) {
  const Path w = gasket_walk(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(loop_erase(w));
  state.counters["steps"] = static_cast<double>(w.steps());
}
BENCHMARK(BM_LoopErase)->DenseRange(3, 6);

void BM_RefinementErase(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto g = gasket_graph(m);
  const Path w = gasket_walk(m, 1);
  for (auto _ : state) benchmark::DoNotOptimize(refinement_erase(w, g.nested));
  state.counters["steps"] = static_cast<double>(w.steps());
}
BENCHMARK(BM_RefinementErase)->DenseRange(3, 6);

void BM_ExactLawAutomaton(benchmark::State& state) {
  RandomChainOptions o;
  o.num_states = static_cast<std::size_t>(state.range(0));
  RngStream rng(2, 0);
  const auto chain = random_rational_chain(o, rng);
  const auto closure = reachability_closure(chain, StateSet{0});
  const StateId x = closure.ids().back();
  const StateSet v1{x};
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_erasure_law(chain, x, StateSet{0},
                                               Pipeline::refinement({v1, StateSet::range(static_cast<StateId>(chain.size()))})));
  }
}
BENCHMARK(BM_ExactLawAutomaton)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_TheoremCheck(benchmark::State& state) {
  RandomChainOptions o;
  o.num_states = static_cast<std::size_t>(state.range(0));
  RngStream rng(3, 0);
  const auto chain = random_rational_chain(o, rng);
  Theorem1Options options;
  options.max_levels = 3;
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem1(chain, options));
}
BENCHMARK(BM_TheoremCheck)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lerw
