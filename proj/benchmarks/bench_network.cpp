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

#include "lerw/fractal.hpp"
#include "lerw/network.hpp"

namespace lerw {
namespace {

template <Scalar S>
void BM_GasketCornerResistance(benchmark::State& state) {
  const auto g = gasket_graph(static_cast<int>(state.range(0)));
  const auto net = uniform_network<S>(g);
  const auto c = g.corners();
  for (auto _ : state) benchmark::DoNotOptimize(effective_resistance(net, c[0], c[1]));
  state.counters["vertices"] = static_cast<double>(g.num_vertices());
}
BENCHMARK(BM_GasketCornerResistance<Rational>)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GasketCornerResistance<double>)->DenseRange(1, 7)->Unit(benchmark::kMillisecond);

void BM_CarpetCornerResistance(benchmark::State& state) {
  const auto g = carpet_graph(CarpetTemplate::standard(), static_cast<int>(state.range(0)));
  const auto net = uniform_network<double>(g);
  const auto c = g.corners();
  for (auto _ : state) benchmark::DoNotOptimize(effective_resistance(net, c[0], c[3]));
  state.counters["vertices"] = static_cast<double>(g.num_vertices());
}
BENCHMARK(BM_CarpetCornerResistance)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_CarpetTrace(benchmark::State& state) {
  const auto g = carpet_graph(CarpetTemplate::standard(), static_cast<int>(state.range(0)));
  const auto net = uniform_network<double>(g);
  for (auto _ : state) benchmark::DoNotOptimize(trace_network(net, g.nested[1]));
}
BENCHMARK(BM_CarpetTrace)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lerw
