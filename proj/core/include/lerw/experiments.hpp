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

#ifndef LERW_EXPERIMENTS_HPP_
#define LERW_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lerw/chain.hpp"
#include "lerw/erasure_law.hpp"
#include "lerw/fractal.hpp"
#include "lerw/metrics.hpp"

namespace lerw {

struct SamplingConfig {
  std::uint64_t seed = 0;
  std::size_t num_samples = 1000;
  unsigned workers = 1;
  std::uint64_t step_cap = kDefaultStepCap;
  // Trajectory i uses stream (seed, stream_offset + i).
  std::uint64_t stream_offset = 0;
};

struct SetLawResult {
  EmpiricalSetLaw law;
  std::size_t non_simple = 0;     // outputs with a repeated state
  std::size_t bad_endpoints = 0;  // outputs not from x to a single point of A
  std::uint64_t total_steps = 0;  // sum of trajectory lengths
};

// Samples X|[0, tau_A] from x, applies the pipeline (refinement_erase, or
// loop_erase for plain LE) and records the image of each output.
template <Scalar S>
SetLawResult lerw_set_law(const MarkovChain<S>& chain, StateId x,
                          const StateSet& target, const Pipeline& pipeline,
                          const SamplingConfig& config);

struct CoupledDistanceStats {
  int level_coarse;
  int level_fine;
  std::vector<double> distances;  // per sample, in sample order
  double mean;
  double median;
  double q10;
  double q90;
};

// For SRW samples on G_{m'} from x to A, compares the images of
// Z_j = L_{V_j} o ... o L_{V_0}(w) at j = m and j = m' by Hausdorff distance
// in the planar embedding.
CoupledDistanceStats coupled_refinement_distance(const FractalGraph& fine, int m,
                                                 StateId x, const StateSet& target,
                                                 const SamplingConfig& config);

double quantile(std::vector<double> values, double q);

struct ProbeValue {
  int level;
  std::string label;
  double rho;
  double resistance;          // R_m(x, y)
  double resistance_to_far;   // R_m(x, V_m \ B(x, rho))
  double lower;               // k^{-m g} R_m(x, far) / rho^g
  double upper;               // k^{-m g} R_m(x, y) / rho^g
};

template <Scalar S>
struct ScalingReport {
  std::vector<int> levels;
  std::vector<S> corner_resistance;  // R_m between the reference corners
  std::vector<S> ratios;             // R_{m+1} / R_m
  std::vector<double> gamma_per_level;
  double gamma_hat = 0;              // from the last ratio
  double ratio_spread = 0;           // max ratio / min ratio - 1
  bool ratios_identical = false;
  std::vector<ProbeValue> probes;
  double c1 = 0;
  double c2 = 0;
  bool envelope_nondegenerate = false;
};

// Corner resistances on G_m for each level (gasket: q1 to q2; carpet:
// (0,0) to (1,1)), successive ratios, gamma_hat = log(ratio) / log(k), and
// the two-sided envelope over probe pairs (0,0) to (k^{-j}, 0) and the
// corner pair. make_graph(m) builds the level-m graph.
template <Scalar S>
ScalingReport<S> resistance_scaling(
    const std::function<FractalGraph(int)>& make_graph, int base,
    const std::vector<int>& levels);

struct KernelTable {
  int level;
  std::vector<std::string> labels;         // V_m points then "Delta"
  std::vector<std::vector<double>> kernel; // rows of the traced kernel
};

struct ConvergenceReport {
  std::vector<KernelTable> tables;
  std::vector<double> max_differences;  // between consecutive m'
  bool strictly_decreasing = false;
};

// Traces the SRW on G_{m'} onto V_m, killed at y (given in level-m
// coordinates), for each m' in levels, via the Schur complement of the
// unit network, and compares consecutive kernels entrywise.
ConvergenceReport kernel_convergence(const std::function<FractalGraph(int)>& make_graph,
                                     int base, int m, std::array<std::int64_t, 2> y,
                                     const std::vector<int>& levels);

}  // namespace lerw

#endif  // LERW_EXPERIMENTS_HPP_
