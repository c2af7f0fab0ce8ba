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

#include "lerw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "lerw/erasure.hpp"
#include "lerw/errors.hpp"
#include "lerw/network.hpp"
#include "lerw/parallel.hpp"

namespace lerw {
namespace {

bool ends_correctly(const Path& out, StateId x, const StateSet& target) {
  if (out.front() != x || !target.contains(out.back())) return false;
  std::size_t hits = 0;
  for (StateId s : out) hits += target.contains(s) ? 1 : 0;
  return hits == 1;
}

// Distinct states in order of first appearance.
std::vector<StateId> ordered_image(const Path& w) {
  std::vector<StateId> seen(w.begin(), w.end());
  std::vector<StateId> sorted = seen;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<bool> used(sorted.size(), false);
  std::vector<StateId> out;
  for (StateId s : seen) {
    const auto k = std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin();
    if (!used[k]) {
      used[k] = true;
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

template <Scalar S>
SetLawResult lerw_set_law(const MarkovChain<S>& chain, StateId x,
                          const StateSet& target, const Pipeline& pipeline,
                          const SamplingConfig& config) {
  const TrajectorySampler sampler(chain, target, config.step_cap);
  if (!pipeline.is_loop_erasure()) validate_nested(pipeline.nested);
  struct Sample {
    std::optional<StateSet> image;
    bool simple = true;
    bool endpoints = true;
    std::uint64_t steps = 0;
  };
  std::vector<Sample> samples(config.num_samples);
  parallel_for(config.num_samples, config.workers, [&](std::size_t i) {
    RngStream rng(config.seed, config.stream_offset + i);
    const Path w = sampler.sample(x, rng);
    const Path out = pipeline.is_loop_erasure() ? loop_erase(w).path
                                                : refinement_erase(w, pipeline.nested);
    samples[i] = {image(out), is_self_avoiding(out), ends_correctly(out, x, target),
                  w.steps()};
  });
  SetLawResult result;
  for (const auto& s : samples) {
    result.law.add(*s.image);
    result.non_simple += s.simple ? 0 : 1;
    result.bad_endpoints += s.endpoints ? 0 : 1;
    result.total_steps += s.steps;
  }
  return result;
}

template SetLawResult lerw_set_law(const MarkovChain<Rational>&, StateId,
                                   const StateSet&, const Pipeline&,
                                   const SamplingConfig&);
template SetLawResult lerw_set_law(const MarkovChain<double>&, StateId,
                                   const StateSet&, const Pipeline&,
                                   const SamplingConfig&);

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

CoupledDistanceStats coupled_refinement_distance(const FractalGraph& fine, int m,
                                                 StateId x, const StateSet& target,
                                                 const SamplingConfig& config) {
  const int fine_level = fine.level;
  if (m < 0 || m > fine_level) {
    throw ValidationError("coarse level must lie in [0, " +
                          std::to_string(fine_level) + "]");
  }
  const MarkovChain<double> walk = walk_from_network(uniform_network<double>(fine));
  const TrajectorySampler sampler(walk, target, config.step_cap);
  std::vector<Point2> pos(fine.num_vertices());
  for (StateId v = 0; v < fine.num_vertices(); ++v) pos[v] = fine.position(v);
  const PointMetric metric = [&](StateId a, StateId b) {
    return euclidean(pos[a], pos[b]);
  };
  CoupledDistanceStats stats;
  stats.level_coarse = m;
  stats.level_fine = fine_level;
  stats.distances.assign(config.num_samples, 0.0);
  parallel_for(config.num_samples, config.workers, [&](std::size_t i) {
    RngStream rng(config.seed, config.stream_offset + i);
    Path z = sampler.sample(x, rng);
    std::optional<Path> coarse;
    for (int j = 0; j <= fine_level; ++j) {
      z = partial_loop_erase(z, fine.nested[j]).path;
      if (j == m) coarse = z;
    }
    if (m == fine_level) return;
    const auto a = ordered_image(*coarse);
    const auto b = ordered_image(z);
    stats.distances[i] = hausdorff(a, b, metric);
  });
  double sum = 0;
  for (double d : stats.distances) sum += d;
  stats.mean = stats.distances.empty() ? 0.0 : sum / static_cast<double>(stats.distances.size());
  stats.median = quantile(stats.distances, 0.5);
  stats.q10 = quantile(stats.distances, 0.1);
  stats.q90 = quantile(stats.distances, 0.9);
  return stats;
}

template <Scalar S>
ScalingReport<S> resistance_scaling(const std::function<FractalGraph(int)>& make_graph,
                                    int base, const std::vector<int>& levels) {
  if (levels.size() < 2) throw ValidationError("scaling needs at least two levels");
  ScalingReport<S> report;
  report.levels = levels;
  std::vector<FractalGraph> graphs;
  for (int m : levels) {
    graphs.push_back(make_graph(m));
    const FractalGraph& g = graphs.back();
    const auto corners = g.corners();
    const StateId far = g.kind == FractalGraph::Kind::kGasket ? corners[1] : corners[3];
    report.corner_resistance.push_back(
        effective_resistance(uniform_network<S>(g), corners[0], far));
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    report.ratios.push_back(report.corner_resistance[i + 1] / report.corner_resistance[i]);
    report.gamma_per_level.push_back(std::log(to_double(report.ratios.back())) /
                                     std::log(static_cast<double>(base)));
  }
  report.gamma_hat = report.gamma_per_level.back();
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  report.ratios_identical = true;
  for (const auto& r : report.ratios) {
    lo = std::min(lo, to_double(r));
    hi = std::max(hi, to_double(r));
    if constexpr (std::is_same_v<S, Rational>) {
      report.ratios_identical = report.ratios_identical && r == report.ratios.front();
    } else {
      report.ratios_identical =
          report.ratios_identical && std::abs(r - report.ratios.front()) <= 1e-12 * r;
    }
  }
  report.ratio_spread = hi / lo - 1;

  const double g = report.gamma_hat;
  report.c1 = std::numeric_limits<double>::infinity();
  report.c2 = 0;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const int m = levels[li];
    const FractalGraph& graph = graphs[li];
    const auto net = uniform_network<double>(graph);
    const auto corners = graph.corners();
    const StateId x = corners[0];
    std::vector<std::pair<std::string, StateId>> probes;
    std::int64_t step = graph.scale;
    for (int j = 0; j <= m; ++j, step /= base) {
      probes.emplace_back("edge/" + std::to_string(base) + "^" + std::to_string(j),
                          *graph.vertex_at(step, 0));
    }
    if (graph.kind == FractalGraph::Kind::kCarpet) probes.emplace_back("diagonal", corners[3]);
    const double norm = std::pow(static_cast<double>(base), -m * g);
    for (const auto& [label, y] : probes) {
      ProbeValue pv;
      pv.level = m;
      pv.label = label;
      pv.rho = graph.distance(x, y);
      pv.resistance = effective_resistance(net, x, y);
      std::vector<StateId> outside;
      for (StateId v = 0; v < graph.num_vertices(); ++v) {
        // Outside the open ball, with a tolerance for the irrational
        // gasket embedding.
        if (graph.distance(x, v) >= pv.rho * (1 - 1e-12)) outside.push_back(v);
      }
      pv.resistance_to_far = effective_resistance_to_set(net, x, StateSet(outside));
      pv.lower = norm * pv.resistance_to_far / std::pow(pv.rho, g);
      pv.upper = norm * pv.resistance / std::pow(pv.rho, g);
      report.c1 = std::min(report.c1, pv.lower);
      report.c2 = std::max(report.c2, pv.upper);
      report.probes.push_back(pv);
    }
  }
  report.envelope_nondegenerate = std::isfinite(report.c1) && std::isfinite(report.c2) &&
                                  report.c1 > 0 && report.c1 <= report.c2;
  return report;
}

template ScalingReport<Rational> resistance_scaling(
    const std::function<FractalGraph(int)>&, int, const std::vector<int>&);
template ScalingReport<double> resistance_scaling(
    const std::function<FractalGraph(int)>&, int, const std::vector<int>&);

ConvergenceReport kernel_convergence(const std::function<FractalGraph(int)>& make_graph,
                                     int base, int m, std::array<std::int64_t, 2> y,
                                     const std::vector<int>& levels) {
  ConvergenceReport report;
  for (int fine_level : levels) {
    if (fine_level < m) throw ValidationError("fine level below the traced level");
    const FractalGraph g = make_graph(fine_level);
    std::int64_t factor = 1;
    for (int i = m; i < fine_level; ++i) factor *= base;
    const auto y_fine = g.vertex_at(y[0] * factor, y[1] * factor);
    if (!y_fine || !g.nested[m].contains(*y_fine)) {
      throw ValidationError("killing point is not in V_m");
    }
    const StateSet& vm = g.nested[m];
    const auto traced = trace_network(uniform_network<double>(g), vm);
    const auto walk = walk_from_network(traced);
    KernelTable table;
    table.level = fine_level;
    std::vector<StateId> live;
    for (std::size_t i = 0; i < vm.size(); ++i) {
      const StateId v = vm.ids()[i];
      if (v == *y_fine) continue;
      live.push_back(static_cast<StateId>(i));
      table.labels.push_back("(" + std::to_string(g.coords[v][0] / factor) + "," +
                             std::to_string(g.coords[v][1] / factor) + ")");
    }
    table.labels.push_back("Delta");
    const auto y_local = static_cast<StateId>(
        std::lower_bound(vm.ids().begin(), vm.ids().end(), *y_fine) - vm.ids().begin());
    for (StateId a : live) {
      std::vector<double> row(live.size() + 1, 0.0);
      for (const auto& t : walk.row(a)) {
        if (t.target == y_local) {
          row.back() += t.prob;
        } else {
          row[std::lower_bound(live.begin(), live.end(), t.target) - live.begin()] += t.prob;
        }
      }
      table.kernel.push_back(std::move(row));
    }
    report.tables.push_back(std::move(table));
  }
  for (std::size_t i = 0; i + 1 < report.tables.size(); ++i) {
    const auto& a = report.tables[i];
    const auto& b = report.tables[i + 1];
    if (a.labels != b.labels) throw ValidationError("traced state sets differ");
    double diff = 0;
    for (std::size_t r = 0; r < a.kernel.size(); ++r) {
      for (std::size_t c = 0; c < a.kernel[r].size(); ++c) {
        diff = std::max(diff, std::abs(a.kernel[r][c] - b.kernel[r][c]));
      }
    }
    report.max_differences.push_back(diff);
  }
  report.strictly_decreasing = report.max_differences.size() >= 2;
  for (std::size_t i = 1; i < report.max_differences.size(); ++i) {
    report.strictly_decreasing =
        report.strictly_decreasing && report.max_differences[i] < report.max_differences[i - 1];
  }
  return report;
}

}  // namespace lerw
