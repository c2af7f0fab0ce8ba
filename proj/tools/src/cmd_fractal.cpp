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

#include <memory>
#include <sstream>

#include "context.hpp"
#include "lerw/experiments.hpp"
#include "lerw/network.hpp"

namespace lerw::cli {

namespace {

template <Scalar S>
std::string exact_text(const S& v) {
  if constexpr (std::is_same_v<S, Rational>) {
    return v.get_str();
  } else {
    return format_double(v);
  }
}

struct GraphOptions {
  FractalChoice fractal;
  int level = 1;
};

int run_graph(const GraphOptions& o, RunContext& ctx) {
  o.fractal.require();
  if (o.level < 0) throw UsageError("-m must be nonnegative");
  json& cfg = ctx.config();
  o.fractal.describe(cfg);
  cfg["level"] = o.level;
  const FractalGraph g = o.fractal.maker()(o.level);

  std::ostringstream vertices, edges, levels;
  write_vertices(vertices, g);
  write_edges(edges, g);
  std::vector<int> first_level(g.num_vertices(), -1);
  for (int j = static_cast<int>(g.nested.size()) - 1; j >= 0; --j) {
    for (StateId v : g.nested[j]) first_level[v] = j;
  }
  levels << "vertex,level\n";
  for (StateId v = 0; v < g.num_vertices(); ++v) levels << v << "," << first_level[v] << "\n";
  ctx.write_file("vertices.txt", vertices.str());
  ctx.write_file("edges.txt", edges.str());
  ctx.write_file("levels.csv", levels.str());

  json nested = json::array();
  for (const auto& s : g.nested) nested.push_back(s.size());
  ctx.results() = {{"vertices", g.num_vertices()},
                   {"edges", g.edges.size()},
                   {"scale", g.scale},
                   {"nested_sizes", nested}};
  ctx.out() << "vertices: " << g.num_vertices() << "\n"
            << "edges: " << g.edges.size() << "\n";
  return ctx.finish(true);
}

struct ResistOptions {
  FractalChoice fractal;
  std::string levels = "1..3";
  std::string pair = "corners";
};

template <Scalar S>
int run_resist_mode(const ResistOptions& o, const std::vector<int>& levels, RunContext& ctx) {
  const auto make = o.fractal.maker();
  const int base = o.fractal.base();
  const ScalingReport<S> report = resistance_scaling<S>(make, base, levels);

  std::ostringstream table;
  table << "level,resistance,resistance_value,ratio,ratio_value,gamma\n";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    table << levels[i] << "," << exact_text(report.corner_resistance[i]) << ","
          << format_double(to_double(report.corner_resistance[i])) << ",";
    if (i == 0) {
      table << ",,\n";
    } else {
      table << exact_text(report.ratios[i - 1]) << ","
            << format_double(to_double(report.ratios[i - 1])) << ","
            << format_double(report.gamma_per_level[i - 1]) << "\n";
    }
  }
  ctx.write_file("levels.csv", table.str());
  ctx.out() << "level  resistance  ratio\n";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    ctx.out() << levels[i] << "  " << exact_text(report.corner_resistance[i]);
    if (i > 0) ctx.out() << "  " << exact_text(report.ratios[i - 1]);
    ctx.out() << "\n";
  }

  json& res = ctx.results();
  json ratios = json::array();
  for (const auto& r : report.ratios) ratios.push_back(exact_text(r));
  res["ratios"] = ratios;
  res["ratios_identical"] = report.ratios_identical;
  res["ratio_spread"] = report.ratio_spread;
  res["gamma_hat"] = report.gamma_hat;
  ctx.out() << "gamma estimate: " << format_double(report.gamma_hat) << "\n"
            << "ratio spread: " << format_double(report.ratio_spread) << "\n";

  if (o.pair == "all") {
    std::ostringstream probes;
    probes << "level,probe,rho,resistance,resistance_to_far,lower,upper\n";
    for (const auto& p : report.probes) {
      probes << p.level << "," << p.label << "," << format_double(p.rho) << ","
             << format_double(p.resistance) << "," << format_double(p.resistance_to_far) << ","
             << format_double(p.lower) << "," << format_double(p.upper) << "\n";
    }
    ctx.write_file("probes.csv", probes.str());
    res["c1"] = report.c1;
    res["c2"] = report.c2;
    res["envelope_nondegenerate"] = report.envelope_nondegenerate;
    ctx.out() << "envelope: [" << format_double(report.c1) << ", "
              << format_double(report.c2) << "]\n";
  }

  // Graph-level checks of the hitting and exit time bounds from the first
  // corner, with the far corner as the absorbing set.
  std::ostringstream bounds;
  bounds << "level,check,value,bound,holds\n";
  bool all_hold = true;
  for (int m : levels) {
    if (m < 1) continue;
    const FractalGraph g = make(m);
    const auto net = uniform_network<S>(g);
    const auto corners = g.corners();
    const StateSet target{corners.back()};
    const StateId y = *g.vertex_at(g.scale / base, 0);
    const auto hit = check_hitting_bound(net, corners[0], y, target);
    const auto exit = check_exit_time_bound(net, corners[0], target);
    bounds << m << ",hitting," << format_double(to_double(hit.probability)) << ","
           << (hit.bound ? format_double(to_double(*hit.bound)) : std::string("vacuous")) << ","
           << (hit.holds ? "yes" : "no") << "\n";
    bounds << m << ",exit_time," << format_double(to_double(exit.expected_exit_time)) << ","
           << format_double(to_double(exit.weight_of_domain * exit.resistance)) << ","
           << (exit.holds ? "yes" : "no") << "\n";
    all_hold = all_hold && hit.holds && exit.holds;
  }
  ctx.write_file("bounds.csv", bounds.str());
  res["bounds_hold"] = all_hold;
  return ctx.finish(all_hold);
}

int run_resist(const ResistOptions& o, RunContext& ctx) {
  o.fractal.require();
  if (o.pair != "corners" && o.pair != "all") throw UsageError("--pair is corners or all");
  const std::vector<int> levels = parse_levels(o.levels);
  json& cfg = ctx.config();
  o.fractal.describe(cfg);
  cfg["levels"] = levels;
  cfg["pair"] = o.pair;
  const NumericMode mode =
      ctx.mode(o.fractal.is_gasket() ? NumericMode::kRational : NumericMode::kDouble);
  return mode == NumericMode::kRational ? run_resist_mode<Rational>(o, levels, ctx)
                                        : run_resist_mode<double>(o, levels, ctx);
}

struct ConvergeOptions {
  FractalChoice fractal;
  int coarse = 1;
  std::string fine = "1..4";
  std::string kill;
  std::size_t samples = 1000;
  std::string pairs = "1:2,2:3";
  std::uint64_t step_cap = kDefaultStepCap;
};

int run_converge(const ConvergeOptions& o, RunContext& ctx) {
  o.fractal.require();
  if (ctx.mode(NumericMode::kDouble) != NumericMode::kDouble) {
    throw UsageError("converge runs in double mode only");
  }
  const std::vector<int> fine = parse_levels(o.fine);
  const auto make = o.fractal.maker();
  const int base = o.fractal.base();
  std::int64_t scale = 1;
  for (int i = 0; i < o.coarse; ++i) scale *= base;
  std::array<std::int64_t, 2> kill = o.fractal.is_gasket()
                                         ? std::array<std::int64_t, 2>{0, scale}
                                         : std::array<std::int64_t, 2>{scale, scale};
  if (!o.kill.empty()) {
    const auto parts = split(o.kill, ':');
    if (parts.size() != 2) throw UsageError("--kill takes x:y");
    kill = {std::stoll(parts[0]), std::stoll(parts[1])};
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : split(o.pairs, ',')) {
    const auto lv = split(p, ':');
    if (lv.size() != 2) throw UsageError("--pairs takes m:m' entries");
    pairs.emplace_back(std::stoi(lv[0]), std::stoi(lv[1]));
    if (pairs.back().first >= pairs.back().second) throw UsageError("pairs need m < m'");
  }
  json& cfg = ctx.config();
  o.fractal.describe(cfg);
  cfg["coarse_level"] = o.coarse;
  cfg["fine_levels"] = fine;
  cfg["kill"] = kill;
  cfg["samples"] = o.samples;
  cfg["step_cap"] = o.step_cap;
  json jp = json::array();
  for (auto [a, b] : pairs) jp.push_back({a, b});
  cfg["pairs"] = jp;

  const ConvergenceReport report = kernel_convergence(make, base, o.coarse, kill, fine);
  std::ostringstream kernels;
  kernels << "fine_level,from,to,probability\n";
  for (const auto& t : report.tables) {
    for (std::size_t r = 0; r < t.kernel.size(); ++r) {
      for (std::size_t c = 0; c < t.kernel[r].size(); ++c) {
        kernels << t.level << ",\"" << t.labels[r] << "\",\"" << t.labels[c] << "\","
                << format_double(t.kernel[r][c]) << "\n";
      }
    }
  }
  ctx.write_file("kernels.csv", kernels.str());
  std::ostringstream diffs;
  diffs << "from_level,to_level,max_difference\n";
  ctx.out() << "kernel max differences:";
  for (std::size_t i = 0; i < report.max_differences.size(); ++i) {
    diffs << fine[i] << "," << fine[i + 1] << "," << format_double(report.max_differences[i])
          << "\n";
    ctx.out() << " " << format_double(report.max_differences[i]);
  }
  ctx.out() << "\n";
  ctx.write_file("differences.csv", diffs.str());
  json& res = ctx.results();
  res["max_differences"] = report.max_differences;
  res["strictly_decreasing"] = report.strictly_decreasing;

  if (o.samples > 0 && !pairs.empty()) {
    std::ostringstream summary, samples;
    summary << "level,fine_level,mean,median,q10,q90\n";
    samples << "level,fine_level,sample,distance\n";
    json coupled = json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto [m, mp] = pairs[i];
      const FractalGraph g = make(mp);
      const auto corners = g.corners();
      const auto a = g.vertex_at(kill[0] * g.scale / scale, kill[1] * g.scale / scale);
      if (!a) throw UsageError("killing point is not a vertex");
      SamplingConfig sc;
      sc.seed = ctx.seed();
      sc.num_samples = o.samples;
      sc.workers = ctx.workers();
      sc.step_cap = o.step_cap;
      // Disjoint stream ranges per pair.
      sc.stream_offset = static_cast<std::uint64_t>(i) << 40;
      const auto stats = coupled_refinement_distance(g, m, corners[0], StateSet{*a}, sc);
      summary << m << "," << mp << "," << format_double(stats.mean) << ","
              << format_double(stats.median) << "," << format_double(stats.q10) << ","
              << format_double(stats.q90) << "\n";
      for (std::size_t s = 0; s < stats.distances.size(); ++s) {
        samples << m << "," << mp << "," << s << "," << format_double(stats.distances[s]) << "\n";
      }
      coupled.push_back({{"level", m}, {"fine_level", mp}, {"mean", stats.mean},
                         {"median", stats.median}});
      ctx.out() << "coupled d_H (" << m << "," << mp << "): median "
                << format_double(stats.median) << "\n";
    }
    ctx.write_file("coupled.csv", summary.str());
    ctx.write_file("coupled_samples.csv", samples.str());
    res["coupled"] = coupled;
  }
  return ctx.finish(true);
}

}  // namespace

void add_graph_command(CLI::App& root, std::vector<CommandEntry>& commands) {
  auto o = std::make_shared<GraphOptions>();
  auto* app = root.add_subcommand("graph", "Export a level-m gasket or carpet graph");
  o->fractal.add_options(*app);
  app->add_option("-m,--level", o->level, "Level m");
  commands.push_back({app, [o](RunContext& ctx) { return run_graph(*o, ctx); }});
}

void add_resist_command(CLI::App& root, std::vector<CommandEntry>& commands) {
  auto o = std::make_shared<ResistOptions>();
  auto* app = root.add_subcommand("resist", "Corner resistance scaling across levels");
  o->fractal.add_options(*app);
  app->add_option("-m,--levels", o->levels, "Levels, e.g. 1..3 or 1,2,4");
  app->add_option("--pair", o->pair, "corners, or all to add the probe envelope");
  commands.push_back({app, [o](RunContext& ctx) { return run_resist(*o, ctx); }});
}

void add_converge_command(CLI::App& root, std::vector<CommandEntry>& commands) {
  auto o = std::make_shared<ConvergeOptions>();
  auto* app = root.add_subcommand(
      "converge", "Traced kernel convergence and coupled refinement distances");
  o->fractal.add_options(*app);
  app->add_option("-m,--level", o->coarse, "Level m of the traced vertex set");
  app->add_option("--fine", o->fine, "Fine levels m', e.g. 1..4");
  app->add_option("--kill", o->kill,
                  "Killing point x:y in units of the level-m mesh (default: far corner)");
  app->add_option("-n,--samples", o->samples, "Samples per coupled pair (0 skips)");
  app->add_option("--pairs", o->pairs, "Coupled level pairs, e.g. 1:2,2:3");
  app->add_option("--step-cap", o->step_cap, "Hard cap on trajectory length");
  commands.push_back({app, [o](RunContext& ctx) { return run_converge(*o, ctx); }});
}

}  // namespace lerw::cli
