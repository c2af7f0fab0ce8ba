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
#include "lerw/chain_io.hpp"
#include "lerw/erasure_law.hpp"
#include "lerw/experiments.hpp"
#include "lerw/green.hpp"
#include "lerw/network.hpp"

namespace lerw::cli {

namespace {

StateSet parse_names(const std::string& text, const std::vector<std::string>& names,
                     const std::function<StateId(const std::string&)>& lookup) {
  std::vector<StateId> ids;
  for (const auto& part : split(text, ',')) ids.push_back(lookup(part));
  if (ids.empty()) throw UsageError("empty state list '" + text + "'");
  (void)names;
  return StateSet(std::move(ids));
}

// "a;a,b" -> {a} < {a,b} < V, with V appended when missing.
Pipeline parse_pipeline(const std::string& kind, const std::string& nested,
                        std::size_t num_states,
                        const std::function<StateId(const std::string&)>& lookup) {
  if (kind == "le") {
    if (!nested.empty()) throw UsageError("--nested needs --pipeline refine");
    return Pipeline::loop_erasure();
  }
  if (kind != "refine") throw UsageError("--pipeline is le or refine");
  std::vector<StateSet> sets;
  for (const auto& level : split(nested, ';')) sets.push_back(parse_names(level, {}, lookup));
  const StateSet full = StateSet::range(static_cast<StateId>(num_states));
  if (sets.empty() || sets.back() != full) sets.push_back(full);
  return Pipeline::refinement(std::move(sets));
}

json pipeline_json(const Pipeline& p, const std::vector<std::string>& names) {
  json sets = json::array();
  for (const auto& s : p.nested) {
    json members = json::array();
    for (StateId v : s) members.push_back(names[v]);
    sets.push_back(members);
  }
  return sets;
}

struct SimulateOptions {
  FractalChoice fractal;
  std::string chain_file;
  int level = 1;
  std::string from;
  std::string to;
  std::size_t samples = 1000;
  std::string pipeline = "le";
  std::string nested;
  std::uint64_t step_cap = kDefaultStepCap;
};

int run_simulate(const SimulateOptions& o, RunContext& ctx) {
  const bool on_fractal = o.fractal.selected();
  if (on_fractal && !o.chain_file.empty()) throw UsageError("give a fractal or --chain, not both");
  if (o.from.empty() || o.to.empty()) throw UsageError("--from and --to are required");
  ctx.mode(NumericMode::kDouble);
  json& cfg = ctx.config();
  cfg["samples"] = o.samples;
  cfg["step_cap"] = o.step_cap;
  cfg["from"] = o.from;
  cfg["to"] = o.to;
  cfg["pipeline"] = o.pipeline;

  SamplingConfig sc;
  sc.seed = ctx.seed();
  sc.num_samples = o.samples;
  sc.workers = ctx.workers();
  sc.step_cap = o.step_cap;

  SetLawResult result;
  std::vector<std::string> names;
  if (on_fractal) {
    if (!o.nested.empty()) throw UsageError("--nested applies to --chain only");
    o.fractal.describe(cfg);
    cfg["level"] = o.level;
    const FractalGraph g = o.fractal.maker()(o.level);
    auto lookup = [&](const std::string& s) { return resolve_vertex(g, s); };
    const StateId x = lookup(o.from);
    const StateSet target = parse_names(o.to, {}, lookup);
    Pipeline pipeline;
    if (o.pipeline == "refine") {
      pipeline = Pipeline::refinement(g.nested);
    } else if (o.pipeline != "le") {
      throw UsageError("--pipeline is le or refine");
    }
    const auto chain = walk_from_network(uniform_network<double>(g));
    names = chain.names();
    result = lerw_set_law(chain, x, target, pipeline, sc);
  } else {
    const auto chain = load_rational_chain(o.chain_file);
    std::ostringstream text;
    write_chain(text, chain);
    cfg["chain"] = text.str();
    auto lookup = [&](const std::string& s) { return chain.index_of(s); };
    const StateId x = lookup(o.from);
    const StateSet target = parse_names(o.to, {}, lookup);
    const Pipeline pipeline = parse_pipeline(o.pipeline, o.nested, chain.size(), lookup);
    cfg["nested"] = pipeline_json(pipeline, chain.names());
    names = chain.names();
    result = lerw_set_law(chain, x, target, pipeline, sc);
  }

  std::ostringstream law;
  law << "# count\timage\n";
  for (const auto& [image, count] : result.law.atoms) {
    law << count << "\t";
    for (std::size_t i = 0; i < image.size(); ++i) {
      law << (i ? " " : "") << names[image.ids()[i]];
    }
    law << "\n";
  }
  ctx.write_file("law.txt", law.str());
  const double mean_steps =
      o.samples ? static_cast<double>(result.total_steps) / static_cast<double>(o.samples) : 0.0;
  ctx.results() = {{"samples", o.samples},
                   {"distinct_images", result.law.atoms.size()},
                   {"non_simple", result.non_simple},
                   {"bad_endpoints", result.bad_endpoints},
                   {"total_steps", result.total_steps},
                   {"mean_steps", mean_steps}};
  ctx.out() << "samples: " << o.samples << "\n"
            << "distinct images: " << result.law.atoms.size() << "\n"
            << "non-simple outputs: " << result.non_simple << "\n"
            << "bad endpoints: " << result.bad_endpoints << "\n"
            << "mean trajectory length: " << format_double(mean_steps) << "\n";
  return ctx.finish(result.non_simple == 0 && result.bad_endpoints == 0);
}

struct ExactLawOptions {
  std::string chain_file;
  std::string from;
  std::string to;
  std::string pipeline = "le";
  std::string nested;
  std::string method = "automaton";
  std::size_t length_cap = 30;
  std::size_t max_states = AutomatonOptions{}.max_states;
};

template <Scalar S>
int run_exact_mode(const ExactLawOptions& o, const MarkovChain<S>& chain, RunContext& ctx) {
  auto lookup = [&](const std::string& s) { return chain.index_of(s); };
  const StateId x = lookup(o.from);
  const StateSet target = parse_names(o.to, {}, lookup);
  const Pipeline pipeline = parse_pipeline(o.pipeline, o.nested, chain.size(), lookup);
  json& cfg = ctx.config();
  cfg["nested"] = pipeline_json(pipeline, chain.names());
  AutomatonOptions ao;
  ao.max_states = o.max_states;
  PathLaw<S> law;
  if (o.method == "automaton") {
    law = exact_erasure_law(chain, x, target, pipeline, ao);
  } else if (o.method == "enumerate") {
    cfg["length_cap"] = o.length_cap;
    law = enumerate_erasure_law(chain, x, target, pipeline, o.length_cap, {}, ao);
  } else if (o.method == "product") {
    if (!pipeline.is_loop_erasure()) throw UsageError("--method product needs --pipeline le");
    law = le_law_product_formula(chain, x, target);
  } else {
    throw UsageError("--method is automaton, enumerate or product");
  }
  std::ostringstream text;
  write_path_law(text, law, chain.names());
  ctx.write_file("law.txt", text.str());
  const S mass = law.total_mass();
  auto show = [](const S& v) {
    if constexpr (std::is_same_v<S, Rational>) {
      return v.get_str();
    } else {
      return format_double(v);
    }
  };
  ctx.results() = {{"support", law.support.size()},
                   {"mass", show(mass)},
                   {"tail_bound", show(law.tail_bound)},
                   {"unresolved", show(law.unresolved)}};
  ctx.out() << "support: " << law.support.size() << "\n"
            << "mass: " << show(mass) << "\n"
            << "tail bound: " << show(law.tail_bound) << "\n";
  return ctx.finish(true);
}

int run_exact_law(const ExactLawOptions& o, RunContext& ctx) {
  if (o.from.empty() || o.to.empty()) throw UsageError("--from and --to are required");
  const auto chain = load_rational_chain(o.chain_file);
  json& cfg = ctx.config();
  std::ostringstream text;
  write_chain(text, chain);
  cfg["chain"] = text.str();
  cfg["from"] = o.from;
  cfg["to"] = o.to;
  cfg["pipeline"] = o.pipeline;
  cfg["method"] = o.method;
  cfg["max_automaton_states"] = o.max_states;
  return ctx.mode(NumericMode::kRational) == NumericMode::kRational
             ? run_exact_mode(o, chain, ctx)
             : run_exact_mode(o, to_double(chain), ctx);
}

}  // namespace

void add_simulate_command(CLI::App& root, std::vector<CommandEntry>& commands) {
  auto o = std::make_shared<SimulateOptions>();
  auto* app = root.add_subcommand("simulate", "Sample erased walks and tally their images");
  o->fractal.add_options(*app);
  app->add_option("--chain", o->chain_file, "Chain file instead of a fractal graph")
      ->check(CLI::ExistingFile);
  app->add_option("-m,--level", o->level, "Fractal level");
  app->add_option("--from", o->from, "Start state (corner name, x:y, id, or chain name)");
  app->add_option("--to", o->to, "Comma-separated target states");
  app->add_option("-n,--samples", o->samples, "Number of trajectories");
  app->add_option("--pipeline", o->pipeline, "le, or refine (V_0..V_m on fractals)");
  app->add_option("--nested", o->nested, "Chain refinement sets, e.g. 'a;a,b'");
  app->add_option("--step-cap", o->step_cap, "Hard cap on trajectory length");
  commands.push_back({app, [o](RunContext& ctx) { return run_simulate(*o, ctx); }});
}

void add_exact_law_command(CLI::App& root, std::vector<CommandEntry>& commands) {
  auto o = std::make_shared<ExactLawOptions>();
  auto* app = root.add_subcommand("exact-law", "Exact law of an erased trajectory");
  app->add_option("--chain", o->chain_file, "Chain file (default: bundled 3-state chain)")
      ->check(CLI::ExistingFile);
  app->add_option("--from", o->from, "Start state");
  app->add_option("--to", o->to, "Comma-separated target states");
  app->add_option("--pipeline", o->pipeline, "le or refine");
  app->add_option("--nested", o->nested, "Refinement sets, e.g. 'a;a,b'");
  app->add_option("--method", o->method, "automaton, enumerate or product");
  app->add_option("--length-cap", o->length_cap, "Trajectory length cap for enumerate");
  app->add_option("--max-automaton-states", o->max_states, "Automaton size guard");
  commands.push_back({app, [o](RunContext& ctx) { return run_exact_law(*o, ctx); }});
}

}  // namespace lerw::cli
