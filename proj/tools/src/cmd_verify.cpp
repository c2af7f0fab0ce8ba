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
#include "lerw/parallel.hpp"
#include "lerw/verify.hpp"

namespace lerw::cli {

namespace {

std::string set_names(const StateSet& s, const MarkovChain<Rational>& chain) {
  std::string text = "{";
  for (StateId v : s) {
    if (text.size() > 1) text += ",";
    text += chain.name(v);
  }
  return text + "}";
}

struct TheoremOptions {
  std::string chain_file;
  std::size_t fuzz = 0;
  std::size_t states = 4;
  int levels = 3;
  bool inject = false;
  std::size_t max_automaton_states = AutomatonOptions{}.max_states;
};

int run_theorem(const TheoremOptions& o, RunContext& ctx) {
  if (ctx.mode(NumericMode::kRational) != NumericMode::kRational) {
    throw UsageError("verify-theorem1 compares laws exactly; use --mode rational");
  }
  if (o.levels < 1) throw UsageError("--levels must be at least 1");
  json& cfg = ctx.config();
  cfg["fuzz"] = o.fuzz;
  cfg["levels"] = o.levels;
  cfg["inject_off_by_one"] = o.inject;
  cfg["max_automaton_states"] = o.max_automaton_states;

  std::vector<MarkovChain<Rational>> chains;
  if (o.fuzz > 0) {
    if (o.states < 2 || o.states > 8) throw UsageError("--states must be in 2..8");
    cfg["states"] = o.states;
    RandomChainOptions ro;
    ro.num_states = o.states;
    for (std::size_t i = 0; i < o.fuzz; ++i) {
      RngStream rng(ctx.seed(), i);
      chains.push_back(random_rational_chain(ro, rng));
    }
  } else {
    chains.push_back(load_rational_chain(o.chain_file));
    std::ostringstream text;
    write_chain(text, chains.front());
    cfg["chain"] = text.str();
  }

  Theorem1Options options;
  options.max_levels = o.levels;
  options.automaton.max_states = o.max_automaton_states;
  options.automaton.inject_ple_off_by_one = o.inject;
  std::vector<Theorem1Report> reports(chains.size());
  parallel_for(chains.size(), ctx.workers(),
               [&](std::size_t i) { reports[i] = verify_theorem1(chains[i], options); });

  std::ostringstream csv;
  csv << "chain,states,cases,laws,automaton_states,max_tv,status\n";
  std::size_t cases = 0, laws = 0, failed = 0, max_states = 0;
  Rational max_tv = 0;
  std::optional<std::size_t> first_failure;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const auto& r = reports[i];
    cases += r.cases;
    laws += r.laws;
    max_states = std::max(max_states, r.max_automaton_states);
    if (r.max_tv > max_tv) max_tv = r.max_tv;
    if (!r.passed()) {
      ++failed;
      if (!first_failure) first_failure = i;
    }
    csv << i << "," << chains[i].size() << "," << r.cases << "," << r.laws << ","
        << r.max_automaton_states << "," << r.max_tv.get_str() << ","
        << (r.passed() ? "pass" : "fail") << "\n";
  }
  ctx.write_file("chains.csv", csv.str());

  json& res = ctx.results();
  res["chains"] = chains.size();
  res["cases"] = cases;
  res["laws"] = laws;
  res["failed_chains"] = failed;
  res["max_tv"] = max_tv.get_str();
  res["tail_bound"] = "0";
  res["max_automaton_states"] = max_states;

  ctx.out() << "chains: " << chains.size() << "\n"
            << "refinement cases: " << cases << "\n"
            << "max TV: " << max_tv.get_str() << " (tail bound 0)\n";
  if (first_failure) {
    const auto& chain = chains[*first_failure];
    const auto& f = reports[*first_failure].failures.front();
    std::ostringstream ce;
    ce << "# counterexample in chain " << *first_failure << "\n";
    write_chain(ce, chain);
    ce << "check: " << f.what << "\n"
       << "start: " << chain.name(f.start) << "\n"
       << "target: " << set_names(f.target, chain) << "\n"
       << "nested:";
    for (const auto& s : f.nested) ce << " " << set_names(s, chain);
    ce << "\npath: ";
    write_path(ce, f.path, chain.names());
    ce << "expected probability: " << f.le_probability.get_str() << "\n"
       << "observed probability: " << f.refined_probability.get_str() << "\n"
       << "total variation: " << f.tv.get_str() << "\n";
    ctx.write_file("counterexample.txt", ce.str());
    ctx.out() << "counterexample: chain " << *first_failure << ", start "
              << chain.name(f.start) << ", target " << set_names(f.target, chain)
              << ", path " << to_string(f.path) << "\n";
    res["counterexample"] = {{"chain", *first_failure},
                             {"check", f.what},
                             {"start", chain.name(f.start)},
                             {"target", set_names(f.target, chain)},
                             {"path", to_string(f.path)},
                             {"expected", f.le_probability.get_str()},
                             {"observed", f.refined_probability.get_str()}};
  }
  return ctx.finish(failed == 0);
}

struct GreenOptions {
  std::size_t instances = 1000;
  std::size_t permutation_instances = 100;
  std::size_t points = 3;
  std::size_t states = 5;
  double tolerance = 1e-10;
};

int run_green(const GreenOptions& o, RunContext& ctx) {
  const NumericMode mode = ctx.mode(NumericMode::kRational);
  if (o.points < 2 || o.points + 1 > o.states) {
    throw UsageError("--points must be at least 2 and below --states");
  }
  json& cfg = ctx.config();
  cfg["instances"] = o.instances;
  cfg["permutation_instances"] = o.permutation_instances;
  cfg["points"] = o.points;
  cfg["states"] = o.states;
  if (mode == NumericMode::kDouble) cfg["tolerance"] = o.tolerance;

  GreenCheckOptions options;
  options.instances = o.instances;
  options.permutation_instances = o.permutation_instances;
  options.permutation_points = o.points;
  options.chain.num_states = o.states;
  options.seed = ctx.seed();
  options.tolerance = o.tolerance;
  const GreenCheckReport report = mode == NumericMode::kRational
                                      ? verify_green<Rational>(options)
                                      : verify_green<double>(options);

  std::ostringstream csv;
  csv << "kind,instance,domain,points,lhs,rhs,status\n";
  for (const auto& row : report.rows) {
    csv << row.kind << "," << row.instance << ",";
    for (std::size_t i = 0; i < row.domain.size(); ++i) {
      csv << (i ? " " : "") << row.domain.ids()[i];
    }
    csv << ",";
    for (std::size_t i = 0; i < row.points.size(); ++i) csv << (i ? " " : "") << row.points[i];
    csv << "," << format_double(row.lhs) << "," << format_double(row.rhs) << ","
        << (row.ok ? "pass" : "fail") << "\n";
  }
  ctx.write_file("checks.csv", csv.str());
  ctx.results() = {{"checks", report.rows.size()},
                   {"failures", report.failures},
                   {"max_relative_error", report.max_relative_error}};
  ctx.out() << "checks: " << report.rows.size() << "\n"
            << "failures: " << report.failures << "\n"
            << "max relative error: " << format_double(report.max_relative_error) << "\n";
  return ctx.finish(report.failures == 0);
}

}  // namespace

void add_theorem_command(CLI::App& root, std::vector<CommandEntry>& commands) {
  auto o = std::make_shared<TheoremOptions>();
  auto* app = root.add_subcommand(
      "verify-theorem1", "Exact check that refinement erasure has the loop-erasure law");
  app->add_option("--chain", o->chain_file, "Chain file (default: bundled 3-state chain)")
      ->check(CLI::ExistingFile);
  app->add_option("--fuzz", o->fuzz, "Check this many random chains instead");
  app->add_option("--states", o->states, "States per random chain");
  app->add_option("--levels", o->levels, "Longest nested sequence (including V)");
  app->add_option("--max-automaton-states", o->max_automaton_states, "Automaton size guard");
  app->add_flag("--inject-off-by-one", o->inject,
                "Test hook: corrupt the first partial erasure stage");
  app->get_option("--chain")->excludes(app->get_option("--fuzz"));
  commands.push_back({app, [o](RunContext& ctx) { return run_theorem(*o, ctx); }});
}

void add_green_command(CLI::App& root, std::vector<CommandEntry>& commands) {
  auto o = std::make_shared<GreenOptions>();
  auto* app = root.add_subcommand(
      "verify-green", "Green function identity and permutation invariance on random chains");
  app->add_option("--instances", o->instances, "Random (chain, B, x, y) instances");
  app->add_option("--permutation-instances", o->permutation_instances,
                  "Random instances for the permutation check");
  app->add_option("--points", o->points, "Points permuted per instance");
  app->add_option("--states", o->states, "States per random chain");
  app->add_option("--tolerance", o->tolerance, "Relative tolerance in double mode");
  commands.push_back({app, [o](RunContext& ctx) { return run_green(*o, ctx); }});
}

}  // namespace lerw::cli
