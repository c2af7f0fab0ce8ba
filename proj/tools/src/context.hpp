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

#ifndef LERW_CLI_CONTEXT_HPP_
#define LERW_CLI_CONTEXT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lerw/chain.hpp"
#include "lerw/fractal.hpp"
#include "lerw/scalar.hpp"

namespace lerw::cli {

using nlohmann::json;

// Bad flag combinations found after parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string mode = "auto";
  unsigned workers = 1;
  std::string output_dir;
};

// Per-invocation state: resolved seed and mode, the effective config that
// goes into the summary, and the list of files written. Nothing that
// depends on the worker count or the clock ends up in an output file.
class RunContext {
 public:
  RunContext(std::string command, const GlobalOptions& options, std::ostream& out,
             std::ostream& err);

  const std::string& command() const { return command_; }
  std::uint64_t seed() const { return seed_; }
  unsigned workers() const { return workers_; }
  // "auto" resolves to the command's default.
  NumericMode mode(NumericMode fallback);
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

  json& config() { return config_; }
  json& results() { return results_; }

  // Writes <output_dir>/<command>_<suffix>.
  void write_file(const std::string& suffix, const std::string& content);
  // Writes the JSON summary, prints the status line, returns the exit code.
  int finish(bool passed);

 private:
  std::string command_;
  std::string mode_text_;
  std::uint64_t seed_;
  unsigned workers_;
  std::filesystem::path output_dir_;
  std::ostream& out_;
  std::ostream& err_;
  json config_ = json::object();
  json results_ = json::object();
  std::vector<std::string> outputs_;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);
std::string hex64(std::uint64_t v);

// Shortest round-trip decimal for a double.
std::string format_double(double v);

// "3", "1..4" or "1,2,5".
std::vector<int> parse_levels(const std::string& text);
std::vector<std::string> split(const std::string& text, char sep);

// A chain from a file or the bundled three-state example.
MarkovChain<Rational> load_rational_chain(const std::string& path);
extern const char* const kBundledChain;

// --gasket / --carpet [standard|FILE] selection shared by graph, resist,
// converge and simulate.
struct FractalChoice {
  bool gasket = false;
  std::string carpet;
  CLI::Option* carpet_option = nullptr;

  void add_options(CLI::App& app);
  bool selected() const;
  void require() const;
  bool is_gasket() const { return gasket; }
  CarpetTemplate carpet_template() const;
  int base() const;
  std::function<FractalGraph(int)> maker() const;
  void describe(json& config) const;
};

// Vertex by corner name (q1..q3 on the gasket, c00 c10 c01 c11 on the
// carpet), "x:y" in units of 1/scale, or numeric id.
StateId resolve_vertex(const FractalGraph& g, const std::string& name);

// One subcommand: its CLI11 node and the action run after parsing.
struct CommandEntry {
  CLI::App* app;
  std::function<int(RunContext&)> action;
};

void add_theorem_command(CLI::App& root, std::vector<CommandEntry>& commands);
void add_green_command(CLI::App& root, std::vector<CommandEntry>& commands);
void add_graph_command(CLI::App& root, std::vector<CommandEntry>& commands);
void add_resist_command(CLI::App& root, std::vector<CommandEntry>& commands);
void add_converge_command(CLI::App& root, std::vector<CommandEntry>& commands);
void add_simulate_command(CLI::App& root, std::vector<CommandEntry>& commands);
void add_exact_law_command(CLI::App& root, std::vector<CommandEntry>& commands);

}  // namespace lerw::cli

#endif  // LERW_CLI_CONTEXT_HPP_
