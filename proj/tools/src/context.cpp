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

#include "context.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "lerw/chain_io.hpp"
#include "lerw/errors.hpp"

namespace lerw::cli {

const char* const kBundledChain =
    "a b c\n"
    "0 1/2 1/2\n"
    "1/2 0 1/2\n"
    "0 0 1\n"
    "absorbing c\n";

namespace {

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("LERW_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return ".";
}

}  // namespace

RunContext::RunContext(std::string command, const GlobalOptions& options,
                       std::ostream& out, std::ostream& err)
    : command_(std::move(command)),
      mode_text_(options.mode),
      workers_(std::max(1u, options.workers)),
      output_dir_(options.output_dir.empty() ? default_output_dir()
                                             : std::filesystem::path(options.output_dir)),
      out_(out),
      err_(err) {
  if (options.seed) {
    seed_ = *options.seed;
  } else {
    std::random_device rd;
    seed_ = (std::uint64_t{rd()} << 32) | rd();
  }
  out_ << "seed: " << seed_ << "\n";
}

NumericMode RunContext::mode(NumericMode fallback) {
  const NumericMode m = mode_text_ == "auto" ? fallback : parse_mode(mode_text_);
  config_["mode"] = std::string(to_string(m));
  return m;
}

void RunContext::write_file(const std::string& suffix, const std::string& content) {
  std::filesystem::create_directories(output_dir_);
  const std::string name = command_ + "_" + suffix;
  std::ofstream file(output_dir_ / name, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + (output_dir_ / name).string());
  file << content;
  outputs_.push_back(name);
}

int RunContext::finish(bool passed) {
  json cfg = config_;
  cfg["command"] = command_;
  cfg["seed"] = seed_;
  const std::string hash = hex64(fnv1a(cfg.dump()));
  json summary;
  summary["config"] = cfg;
  summary["config_hash"] = hash;
  summary["results"] = results_;
  summary["status"] = passed ? "pass" : "fail";
  auto files = outputs_;
  files.push_back(command_ + "_summary.json");
  summary["outputs"] = files;
  write_file("summary.json", summary.dump(2) + "\n");
  out_ << "config hash: " << hash << "\n";
  out_ << "status: " << (passed ? "pass" : "fail") << "\n";
  return passed ? 0 : 1;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  try {
    if (auto dots = text.find(".."); dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots));
      const int hi = std::stoi(text.substr(dots + 2));
      for (int m = lo; m <= hi; ++m) levels.push_back(m);
    } else {
      for (const auto& part : split(text, ',')) levels.push_back(std::stoi(part));
    }
  } catch (const std::logic_error&) {
    throw UsageError("bad level list '" + text + "'");
  }
  if (levels.empty()) throw UsageError("empty level list '" + text + "'");
  for (int m : levels) {
    if (m < 0) throw UsageError("negative level in '" + text + "'");
  }
  return levels;
}

MarkovChain<Rational> load_rational_chain(const std::string& path) {
  if (path.empty()) {
    std::istringstream in(kBundledChain);
    return read_chain<Rational>(in);
  }
  return read_chain_file<Rational>(path);
}

void FractalChoice::add_options(CLI::App& app) {
  app.add_flag("--gasket", gasket, "Sierpinski gasket graphs");
  carpet_option = app.add_option("--carpet", carpet,
                                 "Sierpinski carpet graphs: 'standard' or a template file")
                      ->expected(0, 1)
                      ->default_str("standard");
  app.get_option("--gasket")->excludes(carpet_option);
}

bool FractalChoice::selected() const { return gasket || carpet_option->count() > 0; }

void FractalChoice::require() const {
  if (!selected()) throw UsageError("choose --gasket or --carpet");
}

CarpetTemplate FractalChoice::carpet_template() const {
  CarpetTemplate t;
  if (carpet.empty() || carpet == "standard") {
    t = CarpetTemplate::standard();
  } else {
    std::ifstream in(carpet);
    if (!in) throw UsageError("cannot open carpet template " + carpet);
    t = read_carpet_template(in);
  }
  const auto violations = validate_carpet_template(t);
  if (!violations.empty()) {
    std::string msg = "carpet template violates:";
    for (const auto& v : violations) msg += " " + v;
    throw ValidationError(msg);
  }
  return t;
}

int FractalChoice::base() const { return gasket ? 2 : carpet_template().k; }

std::function<FractalGraph(int)> FractalChoice::maker() const {
  if (gasket) return [](int m) { return gasket_graph(m); };
  const CarpetTemplate t = carpet_template();
  return [t](int m) { return carpet_graph(t, m); };
}

void FractalChoice::describe(json& config) const {
  if (gasket) {
    config["fractal"] = "gasket";
  } else {
    config["fractal"] = "carpet";
    const CarpetTemplate t = carpet_template();
    json cells = json::array();
    for (auto [i, j] : t.cells) cells.push_back({i, j});
    config["template"] = {{"k", t.k}, {"cells", cells}};
  }
}

StateId resolve_vertex(const FractalGraph& g, const std::string& name) {
  const auto corners = g.corners();
  const bool gasket = g.kind == FractalGraph::Kind::kGasket;
  const std::vector<std::string> labels =
      gasket ? std::vector<std::string>{"q1", "q2", "q3"}
             : std::vector<std::string>{"c00", "c10", "c01", "c11"};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (name == labels[i]) return corners[i];
  }
  if (auto colon = name.find(':'); colon != std::string::npos) {
    try {
      const auto v = g.vertex_at(std::stoll(name.substr(0, colon)),
                                 std::stoll(name.substr(colon + 1)));
      if (v) return *v;
    } catch (const std::logic_error&) {
    }
    throw UsageError("no vertex at " + name);
  }
  try {
    std::size_t used = 0;
    const unsigned long id = std::stoul(name, &used);
    if (used == name.size() && id < g.num_vertices()) return static_cast<StateId>(id);
  } catch (const std::logic_error&) {
  }
  throw UsageError("unknown vertex '" + name + "'");
}

}  // namespace lerw::cli
