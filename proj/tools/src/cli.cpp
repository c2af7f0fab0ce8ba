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

#include "lerw_cli/cli.hpp"

#include <sstream>

#include "context.hpp"
#include "lerw/errors.hpp"

namespace lerw::cli {

namespace {

// JSON config files: top-level keys set global options, and an object
// named after a subcommand sets that subcommand's options. Flags given on
// the command line win.
class ConfigJSON : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      input >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

 private:
  static std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("config values must be scalars or arrays");
  }

  static void collect(const json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object()) {
        auto sub = parents;
        sub.push_back(it.key());
        collect(*it, sub, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_array()) {
        for (const auto& v : *it) item.inputs.push_back(scalar_text(v));
      } else {
        item.inputs.push_back(scalar_text(*it));
      }
      items.push_back(std::move(item));
    }
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Loop erasure, partial loop erasure and fractal random walk experiments",
               "lerw");
  app.fallthrough();
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<ConfigJSON>());
  app.set_config("--config", "", "JSON config file; command-line flags override it");

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Master seed (random if omitted; always printed)");
  app.add_option("--mode", global.mode, "Numeric mode: rational, double or auto")
      ->check(CLI::IsMember({"auto", "rational", "double"}));
  app.add_option("--workers", global.workers, "Worker threads; outputs do not depend on it")
      ->check(CLI::PositiveNumber);
  app.add_option("--output-dir", global.output_dir,
                 "Output directory (default $LERW_OUTPUT_DIR, else .)");

  std::vector<CommandEntry> commands;
  add_theorem_command(app, commands);
  add_green_command(app, commands);
  add_graph_command(app, commands);
  add_resist_command(app, commands);
  add_converge_command(app, commands);
  add_simulate_command(app, commands);
  add_exact_law_command(app, commands);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  for (const auto& entry : commands) {
    if (!entry.app->parsed()) continue;
    try {
      RunContext ctx(entry.app->get_name(), global, out, err);
      return entry.action(ctx);
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const ValidationError& e) {
      err << "invalid input: " << e.what() << "\n";
      return kExitUsage;
    } catch (const GuardExceeded& e) {
      err << "guard exceeded: " << e.what() << "\n";
      return kExitUsage;
    } catch (const UnreachableTargetError& e) {
      err << "unreachable target: " << e.what() << "\n";
      return kExitUsage;
    } catch (const StepCapExceeded& e) {
      err << "step cap exceeded: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::invalid_argument& e) {
      err << "invalid input: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitFail;
    }
  }
  return kExitUsage;
}

}  // namespace lerw::cli
