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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "lerw_cli/cli.hpp"

namespace lerw::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lerw_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int call(std::vector<std::string> args, const fs::path& out_dir) {
    args.insert(args.begin(), {"--output-dir", out_dir.string()});
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }
  int call(std::vector<std::string> args) { return call(std::move(args), dir_); }

  std::string file(const std::string& name, const fs::path& d) const {
    std::ifstream in(d / name, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  std::string file(const std::string& name) const { return file(name, dir_); }

  std::map<std::string, std::string> files(const fs::path& d) const {
    std::map<std::string, std::string> all;
    for (const auto& e : fs::directory_iterator(d)) {
      all[e.path().filename().string()] = file(e.path().filename().string(), d);
    }
    return all;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, GraphGasketLevelTwo) {
  ASSERT_EQ(call({"--seed", "1", "graph", "--gasket", "-m", "2"}), kExitPass);
  std::istringstream v(file("graph_vertices.txt"));
  std::string line;
  int count = 0;
  while (std::getline(v, line)) {
    if (!line.empty() && line[0] != '#') ++count;
  }
  EXPECT_EQ(count, 15);
  EXPECT_NE(out_.str().find("seed: 1\n"), std::string::npos);
  EXPECT_NE(out_.str().find("config hash: "), std::string::npos);
  EXPECT_NE(file("graph_summary.json").find("\"config_hash\""), std::string::npos);
}

TEST_F(CliTest, SeedPrintedWhenAutoGenerated) {
  ASSERT_EQ(call({"exact-law", "--from", "a", "--to", "c"}), kExitPass);
  EXPECT_EQ(out_.str().rfind("seed: ", 0), 0u);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(call({}), kExitUsage);
  EXPECT_EQ(call({"no-such-command"}), kExitUsage);
  EXPECT_EQ(call({"graph", "-m", "2"}), kExitUsage);  // no fractal chosen
  EXPECT_EQ(call({"resist", "--gasket", "-m", "x..y"}), kExitUsage);
  EXPECT_EQ(call({"--mode", "fast", "graph", "--gasket"}), kExitUsage);
  EXPECT_EQ(call({"verify-theorem1", "--mode", "double"}), kExitUsage);
  EXPECT_EQ(call({"--mode", "double", "verify-theorem1"}), kExitUsage);
  EXPECT_EQ(call({"exact-law", "--from", "a"}), kExitUsage);
  EXPECT_EQ(call({"exact-law", "--from", "zz", "--to", "c"}), kExitUsage);
  EXPECT_EQ(call({"--seed", "3", "verify-theorem1"}), kExitPass);
  EXPECT_EQ(call({"--seed", "3", "verify-theorem1", "--fuzz", "3", "--states", "4",
                  "--levels", "2", "--inject-off-by-one"}),
            kExitFail);
  EXPECT_NE(file("verify-theorem1_counterexample.txt").find("path:"), std::string::npos);
}

TEST_F(CliTest, ChainFileAndMethods) {
  const std::string chain = std::string(LERW_DATA_DIR) + "/three_state.chain";
  for (const std::string method : {"automaton", "enumerate", "product"}) {
    ASSERT_EQ(call({"--mode", "rational", "exact-law", "--chain", chain, "--from", "a", "--to",
                    "c", "--method", method}),
              kExitPass)
        << err_.str();
    const std::string law = file("exact-law_law.txt");
    if (method == "enumerate") {
      // Truncated at 30 steps; the missing mass is the certified tail.
      EXPECT_NE(law.find("# tail_bound 1/1073741824"), std::string::npos) << law;
    } else {
      EXPECT_NE(law.find("a c\t2/3"), std::string::npos) << method << "\n" << law;
    }
  }
}

TEST_F(CliTest, WorkersDoNotChangeOutputs) {
  const std::vector<std::string> cmd{"--seed", "99", "simulate", "--gasket", "-m", "2",
                                     "--from", "q1", "--to", "q2,q3", "-n", "3000"};
  auto one = cmd, eight = cmd;
  one.insert(one.begin(), {"--workers", "1"});
  eight.insert(eight.begin(), {"--workers", "8"});
  ASSERT_EQ(call(one, dir_ / "w1"), kExitPass);
  ASSERT_EQ(call(eight, dir_ / "w8"), kExitPass);
  EXPECT_EQ(files(dir_ / "w1"), files(dir_ / "w8"));
}

TEST_F(CliTest, ConfigFileWithOverride) {
  fs::create_directories(dir_);
  const fs::path cfg = dir_ / "config.json";
  std::ofstream(cfg) << R"({"seed": 7, "verify-green": {"instances": 20, "permutation-instances": 2}})";
  ASSERT_EQ(call({"--config", cfg.string(), "verify-green"}, dir_ / "a"), kExitPass)
      << err_.str();
  EXPECT_NE(out_.str().find("seed: 7\n"), std::string::npos);
  EXPECT_NE(out_.str().find("checks: 32\n"), std::string::npos) << out_.str();
  ASSERT_EQ(call({"--config", cfg.string(), "verify-green", "--instances", "5"}, dir_ / "b"),
            kExitPass);
  EXPECT_NE(out_.str().find("checks: 17\n"), std::string::npos) << out_.str();

  // Same effective config from flags alone gives identical files.
  ASSERT_EQ(call({"--seed", "7", "verify-green", "--instances", "20", "--permutation-instances",
                  "2"},
                 dir_ / "c"),
            kExitPass);
  EXPECT_EQ(files(dir_ / "a"), files(dir_ / "c"));

  std::ofstream(cfg) << "{not json";
  EXPECT_EQ(call({"--config", cfg.string(), "verify-green"}), kExitUsage);
}

TEST_F(CliTest, EnvironmentOutputDir) {
  const fs::path env_dir = dir_ / "env";
  ::setenv("LERW_OUTPUT_DIR", env_dir.c_str(), 1);
  std::ostringstream out, err;
  const int code = run({"--seed", "1", "graph", "--gasket", "-m", "1"}, out, err);
  ::unsetenv("LERW_OUTPUT_DIR");
  ASSERT_EQ(code, kExitPass);
  EXPECT_TRUE(fs::exists(env_dir / "graph_summary.json"));
}

TEST_F(CliTest, ResistCarpetCorners) {
  ASSERT_EQ(call({"resist", "--carpet", "standard", "-m", "1..3", "--pair", "corners"}),
            kExitPass)
      << err_.str();
  const std::string table = file("resist_levels.csv");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 4);
}

TEST_F(CliTest, BadCarpetTemplate) {
  fs::create_directories(dir_);
  const fs::path t = dir_ / "bad.carpet";
  std::ofstream(t) << "3\n1 2\n1 3\n2 1\n2 3\n3 1\n3 2\n3 3\n";
  EXPECT_EQ(call({"graph", "--carpet", t.string(), "-m", "1"}), kExitUsage);
  EXPECT_NE(err_.str().find("Borders"), std::string::npos);
}

}  // namespace
}  // namespace lerw::cli
