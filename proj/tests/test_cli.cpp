// Copyright 2026 The cobo Authors. All Rights Reserved.
//
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
// =============================================================================

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cobo/config.hpp"

namespace {

namespace fs = std::filesystem;

int cli(const std::string& args) {
  const std::string cmd = std::string(COBO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cobo_cli_" + name);
  fs::remove_all(p);
  return p;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("cobo_cli_" + name + ".ini");
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kConfigs = std::string(COBO_SOURCE_DIR) + "/configs/";

TEST(Cli, EconSubcommand) {
  const fs::path out = dir("econ");
  EXPECT_EQ(cli("econ --config " + kConfigs + "econ.ini --out " + out.string()), cobo::kExitOk);
  const std::string table = slurp(out / "cost_table.csv");
  EXPECT_NE(table.find("54293.33"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "resolved_config.ini"));
  EXPECT_EQ(cli("report " + out.string()), cobo::kExitOk);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli(""), cobo::kExitUsage);
  EXPECT_EQ(cli("fly"), cobo::kExitUsage);
  EXPECT_EQ(cli("bo --seed notanumber"), cobo::kExitUsage);
  EXPECT_EQ(cli("bo --config /nonexistent/x.ini"), cobo::kExitMissingFile);
  EXPECT_EQ(cli("bo --config " + write_config("bad", "[bo]\nbogus = 1\n").string()), cobo::kExitParse);
  EXPECT_EQ(cli("bo --batch-size 0 --out " + dir("zero").string()), cobo::kExitValidation);
  EXPECT_EQ(cli("report " + dir("nothing").string()), cobo::kExitMissingFile);
  EXPECT_EQ(cli("--help"), cobo::kExitOk);
}

TEST(Cli, OverridesAreEchoedInResolvedConfig) {
  const fs::path out = dir("override");
  ASSERT_EQ(cli("bo --config " + kConfigs + "bo_quadratic.ini --seed 17 --batch-size 2 --out " + out.string()),
            cobo::kExitOk);
  const cobo::RunConfig c = cobo::parse_config((out / "resolved_config.ini").string());
  EXPECT_EQ(c.seed, 17u);
  EXPECT_EQ(c.batch_size, 2);
  EXPECT_EQ(c.out, out.string());
  for (const char* f : {"trace.csv", "convergence.csv", "summary.txt"}) EXPECT_TRUE(fs::exists(out / f)) << f;
}

TEST(Cli, SubcommandSetsMode) {
  const fs::path out = dir("mode");
  ASSERT_EQ(cli("simulate --config " + kConfigs + "simulate.ini --out " + out.string()), cobo::kExitOk);
  EXPECT_EQ(cobo::parse_config((out / "resolved_config.ini").string()).mode, "simulate");
  EXPECT_TRUE(fs::exists(out / "timeseries.csv"));
}

TEST(Cli, ReproducibleSummary) {
  const fs::path a = dir("repro_a"), b = dir("repro_b");
  const std::string cfg = kConfigs + "codesign_synthetic.ini";
  ASSERT_EQ(cli("codesign --config " + cfg + " --out " + a.string()), cobo::kExitOk);
  ASSERT_EQ(cli("codesign --config " + cfg + " --out " + b.string()), cobo::kExitOk);
  EXPECT_EQ(slurp(a / "summary.txt"), slurp(b / "summary.txt"));
  EXPECT_EQ(slurp(a / "convergence.csv"), slurp(b / "convergence.csv"));
}

TEST(Cli, SampleConfigsAreValid) {
  for (const auto& entry : fs::directory_iterator(kConfigs)) {
    if (entry.path().extension() != ".ini") continue;
    EXPECT_NO_THROW(cobo::parse_config(entry.path().string())) << entry.path();
  }
}

}  // namespace
