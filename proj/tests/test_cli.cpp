// Copyright 2026 The su2mon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "su2mon/io.hpp"

namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "su2mon_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" SU2MON_CLI_PATH "' " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, PurifyIsDeterministicAndWorkerInvariant) {
  const fs::path a = fresh_dir("purify_a");
  const fs::path b = fresh_dir("purify_b");
  ASSERT_EQ(run("purify --L 4,6 --p 0.5 --samples 20 --seed 3 --workers 1 --out " + a.string()), 0);
  ASSERT_EQ(run("purify --L 4,6 --p 0.5 --samples 20 --seed 3 --workers 3 --out " + b.string()), 0);
  const std::string csv = slurp(a / "purify.csv");
  EXPECT_EQ(csv, slurp(b / "purify.csv"));
  EXPECT_EQ(csv.rfind(std::string(su2mon::io::kAncillaHeader) + "\n", 0), 0U);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  const auto rows = su2mon::io::read_ancilla_csv(a / "purify.csv");
  EXPECT_EQ(rows.size(), 17U + 37U);  // t = 0..L^2 for each L
}

TEST(Cli, ManifestListsExistingOutputs) {
  const fs::path d = fresh_dir("manifest");
  ASSERT_EQ(run("entangle --L 4 --p 0,0.5 --samples 5 --out " + d.string()), 0);
  const auto manifest = nlohmann::json::parse(slurp(d / "entangle_manifest.json"));
  EXPECT_EQ(manifest.at("command"), "entangle");
  EXPECT_EQ(manifest.at("seed"), 1);
  ASSERT_FALSE(manifest.at("outputs").empty());
  for (const auto& o : manifest.at("outputs")) EXPECT_TRUE(fs::exists(o.get<std::string>())) << o;
  EXPECT_EQ(su2mon::io::read_entanglement_csv(d / "entangle.csv").size(), 2U);
}

TEST(Cli, SharpenWritesOneRowPerSizeAndRate) {
  const fs::path d = fresh_dir("sharpen");
  ASSERT_EQ(run("sharpen --L 4,6 --p 0.2:0.4:0.1 --samples 5 --out " + d.string()), 0);
  const auto rows = su2mon::io::read_ancilla_csv(d / "sharpen.csv");
  ASSERT_EQ(rows.size(), 6U);
  for (const auto& r : rows) EXPECT_EQ(r.t, r.L * r.L);
}

TEST(Cli, MutualInfoUsesOneBasedSites) {
  const fs::path d = fresh_dir("mi");
  ASSERT_EQ(run("mutualinfo --L 6 --p 0.5 --samples 4 --out " + d.string()), 0);
  const auto rows = su2mon::io::read_mutual_info_csv(d / "mutualinfo.csv");
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) {
    EXPECT_EQ(r.j, 1);
    EXPECT_GE(r.k, 2);
  }
}

TEST(Cli, StatmechReportPasses) {
  const fs::path d = fresh_dir("statmech");
  ASSERT_EQ(run("statmech --Q 2 --L 2 --J 1 --gamma 0.5 --check all --out " + d.string()), 0);
  const auto j = nlohmann::json::parse(slurp(d / "statmech.json"));
  EXPECT_TRUE(j.at("all_pass").get<bool>());
}

TEST(Cli, FitAndCollapseReadCsv) {
  const fs::path d = fresh_dir("analysis");
  ASSERT_EQ(run("entangle --L 4,6,8 --p 0 --samples 5 --out " + d.string()), 0);
  ASSERT_EQ(run("fit --in " + (d / "entangle.csv").string() + " --family linear,log,sqrt --out " + d.string()), 0);
  EXPECT_TRUE(fs::exists(d / "fit.json"));
  ASSERT_EQ(run("sharpen --L 4,6 --p 0.1:0.5:0.1 --samples 5 --out " + d.string()), 0);
  ASSERT_EQ(run("collapse --in " + (d / "sharpen.csv").string() + " --crossing --out " + d.string()), 0);
  EXPECT_TRUE(fs::exists(d / "collapse.json"));
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const fs::path d = fresh_dir("env");
  ASSERT_EQ(run("purify --L 4 --p 0.5 --samples 2", "SU2M_OUT='" + d.string() + "'"), 0);
  EXPECT_TRUE(fs::exists(d / "purify.csv"));
}

TEST(Cli, ExitCodes) {
  const fs::path d = fresh_dir("errors");
  EXPECT_EQ(run("purify --L 4 --p 1.5 --out " + d.string()), 1);
  EXPECT_EQ(run("purify --L 5 --p 0.5 --out " + d.string()), 1);
  EXPECT_EQ(run("purify --p 0.5 --out " + d.string()), 1);  // --L is required
  EXPECT_EQ(run("no-such-command"), 1);
  EXPECT_EQ(run("purify --L 4 --p 0.5 --out /proc/su2mon_cannot_write"), 1);
  EXPECT_EQ(run("fit --in " + (d / "missing.csv").string() + " --out " + d.string()), 2);
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("--version"), 0);
}

}  // namespace
