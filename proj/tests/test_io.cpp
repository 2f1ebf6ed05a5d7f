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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "su2mon/io.hpp"

namespace su2mon::io {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "su2mon_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(FormatDouble, RoundTripsExactly) {
  for (double x : {0.1, 1.0 / 3.0, std::numbers::ln2, 1e-300, -2.5e17, 0.0}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(Csv, HeaderOnlyWhenEmpty) {
  std::ostringstream os;
  write_csv(os, std::span<const AncillaRow>{});
  EXPECT_EQ(os.str(), std::string(kAncillaHeader) + "\n");
  std::ostringstream oe;
  write_csv(oe, std::span<const EntanglementRow>{});
  EXPECT_EQ(oe.str(), std::string(kEntanglementHeader) + "\n");
  std::ostringstream om;
  write_csv(om, std::span<const MutualInfoRow>{});
  EXPECT_EQ(om.str(), std::string(kMutualInfoHeader) + "\n");
}

TEST(Csv, SchemaColumns) {
  EXPECT_EQ(kAncillaHeader, "L,p,t,mean_SA,sem_SA,log_mean_SA,mean_log_SA,n");
  EXPECT_EQ(kEntanglementHeader, "L,p,mean_Sf,sem_Sf,n");
  EXPECT_EQ(kMutualInfoHeader, "L,p,kind,j,k,mean_I,sd_I,sem_I,n");
}

TEST(Csv, AncillaRoundTripIsBitExact) {
  const std::vector<AncillaRow> rows = {
      {8, 0.7, 0, std::numbers::ln2, 0.0, std::log(std::numbers::ln2), std::log(std::numbers::ln2), 2000},
      {8, 0.7, 4, 0.1234567890123456789, 1e-5, std::log(0.1234567890123456789), -2.7182818284590451, 2000},
      {12, 0.29999999999999999, 144, 3e-7, 1.5e-8, std::log(3e-7), -69.077552789821368, 300},
  };
  std::ostringstream os;
  write_csv(os, std::span<const AncillaRow>(rows));
  const fs::path p = scratch("anc.csv");
  write_file(p, os.str());
  EXPECT_EQ(read_ancilla_csv(p), rows);
  EXPECT_EQ(slurp(p).find('\r'), std::string::npos);
}

TEST(Csv, EntanglementAndMutualInfoRoundTrip) {
  const std::vector<EntanglementRow> e = {{8, 0.0, 2.1, 0.01, 1000}, {10, 0.0, 2.7, 0.012, 1000}};
  std::ostringstream oe;
  write_csv(oe, std::span<const EntanglementRow>(e));
  write_file(scratch("ent.csv"), oe.str());
  EXPECT_EQ(read_entanglement_csv(scratch("ent.csv")), e);

  const std::vector<MutualInfoRow> m = {{12, 0.5, "single", 1, 6, 0.01, 0.05, 0.001, 2000},
                                        {12, 0.5, "pair", 1, 6, 0.04, 0.1, 0.002, 2000}};
  std::ostringstream om;
  write_csv(om, std::span<const MutualInfoRow>(m));
  write_file(scratch("mi.csv"), om.str());
  EXPECT_EQ(read_mutual_info_csv(scratch("mi.csv")), m);
}

TEST(Csv, ReaderRejectsWrongHeaderAndRaggedRows) {
  write_file(scratch("wrong.csv"), "L,p,q\n1,2,3\n");
  EXPECT_THROW(read_ancilla_csv(scratch("wrong.csv")), std::invalid_argument);
  std::istringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(parse_csv(ragged), std::invalid_argument);
  EXPECT_THROW(read_csv(scratch("does_not_exist.csv")), std::runtime_error);
}

TEST(Csv, ParserToleratesCrlfAndBlankLines) {
  std::istringstream in("x,y\r\n1,2\r\n\r\n3,4\n");
  const CsvTable t = parse_csv(in);
  EXPECT_EQ(t.header, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(t.numeric_column("y"), (std::vector<double>{2, 4}));
  EXPECT_THROW(t.column("z"), std::invalid_argument);
}

TEST(Rows, FromResults) {
  AncillaResult a;
  a.options.L = 8;
  a.options.p = 0.3;
  a.times = {0, 1, 2};
  a.mean_SA = {0.69, 0.5, 0.2};
  a.sem_SA = {0, 0.01, 0.02};
  a.log_mean_SA = {std::log(0.69), std::log(0.5), std::log(0.2)};
  a.mean_log_SA = {std::log(0.69), -0.8, -1.8};
  a.n = 10;
  const std::vector<AncillaResult> v = {a};
  EXPECT_EQ(ancilla_rows(v, AncillaRows::AllTimes).size(), 3U);
  const auto fin = ancilla_rows(v, AncillaRows::FinalOnly);
  ASSERT_EQ(fin.size(), 1U);
  EXPECT_EQ(fin[0].t, 2);
  EXPECT_EQ(fin[0].mean_SA, 0.2);

  MutualInfoResult m;
  m.options.L = 8;
  m.n = 4;
  m.single = {{MutualInfoKind::Single, 0, 3, 0.1, 0.2, 0.1}};
  m.pair = {{MutualInfoKind::Pair, 0, 3, 0.3, 0.4, 0.2}};
  const std::vector<MutualInfoResult> mv = {m};
  const auto mr = mutual_info_rows(mv);
  ASSERT_EQ(mr.size(), 2U);
  EXPECT_EQ(mr[0].kind, "single");
  EXPECT_EQ(mr[0].j, 1);  // 1-based
  EXPECT_EQ(mr[0].k, 4);
  EXPECT_EQ(mr[1].kind, "pair");
}

TEST(Rows, CollapsePointsUseLastTime) {
  const std::vector<AncillaRow> rows = {{8, 0.2, 0, 0.69, 0, 0, 0, 5},  {8, 0.2, 64, 0.3, 0.01, 0, 0, 5},
                                        {8, 0.3, 64, 0.2, 0.01, 0, 0, 5}, {12, 0.2, 144, 0.4, 0.02, 0, 0, 5}};
  const auto pts = collapse_points_from_ancilla(rows);
  ASSERT_EQ(pts.size(), 3U);
  for (const auto& pt : pts) {
    if (pt.L == 8 && pt.p == 0.2) {
      EXPECT_EQ(pt.value, 0.3);
      EXPECT_EQ(pt.error, 0.01);
    }
  }
}

TEST(WriteFile, FailsOnMissingDirectory) {
  EXPECT_THROW(write_file(scratch("no_such_dir") / "x" / "y.csv", "a"), std::runtime_error);
}

TEST(Json, ReportsSerialize) {
  FitResult f;
  f.family = FitFamily::Sqrt;
  f.slope = 1.5;
  const nlohmann::json j = to_json(f);
  EXPECT_EQ(j.at("family"), "sqrt");
  EXPECT_EQ(j.at("slope"), 1.5);

  RunManifest m;
  m.command = "purify";
  m.seed = 3;
  m.version = std::string(version());
  m.outputs = {"a.csv"};
  const nlohmann::json mj = to_json(m);
  EXPECT_EQ(mj.at("command"), "purify");
  EXPECT_EQ(mj.at("outputs").size(), 1U);
  EXPECT_FALSE(version().empty());

  CrossingEstimate c;
  c.pairs = {{8, 12, 0.29}};
  c.mean = 0.29;
  EXPECT_EQ(to_json(c).at("pairs").size(), 1U);
}

}  // namespace
}  // namespace su2mon::io
