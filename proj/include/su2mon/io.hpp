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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "su2mon/analysis.hpp"
#include "su2mon/experiments.hpp"
#include "su2mon/statmech.hpp"

namespace su2mon::io {

inline constexpr std::string_view kAncillaHeader = "L,p,t,mean_SA,sem_SA,log_mean_SA,mean_log_SA,n";
inline constexpr std::string_view kEntanglementHeader = "L,p,mean_Sf,sem_Sf,n";
inline constexpr std::string_view kMutualInfoHeader = "L,p,kind,j,k,mean_I,sd_I,sem_I,n";

/// 17 significant digits: parses back to the identical double.
std::string format_double(double x);

// --- rows ------------------------------------------------------------------------

struct AncillaRow {
  int L = 0;
  double p = 0.0;
  int t = 0;
  double mean_SA = 0.0;
  double sem_SA = 0.0;
  double log_mean_SA = 0.0;
  double mean_log_SA = 0.0;
  std::size_t n = 0;
  bool operator==(const AncillaRow&) const = default;
};

struct EntanglementRow {
  int L = 0;
  double p = 0.0;
  double mean_Sf = 0.0;
  double sem_Sf = 0.0;
  std::size_t n = 0;
  bool operator==(const EntanglementRow&) const = default;
};

/// j and k are 1-based site labels. For kind "pair" they label the first site
/// of each pair.
struct MutualInfoRow {
  int L = 0;
  double p = 0.0;
  std::string kind;
  int j = 0;
  int k = 0;
  double mean_I = 0.0;
  double sd_I = 0.0;
  double sem_I = 0.0;
  std::size_t n = 0;
  bool operator==(const MutualInfoRow&) const = default;
};

enum class AncillaRows { AllTimes, FinalOnly };

std::vector<AncillaRow> ancilla_rows(std::span<const AncillaResult> results, AncillaRows which);
std::vector<EntanglementRow> entanglement_rows(std::span<const EntanglementResult> results);
std::vector<MutualInfoRow> mutual_info_rows(std::span<const MutualInfoResult> results);

// --- writers; a header is always written, so no rows gives a header-only file ------

void write_csv(std::ostream& os, std::span<const AncillaRow> rows);
void write_csv(std::ostream& os, std::span<const EntanglementRow> rows);
void write_csv(std::ostream& os, std::span<const MutualInfoRow> rows);

nlohmann::json to_json(std::span<const AncillaRow> rows);
nlohmann::json to_json(std::span<const EntanglementRow> rows);
nlohmann::json to_json(std::span<const MutualInfoRow> rows);

/// Writes `contents` to `path` in binary mode (LF preserved). Throws
/// std::runtime_error when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view contents);

// --- readers -------------------------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a column; throws std::invalid_argument when absent.
  std::size_t column(std::string_view name) const;
  std::vector<double> numeric_column(std::string_view name) const;
};

/// Plain comma-separated values without quoting. Throws std::runtime_error on
/// I/O failure and std::invalid_argument on ragged rows.
CsvTable parse_csv(std::istream& is);
CsvTable read_csv(const std::filesystem::path& path);

std::vector<AncillaRow> read_ancilla_csv(const std::filesystem::path& path);
std::vector<EntanglementRow> read_entanglement_csv(const std::filesystem::path& path);
std::vector<MutualInfoRow> read_mutual_info_csv(const std::filesystem::path& path);

/// Collapse input from an ancilla CSV: the last recorded t of every (L, p)
/// becomes one point with value mean_SA and error sem_SA.
std::vector<CollapsePoint> collapse_points_from_ancilla(std::span<const AncillaRow> rows);

// --- structured reports -----------------------------------------------------------------

nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const CollapseResult& result);
nlohmann::json to_json(const CrossingEstimate& crossing);
nlohmann::json to_json(const statmech::DecompositionCheck& check);
nlohmann::json to_json(const statmech::SymmetryReport& report);
nlohmann::json to_json(const statmech::Spectrum& spectrum);

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string version;
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;
};

nlohmann::json to_json(const RunManifest& manifest);

/// Build version string baked in at compile time.
std::string_view version();

}  // namespace su2mon::io
