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

#include "su2mon/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace su2mon::io {

namespace {

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    // from_chars rejects "inf"/"nan" spellings from some writers; fall back.
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument(fmt::format("not a number: '{}'", s));
  }
  return v;
}

long long parse_int(const std::string& s) {
  long long v = 0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument(fmt::format("not an integer: '{}'", s));
  return v;
}

void require_header(const CsvTable& table, std::string_view expected, const std::filesystem::path& path) {
  std::string got;
  for (std::size_t i = 0; i < table.header.size(); ++i) got += (i ? "," : "") + table.header[i];
  if (got != expected) {
    throw std::invalid_argument(fmt::format("{}: header '{}' does not match '{}'", path.string(), got, expected));
  }
}

std::string_view kind_name(MutualInfoKind kind) { return kind == MutualInfoKind::Single ? "single" : "pair"; }

}  // namespace

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::vector<AncillaRow> ancilla_rows(std::span<const AncillaResult> results, AncillaRows which) {
  std::vector<AncillaRow> rows;
  for (const AncillaResult& r : results) {
    const std::size_t first = which == AncillaRows::FinalOnly && !r.times.empty() ? r.times.size() - 1 : 0;
    for (std::size_t m = first; m < r.times.size(); ++m) {
      rows.push_back({r.options.L, r.options.p, r.times[m], r.mean_SA[m], r.sem_SA[m], r.log_mean_SA[m],
                      r.mean_log_SA[m], r.n});
    }
  }
  return rows;
}

std::vector<EntanglementRow> entanglement_rows(std::span<const EntanglementResult> results) {
  std::vector<EntanglementRow> rows;
  for (const EntanglementResult& r : results) rows.push_back({r.options.L, r.options.p, r.mean_Sf, r.sem_Sf, r.n});
  return rows;
}

std::vector<MutualInfoRow> mutual_info_rows(std::span<const MutualInfoResult> results) {
  std::vector<MutualInfoRow> rows;
  for (const MutualInfoResult& r : results) {
    for (const auto* group : {&r.single, &r.pair}) {
      for (const MutualInfoStat& s : *group) {
        rows.push_back({r.options.L, r.options.p, std::string(kind_name(s.kind)), s.j + 1, s.k + 1, s.mean, s.sd,
                        s.sem, r.n});
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& os, std::span<const AncillaRow> rows) {
  os << kAncillaHeader << '\n';
  for (const AncillaRow& r : rows) {
    os << fmt::format("{},{},{},{},{},{},{},{}\n", r.L, format_double(r.p), r.t, format_double(r.mean_SA),
                      format_double(r.sem_SA), format_double(r.log_mean_SA), format_double(r.mean_log_SA), r.n);
  }
}

void write_csv(std::ostream& os, std::span<const EntanglementRow> rows) {
  os << kEntanglementHeader << '\n';
  for (const EntanglementRow& r : rows) {
    os << fmt::format("{},{},{},{},{}\n", r.L, format_double(r.p), format_double(r.mean_Sf),
                      format_double(r.sem_Sf), r.n);
  }
}

void write_csv(std::ostream& os, std::span<const MutualInfoRow> rows) {
  os << kMutualInfoHeader << '\n';
  for (const MutualInfoRow& r : rows) {
    os << fmt::format("{},{},{},{},{},{},{},{},{}\n", r.L, format_double(r.p), r.kind, r.j, r.k,
                      format_double(r.mean_I), format_double(r.sd_I), format_double(r.sem_I), r.n);
  }
}

nlohmann::json to_json(std::span<const AncillaRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const AncillaRow& r : rows) {
    out.push_back({{"L", r.L}, {"p", r.p}, {"t", r.t}, {"mean_SA", r.mean_SA}, {"sem_SA", r.sem_SA},
                   {"log_mean_SA", r.log_mean_SA}, {"mean_log_SA", r.mean_log_SA}, {"n", r.n}});
  }
  return out;
}

nlohmann::json to_json(std::span<const EntanglementRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const EntanglementRow& r : rows) {
    out.push_back({{"L", r.L}, {"p", r.p}, {"mean_Sf", r.mean_Sf}, {"sem_Sf", r.sem_Sf}, {"n", r.n}});
  }
  return out;
}

nlohmann::json to_json(std::span<const MutualInfoRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const MutualInfoRow& r : rows) {
    out.push_back({{"L", r.L}, {"p", r.p}, {"kind", r.kind}, {"j", r.j}, {"k", r.k}, {"mean_I", r.mean_I},
                   {"sd_I", r.sd_I}, {"sem_I", r.sem_I}, {"n", r.n}});
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  os.close();
  if (!os) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::invalid_argument(fmt::format("missing column '{}'", name));
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(parse_double(row[c]));
  return out;
}

CsvTable parse_csv(std::istream& is) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty CSV: no header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split(line);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw std::invalid_argument(
          fmt::format("CSV row has {} cells, header has {}", cells.size(), table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  return parse_csv(is);
}

std::vector<AncillaRow> read_ancilla_csv(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  require_header(t, kAncillaHeader, path);
  std::vector<AncillaRow> rows;
  for (const auto& c : t.rows) {
    rows.push_back({static_cast<int>(parse_int(c[0])), parse_double(c[1]), static_cast<int>(parse_int(c[2])),
                    parse_double(c[3]), parse_double(c[4]), parse_double(c[5]), parse_double(c[6]),
                    static_cast<std::size_t>(parse_int(c[7]))});
  }
  return rows;
}

std::vector<EntanglementRow> read_entanglement_csv(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  require_header(t, kEntanglementHeader, path);
  std::vector<EntanglementRow> rows;
  for (const auto& c : t.rows) {
    rows.push_back({static_cast<int>(parse_int(c[0])), parse_double(c[1]), parse_double(c[2]), parse_double(c[3]),
                    static_cast<std::size_t>(parse_int(c[4]))});
  }
  return rows;
}

std::vector<MutualInfoRow> read_mutual_info_csv(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  require_header(t, kMutualInfoHeader, path);
  std::vector<MutualInfoRow> rows;
  for (const auto& c : t.rows) {
    rows.push_back({static_cast<int>(parse_int(c[0])), parse_double(c[1]), c[2], static_cast<int>(parse_int(c[3])),
                    static_cast<int>(parse_int(c[4])), parse_double(c[5]), parse_double(c[6]), parse_double(c[7]),
                    static_cast<std::size_t>(parse_int(c[8]))});
  }
  return rows;
}

std::vector<CollapsePoint> collapse_points_from_ancilla(std::span<const AncillaRow> rows) {
  std::map<std::pair<int, double>, const AncillaRow*> last;
  for (const AncillaRow& r : rows) {
    auto& slot = last[{r.L, r.p}];
    if (slot == nullptr || r.t >= slot->t) slot = &r;
  }
  std::vector<CollapsePoint> out;
  for (const auto& [key, r] : last) out.push_back({r->L, r->p, r->mean_SA, r->sem_SA});
  return out;
}

nlohmann::json to_json(const FitResult& fit) {
  return {{"family", std::string(to_string(fit.family))},
          {"slope", fit.slope},
          {"intercept", fit.intercept},
          {"rss", fit.rss},
          {"r_squared", fit.r_squared},
          {"n", fit.n}};
}

nlohmann::json to_json(const CollapseResult& result) {
  nlohmann::json trace = nlohmann::json::array();
  for (const CollapseTraceEntry& e : result.trace) {
    trace.push_back({{"stage", e.stage}, {"p_c", e.p_c}, {"nu", e.nu}, {"objective", e.objective}});
  }
  return {{"p_c", result.p_c},
          {"nu", result.nu},
          {"objective", result.objective},
          {"degenerate", result.degenerate},
          {"points_used", result.points_used},
          {"simplex_iterations", result.simplex_iterations},
          {"trace", trace}};
}

nlohmann::json to_json(const CrossingEstimate& crossing) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const PairCrossing& c : crossing.pairs) {
    pairs.push_back({{"L_small", c.L_small}, {"L_large", c.L_large}, {"p", c.p}});
  }
  return {{"pairs", pairs}, {"mean", crossing.mean}, {"drift", crossing.drift}};
}

nlohmann::json to_json(const statmech::DecompositionCheck& check) {
  return {{"sigma", check.sigma.to_string()},
          {"unitary_residual", check.unitary_residual},
          {"measurement_residual_quoted", check.measurement_residual_quoted},
          {"measurement_residual_derived", check.measurement_residual_derived}};
}

nlohmann::json to_json(const statmech::SymmetryReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"name", e.name}, {"commutator_norm", e.commutator_norm}, {"pass", e.pass}});
  }
  return {{"entries", entries}, {"all_pass", report.all_pass()}};
}

nlohmann::json to_json(const statmech::Spectrum& spectrum) {
  return {{"eigenvalues", spectrum.eigenvalues},
          {"ground_space_dimension", spectrum.ground_space_dimension},
          {"dense", spectrum.dense},
          {"max_residual", spectrum.max_residual}};
}

nlohmann::json to_json(const RunManifest& manifest) {
  return {{"command", manifest.command},
          {"config", manifest.config},
          {"seed", manifest.seed},
          {"version", manifest.version},
          {"wall_seconds", manifest.wall_seconds},
          {"outputs", manifest.outputs}};
}

std::string_view version() { return SU2MON_VERSION; }

}  // namespace su2mon::io
