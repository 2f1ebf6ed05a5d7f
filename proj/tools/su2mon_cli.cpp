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

// Command-line driver: trajectory sweeps, replica-Hamiltonian checks and
// fits over CSV outputs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "su2mon/analysis.hpp"
#include "su2mon/experiments.hpp"
#include "su2mon/io.hpp"
#include "su2mon/parallel.hpp"
#include "su2mon/statmech.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace su2mon;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct SweepFlags {
  std::vector<int> L;
  std::string p = "0";
  int steps = -1;
  int scramble_steps = -1;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  unsigned workers = default_workers();
  std::string out;
  int record_every = 1;
  std::string format = "csv";
};

struct StatmechFlags {
  int Q = 1;
  int L = 2;
  double J = 1.0;
  double gamma = 0.0;
  std::string boundary = "open";
  std::string check = "all";
  std::size_t levels = 6;
  std::string out;
};

struct AnalysisFlags {
  std::string in;
  std::string out;
  // fit
  std::string x = "L";
  std::string y = "mean_Sf";
  std::vector<std::string> families = {"linear", "log", "sqrt", "powerlaw"};
  std::vector<double> where_p;
  // collapse
  std::string form = "log";
  std::size_t bootstrap = 0;
  std::uint64_t seed = 1;
  bool crossing = false;
};

double round_grid(double v) { return std::round(v * 1e12) / 1e12; }

/// "0.3", "0.1,0.2" or "a:b:step" (inclusive of b up to rounding).
std::vector<double> parse_p_values(const std::string& spec) {
  std::vector<double> out;
  auto number = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument(fmt::format("--p: '{}' is not a number", s));
    }
    if (used != s.size()) throw std::invalid_argument(fmt::format("--p: '{}' is not a number", s));
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("--p range must be a:b:step");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    const double step = number(parts[2]);
    if (!(step > 0.0) || b < a) throw std::invalid_argument("--p range needs a <= b and step > 0");
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(round_grid(a + static_cast<double>(i) * step));
  } else {
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(number(part));
  }
  if (out.empty()) throw std::invalid_argument("--p: no values");
  for (double p : out) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(fmt::format("--p: {} is outside [0, 1]", p));
  }
  return out;
}

fs::path resolve_out_dir(const std::string& flag) {
  fs::path dir = flag;
  if (dir.empty()) {
    const char* env = std::getenv("SU2M_OUT");
    dir = env != nullptr && *env != '\0' ? fs::path(env) : fs::path(".");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::invalid_argument(fmt::format("output directory '{}' cannot be created", dir.string()));
  }
  const fs::path probe = dir / ".su2mon_write_probe";
  {
    std::ofstream os(probe);
    if (!os) throw std::invalid_argument(fmt::format("output directory '{}' is not writable", dir.string()));
  }
  fs::remove(probe, ec);
  return dir;
}

json sweep_config(const SweepFlags& f, const std::vector<double>& ps) {
  json c = {{"L", f.L},          {"p", ps},
            {"samples", f.samples}, {"seed", f.seed},
            {"workers", f.workers}, {"record_every", f.record_every},
            {"format", f.format}};
  c["steps"] = f.steps < 0 ? json("L^2") : json(f.steps);
  c["scramble_steps"] = f.scramble_steps < 0 ? json("L^2") : json(f.scramble_steps);
  return c;
}

ExperimentOptions make_options(const SweepFlags& f, int L, double p) {
  ExperimentOptions o;
  o.L = L;
  o.p = p;
  o.samples = f.samples;
  o.seed = f.seed;
  o.workers = f.workers;
  if (f.steps >= 0) o.steps = f.steps;
  if (f.scramble_steps >= 0) o.scramble_steps = f.scramble_steps;
  o.record_every = f.record_every;
  return o;
}

void validate_sweep(const SweepFlags& f) {
  if (f.L.empty()) throw std::invalid_argument("--L is required");
  if (f.samples == 0) throw std::invalid_argument("--samples must be positive");
  if (f.workers == 0) throw std::invalid_argument("--workers must be positive");
  if (f.record_every < 1) throw std::invalid_argument("--record-every must be >= 1");
  if (f.format != "csv" && f.format != "json") throw std::invalid_argument("--format must be csv or json");
}

template <typename Rows>
std::string render(const Rows& rows, const std::string& format) {
  if (format == "json") return io::to_json(std::span(rows)).dump(2) + "\n";
  std::ostringstream os;
  io::write_csv(os, std::span(rows));
  return os.str();
}

void finish(const std::string& command, const json& config, std::uint64_t seed, const fs::path& out_dir,
            std::vector<std::string> outputs, std::chrono::steady_clock::time_point start) {
  io::RunManifest m;
  m.command = command;
  m.config = config;
  m.seed = seed;
  m.version = std::string(io::version());
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const fs::path manifest_path = out_dir / fmt::format("{}_manifest.json", command);
  m.outputs = std::move(outputs);
  io::write_file(manifest_path, io::to_json(m).dump(2) + "\n");
  for (const std::string& o : m.outputs) std::cout << o << "\n";
  std::cout << manifest_path.string() << "\n";
}

int run_sweep(const std::string& command, const SweepFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  validate_sweep(f);
  const std::vector<double> ps = parse_p_values(f.p);
  const fs::path dir = resolve_out_dir(f.out);
  const fs::path data = dir / fmt::format("{}.{}", command, f.format);

  std::string contents;
  if (command == "purify" || command == "sharpen") {
    std::vector<AncillaResult> results;
    for (int L : f.L) {
      for (double p : ps) {
        const ExperimentOptions o = make_options(f, L, p);
        results.push_back(command == "purify" ? run_purification(o) : run_sharpening(o));
        std::cerr << fmt::format("{} L={} p={} done\n", command, L, p);
      }
    }
    const auto rows =
        io::ancilla_rows(results, command == "purify" ? io::AncillaRows::AllTimes : io::AncillaRows::FinalOnly);
    contents = render(rows, f.format);
  } else if (command == "entangle") {
    std::vector<EntanglementResult> results;
    for (int L : f.L) {
      for (double p : ps) {
        results.push_back(run_entanglement(make_options(f, L, p)));
        std::cerr << fmt::format("{} L={} p={} done\n", command, L, p);
      }
    }
    contents = render(io::entanglement_rows(results), f.format);
  } else {
    std::vector<MutualInfoResult> results;
    for (int L : f.L) {
      for (double p : ps) {
        results.push_back(run_mutual_info(make_options(f, L, p)));
        std::cerr << fmt::format("{} L={} p={} done\n", command, L, p);
      }
    }
    contents = render(io::mutual_info_rows(results), f.format);
  }
  io::write_file(data, contents);
  finish(command, sweep_config(f, ps), f.seed, dir, {data.string()}, start);
  return 0;
}

int run_statmech(const StatmechFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  statmech::ReplicaConfig config;
  config.Q = f.Q;
  config.L = f.L;
  config.J = f.J;
  config.gamma = f.gamma;
  if (f.boundary == "open") {
    config.boundary = statmech::Boundary::Open;
  } else if (f.boundary == "periodic") {
    config.boundary = statmech::Boundary::Periodic;
  } else {
    throw std::invalid_argument("--boundary must be open or periodic");
  }
  config.validate();
  const std::set<std::string> known = {"all", "decomposition", "symmetry", "annihilation", "spectrum"};
  if (!known.contains(f.check)) throw std::invalid_argument(fmt::format("unknown --check '{}'", f.check));
  const bool all = f.check == "all";
  const fs::path dir = resolve_out_dir(f.out);
  constexpr double tol = 1e-10;

  const statmech::ReplicaHamiltonian h(config);
  json report = {{"Q", config.Q}, {"L", config.L}, {"J", config.J}, {"gamma", config.gamma},
                 {"boundary", f.boundary}, {"dimension", config.dimension()}};
  bool pass = true;

  if (all || f.check == "decomposition") {
    json rows = json::array();
    bool quoted_ok = true;
    for (const auto& sigma : statmech::PairingPermutation::all(config.Q)) {
      const auto c = statmech::check_decomposition(config, sigma);
      rows.push_back(io::to_json(c));
      pass = pass && c.unitary_residual < tol && c.measurement_residual_derived < tol;
      quoted_ok = quoted_ok && c.measurement_residual_quoted < tol;
    }
    report["decomposition"] = {{"per_sigma", rows}, {"quoted_measurement_coefficients_hold", quoted_ok}};
  }
  if (all || f.check == "annihilation") {
    json rows = json::array();
    const statmech::SparseMatrix& hu = h.h_unitary();
    for (const auto& sigma : statmech::PairingPermutation::all(config.Q)) {
      const double norm = (hu * statmech::paired_product_state(config, sigma)).norm();
      rows.push_back({{"sigma", sigma.to_string()}, {"h_unitary_norm", norm}});
      pass = pass && norm < tol;
    }
    const double polarized = (hu * statmech::polarized_state(config)).norm();
    report["annihilation"] = {{"paired", rows}, {"polarized_h_unitary_norm", polarized}};
    pass = pass && polarized < tol;
  }
  if (all || f.check == "symmetry") {
    const auto sym = statmech::check_symmetries(h, tol);
    report["symmetry"] = io::to_json(sym);
    pass = pass && sym.all_pass();
  }
  if (all || f.check == "spectrum") {
    const std::size_t k = std::min(f.levels, h.dimension());
    const auto spec = statmech::low_spectrum(h, k);
    json s = io::to_json(spec);
    s["gap"] = statmech::spectral_gap(spec.eigenvalues);
    if (h.materialized() && h.dimension() <= statmech::kDenseSolveLimit) {
      const auto hm = statmech::full_spectrum(config, h.h_measurement());
      s["h_measurement_min_eigenvalue"] = hm.front();
      pass = pass && hm.front() >= -tol;
    }
    report["spectrum"] = s;
  }
  report["all_pass"] = pass;

  const fs::path path = dir / "statmech.json";
  io::write_file(path, report.dump(2) + "\n");
  json cfg = {{"Q", f.Q},         {"L", f.L},         {"J", f.J},         {"gamma", f.gamma},
              {"boundary", f.boundary}, {"check", f.check}, {"levels", f.levels}};
  finish("statmech", cfg, 0, dir, {path.string()}, start);
  std::cerr << fmt::format("statmech: {}\n", pass ? "all pass" : "FAILED");
  return 0;
}

int run_fit(const AnalysisFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  if (f.in.empty()) throw std::invalid_argument("--in is required");
  const fs::path dir = resolve_out_dir(f.out);
  std::vector<FitFamily> families;
  for (const std::string& name : f.families) families.push_back(parse_fit_family(name));

  const io::CsvTable table = io::read_csv(f.in);
  std::vector<double> xs = table.numeric_column(f.x);
  std::vector<double> ys = table.numeric_column(f.y);
  std::vector<double> ps;
  if (std::find(table.header.begin(), table.header.end(), "p") != table.header.end()) ps = table.numeric_column("p");

  // One fit per p value present (or per listed --where-p).
  std::map<double, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double p = ps.empty() ? 0.0 : ps[i];
    if (!f.where_p.empty() &&
        std::none_of(f.where_p.begin(), f.where_p.end(), [&](double w) { return std::abs(w - p) < 1e-12; })) {
      continue;
    }
    groups[p].first.push_back(xs[i]);
    groups[p].second.push_back(ys[i]);
  }
  if (groups.empty()) throw std::invalid_argument("fit: no rows selected");
  json report = json::array();
  for (const auto& [p, data] : groups) {
    json fits = json::array();
    for (FitFamily fam : families) fits.push_back(io::to_json(fit_family(data.first, data.second, fam)));
    report.push_back({{"p", p}, {"x", f.x}, {"y", f.y}, {"fits", fits}});
  }
  const fs::path path = dir / "fit.json";
  io::write_file(path, report.dump(2) + "\n");
  json cfg = {{"in", f.in}, {"x", f.x}, {"y", f.y}, {"families", f.families}, {"where_p", f.where_p}};
  finish("fit", cfg, 0, dir, {path.string()}, start);
  return 0;
}

int run_collapse(const AnalysisFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  if (f.in.empty()) throw std::invalid_argument("--in is required");
  CollapseForm form;
  if (f.form == "log") {
    form = CollapseForm::Log;
  } else if (f.form == "identity") {
    form = CollapseForm::Identity;
  } else {
    throw std::invalid_argument("--form must be log or identity");
  }
  const fs::path dir = resolve_out_dir(f.out);
  const std::vector<io::AncillaRow> rows = io::read_ancilla_csv(f.in);
  const std::vector<CollapsePoint> points = io::collapse_points_from_ancilla(rows);

  json report;
  report["collapse"] = io::to_json(collapse_fit(points, form));
  if (f.bootstrap > 0) {
    const BootstrapSummary b = bootstrap_collapse(points, f.bootstrap, f.seed, form);
    report["bootstrap"] = {{"resamples", f.bootstrap}, {"p_c_mean", b.p_c_mean}, {"p_c_sd", b.p_c_sd},
                           {"nu_mean", b.nu_mean},     {"nu_sd", b.nu_sd}};
  }
  if (f.crossing) {
    std::map<int, Curve> curves;
    for (const CollapsePoint& pt : points) {
      Curve& c = curves[pt.L];
      c.L = pt.L;
      c.p.push_back(pt.p);
      c.value.push_back(form == CollapseForm::Log ? std::log(pt.value) : pt.value);
    }
    std::vector<Curve> list;
    for (auto& [L, c] : curves) list.push_back(std::move(c));
    try {
      report["crossing"] = io::to_json(find_crossing(list));
    } catch (const NoCrossing& e) {
      report["crossing"] = {{"error", e.what()}};
    }
  }
  const fs::path path = dir / "collapse.json";
  io::write_file(path, report.dump(2) + "\n");
  json cfg = {{"in", f.in}, {"form", f.form}, {"bootstrap", f.bootstrap}, {"seed", f.seed}, {"crossing", f.crossing}};
  finish("collapse", cfg, f.seed, dir, {path.string()}, start);
  return 0;
}

void add_sweep_flags(CLI::App* sub, SweepFlags& f) {
  sub->add_option("--L", f.L, "system sizes, comma separated")->delimiter(',')->required();
  sub->add_option("--p", f.p, "measurement rate: value, list a,b,c or range a:b:step");
  sub->add_option("--steps", f.steps, "monitored steps (default L^2)");
  sub->add_option("--scramble-steps", f.scramble_steps, "p = 0 steps before monitoring (default L^2)");
  sub->add_option("--samples", f.samples, "trajectories per (L, p)");
  sub->add_option("--seed", f.seed, "master seed");
  sub->add_option("--workers", f.workers, "worker threads");
  sub->add_option("--out", f.out, "output directory (default $SU2M_OUT or .)");
  sub->add_option("--record-every", f.record_every, "record stride in steps");
  sub->add_option("--format", f.format, "csv or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monitored SU(2)-symmetric brickwork circuits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::version()));

  std::map<std::string, SweepFlags> sweeps;
  for (const char* name : {"purify", "entangle", "sharpen", "mutualinfo"}) {
    static const std::map<std::string, std::string> help = {
        {"purify", "ancilla purification: S_A(t) per (L, p)"},
        {"entangle", "final half-chain entropy per (L, p)"},
        {"sharpen", "spin sharpening: final S_A per (L, p)"},
        {"mutualinfo", "single-site and pair mutual-information profiles"}};
    add_sweep_flags(app.add_subcommand(name, help.at(name)), sweeps[name]);
  }

  StatmechFlags sm;
  CLI::App* statmech_cmd = app.add_subcommand("statmech", "replica Hamiltonian identities and spectra");
  statmech_cmd->add_option("--Q", sm.Q, "replica number");
  statmech_cmd->add_option("--L", sm.L, "chain length");
  statmech_cmd->add_option("--J", sm.J, "unitary coupling");
  statmech_cmd->add_option("--gamma", sm.gamma, "measurement coupling");
  statmech_cmd->add_option("--boundary", sm.boundary, "open or periodic");
  statmech_cmd->add_option("--check", sm.check, "all, decomposition, annihilation, symmetry or spectrum");
  statmech_cmd->add_option("--levels", sm.levels, "number of low eigenvalues reported");
  statmech_cmd->add_option("--out", sm.out, "output directory");

  AnalysisFlags fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "fit-family comparison on a CSV");
  fit_cmd->add_option("--in", fit.in, "input CSV")->required();
  fit_cmd->add_option("--x", fit.x, "predictor column");
  fit_cmd->add_option("--y", fit.y, "response column");
  fit_cmd->add_option("--family", fit.families, "linear,log,sqrt,powerlaw")->delimiter(',');
  fit_cmd->add_option("--where-p", fit.where_p, "only rows with these p values")->delimiter(',');
  fit_cmd->add_option("--out", fit.out, "output directory");

  AnalysisFlags col;
  CLI::App* collapse_cmd = app.add_subcommand("collapse", "finite-size-scaling collapse of an ancilla CSV");
  collapse_cmd->add_option("--in", col.in, "purify or sharpen CSV")->required();
  collapse_cmd->add_option("--form", col.form, "log or identity");
  collapse_cmd->add_option("--bootstrap", col.bootstrap, "bootstrap resamples (0 = off)");
  collapse_cmd->add_option("--seed", col.seed, "bootstrap seed");
  collapse_cmd->add_flag("--crossing", col.crossing, "also locate curve crossings");
  collapse_cmd->add_option("--out", col.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    for (auto& [name, flags] : sweeps) {
      if (app.got_subcommand(name)) return run_sweep(name, flags);
    }
    if (app.got_subcommand(statmech_cmd)) return run_statmech(sm);
    if (app.got_subcommand(fit_cmd)) return run_fit(fit);
    if (app.got_subcommand(collapse_cmd)) return run_collapse(col);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
