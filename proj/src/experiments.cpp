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

#include "su2mon/experiments.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "su2mon/parallel.hpp"

namespace su2mon {

namespace {

using PairVector = std::array<double, 4>;

constexpr double kHalfRoot2 = std::numbers::sqrt2 / 2.0;
constexpr PairVector kSinglet = {0.0, kHalfRoot2, -kHalfRoot2, 0.0};
constexpr PairVector kTriplet0 = {0.0, kHalfRoot2, kHalfRoot2, 0.0};

void check_even_L(int L, int minimum, const char* what) {
  if (L < minimum || L % 2 != 0) {
    throw std::invalid_argument(fmt::format("{}: L = {} must be even and >= {}", what, L, minimum));
  }
}

// Product of pair states on (0,1), (2,3), ...; the triplet sits on pair
// `triplet_pair` (or nowhere when negative).
std::vector<cplx> pair_product(int L, int triplet_pair) {
  const std::size_t dim = std::size_t{1} << L;
  std::vector<cplx> amps(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double a = 1.0;
    for (int m = 0; m < L / 2 && a != 0.0; ++m) {
      const int local = static_cast<int>(2 * ((i >> (2 * m)) & 1U) + ((i >> (2 * m + 1)) & 1U));
      a *= (m == triplet_pair ? kTriplet0 : kSinglet)[static_cast<std::size_t>(local)];
    }
    amps[i] = a;
  }
  return amps;
}

PureState with_ancilla(int L, const std::vector<cplx>& branch0, const std::vector<cplx>& branch1) {
  std::vector<cplx> amps;
  amps.reserve(2 * branch0.size());
  for (const cplx& a : branch0) amps.push_back(a * kHalfRoot2);
  for (const cplx& a : branch1) amps.push_back(a * kHalfRoot2);
  return PureState::from_amplitudes(L, true, std::move(amps));
}

// Welford accumulation; the textbook sum-of-squares form cancels badly when
// every sample is nearly the same (e.g. S_A = log 2 at p = 0).
struct Moments {
  double mean_ = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;

  void add(double x) {
    ++n;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n);
    m2 += delta * (x - mean_);
  }
  double mean() const { return mean_; }
  double sd() const {
    if (n < 2) return 0.0;
    const double var = m2 / static_cast<double>(n - 1);
    return var > 0.0 ? std::sqrt(var) : 0.0;
  }
  double sem() const { return n ? sd() / std::sqrt(static_cast<double>(n)) : 0.0; }
};

void validate(const ExperimentOptions& options) {
  if (options.samples == 0) throw std::invalid_argument("samples must be > 0");
  if (options.record_every < 1) throw std::invalid_argument("record_every must be >= 1");
  if (options.workers == 0) throw std::invalid_argument("workers must be >= 1");
}

AncillaResult run_ancilla_protocol(const ExperimentOptions& options, const PureState& initial) {
  validate(options);
  CircuitConfig config;
  config.L = options.L;
  config.p = options.p;
  config.steps = options.resolved_steps();
  config.scramble_steps = options.resolved_scramble_steps();
  config.seed = options.seed;
  config.ancilla = true;
  config.validate();

  RecordOptions rec_options;
  rec_options.record_every = options.record_every;
  rec_options.ancilla_entropy = true;
  rec_options.bipartite_entropy = false;
  rec_options.sectors = options.keep_records;

  std::vector<TrajectoryRecord> records =
      parallel_map(options.samples, options.workers,
                   [&](std::size_t i) { return run_trajectory(config, initial, i, rec_options); });

  AncillaResult out;
  out.options = options;
  out.n = records.size();
  out.times = records.front().times;
  const std::size_t points = out.times.size();
  std::vector<Moments> raw(points);
  std::vector<Moments> logs(points);
  for (const TrajectoryRecord& rec : records) {
    for (std::size_t m = 0; m < points; ++m) {
      const double s = rec.ancilla_entropy[m];
      raw[m].add(s);
      logs[m].add(std::log(std::max(s, kLogEntropyFloor)));
    }
  }
  for (std::size_t m = 0; m < points; ++m) {
    out.mean_SA.push_back(raw[m].mean());
    out.sem_SA.push_back(raw[m].sem());
    out.log_mean_SA.push_back(std::log(std::max(raw[m].mean(), kLogEntropyFloor)));
    out.mean_log_SA.push_back(logs[m].mean());
  }
  try {
    out.purification_time = extract_purification_time(out.times, out.mean_SA);
  } catch (const InsufficientDecay&) {
    out.purification_time.reset();
  }
  if (options.keep_records) out.records = std::move(records);
  return out;
}

CircuitConfig entanglement_config(const ExperimentOptions& options) {
  CircuitConfig config;
  config.L = options.L;
  config.p = options.p;
  config.steps = options.resolved_steps();
  config.scramble_steps = 0;
  config.seed = options.seed;
  config.ancilla = false;
  config.validate();
  return config;
}

std::vector<MutualInfoStat> summarize(const std::vector<std::vector<MutualInfoSample>>& per_trajectory) {
  std::vector<MutualInfoStat> out;
  if (per_trajectory.empty()) return out;
  const std::size_t entries = per_trajectory.front().size();
  for (std::size_t e = 0; e < entries; ++e) {
    Moments m;
    for (const auto& samples : per_trajectory) m.add(samples[e].value);
    const MutualInfoSample& ref = per_trajectory.front()[e];
    out.push_back(MutualInfoStat{ref.kind, ref.j, ref.k, m.mean(), m.sd(), m.sem()});
  }
  return out;
}

}  // namespace

PureState build_purification_state(int L) {
  check_even_L(L, 4, "build_purification_state");
  return with_ancilla(L, pair_product(L, 0), pair_product(L, 1));
}

PureState build_sharpening_state(int L) {
  check_even_L(L, 4, "build_sharpening_state");
  return with_ancilla(L, pair_product(L, 0), pair_product(L, -1));
}

PureState build_triplet_plus_singlets(int L) {
  check_even_L(L, 2, "build_triplet_plus_singlets");
  return PureState::from_amplitudes(L, false, pair_product(L, 0));
}

PureState build_all_singlets(int L) {
  check_even_L(L, 2, "build_all_singlets");
  return PureState::from_amplitudes(L, false, pair_product(L, -1));
}

PureState build_initial_state(const InitialStateSpec& spec) {
  struct Visitor {
    int L;
    PureState operator()(const PurificationPair&) const { return build_purification_state(L); }
    PureState operator()(const SharpeningPair&) const { return build_sharpening_state(L); }
    PureState operator()(const TripletPlusSinglets&) const { return build_triplet_plus_singlets(L); }
    PureState operator()(const AllSinglets&) const { return build_all_singlets(L); }
    PureState operator()(const CustomState& c) const {
      return PureState::from_amplitudes(c.L, c.ancilla, c.amplitudes);
    }
  };
  return std::visit(Visitor{spec.L}, spec.kind);
}

AncillaResult run_purification(const ExperimentOptions& options) {
  return run_ancilla_protocol(options, build_purification_state(options.L));
}

AncillaResult run_sharpening(const ExperimentOptions& options) {
  return run_ancilla_protocol(options, build_sharpening_state(options.L));
}

EntanglementResult run_entanglement(const ExperimentOptions& options, bool time_series) {
  validate(options);
  const CircuitConfig config = entanglement_config(options);
  const PureState initial = build_triplet_plus_singlets(options.L);

  RecordOptions rec_options;
  rec_options.ancilla_entropy = false;
  rec_options.sectors = false;
  rec_options.bipartite_entropy = true;
  // Without a time series only t = 0 and the final step get recorded.
  rec_options.record_every = time_series ? options.record_every : std::max(1, config.steps);

  std::vector<TrajectoryRecord> records =
      parallel_map(options.samples, options.workers,
                   [&](std::size_t i) { return run_trajectory(config, initial, i, rec_options); });

  EntanglementResult out;
  out.options = options;
  out.n = records.size();
  Moments final_moments;
  for (const TrajectoryRecord& rec : records) final_moments.add(rec.bipartite_entropy.back());
  out.mean_Sf = final_moments.mean();
  out.sem_Sf = final_moments.sem();
  if (time_series) {
    out.times = records.front().times;
    for (std::size_t m = 0; m < out.times.size(); ++m) {
      Moments mm;
      for (const TrajectoryRecord& rec : records) mm.add(rec.bipartite_entropy[m]);
      out.mean_S_t.push_back(mm.mean());
      out.sem_S_t.push_back(mm.sem());
    }
  }
  if (options.keep_records) out.records = std::move(records);
  return out;
}

MutualInfoResult run_mutual_info(const ExperimentOptions& options) {
  validate(options);
  const CircuitConfig config = entanglement_config(options);
  const PureState initial = build_triplet_plus_singlets(options.L);

  RecordOptions rec_options;
  rec_options.ancilla_entropy = false;
  rec_options.bipartite_entropy = false;
  rec_options.sectors = false;
  rec_options.record_every = std::max(1, config.steps);
  rec_options.keep_final_state = true;

  std::vector<MutualInfoProfiles> profiles =
      parallel_map(options.samples, options.workers, [&](std::size_t i) {
        TrajectoryRecord rec = run_trajectory(config, initial, i, rec_options);
        return mi_profiles(*rec.final_state);
      });

  std::vector<std::vector<MutualInfoSample>> singles;
  std::vector<std::vector<MutualInfoSample>> pairs;
  singles.reserve(profiles.size());
  pairs.reserve(profiles.size());
  for (auto& prof : profiles) {
    singles.push_back(std::move(prof.single));
    pairs.push_back(std::move(prof.pair));
  }

  MutualInfoResult out;
  out.options = options;
  out.n = profiles.size();
  out.single = summarize(singles);
  out.pair = summarize(pairs);
  const int antipodal_k = options.L / 2 - 1;
  for (const MutualInfoStat& s : out.pair) {
    if (s.k == antipodal_k) out.antipodal = s;
  }
  return out;
}

double extract_purification_time(const std::vector<double>& times, const std::vector<double>& mean_SA,
                                 const DecayWindow& window) {
  if (times.size() != mean_SA.size()) {
    throw std::invalid_argument("extract_purification_time: series lengths differ");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double s = mean_SA[i];
    if (s >= window.lower && s <= window.upper) {
      xs.push_back(times[i]);
      ys.push_back(std::log(s));
    }
  }
  if (xs.size() < window.min_points) {
    throw InsufficientDecay(fmt::format("insufficient decay: {} points inside [{:g}, {:g}], need {}",
                                        xs.size(), window.lower, window.upper, window.min_points));
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  if (!(slope < 0.0)) throw InsufficientDecay("insufficient decay: fitted slope is not negative");
  return -1.0 / slope;
}

double extract_purification_time(const std::vector<int>& times, const std::vector<double>& mean_SA,
                                 const DecayWindow& window) {
  return extract_purification_time(std::vector<double>(times.begin(), times.end()), mean_SA, window);
}

}  // namespace su2mon
