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
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "su2mon/circuit.hpp"
#include "su2mon/observables.hpp"
#include "su2mon/spin_core.hpp"

namespace su2mon {

// --- initial states ---------------------------------------------------------

/// (|0>_A |t0 on (1,2), singlets elsewhere> + |1>_A |t0 on (3,4), singlets elsewhere>)/sqrt2.
struct PurificationPair {};
/// (|0>_A |t0 on (1,2), singlets elsewhere> + |1>_A |all singlets>)/sqrt2.
struct SharpeningPair {};
/// |t0> on (1,2) tensored with singlets on (3,4), (5,6), ...; no ancilla.
struct TripletPlusSinglets {};
/// Singlets on (1,2), (3,4), ...; no ancilla.
struct AllSinglets {};
struct CustomState {
  int L = 0;
  bool ancilla = false;
  std::vector<cplx> amplitudes;
};

using InitialStateKind =
    std::variant<PurificationPair, SharpeningPair, TripletPlusSinglets, AllSinglets, CustomState>;

struct InitialStateSpec {
  InitialStateKind kind;
  int L = 0;  ///< ignored for CustomState
};

PureState build_initial_state(const InitialStateSpec& spec);
PureState build_purification_state(int L);
PureState build_sharpening_state(int L);
PureState build_triplet_plus_singlets(int L);
PureState build_all_singlets(int L);

// --- drivers -----------------------------------------------------------------

struct ExperimentOptions {
  int L = 8;
  double p = 0.0;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::optional<int> steps;           ///< default L^2
  std::optional<int> scramble_steps;  ///< default L^2 where the protocol scrambles
  int record_every = 1;
  bool keep_records = false;

  int resolved_steps() const { return steps.value_or(L * L); }
  int resolved_scramble_steps() const { return scramble_steps.value_or(L * L); }
};

/// Per-trajectory S_A below this is clamped before taking logs.
inline constexpr double kLogEntropyFloor = 1e-30;

/// Trajectory-averaged ancilla entropy. log_mean_SA = log(mean S_A);
/// mean_log_SA = mean of log(max(S_A, kLogEntropyFloor)).
struct AncillaResult {
  ExperimentOptions options;
  std::vector<int> times;
  std::vector<double> mean_SA;
  std::vector<double> sem_SA;
  std::vector<double> log_mean_SA;
  std::vector<double> mean_log_SA;
  std::size_t n = 0;
  std::optional<double> purification_time;  ///< from the default fit window, when it applies
  std::vector<TrajectoryRecord> records;    ///< only with keep_records
};

struct EntanglementResult {
  ExperimentOptions options;
  double mean_Sf = 0.0;
  double sem_Sf = 0.0;
  std::size_t n = 0;
  // Filled when the time series was requested.
  std::vector<int> times;
  std::vector<double> mean_S_t;
  std::vector<double> sem_S_t;
  std::vector<TrajectoryRecord> records;
};

/// Ensemble statistics for one mutual-information entry. Sites are 0-based.
struct MutualInfoStat {
  MutualInfoKind kind = MutualInfoKind::Single;
  int j = 0;
  int k = 0;
  double mean = 0.0;
  double sd = 0.0;   ///< sample standard deviation
  double sem = 0.0;  ///< standard error of the mean
};

struct MutualInfoResult {
  ExperimentOptions options;
  std::size_t n = 0;
  std::vector<MutualInfoStat> single;
  std::vector<MutualInfoStat> pair;
  /// I2 between (1,2) and (L/2, L/2+1) in 1-based labels; needs L >= 6.
  std::optional<MutualInfoStat> antipodal;
};

/// Purification protocol: build_purification_state, L^2 scramble steps at
/// p = 0, then the monitored run recording S_A every record_every steps.
AncillaResult run_purification(const ExperimentOptions& options);

/// Spin-sharpening protocol: the same schedule from build_sharpening_state.
AncillaResult run_sharpening(const ExperimentOptions& options);

/// Entanglement dynamics from build_triplet_plus_singlets with no scramble
/// stage. With `time_series` the half-chain entropy is averaged at every
/// recorded step; otherwise only the final S_f is computed.
EntanglementResult run_entanglement(const ExperimentOptions& options, bool time_series = false);

/// Final-state I1 and I2 profiles under the entanglement-dynamics schedule.
MutualInfoResult run_mutual_info(const ExperimentOptions& options);

struct DecayWindow {
  double lower = 1e-3;
  double upper = 1e-1;
  std::size_t min_points = 5;
};

class InsufficientDecay : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// t_P = -1/slope of the least-squares line through log(mean S_A) vs t over
/// the points with mean S_A inside the window. Throws InsufficientDecay when
/// fewer than window.min_points qualify or the slope is not negative.
double extract_purification_time(const std::vector<int>& times, const std::vector<double>& mean_SA,
                                 const DecayWindow& window = {});
double extract_purification_time(const std::vector<double>& times, const std::vector<double>& mean_SA,
                                 const DecayWindow& window = {});

}  // namespace su2mon
