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
#include <variant>
#include <vector>

#include "su2mon/rng.hpp"
#include "su2mon/spin_core.hpp"

namespace su2mon {

/// Nearest-neighbour bond (j, k), 0-based, with k = j + 1 or the wrap bond (L-1, 0).
struct Bond {
  int j = 0;
  int k = 1;
  friend bool operator==(const Bond&, const Bond&) = default;
};

struct GateBrick {
  double phi = 0.0;
};
struct MeasureBrick {};

struct Brick {
  Bond bond;
  std::variant<GateBrick, MeasureBrick> kind;

  bool is_measurement() const { return std::holds_alternative<MeasureBrick>(kind); }
};

/// Odd layers act on bonds (1,2), (3,4), ... in 1-based site labels, i.e.
/// 0-based (0,1), (2,3), ...; even layers on (2,3), ..., (L,1).
enum class LayerParity { Even, Odd };

std::vector<Bond> layer_bonds(LayerParity parity, int L);

/// Each brick is a measurement with probability p, otherwise a gate with
/// phi uniform on [0, 2pi). Consumes one draw per brick, plus one per gate.
std::vector<Brick> sample_layer(LayerParity parity, int L, double p, TrajectoryRng& rng);

enum class Outcome : std::uint8_t { Singlet, Triplet };

double singlet_probability(const PureState& state, Bond bond);

/// Born-rule singlet/triplet measurement on `bond`. The state is projected
/// and renormalized in place.
Outcome apply_measurement(PureState& state, Bond bond, TrajectoryRng& rng);

void apply_brick(PureState& state, const Brick& brick, TrajectoryRng& rng,
                 Outcome* outcome = nullptr);

struct CircuitConfig {
  int L = 8;
  double p = 0.0;
  int steps = 64;
  int scramble_steps = 0;
  std::uint64_t seed = 1;
  bool ancilla = false;

  /// Throws std::invalid_argument on any violated bound.
  void validate() const;
};

struct RecordOptions {
  int record_every = 1;
  bool ancilla_entropy = true;
  bool bipartite_entropy = true;
  bool sectors = true;
  bool measurement_log = false;
  bool keep_final_state = false;
};

struct MeasurementEvent {
  int step = 0;  ///< monitored time step, 1-based
  Bond bond;
  Outcome outcome = Outcome::Singlet;
  friend bool operator==(const MeasurementEvent&, const MeasurementEvent&) = default;
};

/// Observable series of one trajectory. Entry m of every enabled series is
/// taken after `times[m]` monitored steps; times[0] = 0 is the state right
/// after scrambling and the final step is always recorded. Disabled series
/// stay empty.
struct TrajectoryRecord {
  std::size_t trajectory_index = 0;
  std::vector<int> times;
  std::vector<double> ancilla_entropy;
  std::vector<double> bipartite_entropy;
  std::vector<double> spin_squared;
  std::vector<double> spin_z;
  std::vector<MeasurementEvent> measurements;
  std::optional<PureState> final_state;

  friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

/// One time step: the even-bond layer, then the odd-bond layer.
void apply_time_step(PureState& state, double p, TrajectoryRng& rng, int step = 0,
                     std::vector<MeasurementEvent>* log = nullptr);

/// Scrambles for config.scramble_steps steps at p = 0, then runs config.steps
/// monitored steps at config.p. The stream is trajectory_rng(config.seed,
/// trajectory_index). The ancilla is never acted on.
TrajectoryRecord run_trajectory(const CircuitConfig& config, PureState initial,
                                std::size_t trajectory_index, const RecordOptions& options = {});

}  // namespace su2mon
