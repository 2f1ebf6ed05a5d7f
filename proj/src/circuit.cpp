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

#include "su2mon/circuit.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace su2mon {

std::vector<Bond> layer_bonds(LayerParity parity, int L) {
  if (L < 2 || L % 2 != 0) throw std::invalid_argument(fmt::format("layer_bonds: L = {} must be even", L));
  std::vector<Bond> bonds;
  bonds.reserve(static_cast<std::size_t>(L / 2));
  const int first = parity == LayerParity::Odd ? 0 : 1;
  for (int j = first; j < L; j += 2) bonds.push_back(Bond{j, (j + 1) % L});
  return bonds;
}

std::vector<Brick> sample_layer(LayerParity parity, int L, double p, TrajectoryRng& rng) {
  std::vector<Brick> bricks;
  for (const Bond& bond : layer_bonds(parity, L)) {
    if (rng.uniform() < p) {
      bricks.push_back(Brick{bond, MeasureBrick{}});
    } else {
      bricks.push_back(Brick{bond, GateBrick{2.0 * std::numbers::pi * rng.uniform()}});
    }
  }
  return bricks;
}

double singlet_probability(const PureState& state, Bond bond) {
  if (bond.j == bond.k) throw std::invalid_argument("singlet_probability: degenerate bond");
  const std::size_t bj = std::size_t{1} << bond.j;
  const std::size_t bk = std::size_t{1} << bond.k;
  const std::size_t dim = state.dimension();
  const cplx* psi = state.amplitudes().data();
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & bj) && !(i & bk)) {
      // i = |1_j 0_k>, partner = |0_j 1_k>; <s0|pair> = (a01 - a10)/sqrt2.
      acc += std::norm(psi[i ^ bj ^ bk] - psi[i]);
    }
  }
  return 0.5 * acc;
}

Outcome apply_measurement(PureState& state, Bond bond, TrajectoryRng& rng) {
  const double p_singlet = singlet_probability(state, bond);
  const Outcome outcome = rng.uniform() < p_singlet ? Outcome::Singlet : Outcome::Triplet;
  const double p_outcome = outcome == Outcome::Singlet ? p_singlet : 1.0 - p_singlet;
  // The drawn outcome has probability > 0 unless the uniform draw hit an
  // endpoint exactly, which the half-open [0, 1) interval rules out.
  assert(p_outcome > 1e-14);
  if (!(p_outcome > 0.0)) throw std::runtime_error("apply_measurement: drew a zero-probability outcome");
  apply_pair_operator(state,
                      outcome == Outcome::Singlet ? singlet_projector() : triplet_projector(),
                      bond.j, bond.k);
  state.normalize();
  return outcome;
}

void apply_brick(PureState& state, const Brick& brick, TrajectoryRng& rng, Outcome* outcome) {
  if (const auto* gate = std::get_if<GateBrick>(&brick.kind)) {
    apply_pair_operator(state, su2_gate(gate->phi), brick.bond.j, brick.bond.k);
  } else {
    const Outcome o = apply_measurement(state, brick.bond, rng);
    if (outcome) *outcome = o;
  }
}

void CircuitConfig::validate() const {
  if (L < 2 || L % 2 != 0) throw std::invalid_argument(fmt::format("L = {} must be even and >= 2", L));
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(fmt::format("p = {} outside [0, 1]", p));
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (scramble_steps < 0) throw std::invalid_argument("scramble_steps must be >= 0");
  if (L + (ancilla ? 1 : 0) > kMaxQubits) throw std::invalid_argument("register too large");
}

void apply_time_step(PureState& state, double p, TrajectoryRng& rng, int step,
                     std::vector<MeasurementEvent>* log) {
  const int L = state.num_system_qubits();
  for (LayerParity parity : {LayerParity::Even, LayerParity::Odd}) {
    for (const Brick& brick : sample_layer(parity, L, p, rng)) {
      Outcome outcome{};
      apply_brick(state, brick, rng, &outcome);
      if (log && brick.is_measurement()) log->push_back(MeasurementEvent{step, brick.bond, outcome});
    }
  }
}

namespace {

void record(TrajectoryRecord& rec, const PureState& state, int t, const RecordOptions& options) {
  rec.times.push_back(t);
  if (options.ancilla_entropy && state.has_ancilla()) rec.ancilla_entropy.push_back(ancilla_entropy(state));
  if (options.bipartite_entropy) rec.bipartite_entropy.push_back(bipartite_entropy(state));
  if (options.sectors) {
    const SectorExpectations s = sector_expectations(state);
    rec.spin_squared.push_back(s.spin_squared);
    rec.spin_z.push_back(s.spin_z);
  }
}

}  // namespace

TrajectoryRecord run_trajectory(const CircuitConfig& config, PureState state,
                                std::size_t trajectory_index, const RecordOptions& options) {
  config.validate();
  if (state.num_system_qubits() != config.L || state.has_ancilla() != config.ancilla) {
    throw std::invalid_argument(fmt::format(
        "initial state has {} system qubits (ancilla: {}), config expects {} (ancilla: {})",
        state.num_system_qubits(), state.has_ancilla(), config.L, config.ancilla));
  }
  if (options.record_every < 1) throw std::invalid_argument("record_every must be >= 1");

  TrajectoryRng rng = trajectory_rng(config.seed, trajectory_index);
  for (int t = 0; t < config.scramble_steps; ++t) apply_time_step(state, 0.0, rng);

  TrajectoryRecord rec;
  rec.trajectory_index = trajectory_index;
  record(rec, state, 0, options);
#ifndef NDEBUG
  const SectorExpectations start = sector_expectations(state);
#endif
  auto* log = options.measurement_log ? &rec.measurements : nullptr;
  for (int t = 1; t <= config.steps; ++t) {
    apply_time_step(state, config.p, rng, t, log);
#ifndef NDEBUG
    assert(std::abs(sector_expectations(state).spin_z - start.spin_z) < 1e-8);
#endif
    if (t % options.record_every == 0 || t == config.steps) record(rec, state, t, options);
  }
  if (options.keep_final_state) rec.final_state = std::move(state);
  return rec;
}

}  // namespace su2mon
