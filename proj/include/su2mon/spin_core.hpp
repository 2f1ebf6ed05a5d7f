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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace su2mon {

using cplx = std::complex<double>;
using DensityMatrix = Eigen::MatrixXcd;
using Matrix4c = Eigen::Matrix<cplx, 4, 4>;

/// Largest register (system plus ancilla) a PureState may hold.
inline constexpr int kMaxQubits = 28;

/// Default cap on the number of qubits kept by reduced_density_matrix.
inline constexpr int kDefaultSubsetCap = 12;

/// Eigenvalues at or below this are dropped from entropy sums (0 log 0 := 0).
inline constexpr double kEntropyCutoff = 1e-12;

/// Statevector over L system qubits plus an optional ancilla.
///
/// Qubit j (0-based, 0 <= j < L) is bit j of the basis-state index and the
/// ancilla, when present, is bit L. Basis value 0 is spin up, so
/// sigma^z |0> = +|0>.
class PureState {
 public:
  /// |0...0> on L system qubits (and the ancilla, if requested).
  PureState(int num_system_qubits, bool has_ancilla);

  /// Takes ownership of `amplitudes`; the length must be 2^(L + ancilla) and
  /// the squared norm must be 1 within 1e-10.
  static PureState from_amplitudes(int num_system_qubits, bool has_ancilla,
                                   std::vector<cplx> amplitudes);

  int num_system_qubits() const { return num_system_qubits_; }
  bool has_ancilla() const { return has_ancilla_; }
  int num_qubits() const { return num_system_qubits_ + (has_ancilla_ ? 1 : 0); }
  /// Bit position of the ancilla. Only meaningful when has_ancilla().
  int ancilla_qubit() const { return num_system_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }

  std::span<const cplx> amplitudes() const { return amplitudes_; }
  std::span<cplx> amplitudes() { return amplitudes_; }
  cplx operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const;
  /// Rescales to unit norm; throws if the norm is numerically zero.
  void normalize();

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  PureState(int num_system_qubits, bool has_ancilla, std::vector<cplx> amplitudes);

  int num_system_qubits_;
  bool has_ancilla_;
  std::vector<cplx> amplitudes_;
};

/// 4x4 operator on an ordered qubit pair (j, k). The local basis index is
/// 2*b_j + b_k, so |01> means qubit j in 0 and qubit k in 1.
struct PairOperator {
  Matrix4c matrix = Matrix4c::Identity();
};

PairOperator identity_operator();
PairOperator swap_operator();
/// cos(phi) I - i sin(phi) Sw.
PairOperator su2_gate(double phi);
/// |s0><s0| with |s0> = (|01> - |10>)/sqrt(2).
PairOperator singlet_projector();
/// I - |s0><s0|.
PairOperator triplet_projector();

bool is_unitary(const PairOperator& op, double tol = 1e-12);
bool is_projector(const PairOperator& op, double tol = 1e-12);

/// Applies `op` to system qubits (j, k) in place. Every other tensor factor,
/// including the ancilla, is untouched. The state is not renormalized.
void apply_pair_operator(PureState& state, const PairOperator& op, int j, int k);

/// ||op psi||^2 restricted to the (j, k) block; cheaper than applying op to a copy.
double pair_expectation(const PureState& state, const PairOperator& op, int j, int k);

/// Reduced state of `qubits` (system sites 0..L-1, the ancilla is index L).
/// qubits[m] becomes bit m of the reduced basis index.
DensityMatrix reduced_density_matrix(const PureState& state, std::span<const int> qubits,
                                     int subset_cap = kDefaultSubsetCap);

/// -Tr rho log rho in nats. Rejects inputs whose Hermiticity residue exceeds
/// 1e-8 or whose trace is off from 1 by more than 1e-8.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of the reduced state on `qubits`.
double subsystem_entropy(const PureState& state, std::span<const int> qubits,
                         int subset_cap = kDefaultSubsetCap);

/// Entropy of the ancilla's reduced state. Throws if there is no ancilla.
double ancilla_entropy(const PureState& state);

/// Half-chain entropy of sites 0..L/2-1 from the Schmidt spectrum. The
/// ancilla, if present, is part of the complement. Throws on odd L.
double bipartite_entropy(const PureState& state);

struct SectorExpectations {
  double spin_squared = 0.0;  ///< <S^2> over the system qubits
  double spin_z = 0.0;        ///< <S^z> over the system qubits
};

/// <S^2> and <S^z> of the system, accumulated pairwise via
/// S^2 = 3L/4 + sum_{j<k} (Sw_jk - 1/2). Never builds 2^L x 2^L matrices.
SectorExpectations sector_expectations(const PureState& state);

// Dense reference operators for small registers (num_qubits <= 12). These
// exist for verification and are never used on the simulation path.

enum class Axis { X, Y, Z };

/// sigma^a on qubit `site` of an n-qubit register.
Eigen::MatrixXcd site_pauli(Axis axis, int site, int num_qubits);
/// S^a = (1/2) sum over the first `num_sites` qubits of sigma^a.
Eigen::MatrixXcd total_spin(Axis axis, int num_sites, int num_qubits);
Eigen::MatrixXcd total_spin_squared(int num_sites, int num_qubits);
/// `op` on qubits (j, k) of an n-qubit register.
Eigen::MatrixXcd embed_pair_operator(const PairOperator& op, int j, int k, int num_qubits);

/// Pair-local spin component (sigma^a_j + sigma^a_k)/2 as a 4x4 matrix.
Matrix4c pair_spin(Axis axis);
/// Pair-local S^2 as a 4x4 matrix.
Matrix4c pair_spin_squared();

}  // namespace su2mon
