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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace su2mon::statmech {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

enum class Boundary { Open, Periodic };

/// 2Q spin-1/2 chains of length L. Copy c < Q is forward replica c; copy
/// Q + a is the backward replica a*. Spin (c, i) is bit c*L + i.
///
/// All operators in this module are real: every term is built from swaps,
/// and the backward copies carry the same un-conjugated spin operators.
struct ReplicaConfig {
  int Q = 1;
  int L = 2;
  double J = 1.0;
  double gamma = 0.0;
  Boundary boundary = Boundary::Open;

  int num_copies() const { return 2 * Q; }
  int num_spins() const { return 2 * Q * L; }
  std::size_t dimension() const { return std::size_t{1} << num_spins(); }
  /// Nearest-neighbour bonds. A periodic chain with L = 2 has the single bond (0, 1).
  std::vector<std::pair<int, int>> bonds() const;
  void validate() const;
};

/// Explicit sparse storage is used up to 2QL = 16 spins; beyond that only the
/// matrix-free operator exists.
inline constexpr int kMaxMaterializedSpins = 16;
inline constexpr int kMaxSpins = 22;
inline constexpr std::size_t kDenseSolveLimit = 4096;

/// sigma in S_Q: forward copy a is paired with backward copy sigma(a)*.
struct PairingPermutation {
  std::vector<int> image;

  static PairingPermutation identity(int Q);
  /// All Q! permutations in lexicographic order.
  static std::vector<PairingPermutation> all(int Q);
  void validate(int Q) const;
  std::string to_string() const;
};

/// Swap of spins (c, i) and (c, j) as a permutation matrix.
SparseMatrix copy_swap(const ReplicaConfig& config, int copy, int i, int j);
/// S_(c,i) . S_(c,j) = (Sw - 1/2)/2.
SparseMatrix copy_heisenberg(const ReplicaConfig& config, int copy, int i, int j);

/// H^u = J sum_bonds [sum_a (S^a.S^a - S^a*.S^a*)]^2.
SparseMatrix build_h_unitary(const ReplicaConfig& config);
/// H^m = gamma sum_bonds sum_{c,d} (S^c.S^c) Pi_cd (S^d.S^d), Pi_cd = delta_cd - 1/(2Q).
SparseMatrix build_h_measurement(const ReplicaConfig& config);

struct Su4Decomposition {
  PairingPermutation sigma;
  SparseMatrix h0;            ///< sum_bonds sum_a [1 - Sw^a Sw^sigma(a)*]
  SparseMatrix v_unitary;     ///< sum_bonds sum_{a<b} (Sw^a - Sw^sigma(a)*)(Sw^b - Sw^sigma(b)*)
  SparseMatrix v_measurement; ///< sum_bonds sum_{a!=b} (Sw^a + Sw^sigma(a)*)(Sw^b + Sw^sigma(b)*)
};

Su4Decomposition build_su4_decomposition(const ReplicaConfig& config, const PairingPermutation& sigma);

/// Frobenius norms of the decomposition residuals for one sigma.
struct DecompositionCheck {
  PairingPermutation sigma;
  /// ||H^u - (J/2)(H0 + V^u)||
  double unitary_residual = 0.0;
  /// ||H^m - (gamma/Q) H0 + (gamma/2Q) V^m||, the coefficients as usually quoted.
  double measurement_residual_quoted = 0.0;
  /// ||H^m - (gamma/4Q) H0 + (gamma/8Q) V^m - (gamma/2)(Q-1) N_bonds 1||, which
  /// is what S.S = (Sw - 1/2)/2 and sum_c Sw_c^2 = 2Q give per bond.
  double measurement_residual_derived = 0.0;
};

class ReplicaHamiltonian {
 public:
  explicit ReplicaHamiltonian(const ReplicaConfig& config);

  const ReplicaConfig& config() const { return config_; }
  std::size_t dimension() const { return config_.dimension(); }
  bool materialized() const { return h_eff_.has_value(); }

  /// Throw if !materialized().
  const SparseMatrix& h_unitary() const;
  const SparseMatrix& h_measurement() const;
  const SparseMatrix& h_eff() const;

  /// y = H^eff x without a stored matrix.
  void apply(const Vector& x, Vector& y) const;

 private:
  ReplicaConfig config_;
  std::optional<SparseMatrix> h_unitary_;
  std::optional<SparseMatrix> h_measurement_;
  std::optional<SparseMatrix> h_eff_;
};

/// At every site, spins (a, i) and (sigma(a)*, i) form (|00> + |11>)/sqrt2.
Vector paired_product_state(const ReplicaConfig& config, const PairingPermutation& sigma);
/// All spins up; a ground state of every SU(4) ferromagnet H0[sigma].
Vector polarized_state(const ReplicaConfig& config);

DecompositionCheck check_decomposition(const ReplicaConfig& config, const PairingPermutation& sigma);

struct SymmetryEntry {
  std::string name;
  double commutator_norm = 0.0;
  bool pass = false;
};

struct SymmetryReport {
  std::vector<SymmetryEntry> entries;
  bool all_pass() const;
};

/// Commutators of H^eff with per-copy S^x, iS^y (real), S^z and with the
/// adjacent transpositions generating forward and backward S_Q.
SymmetryReport check_symmetries(const ReplicaHamiltonian& h, double tol = 1e-10);

/// Permutation of the copies on every site: copy c moves to perm[c].
SparseMatrix copy_permutation(const ReplicaConfig& config, const std::vector<int>& perm);

struct Spectrum {
  std::vector<double> eigenvalues;  ///< ascending, k of them
  std::size_t ground_space_dimension = 0;
  bool dense = true;
  double max_residual = 0.0;  ///< Lanczos only
};

struct LanczosOptions {
  int krylov_dimension = 80;
  int max_restarts = 200;
  double tolerance = 1e-8;
  std::uint64_t seed = 12345;
};

/// Lowest k eigenvalues. Dimensions up to 4096 use a full dense solve over
/// the per-copy magnetization blocks (every term conserves each copy's S^z);
/// larger ones use Lanczos with locking. ground_space_dimension counts
/// eigenvalues within 1e-8 of the minimum (among the k returned for Lanczos).
Spectrum low_spectrum(const ReplicaHamiltonian& h, std::size_t k, const LanczosOptions& options = {});

/// Full spectrum of a materialized real symmetric matrix via the
/// magnetization blocks of `config`.
std::vector<double> full_spectrum(const ReplicaConfig& config, const SparseMatrix& m);

/// Lowest k eigenvalues of a dense or sparse symmetric operator given as a callback.
Spectrum lanczos_lowest(const std::function<void(const Vector&, Vector&)>& apply, std::size_t dim,
                        std::size_t k, const LanczosOptions& options = {});

/// Smallest eigenvalue above the ground energy (beyond 1e-8), or 0 if none.
double spectral_gap(const std::vector<double>& ascending);

}  // namespace su2mon::statmech
