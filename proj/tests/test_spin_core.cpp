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
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "su2mon/spin_core.hpp"
#include "test_util.hpp"

namespace su2mon {
namespace {

using testing::as_vector;
using testing::max_abs_diff;
using testing::random_state;

constexpr double kLn2 = std::numbers::ln2;
const double kHalfRoot2 = std::sqrt(0.5);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  }
  return out;
}

// Pair state on qubits (0, 1) of a 2-qubit register from a local vector
// indexed 2*b0 + b1. The register index is b0 + 2*b1.
PureState pair_state(std::array<cplx, 4> local) {
  std::vector<cplx> amps(4);
  for (int b0 = 0; b0 < 2; ++b0) {
    for (int b1 = 0; b1 < 2; ++b1) amps[static_cast<std::size_t>(b0 + 2 * b1)] = local[static_cast<std::size_t>(2 * b0 + b1)];
  }
  return PureState::from_amplitudes(2, false, amps);
}

double commutator_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a * b - b * a).norm(); }

// --- PureState -------------------------------------------------------------------

TEST(PureState, Layout) {
  PureState s(4, false);
  EXPECT_EQ(s.dimension(), 16U);
  EXPECT_EQ(s[0], cplx(1.0));
  PureState a(4, true);
  EXPECT_EQ(a.dimension(), 32U);
  EXPECT_EQ(a.ancilla_qubit(), 4);
  EXPECT_NEAR(a.norm_squared(), 1.0, 1e-15);
}

TEST(PureState, RejectsBadAmplitudes) {
  EXPECT_THROW(PureState::from_amplitudes(2, false, std::vector<cplx>(3, 0.5)), std::invalid_argument);
  EXPECT_THROW(PureState::from_amplitudes(2, false, std::vector<cplx>(4, 1.0)), std::invalid_argument);
  EXPECT_THROW(PureState(0, false), std::invalid_argument);
  EXPECT_THROW(PureState(kMaxQubits + 1, false), std::invalid_argument);
}

// --- operators ------------------------------------------------------------------

TEST(PairOperators, UnitaryAndProjectorInstances) {
  EXPECT_TRUE(is_unitary(identity_operator()));
  EXPECT_TRUE(is_unitary(swap_operator()));
  for (double phi : {0.0, 0.3, 1.0, 2.5, 6.2}) EXPECT_TRUE(is_unitary(su2_gate(phi)));
  EXPECT_TRUE(is_projector(singlet_projector()));
  EXPECT_TRUE(is_projector(triplet_projector()));
  EXPECT_FALSE(is_projector(swap_operator()));
  EXPECT_LT((singlet_projector().matrix + triplet_projector().matrix - Matrix4c::Identity()).norm(), 1e-15);
  EXPECT_NEAR(singlet_projector().matrix.trace().real(), 1.0, 1e-15);
}

TEST(PairOperators, GateAtZeroIsIdentity) {
  EXPECT_LT((su2_gate(0.0).matrix - Matrix4c::Identity()).norm(), 1e-15);
}

TEST(PairOperators, QuarterTurnOnUpDown) {
  PureState s = pair_state({0, 1, 0, 0});  // |01>
  apply_pair_operator(s, su2_gate(std::numbers::pi / 2), 0, 1);
  const PureState expect = pair_state({0, 0, cplx(0, -1), 0});  // -i |10>
  EXPECT_LT(max_abs_diff(as_vector(s), as_vector(expect)), 1e-15);
}

TEST(PairOperators, SingletPicksUpPhase) {
  for (double phi : {0.1, 1.3, 4.0}) {
    PureState s = pair_state({0, kHalfRoot2, -kHalfRoot2, 0});
    const Eigen::VectorXcd before = as_vector(s);
    apply_pair_operator(s, su2_gate(phi), 0, 1);
    EXPECT_LT(max_abs_diff(as_vector(s), std::exp(cplx(0, phi)) * before), 1e-14);
  }
}

TEST(PairOperators, SwapIdentity) {
  // Sw = 1/2 + 2 S.S on two spins.
  Matrix4c ss = Matrix4c::Zero();
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    Eigen::MatrixXcd sj = 0.5 * site_pauli(a, 1, 2);
    Eigen::MatrixXcd sk = 0.5 * site_pauli(a, 0, 2);
    ss += sj * sk;
  }
  EXPECT_LT((0.5 * Matrix4c::Identity() + 2.0 * ss - swap_operator().matrix).norm(), 1e-15);
}

TEST(PairOperators, GateSymmetryRandomAngles) {
  TrajectoryRng rng(17, 0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Matrix4c u = su2_gate(2.0 * std::numbers::pi * rng.uniform()).matrix;
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) worst = std::max(worst, commutator_norm(u, pair_spin(a)));
    worst = std::max(worst, commutator_norm(u, pair_spin_squared()));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(PairOperators, ProjectorActions) {
  PureState s = pair_state({0, kHalfRoot2, -kHalfRoot2, 0});
  const Eigen::VectorXcd s0 = as_vector(s);
  apply_pair_operator(s, singlet_projector(), 0, 1);
  EXPECT_LT(max_abs_diff(as_vector(s), s0), 1e-15);

  PureState up = pair_state({1, 0, 0, 0});
  apply_pair_operator(up, singlet_projector(), 0, 1);
  EXPECT_LT(up.norm_squared(), 1e-30);

  PureState ud = pair_state({0, 1, 0, 0});
  apply_pair_operator(ud, singlet_projector(), 0, 1);
  EXPECT_NEAR(ud.norm_squared(), 0.5, 1e-15);
  EXPECT_LT(max_abs_diff(as_vector(ud), kHalfRoot2 * s0), 1e-15);
}

TEST(SpinAlgebra, CommutationRelations) {
  for (int n : {2, 3, 4}) {
    const Eigen::MatrixXcd sx = total_spin(Axis::X, n, n);
    const Eigen::MatrixXcd sy = total_spin(Axis::Y, n, n);
    const Eigen::MatrixXcd sz = total_spin(Axis::Z, n, n);
    const cplx i(0, 1);
    EXPECT_LT((sx * sy - sy * sx - i * sz).norm(), 1e-12);
    EXPECT_LT((sy * sz - sz * sy - i * sx).norm(), 1e-12);
    EXPECT_LT((sz * sx - sx * sz - i * sy).norm(), 1e-12);
    const Eigen::MatrixXcd s2 = total_spin_squared(n, n);
    for (const auto* s : {&sx, &sy, &sz}) EXPECT_LT(commutator_norm(s2, *s), 1e-12);
  }
}

TEST(SpinAlgebra, EmbeddedProjectorsCommuteWithGlobalCharges) {
  double worst = 0.0;
  for (int L = 2; L <= 6; ++L) {
    const Eigen::MatrixXcd s2 = total_spin_squared(L, L);
    const Eigen::MatrixXcd sz = total_spin(Axis::Z, L, L);
    for (int j = 0; j < L; ++j) {
      const int k = (j + 1) % L;
      if (j == k) continue;
      for (const PairOperator& op : {singlet_projector(), triplet_projector(), su2_gate(0.77)}) {
        const Eigen::MatrixXcd e = embed_pair_operator(op, j, k, L);
        worst = std::max({worst, commutator_norm(e, s2), commutator_norm(e, sz)});
      }
    }
  }
  EXPECT_LT(worst, 1e-10);
}

// --- apply_pair_operator against independent oracles -------------------------------------

TEST(ApplyPairOperator, IdentityLeavesStateUnchanged) {
  PureState s = random_state(5, true, 3);
  const PureState before = s;
  apply_pair_operator(s, identity_operator(), 1, 3);
  EXPECT_LT(max_abs_diff(as_vector(s), as_vector(before)), 1e-15);
}

TEST(ApplyPairOperator, SwapExchangesSpins) {
  PureState s = pair_state({0, 1, 0, 0});
  apply_pair_operator(s, swap_operator(), 0, 1);
  EXPECT_LT(max_abs_diff(as_vector(s), as_vector(pair_state({0, 0, 1, 0}))), 1e-15);
}

TEST(ApplyPairOperator, MatchesKroneckerOracleAdjacent) {
  // Three qubits; register index = b0 + 2 b1 + 4 b2, so as a Kronecker
  // product the leftmost factor is qubit 2.
  const Eigen::MatrixXcd i2 = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd sw = swap_operator().matrix;
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix4c u = testing::random_unitary4(100 + static_cast<std::uint64_t>(trial));
    // op acts on (j, k) with local index 2 b_j + b_k. For (j, k) = (1, 0)
    // the high factor is qubit 1, which matches the Kronecker order directly.
    const Eigen::MatrixXcd full_10 = kron(i2, u);
    const Eigen::MatrixXcd full_21 = kron(u, i2);
    const Eigen::MatrixXcd full_01 = kron(i2, sw * u * sw);
    const PureState psi = random_state(3, false, 200 + static_cast<std::uint64_t>(trial));
    const Eigen::VectorXcd v = as_vector(psi);

    PureState a = psi;
    apply_pair_operator(a, PairOperator{u}, 1, 0);
    EXPECT_LT(max_abs_diff(as_vector(a), full_10 * v), 1e-12);
    PureState b = psi;
    apply_pair_operator(b, PairOperator{u}, 2, 1);
    EXPECT_LT(max_abs_diff(as_vector(b), full_21 * v), 1e-12);
    PureState c = psi;
    apply_pair_operator(c, PairOperator{u}, 0, 1);
    EXPECT_LT(max_abs_diff(as_vector(c), full_01 * v), 1e-12);
  }
}

TEST(ApplyPairOperator, MatchesElementwiseOracleAnyPair) {
  constexpr int L = 5;
  const Matrix4c u = testing::random_unitary4(7);
  for (int j = 0; j < L; ++j) {
    for (int k = 0; k < L; ++k) {
      if (j == k) continue;
      const PureState psi = random_state(L, true, static_cast<std::uint64_t>(10 * j + k));
      PureState got = psi;
      apply_pair_operator(got, PairOperator{u}, j, k);
      // out[x'] = sum_x u[loc(x'), loc(x)] psi[x] over x agreeing off (j, k).
      std::vector<cplx> expect(psi.dimension(), 0.0);
      for (std::size_t x = 0; x < psi.dimension(); ++x) {
        const int lx = static_cast<int>(2 * ((x >> j) & 1U) + ((x >> k) & 1U));
        for (int ly = 0; ly < 4; ++ly) {
          std::size_t y = x & ~((std::size_t{1} << j) | (std::size_t{1} << k));
          y |= static_cast<std::size_t>(ly >> 1) << j;
          y |= static_cast<std::size_t>(ly & 1) << k;
          expect[y] += u(ly, lx) * psi[x];
        }
      }
      for (std::size_t x = 0; x < psi.dimension(); ++x) ASSERT_LT(std::abs(got[x] - expect[x]), 1e-12);
    }
  }
}

TEST(ApplyPairOperator, RejectsBadIndices) {
  PureState s(4, true);
  EXPECT_THROW(apply_pair_operator(s, swap_operator(), 1, 1), std::invalid_argument);
  EXPECT_THROW(apply_pair_operator(s, swap_operator(), -1, 1), std::invalid_argument);
  EXPECT_THROW(apply_pair_operator(s, swap_operator(), 0, 4), std::invalid_argument);  // ancilla is off-limits
}

TEST(ApplyPairOperator, GatesPreserveNorm) {
  PureState s = random_state(8, true, 1);
  TrajectoryRng rng(1, 1);
  for (int i = 0; i < 200; ++i) {
    const int j = static_cast<int>(rng() % 8);
    apply_pair_operator(s, su2_gate(6.28 * rng.uniform()), j, (j + 1) % 8);
    ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10);
  }
}

TEST(PairExpectation, MatchesAppliedNorm) {
  const PureState s = random_state(6, false, 9);
  PureState t = s;
  apply_pair_operator(t, singlet_projector(), 2, 5);
  EXPECT_NEAR(pair_expectation(s, singlet_projector(), 2, 5), t.norm_squared(), 1e-13);
}

// --- reduced density matrices and entropy ------------------------------------------------

TEST(ReducedDensityMatrix, ProductState) {
  const PureState s(4, false);
  const int sub[] = {0};
  const DensityMatrix rho = reduced_density_matrix(s, sub);
  EXPECT_NEAR(rho(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(rho(1, 1)), 0.0, 1e-15);
}

TEST(ReducedDensityMatrix, SingletMarginalIsMaximallyMixed) {
  const PureState s = pair_state({0, kHalfRoot2, -kHalfRoot2, 0});
  const int sub[] = {0};
  const DensityMatrix rho = reduced_density_matrix(s, sub);
  EXPECT_LT((rho - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-15);
}

TEST(ReducedDensityMatrix, MatchesBruteForcePartialTrace) {
  const PureState s = random_state(4, false, 21);
  const Eigen::VectorXcd v = as_vector(s);
  const Eigen::MatrixXcd full = v * v.adjoint();
  const int keep[] = {1, 2};
  // rho[a, b] = sum_e full[x(a, e), x(b, e)], with reduced bit m = keep[m].
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int e = 0; e < 4; ++e) {
        const int env0 = e & 1;
        const int env3 = (e >> 1) & 1;
        const int xa = env0 | ((a & 1) << 1) | (((a >> 1) & 1) << 2) | (env3 << 3);
        const int xb = env0 | ((b & 1) << 1) | (((b >> 1) & 1) << 2) | (env3 << 3);
        expect(a, b) += full(xa, xb);
      }
    }
  }
  EXPECT_LT((reduced_density_matrix(s, keep) - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ReducedDensityMatrix, OrderingOfSubset) {
  const PureState s = random_state(3, false, 4);
  const int ab[] = {0, 2};
  const int ba[] = {2, 0};
  const DensityMatrix r1 = reduced_density_matrix(s, ab);
  const DensityMatrix r2 = reduced_density_matrix(s, ba);
  // Swapping the subset order conjugates by the 2-qubit swap.
  Eigen::MatrixXcd sw = swap_operator().matrix;
  EXPECT_LT((sw * r1 * sw - r2).norm(), 1e-13);
}

TEST(ReducedDensityMatrix, Errors) {
  const PureState s(13, false);
  const int dup[] = {1, 1};
  EXPECT_THROW(reduced_density_matrix(s, dup), std::invalid_argument);
  EXPECT_THROW(reduced_density_matrix(s, std::span<const int>{}), std::invalid_argument);
  std::vector<int> big(13);
  for (int i = 0; i < 13; ++i) big[static_cast<std::size_t>(i)] = i;
  EXPECT_THROW(reduced_density_matrix(s, big), std::invalid_argument);
  const int out_of_range[] = {13};
  EXPECT_THROW(reduced_density_matrix(s, out_of_range), std::invalid_argument);
}

TEST(VonNeumannEntropy, ClosedForms) {
  Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(2, 2);
  pure(0, 0) = 1.0;
  EXPECT_NEAR(von_neumann_entropy(pure), 0.0, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(0.5 * Eigen::MatrixXcd::Identity(2, 2)), kLn2, 1e-15);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 0.75;
  d(1, 1) = 0.25;
  EXPECT_NEAR(von_neumann_entropy(d), 0.75 * std::log(4.0 / 3.0) + 0.25 * std::log(4.0), 1e-14);
}

TEST(VonNeumannEntropy, RejectsInvalidInput) {
  Eigen::MatrixXcd m = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  m(0, 1) = 0.1;
  EXPECT_THROW(von_neumann_entropy(m), std::invalid_argument);
  EXPECT_THROW(von_neumann_entropy(Eigen::MatrixXcd::Identity(2, 2)), std::invalid_argument);
}

TEST(BipartiteEntropy, StraddlingSinglet) {
  // Singlets on (0,1), (2,3), (4,5) for L = 6: (2,3) straddles the cut.
  std::vector<cplx> amps(64, 0.0);
  for (std::size_t x = 0; x < 64; ++x) {
    double a = 1.0;
    for (int m = 0; m < 3; ++m) {
      const int b0 = static_cast<int>((x >> (2 * m)) & 1U);
      const int b1 = static_cast<int>((x >> (2 * m + 1)) & 1U);
      a *= b0 == b1 ? 0.0 : (b0 == 0 ? kHalfRoot2 : -kHalfRoot2);
    }
    amps[x] = a;
  }
  const PureState s = PureState::from_amplitudes(6, false, amps);
  EXPECT_NEAR(bipartite_entropy(s), kLn2, 1e-12);
}

TEST(BipartiteEntropy, SingletsInsideHalvesGiveZero) {
  // L = 4 with singlets (0,1), (2,3): nothing straddles the cut.
  std::vector<cplx> amps(16, 0.0);
  for (std::size_t x = 0; x < 16; ++x) {
    const int b0 = x & 1, b1 = (x >> 1) & 1, b2 = (x >> 2) & 1, b3 = (x >> 3) & 1;
    if (b0 == b1 || b2 == b3) {
      amps[x] = 0.0;
      continue;
    }
    amps[x] = 0.5 * (b0 == 0 ? 1.0 : -1.0) * (b2 == 0 ? 1.0 : -1.0);
  }
  EXPECT_NEAR(bipartite_entropy(PureState::from_amplitudes(4, false, amps)), 0.0, 1e-12);
}

TEST(BipartiteEntropy, ProductAcrossCutIsZero) {
  const PureState left = random_state(3, false, 1);
  const PureState right = random_state(3, false, 2);
  std::vector<cplx> amps(64);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t l = 0; l < 8; ++l) amps[l + 8 * r] = left[l] * right[r];
  }
  EXPECT_NEAR(bipartite_entropy(PureState::from_amplitudes(6, false, amps)), 0.0, 1e-12);
}

TEST(BipartiteEntropy, MatchesEigenvalueRoute) {
  for (int L : {2, 4, 6, 8, 10}) {
    for (bool anc : {false, true}) {
      const PureState s = random_state(L, anc, static_cast<std::uint64_t>(L) + (anc ? 100 : 0));
      std::vector<int> half(static_cast<std::size_t>(L / 2));
      for (int i = 0; i < L / 2; ++i) half[static_cast<std::size_t>(i)] = i;
      EXPECT_NEAR(bipartite_entropy(s), subsystem_entropy(s, half), 1e-9) << "L=" << L << " anc=" << anc;
    }
  }
}

TEST(BipartiteEntropy, RejectsOddL) { EXPECT_THROW(bipartite_entropy(PureState(5, false)), std::invalid_argument); }

TEST(AncillaEntropy, MatchesSubsystemRoute) {
  const PureState s = random_state(5, true, 77);
  const int anc[] = {5};
  EXPECT_NEAR(ancilla_entropy(s), subsystem_entropy(s, anc), 1e-13);
  EXPECT_THROW(ancilla_entropy(PureState(4, false)), std::invalid_argument);
}

TEST(Entropy, PureGlobalStateComplementSymmetry) {
  const PureState s = random_state(6, false, 31);
  const int a[] = {0, 3};
  const int b[] = {1, 2, 4, 5};
  EXPECT_NEAR(subsystem_entropy(s, a), subsystem_entropy(s, b), 1e-11);
}

// --- sectors --------------------------------------------------------------------------

TEST(SectorExpectations, KnownStates) {
  const PureState up(4, false);
  const auto e = sector_expectations(up);
  EXPECT_NEAR(e.spin_squared, 2.0 * 3.0, 1e-12);
  EXPECT_NEAR(e.spin_z, 2.0, 1e-12);

  const PureState singlet = pair_state({0, kHalfRoot2, -kHalfRoot2, 0});
  EXPECT_NEAR(sector_expectations(singlet).spin_squared, 0.0, 1e-12);
  const PureState t0 = pair_state({0, kHalfRoot2, kHalfRoot2, 0});
  EXPECT_NEAR(sector_expectations(t0).spin_squared, 2.0, 1e-12);
  EXPECT_NEAR(sector_expectations(t0).spin_z, 0.0, 1e-12);
}

TEST(SectorExpectations, MatchDenseOperators) {
  for (int L : {3, 4, 5}) {
    const PureState s = random_state(L, true, static_cast<std::uint64_t>(L));
    const Eigen::VectorXcd v = as_vector(s);
    const int n = L + 1;
    const double s2 = (v.adjoint() * total_spin_squared(L, n) * v)(0, 0).real();
    const double sz = (v.adjoint() * total_spin(Axis::Z, L, n) * v)(0, 0).real();
    const auto e = sector_expectations(s);
    EXPECT_NEAR(e.spin_squared, s2, 1e-12);
    EXPECT_NEAR(e.spin_z, sz, 1e-12);
  }
}

}  // namespace
}  // namespace su2mon
