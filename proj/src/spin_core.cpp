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

#include "su2mon/spin_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace su2mon {

namespace {

constexpr double kNormTolerance = 1e-10;

std::size_t dim_for(int num_system_qubits, bool has_ancilla) {
  return std::size_t{1} << (num_system_qubits + (has_ancilla ? 1 : 0));
}

void check_register(int num_system_qubits, bool has_ancilla) {
  if (num_system_qubits < 1) {
    throw std::invalid_argument("PureState needs at least one system qubit");
  }
  if (num_system_qubits + (has_ancilla ? 1 : 0) > kMaxQubits) {
    throw std::invalid_argument(
        fmt::format("register of {} qubits exceeds the cap of {}",
                    num_system_qubits + (has_ancilla ? 1 : 0), kMaxQubits));
  }
}

void check_pair(const PureState& state, int j, int k) {
  const int L = state.num_system_qubits();
  if (j < 0 || j >= L || k < 0 || k >= L) {
    throw std::invalid_argument(
        fmt::format("pair ({}, {}) out of range for {} system qubits", j, k, L));
  }
  if (j == k) {
    throw std::invalid_argument(fmt::format("pair operator needs two distinct qubits, got ({0}, {0})", j));
  }
}

// Spreads r over the index space with zeros at bit positions lo < hi.
inline std::size_t insert_two_zeros(std::size_t r, int lo, int hi) {
  const std::size_t lo_mask = (std::size_t{1} << lo) - 1;
  r = ((r & ~lo_mask) << 1) | (r & lo_mask);
  const std::size_t hi_mask = (std::size_t{1} << hi) - 1;
  return ((r & ~hi_mask) << 1) | (r & hi_mask);
}

// Written out in real arithmetic: std::complex operator* goes through the
// Annex G NaN-recovery path, which dominates this loop otherwise.
inline void mat4_apply(const double (&re)[4][4], const double (&im)[4][4], cplx* a0, cplx* a1,
                       cplx* a2, cplx* a3) {
  const double xr[4] = {a0->real(), a1->real(), a2->real(), a3->real()};
  const double xi[4] = {a0->imag(), a1->imag(), a2->imag(), a3->imag()};
  double yr[4];
  double yi[4];
  for (int r = 0; r < 4; ++r) {
    double sr = 0.0;
    double si = 0.0;
    for (int c = 0; c < 4; ++c) {
      sr += re[r][c] * xr[c] - im[r][c] * xi[c];
      si += re[r][c] * xi[c] + im[r][c] * xr[c];
    }
    yr[r] = sr;
    yi[r] = si;
  }
  *a0 = {yr[0], yi[0]};
  *a1 = {yr[1], yi[1]};
  *a2 = {yr[2], yi[2]};
  *a3 = {yr[3], yi[3]};
}

}  // namespace

PureState::PureState(int num_system_qubits, bool has_ancilla)
    : num_system_qubits_(num_system_qubits), has_ancilla_(has_ancilla) {
  check_register(num_system_qubits, has_ancilla);
  amplitudes_.assign(dim_for(num_system_qubits, has_ancilla), cplx{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

PureState::PureState(int num_system_qubits, bool has_ancilla, std::vector<cplx> amplitudes)
    : num_system_qubits_(num_system_qubits),
      has_ancilla_(has_ancilla),
      amplitudes_(std::move(amplitudes)) {}

PureState PureState::from_amplitudes(int num_system_qubits, bool has_ancilla,
                                     std::vector<cplx> amplitudes) {
  check_register(num_system_qubits, has_ancilla);
  const std::size_t expected = dim_for(num_system_qubits, has_ancilla);
  if (amplitudes.size() != expected) {
    throw std::invalid_argument(fmt::format("amplitude vector has length {}, expected {}",
                                            amplitudes.size(), expected));
  }
  PureState state(num_system_qubits, has_ancilla, std::move(amplitudes));
  const double n2 = state.norm_squared();
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw std::invalid_argument(fmt::format("amplitudes are not normalized (|psi|^2 = {:.17g})", n2));
  }
  return state;
}

double PureState::norm_squared() const {
  double acc = 0.0;
  for (const cplx& a : amplitudes_) acc += std::norm(a);
  return acc;
}

void PureState::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::runtime_error("cannot normalize a zero or non-finite state");
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (cplx& a : amplitudes_) a *= scale;
}

PairOperator identity_operator() { return PairOperator{Matrix4c::Identity()}; }

PairOperator swap_operator() {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = 1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 3) = 1.0;
  return PairOperator{m};
}

PairOperator su2_gate(double phi) {
  const Matrix4c sw = swap_operator().matrix;
  return PairOperator{std::cos(phi) * Matrix4c::Identity() - cplx{0.0, std::sin(phi)} * sw};
}

PairOperator singlet_projector() {
  Eigen::Vector4cd singlet = Eigen::Vector4cd::Zero();
  singlet(1) = std::numbers::sqrt2 / 2.0;
  singlet(2) = -std::numbers::sqrt2 / 2.0;
  return PairOperator{singlet * singlet.adjoint()};
}

PairOperator triplet_projector() {
  return PairOperator{Matrix4c::Identity() - singlet_projector().matrix};
}

bool is_unitary(const PairOperator& op, double tol) {
  return (op.matrix.adjoint() * op.matrix - Matrix4c::Identity()).cwiseAbs().maxCoeff() < tol;
}

bool is_projector(const PairOperator& op, double tol) {
  const bool hermitian = (op.matrix - op.matrix.adjoint()).cwiseAbs().maxCoeff() < tol;
  const bool idempotent = (op.matrix * op.matrix - op.matrix).cwiseAbs().maxCoeff() < tol;
  return hermitian && idempotent;
}

void apply_pair_operator(PureState& state, const PairOperator& op, int j, int k) {
  check_pair(state, j, k);
  double re[4][4];
  double im[4][4];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      re[r][c] = op.matrix(r, c).real();
      im[r][c] = op.matrix(r, c).imag();
    }
  }
  const std::size_t bj = std::size_t{1} << j;
  const std::size_t bk = std::size_t{1} << k;
  const int lo = std::min(j, k);
  const int hi = std::max(j, k);
  const std::size_t groups = state.dimension() >> 2;
  cplx* psi = state.amplitudes().data();
  for (std::size_t r = 0; r < groups; ++r) {
    const std::size_t base = insert_two_zeros(r, lo, hi);
    mat4_apply(re, im, psi + base, psi + (base | bk), psi + (base | bj), psi + (base | bj | bk));
  }
}

double pair_expectation(const PureState& state, const PairOperator& op, int j, int k) {
  PureState copy = state;
  apply_pair_operator(copy, op, j, k);
  return copy.norm_squared();
}

DensityMatrix reduced_density_matrix(const PureState& state, std::span<const int> qubits,
                                     int subset_cap) {
  const int n = state.num_qubits();
  const int a = static_cast<int>(qubits.size());
  if (a == 0) throw std::invalid_argument("reduced_density_matrix: empty subset");
  if (a > subset_cap) {
    throw std::invalid_argument(
        fmt::format("reduced_density_matrix: subset of {} qubits exceeds cap {}", a, subset_cap));
  }
  std::size_t subset_mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= n) {
      throw std::invalid_argument(fmt::format("reduced_density_matrix: qubit {} out of range", q));
    }
    const std::size_t bit = std::size_t{1} << q;
    if (subset_mask & bit) {
      throw std::invalid_argument(fmt::format("reduced_density_matrix: duplicate qubit {}", q));
    }
    subset_mask |= bit;
  }

  const std::size_t dim_a = std::size_t{1} << a;
  const std::size_t dim_r = state.dimension() >> a;
  std::vector<std::size_t> offset_a(dim_a, 0);
  for (std::size_t x = 0; x < dim_a; ++x) {
    for (int m = 0; m < a; ++m) {
      if ((x >> m) & 1U) offset_a[x] |= std::size_t{1} << qubits[m];
    }
  }
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (!(subset_mask & (std::size_t{1} << q))) rest.push_back(q);
  }
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim_a), static_cast<Eigen::Index>(dim_r));
  for (std::size_t y = 0; y < dim_r; ++y) {
    std::size_t off = 0;
    for (std::size_t m2 = 0; m2 < rest.size(); ++m2) {
      if ((y >> m2) & 1U) off |= std::size_t{1} << rest[m2];
    }
    for (std::size_t x = 0; x < dim_a; ++x) {
      m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = state[offset_a[x] | off];
    }
  }
  return m * m.adjoint();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw std::invalid_argument("von_neumann_entropy: density matrix must be square and nonempty");
  }
  const double residue = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (residue > 1e-8) {
    throw std::invalid_argument(
        fmt::format("von_neumann_entropy: matrix is not Hermitian (residue {:.3g})", residue));
  }
  const cplx tr = rho.trace();
  if (std::abs(tr - cplx{1.0, 0.0}) > 1e-8) {
    throw std::invalid_argument(
        fmt::format("von_neumann_entropy: trace {:.17g} is not 1", tr.real()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda > kEntropyCutoff) s -= lambda * std::log(lambda);
  }
  return std::max(s, 0.0);
}

double subsystem_entropy(const PureState& state, std::span<const int> qubits, int subset_cap) {
  return von_neumann_entropy(reduced_density_matrix(state, qubits, subset_cap));
}

double ancilla_entropy(const PureState& state) {
  if (!state.has_ancilla()) throw std::invalid_argument("ancilla_entropy: state has no ancilla");
  const std::size_t half = state.dimension() >> 1;
  const cplx* psi = state.amplitudes().data();
  double p0 = 0.0;
  double p1 = 0.0;
  cplx off{0.0, 0.0};
  for (std::size_t i = 0; i < half; ++i) {
    const cplx a = psi[i];
    const cplx b = psi[i + half];
    p0 += std::norm(a);
    p1 += std::norm(b);
    off += a * std::conj(b);
  }
  DensityMatrix rho(2, 2);
  rho << p0, off, std::conj(off), p1;
  return von_neumann_entropy(rho);
}

double bipartite_entropy(const PureState& state) {
  const int L = state.num_system_qubits();
  if (L % 2 != 0) {
    throw std::invalid_argument(fmt::format("bipartite_entropy: L = {} is odd", L));
  }
  const Eigen::Index rows = Eigen::Index{1} << (L / 2);
  const Eigen::Index cols = static_cast<Eigen::Index>(state.dimension()) / rows;
  Eigen::Map<const Eigen::MatrixXcd> m(state.amplitudes().data(), rows, cols);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  double s = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double lambda = svd.singularValues()(i) * svd.singularValues()(i);
    if (lambda > kEntropyCutoff) s -= lambda * std::log(lambda);
  }
  return std::max(s, 0.0);
}

SectorExpectations sector_expectations(const PureState& state) {
  const int L = state.num_system_qubits();
  const std::size_t dim = state.dimension();
  const std::size_t system_mask = (std::size_t{1} << L) - 1;
  const cplx* psi = state.amplitudes().data();

  SectorExpectations out;
  for (std::size_t i = 0; i < dim; ++i) {
    const int ups = L - std::popcount(i & system_mask);
    out.spin_z += std::norm(psi[i]) * (ups - 0.5 * L);
  }

  double pair_sum = 0.0;
  for (int j = 0; j < L; ++j) {
    for (int k = j + 1; k < L; ++k) {
      const std::size_t bj = std::size_t{1} << j;
      const std::size_t bk = std::size_t{1} << k;
      double sw = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        const bool xj = (i & bj) != 0;
        const bool xk = (i & bk) != 0;
        if (xj == xk) {
          sw += std::norm(psi[i]);
        } else if (!xj) {
          // <i|Sw|i'> pairs i = (..0_j..1_k..) with i' = (..1_j..0_k..).
          const std::size_t partner = i ^ bj ^ bk;
          sw += 2.0 * (std::conj(psi[i]) * psi[partner]).real();
        }
      }
      pair_sum += sw - 0.5;
    }
  }
  out.spin_squared = 0.75 * L + pair_sum;
  return out;
}

// --- dense reference operators ---------------------------------------------

namespace {

void check_dense_size(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 12) {
    throw std::invalid_argument(
        fmt::format("dense reference operators support 1..12 qubits, got {}", num_qubits));
  }
}

}  // namespace

Eigen::MatrixXcd site_pauli(Axis axis, int site, int num_qubits) {
  check_dense_size(num_qubits);
  if (site < 0 || site >= num_qubits) throw std::invalid_argument("site_pauli: site out of range");
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  const Eigen::Index bit = Eigen::Index{1} << site;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const bool one = (c & bit) != 0;
    switch (axis) {
      case Axis::X:
        m(c ^ bit, c) = 1.0;
        break;
      case Axis::Y:
        // sigma^y |0> = i|1>, sigma^y |1> = -i|0>
        m(c ^ bit, c) = one ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
        break;
      case Axis::Z:
        m(c, c) = one ? -1.0 : 1.0;
        break;
    }
  }
  return m;
}

Eigen::MatrixXcd total_spin(Axis axis, int num_sites, int num_qubits) {
  check_dense_size(num_qubits);
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < num_sites; ++j) s += 0.5 * site_pauli(axis, j, num_qubits);
  return s;
}

Eigen::MatrixXcd total_spin_squared(int num_sites, int num_qubits) {
  Eigen::MatrixXcd sx = total_spin(Axis::X, num_sites, num_qubits);
  Eigen::MatrixXcd sy = total_spin(Axis::Y, num_sites, num_qubits);
  Eigen::MatrixXcd sz = total_spin(Axis::Z, num_sites, num_qubits);
  return sx * sx + sy * sy + sz * sz;
}

Eigen::MatrixXcd embed_pair_operator(const PairOperator& op, int j, int k, int num_qubits) {
  check_dense_size(num_qubits);
  if (j == k || j < 0 || k < 0 || j >= num_qubits || k >= num_qubits) {
    throw std::invalid_argument("embed_pair_operator: bad pair");
  }
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  const Eigen::Index bj = Eigen::Index{1} << j;
  const Eigen::Index bk = Eigen::Index{1} << k;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const int local_c = 2 * ((c & bj) ? 1 : 0) + ((c & bk) ? 1 : 0);
    const Eigen::Index rest = c & ~(bj | bk);
    for (int local_r = 0; local_r < 4; ++local_r) {
      const Eigen::Index r = rest | ((local_r & 2) ? bj : 0) | ((local_r & 1) ? bk : 0);
      m(r, c) = op.matrix(local_r, local_c);
    }
  }
  return m;
}

Matrix4c pair_spin(Axis axis) {
  // Local index 2*b_j + b_k: qubit j is bit 1 of the 2-qubit register.
  Eigen::MatrixXcd s = 0.5 * (site_pauli(axis, 1, 2) + site_pauli(axis, 0, 2));
  return s;
}

Matrix4c pair_spin_squared() {
  const Matrix4c sx = pair_spin(Axis::X);
  const Matrix4c sy = pair_spin(Axis::Y);
  const Matrix4c sz = pair_spin(Axis::Z);
  return sx * sx + sy * sy + sz * sz;
}

}  // namespace su2mon
