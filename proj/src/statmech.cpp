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

#include "su2mon/statmech.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "su2mon/rng.hpp"

namespace su2mon::statmech {

namespace {

using Triplet = Eigen::Triplet<double>;

inline int spin_bit(const ReplicaConfig& config, int copy, int site) { return copy * config.L + site; }

inline std::size_t swap_bits(std::size_t x, int a, int b) {
  const std::size_t ba = (x >> a) & 1U;
  const std::size_t bb = (x >> b) & 1U;
  if (ba == bb) return x;
  return x ^ ((std::size_t{1} << a) | (std::size_t{1} << b));
}

SparseMatrix identity(std::size_t dim) {
  SparseMatrix id(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  id.setIdentity();
  return id;
}

void require_materializable(const ReplicaConfig& config) {
  config.validate();
  if (config.num_spins() > kMaxMaterializedSpins) {
    throw std::invalid_argument(fmt::format("{} spins exceed the {}-spin limit for explicit matrices",
                                            config.num_spins(), kMaxMaterializedSpins));
  }
}

// X_(c; i,j) x = (Sw x)/2 - x/4, matrix-free.
void apply_heisenberg(const ReplicaConfig& config, int copy, int i, int j, const Vector& x, Vector& out) {
  const int a = spin_bit(config, copy, i);
  const int b = spin_bit(config, copy, j);
  const auto dim = static_cast<std::size_t>(x.size());
  out.resize(x.size());
  for (std::size_t z = 0; z < dim; ++z) {
    out[static_cast<Eigen::Index>(z)] =
        0.5 * x[static_cast<Eigen::Index>(swap_bits(z, a, b))] - 0.25 * x[static_cast<Eigen::Index>(z)];
  }
}

double commutator_norm(const SparseMatrix& a, const SparseMatrix& b) {
  const SparseMatrix c = SparseMatrix(a * b) - SparseMatrix(b * a);
  return c.norm();
}

}  // namespace

std::vector<std::pair<int, int>> ReplicaConfig::bonds() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i + 1 < L; ++i) out.emplace_back(i, i + 1);
  if (boundary == Boundary::Periodic && L > 2) out.emplace_back(L - 1, 0);
  return out;
}

void ReplicaConfig::validate() const {
  if (Q < 1) throw std::invalid_argument(fmt::format("Q = {} must be >= 1", Q));
  if (L < 2) throw std::invalid_argument(fmt::format("L = {} must be >= 2", L));
  if (!(J >= 0.0)) throw std::invalid_argument("J must be >= 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  if (num_spins() > kMaxSpins) {
    throw std::invalid_argument(fmt::format("2QL = {} spins exceeds the limit of {}", num_spins(), kMaxSpins));
  }
}

PairingPermutation PairingPermutation::identity(int Q) {
  PairingPermutation p;
  p.image.resize(static_cast<std::size_t>(Q));
  std::iota(p.image.begin(), p.image.end(), 0);
  return p;
}

std::vector<PairingPermutation> PairingPermutation::all(int Q) {
  std::vector<PairingPermutation> out;
  PairingPermutation p = identity(Q);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.image.begin(), p.image.end()));
  return out;
}

void PairingPermutation::validate(int Q) const {
  if (static_cast<int>(image.size()) != Q) throw std::invalid_argument("pairing permutation has wrong size");
  std::vector<bool> seen(image.size(), false);
  for (int v : image) {
    if (v < 0 || v >= Q || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("pairing permutation is not a bijection on {0..Q-1}");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

std::string PairingPermutation::to_string() const {
  std::string s = "(";
  for (std::size_t a = 0; a < image.size(); ++a) {
    s += fmt::format("{}{}", a ? " " : "", image[a] + 1);
  }
  return s + ")";
}

SparseMatrix copy_swap(const ReplicaConfig& config, int copy, int i, int j) {
  const int a = spin_bit(config, copy, i);
  const int b = spin_bit(config, copy, j);
  const std::size_t dim = config.dimension();
  std::vector<Triplet> entries;
  entries.reserve(dim);
  for (std::size_t z = 0; z < dim; ++z) {
    entries.emplace_back(static_cast<int>(swap_bits(z, a, b)), static_cast<int>(z), 1.0);
  }
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

SparseMatrix copy_heisenberg(const ReplicaConfig& config, int copy, int i, int j) {
  return 0.5 * copy_swap(config, copy, i, j) - 0.25 * identity(config.dimension());
}

SparseMatrix build_h_unitary(const ReplicaConfig& config) {
  require_materializable(config);
  const std::size_t dim = config.dimension();
  SparseMatrix h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  if (config.J == 0.0) return h;
  for (const auto& [i, j] : config.bonds()) {
    SparseMatrix a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (int c = 0; c < config.Q; ++c) {
      a += copy_heisenberg(config, c, i, j) - copy_heisenberg(config, config.Q + c, i, j);
    }
    h += config.J * SparseMatrix(a * a);
  }
  h.prune(0.0);
  return h;
}

SparseMatrix build_h_measurement(const ReplicaConfig& config) {
  require_materializable(config);
  const std::size_t dim = config.dimension();
  const int copies = config.num_copies();
  SparseMatrix h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  if (config.gamma == 0.0) return h;
  const double uniform = 1.0 / static_cast<double>(copies);
  for (const auto& [i, j] : config.bonds()) {
    std::vector<SparseMatrix> x;
    for (int c = 0; c < copies; ++c) x.push_back(copy_heisenberg(config, c, i, j));
    for (int c = 0; c < copies; ++c) {
      for (int d = 0; d < copies; ++d) {
        const double pi = (c == d ? 1.0 : 0.0) - uniform;
        h += (config.gamma * pi) * SparseMatrix(x[static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(d)]);
      }
    }
  }
  h.prune(0.0);
  return h;
}

Su4Decomposition build_su4_decomposition(const ReplicaConfig& config, const PairingPermutation& sigma) {
  require_materializable(config);
  sigma.validate(config.Q);
  const std::size_t dim = config.dimension();
  const auto n = static_cast<Eigen::Index>(dim);
  const int Q = config.Q;
  const SparseMatrix id = identity(dim);

  Su4Decomposition out{sigma, SparseMatrix(n, n), SparseMatrix(n, n), SparseMatrix(n, n)};
  for (const auto& [i, j] : config.bonds()) {
    std::vector<SparseMatrix> fwd;
    std::vector<SparseMatrix> bwd;  // bwd[a] = Sw on copy sigma(a)*
    for (int a = 0; a < Q; ++a) {
      fwd.push_back(copy_swap(config, a, i, j));
      bwd.push_back(copy_swap(config, Q + sigma.image[static_cast<std::size_t>(a)], i, j));
    }
    for (int a = 0; a < Q; ++a) {
      out.h0 += id - SparseMatrix(fwd[static_cast<std::size_t>(a)] * bwd[static_cast<std::size_t>(a)]);
    }
    for (int a = 0; a < Q; ++a) {
      for (int b = 0; b < Q; ++b) {
        const auto ua = static_cast<std::size_t>(a);
        const auto ub = static_cast<std::size_t>(b);
        if (a < b) {
          out.v_unitary += SparseMatrix(SparseMatrix(fwd[ua] - bwd[ua]) * SparseMatrix(fwd[ub] - bwd[ub]));
        }
        if (a != b) {
          out.v_measurement += SparseMatrix(SparseMatrix(fwd[ua] + bwd[ua]) * SparseMatrix(fwd[ub] + bwd[ub]));
        }
      }
    }
  }
  out.h0.prune(0.0);
  out.v_unitary.prune(0.0);
  out.v_measurement.prune(0.0);
  return out;
}

DecompositionCheck check_decomposition(const ReplicaConfig& config, const PairingPermutation& sigma) {
  const SparseMatrix hu = build_h_unitary(config);
  const SparseMatrix hm = build_h_measurement(config);
  const Su4Decomposition d = build_su4_decomposition(config, sigma);
  const double Q = config.Q;
  const double g = config.gamma;
  const double bonds = static_cast<double>(config.bonds().size());

  DecompositionCheck out;
  out.sigma = sigma;
  out.unitary_residual = SparseMatrix(hu - (0.5 * config.J) * SparseMatrix(d.h0 + d.v_unitary)).norm();
  out.measurement_residual_quoted =
      SparseMatrix(hm - (g / Q) * d.h0 + (g / (2.0 * Q)) * d.v_measurement).norm();
  out.measurement_residual_derived =
      SparseMatrix(hm - (g / (4.0 * Q)) * d.h0 + (g / (8.0 * Q)) * d.v_measurement -
                   (0.5 * g * (Q - 1.0) * bonds) * identity(config.dimension()))
          .norm();
  return out;
}

ReplicaHamiltonian::ReplicaHamiltonian(const ReplicaConfig& config) : config_(config) {
  config_.validate();
  if (config_.num_spins() <= kMaxMaterializedSpins) {
    h_unitary_ = build_h_unitary(config_);
    h_measurement_ = build_h_measurement(config_);
    h_eff_ = SparseMatrix(*h_unitary_ + *h_measurement_);
  }
}

const SparseMatrix& ReplicaHamiltonian::h_unitary() const {
  if (!h_unitary_) throw std::logic_error("ReplicaHamiltonian is matrix-free at this size");
  return *h_unitary_;
}

const SparseMatrix& ReplicaHamiltonian::h_measurement() const {
  if (!h_measurement_) throw std::logic_error("ReplicaHamiltonian is matrix-free at this size");
  return *h_measurement_;
}

const SparseMatrix& ReplicaHamiltonian::h_eff() const {
  if (!h_eff_) throw std::logic_error("ReplicaHamiltonian is matrix-free at this size");
  return *h_eff_;
}

void ReplicaHamiltonian::apply(const Vector& x, Vector& y) const {
  if (static_cast<std::size_t>(x.size()) != dimension()) throw std::invalid_argument("apply: size mismatch");
  if (h_eff_) {
    y = *h_eff_ * x;
    return;
  }
  const int Q = config_.Q;
  const int copies = config_.num_copies();
  y = Vector::Zero(x.size());
  Vector t1;
  Vector t2;
  for (const auto& [i, j] : config_.bonds()) {
    if (config_.J != 0.0) {
      Vector ax = Vector::Zero(x.size());
      for (int c = 0; c < copies; ++c) {
        apply_heisenberg(config_, c, i, j, x, t1);
        ax += (c < Q ? 1.0 : -1.0) * t1;
      }
      Vector aax = Vector::Zero(x.size());
      for (int c = 0; c < copies; ++c) {
        apply_heisenberg(config_, c, i, j, ax, t1);
        aax += (c < Q ? 1.0 : -1.0) * t1;
      }
      y += config_.J * aax;
    }
    if (config_.gamma != 0.0) {
      Vector sum_x = Vector::Zero(x.size());
      Vector diag = Vector::Zero(x.size());
      for (int c = 0; c < copies; ++c) {
        apply_heisenberg(config_, c, i, j, x, t1);
        sum_x += t1;
        apply_heisenberg(config_, c, i, j, t1, t2);
        diag += t2;
      }
      Vector sum_sum = Vector::Zero(x.size());
      for (int c = 0; c < copies; ++c) {
        apply_heisenberg(config_, c, i, j, sum_x, t1);
        sum_sum += t1;
      }
      y += config_.gamma * (diag - sum_sum / static_cast<double>(copies));
    }
  }
}

Vector paired_product_state(const ReplicaConfig& config, const PairingPermutation& sigma) {
  config.validate();
  sigma.validate(config.Q);
  const std::size_t dim = config.dimension();
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  const double amp = std::pow(0.5, 0.5 * config.Q * config.L);
  for (std::size_t z = 0; z < dim; ++z) {
    bool paired = true;
    for (int a = 0; a < config.Q && paired; ++a) {
      const int partner = config.Q + sigma.image[static_cast<std::size_t>(a)];
      for (int i = 0; i < config.L; ++i) {
        if (((z >> spin_bit(config, a, i)) & 1U) != ((z >> spin_bit(config, partner, i)) & 1U)) {
          paired = false;
          break;
        }
      }
    }
    if (paired) v[static_cast<Eigen::Index>(z)] = amp;
  }
  return v;
}

Vector polarized_state(const ReplicaConfig& config) {
  config.validate();
  Vector v = Vector::Zero(static_cast<Eigen::Index>(config.dimension()));
  v[0] = 1.0;
  return v;
}

SparseMatrix copy_permutation(const ReplicaConfig& config, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != config.num_copies()) throw std::invalid_argument("copy_permutation: size");
  const std::size_t dim = config.dimension();
  std::vector<Triplet> entries;
  entries.reserve(dim);
  for (std::size_t z = 0; z < dim; ++z) {
    std::size_t image = 0;
    for (int c = 0; c < config.num_copies(); ++c) {
      for (int i = 0; i < config.L; ++i) {
        if ((z >> spin_bit(config, c, i)) & 1U) image |= std::size_t{1} << spin_bit(config, perm[static_cast<std::size_t>(c)], i);
      }
    }
    entries.emplace_back(static_cast<int>(image), static_cast<int>(z), 1.0);
  }
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

bool SymmetryReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const SymmetryEntry& e) { return e.pass; });
}

SymmetryReport check_symmetries(const ReplicaHamiltonian& h, double tol) {
  const ReplicaConfig& config = h.config();
  const SparseMatrix& heff = h.h_eff();
  const std::size_t dim = config.dimension();
  const auto n = static_cast<Eigen::Index>(dim);
  SymmetryReport report;
  auto add = [&](std::string name, const SparseMatrix& g) {
    const double norm = commutator_norm(heff, g);
    report.entries.push_back(SymmetryEntry{std::move(name), norm, norm < tol});
  };

  for (int c = 0; c < config.num_copies(); ++c) {
    std::vector<Triplet> sx;
    std::vector<Triplet> isy;
    std::vector<Triplet> sz;
    for (std::size_t z = 0; z < dim; ++z) {
      for (int i = 0; i < config.L; ++i) {
        const std::size_t bit = std::size_t{1} << spin_bit(config, c, i);
        const bool up = (z & bit) == 0;
        sx.emplace_back(static_cast<int>(z ^ bit), static_cast<int>(z), 0.5);
        // i sigma^y |0> = -|1>, i sigma^y |1> = |0>
        isy.emplace_back(static_cast<int>(z ^ bit), static_cast<int>(z), up ? -0.5 : 0.5);
        sz.emplace_back(static_cast<int>(z), static_cast<int>(z), up ? 0.5 : -0.5);
      }
    }
    const std::string label = c < config.Q ? fmt::format("{}", c + 1) : fmt::format("{}*", c - config.Q + 1);
    SparseMatrix m(n, n);
    m.setFromTriplets(sx.begin(), sx.end());
    add(fmt::format("S^x copy {}", label), m);
    m.setFromTriplets(isy.begin(), isy.end());
    add(fmt::format("iS^y copy {}", label), m);
    m.setFromTriplets(sz.begin(), sz.end());
    add(fmt::format("S^z copy {}", label), m);
  }

  for (int a = 0; a + 1 < config.Q; ++a) {
    std::vector<int> perm(static_cast<std::size_t>(config.num_copies()));
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(a + 1)]);
    add(fmt::format("forward swap ({} {})", a + 1, a + 2), copy_permutation(config, perm));

    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[static_cast<std::size_t>(config.Q + a)], perm[static_cast<std::size_t>(config.Q + a + 1)]);
    add(fmt::format("backward swap ({}* {}*)", a + 1, a + 2), copy_permutation(config, perm));
  }
  return report;
}

std::vector<double> full_spectrum(const ReplicaConfig& config, const SparseMatrix& m) {
  const std::size_t dim = config.dimension();
  if (static_cast<std::size_t>(m.rows()) != dim || m.rows() != m.cols()) {
    throw std::invalid_argument("full_spectrum: matrix does not match the configuration");
  }
  // Block label: the up-count of every copy.
  const int base = config.L + 1;
  auto label = [&](std::size_t z) {
    std::size_t key = 0;
    for (int c = config.num_copies() - 1; c >= 0; --c) {
      const std::size_t mask = ((std::size_t{1} << config.L) - 1) << (c * config.L);
      key = key * static_cast<std::size_t>(base) + static_cast<std::size_t>(std::popcount(z & mask));
    }
    return key;
  };
  std::vector<std::size_t> labels(dim);
  std::vector<std::size_t> position(dim);
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::ptrdiff_t> block_of_label;
  for (std::size_t z = 0; z < dim; ++z) {
    labels[z] = label(z);
    if (labels[z] >= block_of_label.size()) block_of_label.resize(labels[z] + 1, -1);
    if (block_of_label[labels[z]] < 0) {
      block_of_label[labels[z]] = static_cast<std::ptrdiff_t>(blocks.size());
      blocks.emplace_back();
    }
    auto& blk = blocks[static_cast<std::size_t>(block_of_label[labels[z]])];
    position[z] = blk.size();
    blk.push_back(z);
  }

  std::vector<Eigen::MatrixXd> dense(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto s = static_cast<Eigen::Index>(blocks[b].size());
    dense[b] = Eigen::MatrixXd::Zero(s, s);
  }
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      const auto r = static_cast<std::size_t>(it.row());
      const auto c = static_cast<std::size_t>(it.col());
      if (labels[r] != labels[c]) {
        if (it.value() != 0.0) throw std::logic_error("full_spectrum: matrix mixes magnetization blocks");
        continue;
      }
      const auto b = static_cast<std::size_t>(block_of_label[labels[r]]);
      dense[b](static_cast<Eigen::Index>(position[r]), static_cast<Eigen::Index>(position[c])) = it.value();
    }
  }
  std::vector<double> eig;
  eig.reserve(dim);
  for (const Eigen::MatrixXd& block : dense) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) eig.push_back(solver.eigenvalues()(i));
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

namespace {

// Lowest eigenpair of `apply` restricted to the complement of `locked`.
std::pair<double, Vector> lanczos_one(const std::function<void(const Vector&, Vector&)>& apply,
                                      std::size_t dim, const std::vector<Vector>& locked,
                                      const LanczosOptions& options, TrajectoryRng& rng,
                                      double& residual) {
  const auto n = static_cast<Eigen::Index>(dim);
  auto project = [&](Vector& v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& u : locked) v -= u.dot(v) * u;
    }
  };
  Vector start(n);
  for (Eigen::Index i = 0; i < n; ++i) start[i] = rng.uniform() - 0.5;
  project(start);
  start.normalize();

  const int m_max = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(options.krylov_dimension),
                                                           dim - locked.size()));
  Vector w(n);
  for (int restart = 0; restart < options.max_restarts; ++restart) {
    std::vector<Vector> basis;
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.push_back(start);
    for (int j = 0; j < m_max; ++j) {
      apply(basis.back(), w);
      project(w);
      const double a = basis.back().dot(w);
      alpha.push_back(a);
      for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& v : basis) w -= v.dot(w) * v;
      }
      project(w);
      const double b = w.norm();
      if (j + 1 == m_max || b < 1e-12) break;
      beta.push_back(b);
      basis.push_back(w / b);
    }
    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
    const double theta = solver.eigenvalues()(0);
    Vector ritz = Vector::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i) ritz += solver.eigenvectors()(i, 0) * basis[static_cast<std::size_t>(i)];
    project(ritz);
    ritz.normalize();
    apply(ritz, w);
    project(w);
    residual = (w - theta * ritz).norm();
    if (residual < options.tolerance) return {theta, ritz};
    start = ritz;
  }
  throw std::runtime_error(fmt::format("Lanczos did not converge after {} restarts (residual {:.3g})",
                                       options.max_restarts, residual));
}

}  // namespace

Spectrum lanczos_lowest(const std::function<void(const Vector&, Vector&)>& apply, std::size_t dim,
                        std::size_t k, const LanczosOptions& options) {
  if (k == 0 || k > dim) throw std::invalid_argument("lanczos_lowest: k out of range");
  TrajectoryRng rng(options.seed, 0);
  std::vector<Vector> locked;
  Spectrum out;
  out.dense = false;
  for (std::size_t found = 0; found < k; ++found) {
    double residual = 0.0;
    auto [theta, vec] = lanczos_one(apply, dim, locked, options, rng, residual);
    out.eigenvalues.push_back(theta);
    out.max_residual = std::max(out.max_residual, residual);
    locked.push_back(std::move(vec));
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  const double e0 = out.eigenvalues.front();
  out.ground_space_dimension = static_cast<std::size_t>(
      std::count_if(out.eigenvalues.begin(), out.eigenvalues.end(), [&](double e) { return e - e0 < 1e-8; }));
  return out;
}

Spectrum low_spectrum(const ReplicaHamiltonian& h, std::size_t k, const LanczosOptions& options) {
  if (k == 0 || k > h.dimension()) throw std::invalid_argument("low_spectrum: k out of range");
  if (h.dimension() <= kDenseSolveLimit) {
    const std::vector<double> all = full_spectrum(h.config(), h.h_eff());
    Spectrum out;
    out.dense = true;
    out.eigenvalues.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    const double e0 = all.front();
    out.ground_space_dimension =
        static_cast<std::size_t>(std::count_if(all.begin(), all.end(), [&](double e) { return e - e0 < 1e-8; }));
    return out;
  }
  return lanczos_lowest([&h](const Vector& x, Vector& y) { h.apply(x, y); }, h.dimension(), k, options);
}

double spectral_gap(const std::vector<double>& ascending) {
  if (ascending.empty()) return 0.0;
  const double e0 = ascending.front();
  for (double e : ascending) {
    if (e - e0 > 1e-8) return e - e0;
  }
  return 0.0;
}

}  // namespace su2mon::statmech
