// Copyright 2026 The schwinger-qre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "schwinger/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <stdexcept>

namespace schwinger {

namespace {

void check_dim(std::size_t dim, const EvolutionLimits& lim) {
  if (dim > lim.max_dim) {
    throw CapacityError("dense evolution of dimension " + std::to_string(dim) +
                        " exceeds limit " + std::to_string(lim.max_dim));
  }
}

}  // namespace

DenseOperator to_dense(const SparseOperator& op) {
  const auto n = static_cast<Eigen::Index>(op.dim());
  DenseOperator out = DenseOperator::Zero(n, n);
  for (const auto& e : op.entries()) {
    out(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  }
  return out;
}

DenseOperator to_dense(const DiagonalOperator& op) {
  const auto n = static_cast<Eigen::Index>(op.dim());
  DenseOperator out = DenseOperator::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = op.values[static_cast<std::size_t>(i)];
  return out;
}

Eigen::VectorXcd diagonal_phases(const DiagonalOperator& d, double t) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(d.dim()));
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out(i) = std::polar(1.0, -d.values[static_cast<std::size_t>(i)] * t);
  }
  return out;
}

SpectralPropagator::SpectralPropagator(const SparseOperator& h, const EvolutionLimits& lim) {
  check_dim(h.dim(), lim);
  if (h.hermiticity_defect() > lim.hermitian_tol) {
    throw std::invalid_argument("exact evolution requires a Hermitian generator");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_dense(h));
  if (eig.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  values_ = eig.eigenvalues();
  vectors_ = eig.eigenvectors();
}

DenseOperator SpectralPropagator::evolution(double t) const {
  Eigen::VectorXcd ph(values_.size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::polar(1.0, -values_(i) * t);
  return vectors_ * ph.asDiagonal() * vectors_.adjoint();
}

StateVector SpectralPropagator::apply(const StateVector& psi, double t) const {
  if (psi.dim() != dim()) throw std::invalid_argument("state dimension mismatch");
  const Eigen::Map<const Eigen::VectorXcd> in(psi.amplitudes.data(),
                                              static_cast<Eigen::Index>(psi.dim()));
  Eigen::VectorXcd c = vectors_.adjoint() * in;
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -values_(i) * t);
  const Eigen::VectorXcd out = vectors_ * c;
  return StateVector{std::vector<cplx>(out.data(), out.data() + out.size())};
}

DenseOperator exact_evolution(const SparseOperator& h, double t, const EvolutionLimits& lim) {
  return SpectralPropagator(h, lim).evolution(t);
}

SparseOperator interaction_frame(const SparseOperator& v, const DiagonalOperator& h0, double s) {
  if (v.dim() != h0.dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<SparseEntry> out;
  out.reserve(v.nnz());
  for (const auto& e : v.entries()) {
    const double dj = h0.values[e.row];
    const double dk = h0.values[e.col];
    out.push_back({e.row, e.col, std::polar(1.0, (dj - dk) * s) * e.value});
  }
  return SparseOperator(v.dim(), std::move(out));
}

DenseOperator interaction_picture_unitary(const ModelParams& p, double t,
                                          const EvolutionLimits& lim) {
  const auto terms = split_interaction(p);
  const auto h0 = terms.h0();
  check_dim(h0.dim(), lim);
  const DenseOperator u = exact_evolution(build_hamiltonian(p), t, lim);
  return diagonal_phases(h0, -t).asDiagonal() * u;
}

double spectral_norm(const DenseOperator& a, const NormOptions& opt) {
  if (a.size() == 0) return 0.0;
  const auto n = static_cast<std::size_t>(std::max(a.rows(), a.cols()));
  if (n <= opt.svd_max_dim) {
    Eigen::BDCSVD<DenseOperator> svd(a);
    return svd.singularValues()(0);
  }
  // Power iteration on A^dag A from a fixed pseudo-random start.
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {gauss(rng), gauss(rng)};
  v.normalize();
  double lambda = 0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    const double next = w.norm();
    if (next == 0) return 0.0;
    v = w / next;
    if (std::abs(next - lambda) <= opt.rel_tol * next) return std::sqrt(next);
    lambda = next;
  }
  throw NumericalError("spectral norm power iteration did not converge");
}

double unitarity_defect(const DenseOperator& a, const NormOptions& opt) {
  const DenseOperator g = a.adjoint() * a - DenseOperator::Identity(a.cols(), a.cols());
  return spectral_norm(g, opt);
}

std::vector<bool> field_window_mask(const ModelParams& p, int window) {
  const BasisLayout basis(p);
  std::vector<bool> mask(basis.dim(), true);
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    for (int l = 0; l < basis.links(); ++l) {
      if (std::abs(basis.field(i, l)) > window) {
        mask[i] = false;
        break;
      }
    }
  }
  return mask;
}

double leakage_norm(const ModelParams& small, const ModelParams& big, int lambda_t, double t,
                    const EvolutionLimits& lim) {
  if (small.n_sites != big.n_sites || small.x != big.x || small.mu != big.mu ||
      small.boundary != big.boundary || small.alpha_bg != big.alpha_bg) {
    throw std::invalid_argument("leakage_norm: models differ beyond the cutoff");
  }
  if (lambda_t < small.lambda_cutoff || big.lambda_cutoff <= lambda_t) {
    throw std::invalid_argument("leakage_norm: need lambda0 <= lambda_t < big cutoff");
  }
  return leakage_norm(exact_evolution(build_hamiltonian(big), t, lim), big, small.lambda_cutoff,
                      lambda_t);
}

double leakage_norm(const DenseOperator& u_big, const ModelParams& big, int lambda0, int lambda_t) {
  if (lambda0 < 1 || lambda_t < lambda0 || big.lambda_cutoff <= lambda_t) {
    throw std::invalid_argument("leakage_norm: need 1 <= lambda0 <= lambda_t < big cutoff");
  }
  if (static_cast<std::size_t>(u_big.rows()) != big.hilbert_dim() || u_big.rows() != u_big.cols()) {
    throw std::invalid_argument("leakage_norm: evolution does not match the enlarged model");
  }
  const auto cols = field_window_mask(big, lambda0);
  const auto keep = field_window_mask(big, lambda_t);
  std::vector<Eigen::Index> ci;
  std::vector<Eigen::Index> ri;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i]) ci.push_back(static_cast<Eigen::Index>(i));
    if (!keep[i]) ri.push_back(static_cast<Eigen::Index>(i));
  }
  if (ci.empty() || ri.empty()) return 0.0;
  return spectral_norm(u_big(ri, ci));
}

}  // namespace schwinger
