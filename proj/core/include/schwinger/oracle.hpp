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

#pragma once

#include <Eigen/Dense>

#include "schwinger/model.hpp"

namespace schwinger {

using DenseOperator = Eigen::MatrixXcd;

struct EvolutionLimits {
  std::size_t max_dim = 4096;
  /// Hermiticity tolerance applied to inputs of exact_evolution.
  double hermitian_tol = 1e-12;
};

DenseOperator to_dense(const SparseOperator& op);
DenseOperator to_dense(const DiagonalOperator& op);

/// Diagonal of exp(-i d t) for a diagonal generator d.
Eigen::VectorXcd diagonal_phases(const DiagonalOperator& d, double t);

/// Cached eigendecomposition of a Hermitian operator, so that exp(-iHt) can
/// be formed for many t without refactoring.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const SparseOperator& h, const EvolutionLimits& lim = {});

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(vectors_.rows()); }
  [[nodiscard]] const Eigen::VectorXd& eigenvalues() const { return values_; }

  /// exp(-i H t)
  [[nodiscard]] DenseOperator evolution(double t) const;
  /// exp(-i H t) |psi>
  [[nodiscard]] StateVector apply(const StateVector& psi, double t) const;

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;
};

/// exp(-iHt) by dense Hermitian eigendecomposition. Throws CapacityError above
/// lim.max_dim and std::invalid_argument on non-Hermitian input.
DenseOperator exact_evolution(const SparseOperator& h, double t, const EvolutionLimits& lim = {});

/// V(s) = exp(i H0 s) V exp(-i H0 s) for diagonal H0.
SparseOperator interaction_frame(const SparseOperator& v, const DiagonalOperator& h0, double s);

/// U_I(t) = exp(i H0 t) exp(-iHt) with H0 = H_E + H_M.
DenseOperator interaction_picture_unitary(const ModelParams& p, double t,
                                          const EvolutionLimits& lim = {});

struct NormOptions {
  /// Full SVD at or below this dimension, power iteration above.
  std::size_t svd_max_dim = 512;
  int max_iterations = 20000;
  double rel_tol = 1e-13;
  unsigned seed = 0x5eed;
};

/// Largest singular value.
double spectral_norm(const DenseOperator& a, const NormOptions& opt = {});

/// ||A^dag A - 1||
double unitarity_defect(const DenseOperator& a, const NormOptions& opt = {});

/// Projector diagonal onto basis states of p whose every link field lies in
/// [-window, window].
std::vector<bool> field_window_mask(const ModelParams& p, int window);

/// ||(1 - P_[-lambda_t, lambda_t]) exp(-iHt) P_[-lambda0, lambda0]|| with H built at
/// big.lambda_cutoff and lambda0 = small.lambda_cutoff. Requires
/// big.lambda_cutoff > lambda_t and matching N, x, mu, boundary.
double leakage_norm(const ModelParams& small, const ModelParams& big, int lambda_t, double t,
                    const EvolutionLimits& lim = {});

/// Same norm from a precomputed exp(-i H_big t), for sweeping lambda_t.
double leakage_norm(const DenseOperator& u_big, const ModelParams& big, int lambda0, int lambda_t);

}  // namespace schwinger
