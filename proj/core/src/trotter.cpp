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

#include "schwinger/trotter.hpp"

#include <cmath>
#include <stdexcept>

namespace schwinger {

double commutator_bound_rho(const ModelParams& p) {
  const double n = p.n_sites;
  const double x = p.x;
  const double mu = p.mu;
  const double lam = p.lambda_cutoff;
  const double first = 8 * n * x * mu * mu + 2 * n * x * (4 * lam * lam - 1) +
                       80 * (n - 1) * x * x * x;
  const double second = 2 * x * mu * n * (2 * lam - 1) + 32 * n * x * x * mu +
                         16 * n * x * x * (2 * lam + 1) + 72 * (n - 1) * x * x * x;
  return first / 12.0 + second / 24.0;
}

TrotterPlan trotter_steps(const ModelParams& p, double t, double eps_t) {
  if (!(t > 0) || !(eps_t > 0)) throw std::invalid_argument("trotter_steps: t and eps must be positive");
  TrotterPlan plan;
  plan.rho_bound = commutator_bound_rho(p);
  plan.eps_trotter = eps_t;
  const double raw = std::ceil(std::sqrt(plan.rho_bound * t * t * t / eps_t));
  if (!std::isfinite(raw) || raw > 9e18) throw std::overflow_error("trotter step count overflows");
  plan.steps = std::max(1LL, static_cast<long long>(raw));
  plan.tau = t / static_cast<double>(plan.steps);
  return plan;
}

namespace {

DenseOperator sparse_exp(const SparseOperator& h, double s) {
  return exact_evolution(h, s, EvolutionLimits{h.dim(), 1e-12});
}

DenseOperator repeat(const DenseOperator& step, long long r) {
  // Binary powering keeps the number of dense products logarithmic in r.
  DenseOperator out = DenseOperator::Identity(step.rows(), step.cols());
  DenseOperator base = step;
  while (r > 0) {
    if (r & 1) out = out * base;
    r >>= 1;
    if (r > 0) base = base * base;
  }
  return out;
}

}  // namespace

DenseOperator pf2_operator(const HamiltonianTerms& terms, double t, long long r, bool merge) {
  if (r < 1) throw std::invalid_argument("pf2_operator: need at least one step");
  const double tau = t / static_cast<double>(r);
  const DenseOperator e3 = sparse_exp(terms.h1e, tau / 2);
  const DenseOperator e4 = sparse_exp(terms.h2e, tau / 2);
  const DenseOperator e5 = sparse_exp(terms.h1o, tau / 2);
  const DenseOperator e6 = sparse_exp(terms.h2o, tau);
  const DenseOperator core = e3 * e4 * e5 * e6 * e5 * e4 * e3;

  if (!merge) {
    const Eigen::VectorXcd e1 = diagonal_phases(terms.h_e, tau / 2);
    const Eigen::VectorXcd e2 = diagonal_phases(terms.h_m, tau / 2);
    const DenseOperator step = e1.asDiagonal() * (e2.asDiagonal() * core) * e2.asDiagonal() *
                               e1.asDiagonal();
    return repeat(step, r);
  }

  const auto h0 = terms.h0();
  const Eigen::VectorXcd half = diagonal_phases(h0, tau / 2);
  const Eigen::VectorXcd full = diagonal_phases(h0, tau);
  const DenseOperator inner = full.asDiagonal() * core;
  return half.asDiagonal() * core * repeat(inner, r - 1) * half.asDiagonal();
}

double measured_trotter_error(const ModelParams& p, double t, long long r,
                              const EvolutionLimits& lim) {
  const auto terms = split_interaction(p);
  if (terms.h_i.dim() > lim.max_dim) throw CapacityError("trotter check exceeds dense limit");
  const DenseOperator exact = exact_evolution(build_hamiltonian(p), t, lim);
  return spectral_norm(exact - pf2_operator(terms, t, r));
}

}  // namespace schwinger
