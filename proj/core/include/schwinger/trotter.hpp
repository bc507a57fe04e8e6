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

#include "schwinger/model.hpp"
#include "schwinger/oracle.hpp"

namespace schwinger {

struct TrotterPlan {
  long long steps = 1;
  double tau = 0;
  double eps_trotter = 0;
  double rho_bound = 0;
};

/// Closed-form nested-commutator prefactor rho(x, mu) of the second-order
/// product formula for the six-term split, evaluated at p.lambda_cutoff.
double commutator_bound_rho(const ModelParams& p);

/// r = max(1, ceil(sqrt(rho t^3 / eps_t))).
TrotterPlan trotter_steps(const ModelParams& p, double t, double eps_t);

/// Symmetric second-order product over H_E, H_M, H1e, H2e, H1o, H2o (the last
/// term takes the full step), repeated r times. With merge = true the
/// adjacent diagonal half-steps are fused into single diagonal phases.
DenseOperator pf2_operator(const HamiltonianTerms& terms, double t, long long r,
                           bool merge = true);

/// ||exp(-iHt) - S(t)|| for the model in p.
double measured_trotter_error(const ModelParams& p, double t, long long r,
                              const EvolutionLimits& lim = {});

}  // namespace schwinger
