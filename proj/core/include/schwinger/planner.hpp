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

#include <cstdint>
#include <string>
#include <vector>

#include "schwinger/dyson.hpp"
#include "schwinger/model.hpp"
#include "schwinger/trotter.hpp"

namespace schwinger {

enum class Method { pf2, ip };
enum class AlphaConvention { sites, exact };

std::string to_string(Method m);

/// Integer Lambda0 with 0.01 mu <= Lambda0^2 <= 100 mu, ascending, at least {1}.
std::vector<int> lambda0_sweep(double mu);

/// Extra field headroom so that leakage past Lambda(t) stays below eps_cutoff:
/// max(3, ceil(log2(2 ceil(4xt) / (eps_cutoff sqrt(2 pi e))))).
int delta_for_leakage(double x, double t, double eps_cutoff);

/// ceil(4 x t) / (2^(Delta-1) Delta!)
double leakage_bound(double x, double t, int delta);

struct CutoffAtTime {
  int lambda = 0;
  int delta = 0;
  int eta = 0;
};

/// Lambda(t) = Lambda0 + ceil(4xt) (Delta - 1).
CutoffAtTime cutoff_at_time(int lambda0, double x, double t, double eps_cutoff);

struct SystemSize {
  int n_sites = 0;
  /// Light-cone padding actually used on each side.
  int l = 0;
  /// ceil(max(ln(n0/eps), 8 e x t)), which may not satisfy the tail inequality.
  int closed_form_l = 0;
};

/// n0(8xt)^l / l!
double lightcone_tail(int n0, double x, double t, int l);

/// N = n0 + 2l with l the smallest integer >= closed_form_l satisfying
/// n0 (8xt)^l / l! <= eps.
SystemSize min_system_size(int n0, double x, double t, double eps);

double t_min(double rho_density, double x);

struct GammaRange {
  double lower = 0;
  double upper = 0;
  bool empty = false;
};

/// sqrt(rho mu) <= gamma < Lambda0.
GammaRange gamma_bounds(double rho_density, double mu, int lambda0);

struct MomentumFloor {
  double value = 0;
  /// Set when the momentum reaches 0.1 pi N, close to the lattice cutoff.
  bool warning = false;
};

MomentumFloor p0_min(double rho_density, double mu, int n_sites);

struct ErrorBudget {
  double eps_total = 0;
  double eps_cutoff = 0;
  double eps_prime = 0;
  /// Product-formula share (pf2 only).
  double eps_trotter = 0;
  /// Truncation and discretization shares summed over segments (ip only).
  double eps1_total = 0;
  double eps2_total = 0;
  /// Rotation-synthesis share, both methods.
  double eps3_total = 0;
};

struct PlannerOptions {
  double cutoff_fraction = 0.25;
  double pf2_trotter_fraction = 0.9;
  /// Relative weights of eps1 : eps2 : eps3 for ip.
  double ip_weight1 = 10;
  double ip_weight2 = 10;
  double ip_weight3 = 1;
  AlphaConvention alpha = AlphaConvention::sites;
  /// Sorted time registers allow t0 = ln 2; the unsorted variant uses 0.5.
  bool sorted = true;
  bool collisions = false;
};

struct PlanRequest {
  double x = 0.1;
  double mu = 1.0;
  double rho_density = 0.5;
  double t = 5.0;
  double eps = 0.01;
  int n0 = 8;
  Method method = Method::pf2;
  /// Zero selects the smallest Lambda0 in the sweep with a non-empty gamma range.
  int lambda0 = 0;
  PlannerOptions options{};
};

struct IpSegments {
  double alpha_v = 0;
  double t0 = 0;
  double t_seg = 0;
  std::int64_t segments = 1;
  double eps1 = 0;
  double eps2 = 0;
  double h0_norm = 0;
  double v_norm = 0;
  SegmentParams params;
};

struct Plan {
  PlanRequest request;
  ModelParams params;
  int lambda0 = 0;
  CutoffAtTime cutoff;
  SystemSize size;
  double t_min = 0;
  GammaRange gamma;
  MomentumFloor p0;
  ErrorBudget budget;
  TrotterPlan trotter;
  IpSegments ip;
  DysonConfig dyson;
};

/// Splits eps into the cutoff share and the method-specific shares.
ErrorBudget split_budget(double eps, Method method, const PlannerOptions& options);

/// t0 for the chosen time-register variant.
double segment_t0(bool sorted);

/// Segment count and per-segment K, M for the interaction-picture method on
/// the model in p, shared by the planner and the cost model.
IpSegments plan_ip_segments(const ModelParams& p, double t, double eps1_total,
                            double eps2_total, double t0, AlphaConvention alpha,
                            bool collisions);

/// Throws std::invalid_argument on bad inputs and InfeasiblePlan when a
/// defining inequality cannot be met.
Plan make_plan(const PlanRequest& req);

/// Human-readable descriptions of every violated inequality; empty when the
/// plan is consistent.
std::vector<std::string> plan_violations(const Plan& plan);

/// Stable-key-order JSON record.
std::string plan_to_json(const Plan& plan, int indent = 2);

}  // namespace schwinger
