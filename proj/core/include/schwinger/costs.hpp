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
#include <optional>
#include <string>
#include <vector>

#include "schwinger/planner.hpp"

namespace schwinger {

struct SubroutineCost {
  std::string name;
  std::int64_t t_gates = 0;
  std::int64_t rotations = 0;
  std::int64_t ancilla = 0;
  std::int64_t calls = 0;
  /// One-time catalyst-state preparation, not repeated per step.
  bool catalyst = false;
};

/// T gates per synthesized rotation: ceil(a log2(1/eps_rot) + b).
struct SynthesisModel {
  double coeff_a = 3.067;
  double coeff_b = 9.2;
};

enum class IpVariant { pga, mult };

std::string to_string(IpVariant v);

struct CostReport {
  /// "pf2", "ip_pga" or "ip_mult"
  std::string method;
  bool sorted = true;
  std::vector<SubroutineCost> rows;
  /// Per-step (pf2) or per-segment (ip) row calls are multiplied by this for ip.
  std::int64_t segments_or_steps = 0;
  int order = 0;
  std::int64_t points = 0;
  std::int64_t gate_t = 0;
  std::int64_t rotation_t = 0;
  std::int64_t total_t = 0;
  std::int64_t total_rotations = 0;
  std::int64_t max_ancilla = 0;
  std::int64_t system_qubits = 0;
  std::int64_t logical_qubits = 0;
};

/// floor(log2 n) and ceil(log2 n) for n >= 1.
int floor_log2(std::int64_t n);
int ceil_log2(std::int64_t n);

/// Six product-formula rows with their call counts for r steps.
std::vector<SubroutineCost> trotter_subroutine_costs(int n_sites, int eta, std::int64_t steps);

/// Catalyst states prepared once per evolution.
std::vector<SubroutineCost> trotter_catalyst_costs(int n_sites, int eta);

/// Rows of one interaction-picture segment. The SORT row is dropped when
/// sorted is false.
std::vector<SubroutineCost> ip_subroutine_costs(int n_sites, int eta, int order,
                                                std::int64_t points, IpVariant variant,
                                                bool sorted);

/// Free evolution exp(-i H0 t0/alpha) between segments, costed with the
/// full-step electric and mass rows of the product formula.
std::vector<SubroutineCost> ip_free_evolution_costs(int n_sites, int eta);

/// n_rot * ceil(a log2(n_rot / eps3) + b)
std::int64_t rotation_t_cost(std::int64_t n_rot, double eps3_total, const SynthesisModel& model = {});

CostReport pf2_cost(const ModelParams& p, std::int64_t steps, double eps3_total,
                    const SynthesisModel& model = {});

CostReport ip_cost(const ModelParams& p, const IpSegments& seg, double eps3_total,
                   IpVariant variant, bool sorted, const SynthesisModel& model = {},
                   bool include_free_evolution = true);

/// Costs for a plan made with Method::pf2.
CostReport pf2_total(const Plan& plan, const SynthesisModel& model = {});

/// Costs for a plan made with Method::ip; K and M are re-certified for the
/// requested time-register variant.
CostReport ip_total(const Plan& plan, IpVariant variant, bool sorted,
                    const SynthesisModel& model = {});

struct CompareRequest {
  double x = 0.1;
  double mu = 1.0;
  double rho_density = 0.5;
  std::vector<double> t_grid;
  std::vector<double> eps_grid;
  int n0 = 8;
  /// Empty selects lambda0_sweep(mu) restricted to feasible gamma ranges.
  std::vector<int> lambda0_grid;
  std::vector<IpVariant> variants{IpVariant::pga, IpVariant::mult};
  std::vector<bool> sorted{true, false};
  PlannerOptions options{};
  SynthesisModel synthesis{};
};

struct CompareRow {
  double t = 0;
  double eps = 0;
  int lambda0 = 0;
  int lambda_t = 0;
  int n_sites = 0;
  std::optional<CostReport> pf2;
  std::optional<CostReport> ip;
  std::string pf2_error;
  std::string ip_error;
  /// "pf2", "ip", or "none" when neither plan is feasible.
  std::string winner;
};

struct ScalingFit {
  std::string method;
  double eps = 0;
  int lambda0 = 0;
  /// Slope of log total_t against log t along the planned grid.
  double t_exponent = 0;
  /// Same slope with N and Lambda frozen at the largest-t plan.
  double t_exponent_fixed_size = 0;
  std::size_t points = 0;
};

struct EpsScalingFit {
  std::string method;
  double t = 0;
  int lambda0 = 0;
  /// Slope of log total_t against log(1/eps).
  double inv_eps_exponent = 0;
  std::size_t points = 0;
};

struct CompareResult {
  std::vector<CompareRow> rows;
  std::vector<ScalingFit> t_fits;
  std::vector<EpsScalingFit> eps_fits;
};

/// Least-squares slope of log y against log x. Requires at least two distinct x.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

struct GridPoint {
  double t = 0;
  double eps = 0;
  int lambda0 = 0;
};

/// Grid points in (t, eps, lambda0) order.
std::vector<GridPoint> compare_grid(const CompareRequest& req);

/// One grid point: pf2 and the cheapest ip variant.
CompareRow compare_point(const CompareRequest& req, const GridPoint& point);

/// Fits total_t against t and 1/eps over already evaluated rows.
void fill_scaling_fits(const CompareRequest& req, CompareResult& result);

/// Full sweep in deterministic (t, eps, lambda0) order plus scaling fits.
CompareResult compare(const CompareRequest& req);

}  // namespace schwinger
