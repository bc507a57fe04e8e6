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

#include "schwinger/costs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace schwinger {

namespace {

using i64 = std::int64_t;

i64 mul(i64 a, i64 b) {
  i64 out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("gate count overflows int64");
  return out;
}

i64 add(i64 a, i64 b) {
  i64 out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("gate count overflows int64");
  return out;
}

SubroutineCost row(std::string name, i64 t, i64 rot, i64 anc, i64 calls) {
  return SubroutineCost{std::move(name), t, rot, anc, calls, false};
}

void check_lattice(int n_sites, int eta) {
  if (n_sites < 2) throw std::invalid_argument("cost formulas need N >= 2");
  if (eta < 1) throw std::invalid_argument("cost formulas need eta >= 1");
}

struct Sums {
  i64 gate_t = 0;
  i64 rotations = 0;
  i64 max_ancilla = 0;
};

Sums sum_rows(const std::vector<SubroutineCost>& rows, i64 repeat) {
  Sums s;
  for (const auto& r : rows) {
    const i64 calls = r.catalyst ? r.calls : mul(r.calls, repeat);
    s.gate_t = add(s.gate_t, mul(calls, r.t_gates));
    s.rotations = add(s.rotations, mul(calls, r.rotations));
    if (calls > 0) s.max_ancilla = std::max(s.max_ancilla, r.ancilla);
  }
  return s;
}

}  // namespace

std::string to_string(IpVariant v) { return v == IpVariant::pga ? "pga" : "mult"; }

int floor_log2(i64 n) {
  if (n < 1) throw std::invalid_argument("floor_log2: n must be >= 1");
  int k = 0;
  while ((n >> (k + 1)) > 0) ++k;
  return k;
}

int ceil_log2(i64 n) {
  const int f = floor_log2(n);
  return (i64{1} << f) == n ? f : f + 1;
}

std::vector<SubroutineCost> trotter_subroutine_costs(int n_sites, int eta, i64 steps) {
  check_lattice(n_sites, eta);
  if (steps < 1) throw std::invalid_argument("need at least one Trotter step");
  const i64 n = n_sites;
  const i64 e = eta;
  const i64 lg = floor_log2(n);
  const i64 three_half = (3 * n + 1) / 2;

  const i64 mass_t = 4 * n - 4 + 4 * lg;
  const i64 mass_anc = n + lg + 1;
  const i64 elec_t = 2 * (n - 1) * (e * e + e - 2);
  const i64 elec_rot = (n - 1) * e;
  const i64 hop1_t = 6 * n - 4 + 4 * lg;
  const i64 hop1_anc = three_half + lg;
  const i64 hop2_t = hop1_t + 8 * n * e - 8 * n;
  const i64 hop2_anc = std::max(hop1_anc, e);

  return {
      row("exp_HM_half", mass_t, 1, mass_anc, 2),
      row("exp_HM_full", mass_t, 1, mass_anc, steps - 1),
      row("exp_HE_half", elec_t, elec_rot, e, 2),
      row("exp_HE_full", elec_t, elec_rot, e, steps - 1),
      row("exp_H1e_half", hop1_t, 1, hop1_anc, mul(2, steps)),
      row("exp_H1o_half", hop1_t, 1, hop1_anc, mul(2, steps)),
      row("exp_H2e_half", hop2_t, 1, hop2_anc, mul(2, steps)),
      row("exp_H2o_full", hop2_t, 1, hop2_anc, steps),
  };
}

std::vector<SubroutineCost> trotter_catalyst_costs(int n_sites, int eta) {
  check_lattice(n_sites, eta);
  const i64 lg = floor_log2(n_sites);
  std::vector<SubroutineCost> out{
      row("catalyst_HE", 0, std::max<i64>(0, 2 * eta - 3), 0, 1),
      row("catalyst_HM", 0, lg + 1, 0, 1),
      // One register shared by the half-step and full-step hopping layers.
      row("catalyst_hopping", 0, lg + 2, 0, 1),
  };
  for (auto& r : out) r.catalyst = true;
  return out;
}

std::vector<SubroutineCost> ip_subroutine_costs(int n_sites, int eta, int order, i64 points,
                                                IpVariant variant, bool sorted) {
  check_lattice(n_sites, eta);
  if (order < 1) throw std::invalid_argument("ip costs need K >= 1");
  if (points < 1 || (points & (points - 1)) != 0) {
    throw std::invalid_argument("ip costs need M to be a power of two");
  }
  const i64 n = n_sites;
  const i64 e = eta;
  const i64 k = order;
  const i64 lm = ceil_log2(points);
  const i64 lk = ceil_log2(k);
  const i64 lgn = floor_log2(n);
  const i64 cln = ceil_log2(n);
  const i64 half_k = k / 2;
  const i64 lm_minus = std::max<i64>(lm - 1, 0);
  const i64 phase_calls = 3 * (k + 1);

  std::vector<SubroutineCost> out;
  out.push_back(row("prep_khot", 0, 2 * k - 1, 0, 6));
  out.push_back(row("prep_time", 2 * k * lm, 0, 0, 6));
  if (sorted) {
    out.push_back(row("sort", 4 * half_k * (lk + 1) * lm, 0, lm + half_k * (lk + 1), 6));
  }
  out.push_back(row("block_encoding", 8 * n + 4 * (n - 1) * (e - 1) - 1, 0, e - 1, 3 * k));
  if (variant == IpVariant::pga) {
    out.push_back(row("exp_HM_pga", 4 * n - 4 + 4 * lm * (lgn + 1), lm, n + lgn + 1, phase_calls));
    out.push_back(row("exp_HE_pga", mul(2 * (n - 1) * lm, e * e + e - 2), (n - 1) * lm * e, e,
                      phase_calls));
  } else {
    out.push_back(row("exp_HM_mult", 4 * (n + 2 * lm * lgn + 7 * lm + 5 * lgn + 4), 1,
                      n + 2 * lm + 2 * lgn + 1, phase_calls));
    out.push_back(row("exp_HE_mult",
                      16 * n * e * e + 16 * n * e + 4 * lm * (4 * e + 5 + 2 * cln) + 20 * cln -
                          8 * e * e + 48 * e,
                      1, 8 * e + 3 * cln + 2 * lm, phase_calls));
  }
  out.push_back(row("select_extra", 8 * lm_minus * (k - 1) + 4 * k * (n + 1), 0,
                    std::max(n + 1, lm_minus), 3));
  out.push_back(row("reflection", 8 * k + 4 * k * lm - 4, 0, 2 * k + k * lm - 1, 2));
  return out;
}

std::vector<SubroutineCost> ip_free_evolution_costs(int n_sites, int eta) {
  check_lattice(n_sites, eta);
  const i64 n = n_sites;
  const i64 e = eta;
  const i64 lg = floor_log2(n);
  return {
      row("free_HE", 2 * (n - 1) * (e * e + e - 2), (n - 1) * e, e, 1),
      row("free_HM", 4 * n - 4 + 4 * lg, 1, n + lg + 1, 1),
  };
}

i64 rotation_t_cost(i64 n_rot, double eps3_total, const SynthesisModel& model) {
  if (n_rot < 0) throw std::invalid_argument("rotation count must be non-negative");
  if (n_rot == 0) return 0;
  if (!(eps3_total > 0)) throw std::invalid_argument("rotation budget must be positive");
  if (!(model.coeff_a > 0) || model.coeff_b < 0) throw std::invalid_argument("bad synthesis model");
  const double per = std::ceil(model.coeff_a * std::log2(static_cast<double>(n_rot) / eps3_total) +
                               model.coeff_b);
  return mul(n_rot, static_cast<i64>(std::max(per, 0.0)));
}

CostReport pf2_cost(const ModelParams& p, i64 steps, double eps3_total, const SynthesisModel& model) {
  CostReport rep;
  rep.method = "pf2";
  rep.sorted = false;
  rep.rows = trotter_subroutine_costs(p.n_sites, p.eta(), steps);
  for (auto& c : trotter_catalyst_costs(p.n_sites, p.eta())) rep.rows.push_back(std::move(c));
  rep.segments_or_steps = steps;
  const Sums s = sum_rows(rep.rows, 1);
  rep.gate_t = s.gate_t;
  rep.total_rotations = s.rotations;
  rep.rotation_t = rotation_t_cost(s.rotations, eps3_total, model);
  rep.total_t = add(rep.gate_t, rep.rotation_t);
  rep.max_ancilla = s.max_ancilla;
  rep.system_qubits = p.n_sites + static_cast<i64>(p.link_count()) * p.eta();
  rep.logical_qubits = rep.system_qubits + rep.max_ancilla;
  return rep;
}

CostReport ip_cost(const ModelParams& p, const IpSegments& seg, double eps3_total,
                   IpVariant variant, bool sorted, const SynthesisModel& model,
                   bool include_free_evolution) {
  const int k = seg.params.truncation.order;
  const i64 m = seg.params.discretization.points;
  CostReport rep;
  rep.method = "ip_" + to_string(variant);
  rep.sorted = sorted;
  rep.rows = ip_subroutine_costs(p.n_sites, p.eta(), k, m, variant, sorted);
  if (include_free_evolution) {
    for (auto& c : ip_free_evolution_costs(p.n_sites, p.eta())) rep.rows.push_back(std::move(c));
  }
  rep.segments_or_steps = seg.segments;
  rep.order = k;
  rep.points = m;
  const Sums s = sum_rows(rep.rows, seg.segments);
  rep.gate_t = s.gate_t;
  rep.total_rotations = s.rotations;
  rep.rotation_t = rotation_t_cost(s.rotations, eps3_total, model);
  rep.total_t = add(rep.gate_t, rep.rotation_t);
  rep.max_ancilla = s.max_ancilla;
  const i64 lm = ceil_log2(m);
  rep.system_qubits = p.n_sites + static_cast<i64>(p.link_count()) * p.eta();
  rep.logical_qubits = rep.system_qubits + k + k * lm + k + rep.max_ancilla;
  return rep;
}

CostReport pf2_total(const Plan& plan, const SynthesisModel& model) {
  if (plan.request.method != Method::pf2) throw std::invalid_argument("pf2_total needs a pf2 plan");
  return pf2_cost(plan.params, plan.trotter.steps, plan.budget.eps3_total, model);
}

CostReport ip_total(const Plan& plan, IpVariant variant, bool sorted, const SynthesisModel& model) {
  if (plan.request.method != Method::ip) throw std::invalid_argument("ip_total needs an ip plan");
  const auto& o = plan.request.options;
  const IpSegments seg = plan_ip_segments(plan.params, plan.request.t, plan.budget.eps1_total,
                                          plan.budget.eps2_total, segment_t0(sorted), o.alpha,
                                          o.collisions);
  return ip_cost(plan.params, seg, plan.budget.eps3_total, variant, sorted, model);
}

std::vector<GridPoint> compare_grid(const CompareRequest& req) {
  if (req.t_grid.empty() || req.eps_grid.empty()) throw std::invalid_argument("compare: empty grid");
  std::vector<int> lambdas = req.lambda0_grid;
  if (lambdas.empty()) {
    for (int l0 : lambda0_sweep(req.mu)) {
      if (!gamma_bounds(req.rho_density, req.mu, l0).empty) lambdas.push_back(l0);
    }
    if (lambdas.empty()) lambdas = lambda0_sweep(req.mu);
  }
  std::vector<GridPoint> out;
  for (double t : req.t_grid) {
    for (double eps : req.eps_grid) {
      for (int l0 : lambdas) out.push_back({t, eps, l0});
    }
  }
  return out;
}

CompareRow compare_point(const CompareRequest& req, const GridPoint& point) {
  CompareRow out;
  out.t = point.t;
  out.eps = point.eps;
  out.lambda0 = point.lambda0;

  PlanRequest pr;
  pr.x = req.x;
  pr.mu = req.mu;
  pr.rho_density = req.rho_density;
  pr.t = point.t;
  pr.eps = point.eps;
  pr.n0 = req.n0;
  pr.lambda0 = point.lambda0;
  pr.options = req.options;

  pr.method = Method::pf2;
  try {
    const Plan plan = make_plan(pr);
    out.pf2 = pf2_total(plan, req.synthesis);
    out.lambda_t = plan.cutoff.lambda;
    out.n_sites = plan.size.n_sites;
  } catch (const std::exception& e) {
    out.pf2_error = e.what();
  }

  pr.method = Method::ip;
  try {
    const Plan plan = make_plan(pr);
    out.lambda_t = plan.cutoff.lambda;
    out.n_sites = plan.size.n_sites;
    for (bool sorted : req.sorted) {
      for (IpVariant v : req.variants) {
        CostReport rep = ip_total(plan, v, sorted, req.synthesis);
        if (!out.ip || rep.total_t < out.ip->total_t) out.ip = std::move(rep);
      }
    }
    if (!out.ip) out.ip_error = "no interaction-picture variant selected";
  } catch (const std::exception& e) {
    out.ip_error = e.what();
  }

  if (out.pf2 && out.ip) {
    out.winner = out.ip->total_t < out.pf2->total_t ? "ip" : "pf2";
  } else if (out.pf2) {
    out.winner = "pf2";
  } else if (out.ip) {
    out.winner = "ip";
  } else {
    out.winner = "none";
  }
  return out;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("loglog_slope: need two or more points");
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0) || !(ys[i] > 0)) throw std::invalid_argument("loglog_slope: values must be positive");
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) throw std::invalid_argument("loglog_slope: x values coincide");
  return sxy / sxx;
}

namespace {

// Cost at time t with the lattice frozen to `frozen`, mirroring the report
// that was chosen at the reference point.
i64 fixed_size_cost(const CompareRequest& req, const ModelParams& frozen, const CostReport& ref,
                    double t, double eps) {
  if (ref.method == "pf2") {
    const auto b = split_budget(eps, Method::pf2, req.options);
    const auto steps = trotter_steps(frozen, t, b.eps_trotter).steps;
    return pf2_cost(frozen, steps, b.eps3_total, req.synthesis).total_t;
  }
  const auto b = split_budget(eps, Method::ip, req.options);
  const auto seg = plan_ip_segments(frozen, t, b.eps1_total, b.eps2_total, segment_t0(ref.sorted),
                                    req.options.alpha, req.options.collisions);
  const IpVariant v = ref.method == "ip_pga" ? IpVariant::pga : IpVariant::mult;
  return ip_cost(frozen, seg, b.eps3_total, v, ref.sorted, req.synthesis).total_t;
}

}  // namespace

void fill_scaling_fits(const CompareRequest& req, CompareResult& result) {
  result.t_fits.clear();
  result.eps_fits.clear();
  for (int which = 0; which < 2; ++which) {
    const std::string method = which == 0 ? "pf2" : "ip";
    auto pick = [which](const CompareRow& r) -> const std::optional<CostReport>& {
      return which == 0 ? r.pf2 : r.ip;
    };

    std::map<std::pair<double, int>, std::vector<const CompareRow*>> by_eps;
    std::map<std::pair<double, int>, std::vector<const CompareRow*>> by_t;
    for (const auto& r : result.rows) {
      if (!pick(r)) continue;
      by_eps[{r.eps, r.lambda0}].push_back(&r);
      by_t[{r.t, r.lambda0}].push_back(&r);
    }

    for (const auto& [key, rows] : by_eps) {
      std::vector<double> ts;
      std::vector<double> costs;
      const CompareRow* last = nullptr;
      for (const auto* r : rows) {
        ts.push_back(r->t);
        costs.push_back(static_cast<double>(pick(*r)->total_t));
        if (!last || r->t > last->t) last = r;
      }
      if (std::adjacent_find(ts.begin(), ts.end(), std::not_equal_to<>()) == ts.end()) continue;
      ScalingFit fit;
      fit.method = method;
      fit.eps = key.first;
      fit.lambda0 = key.second;
      fit.points = ts.size();
      fit.t_exponent = loglog_slope(ts, costs);
      const ModelParams frozen{req.x, req.mu, last->n_sites, last->lambda_t, 0.0, Boundary::open};
      std::vector<double> fixed;
      for (double t : ts) {
        fixed.push_back(static_cast<double>(fixed_size_cost(req, frozen, *pick(*last), t, key.first)));
      }
      fit.t_exponent_fixed_size = loglog_slope(ts, fixed);
      result.t_fits.push_back(fit);
    }

    for (const auto& [key, rows] : by_t) {
      std::vector<double> inv;
      std::vector<double> costs;
      for (const auto* r : rows) {
        inv.push_back(1.0 / r->eps);
        costs.push_back(static_cast<double>(pick(*r)->total_t));
      }
      if (std::adjacent_find(inv.begin(), inv.end(), std::not_equal_to<>()) == inv.end()) continue;
      EpsScalingFit fit;
      fit.method = method;
      fit.t = key.first;
      fit.lambda0 = key.second;
      fit.points = inv.size();
      fit.inv_eps_exponent = loglog_slope(inv, costs);
      result.eps_fits.push_back(fit);
    }
  }
}

CompareResult compare(const CompareRequest& req) {
  CompareResult out;
  for (const auto& point : compare_grid(req)) out.rows.push_back(compare_point(req, point));
  fill_scaling_fits(req, out);
  return out;
}

}  // namespace schwinger
