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

#include "schwinger/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace schwinger {

namespace {

// ceil that ignores relative rounding noise below 1e-14.
double ceil_tol(double v) { return std::ceil(v - std::abs(v) * 1e-14); }

int light_cone_hops(double x, double t) { return static_cast<int>(ceil_tol(4 * x * t)); }

bool within(double lhs, double rhs) { return lhs <= rhs * (1 + 1e-12); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string to_string(Method m) { return m == Method::pf2 ? "pf2" : "ip"; }

std::vector<int> lambda0_sweep(double mu) {
  require(mu > 0 && std::isfinite(mu), "lambda0_sweep: mu must be positive");
  const double lo = 0.01 * mu;
  const double hi = 100 * mu;
  std::vector<int> out;
  for (long long k = 1; static_cast<double>(k * k) <= hi * (1 + 1e-12); ++k) {
    if (static_cast<double>(k * k) >= lo * (1 - 1e-12)) out.push_back(static_cast<int>(k));
  }
  if (out.empty()) out.push_back(1);
  return out;
}

int delta_for_leakage(double x, double t, double eps_cutoff) {
  require(x > 0 && t >= 0 && eps_cutoff > 0, "delta_for_leakage: bad arguments");
  const double hops = std::max(1, light_cone_hops(x, t));
  const double arg = 2 * hops / (eps_cutoff * std::sqrt(2 * std::numbers::pi * std::numbers::e));
  return std::max(3, static_cast<int>(std::ceil(std::log2(arg))));
}

double leakage_bound(double x, double t, int delta) {
  const double hops = light_cone_hops(x, t);
  return hops / (std::pow(2.0, delta - 1) * std::tgamma(delta + 1.0));
}

CutoffAtTime cutoff_at_time(int lambda0, double x, double t, double eps_cutoff) {
  require(lambda0 >= 1, "cutoff_at_time: lambda0 must be >= 1");
  CutoffAtTime out;
  out.delta = delta_for_leakage(x, t, eps_cutoff);
  out.lambda = lambda0 + light_cone_hops(x, t) * (out.delta - 1);
  out.eta = ModelParams{.lambda_cutoff = out.lambda}.eta();
  return out;
}

double lightcone_tail(int n0, double x, double t, int l) {
  const double rate = 8 * std::abs(x) * std::abs(t);
  if (l == 0) return n0;
  if (rate == 0) return 0;
  return std::exp(std::log(static_cast<double>(n0)) + l * std::log(rate) - std::lgamma(l + 1.0));
}

SystemSize min_system_size(int n0, double x, double t, double eps) {
  require(n0 >= 2, "min_system_size: n0 must be >= 2");
  require(eps > 0 && eps < 1, "min_system_size: eps must lie in (0,1)");
  require(x >= 0 && t >= 0, "min_system_size: x and t must be non-negative");
  SystemSize out;
  out.closed_form_l = static_cast<int>(
      std::ceil(std::max(std::log(n0 / eps), 8 * std::numbers::e * x * t)));
  out.l = out.closed_form_l;
  while (lightcone_tail(n0, x, t, out.l) > eps) ++out.l;
  out.n_sites = n0 + 2 * out.l;
  return out;
}

double t_min(double rho_density, double x) {
  require(rho_density > 0 && rho_density <= 1, "t_min: density must lie in (0,1]");
  require(x > 0, "t_min: x must be positive");
  return rho_density / x;
}

GammaRange gamma_bounds(double rho_density, double mu, int lambda0) {
  require(rho_density > 0 && mu >= 0 && lambda0 >= 1, "gamma_bounds: bad arguments");
  GammaRange out;
  out.lower = std::sqrt(rho_density * mu);
  out.upper = lambda0;
  out.empty = out.lower >= out.upper;
  return out;
}

MomentumFloor p0_min(double rho_density, double mu, int n_sites) {
  require(rho_density >= 0 && mu >= 0 && n_sites >= 1, "p0_min: bad arguments");
  MomentumFloor out;
  out.value = 0.1 * rho_density * mu * n_sites;
  out.warning = out.value >= 0.1 * std::numbers::pi * n_sites;
  return out;
}

ErrorBudget split_budget(double eps, Method method, const PlannerOptions& o) {
  ErrorBudget b;
  b.eps_total = eps;
  b.eps_cutoff = o.cutoff_fraction * eps;
  b.eps_prime = eps - b.eps_cutoff;
  if (method == Method::pf2) {
    b.eps_trotter = o.pf2_trotter_fraction * b.eps_prime;
    b.eps3_total = b.eps_prime - b.eps_trotter;
  } else {
    const double w = o.ip_weight1 + o.ip_weight2 + o.ip_weight3;
    b.eps1_total = o.ip_weight1 / w * b.eps_prime;
    b.eps2_total = o.ip_weight2 / w * b.eps_prime;
    b.eps3_total = o.ip_weight3 / w * b.eps_prime;
  }
  return b;
}

double segment_t0(bool sorted) { return sorted ? std::numbers::ln2 : 0.5; }

IpSegments plan_ip_segments(const ModelParams& p, double t, double eps1_total,
                            double eps2_total, double t0, AlphaConvention alpha,
                            bool collisions) {
  require(p.x > 0, "interaction-picture plan needs x > 0");
  require(t > 0 && eps1_total > 0 && eps2_total > 0 && t0 > 0, "plan_ip_segments: bad arguments");
  IpSegments out;
  const auto norm = lcu_one_norm(p);
  out.alpha_v = alpha == AlphaConvention::sites ? norm.per_site : norm.exact;
  out.t0 = t0;
  out.t_seg = t0 / out.alpha_v;
  out.segments = segment_count(out.alpha_v, t, t0);
  out.eps1 = eps1_total / static_cast<double>(out.segments);
  out.eps2 = eps2_total / static_cast<double>(out.segments);
  const auto bounds = norm_bounds(p);
  out.h0_norm = bounds.h0_norm;
  out.v_norm = bounds.v_norm;
  out.params = certify_segment(out.v_norm, out.h0_norm, out.t_seg, out.eps1, out.eps2, collisions);
  return out;
}

Plan make_plan(const PlanRequest& req) {
  require(std::isfinite(req.x) && req.x > 0, "make_plan: x must be positive");
  require(std::isfinite(req.mu) && req.mu > 0, "make_plan: mu must be positive");
  require(req.rho_density > 0 && req.rho_density <= 1, "make_plan: density must lie in (0,1]");
  require(std::isfinite(req.t) && req.t > 0, "make_plan: t must be positive");
  require(req.eps > 0 && req.eps < 1, "make_plan: eps must lie in (0,1)");
  require(req.n0 >= 2, "make_plan: n0 must be >= 2");
  require(req.lambda0 >= 0, "make_plan: lambda0 must be >= 0");
  const auto& o = req.options;
  require(o.cutoff_fraction > 0 && o.cutoff_fraction < 1, "make_plan: cutoff fraction must lie in (0,1)");
  require(o.pf2_trotter_fraction > 0 && o.pf2_trotter_fraction < 1,
          "make_plan: trotter fraction must lie in (0,1)");
  require(o.ip_weight1 > 0 && o.ip_weight2 > 0 && o.ip_weight3 > 0, "make_plan: ip weights must be positive");

  Plan plan;
  plan.request = req;
  plan.budget = split_budget(req.eps, req.method, o);
  const auto& b = plan.budget;

  plan.size = min_system_size(req.n0, req.x, req.t, req.eps);
  if (req.lambda0 > 0) {
    plan.lambda0 = req.lambda0;
  } else {
    for (int l0 : lambda0_sweep(req.mu)) {
      if (!gamma_bounds(req.rho_density, req.mu, l0).empty) {
        plan.lambda0 = l0;
        break;
      }
    }
    if (plan.lambda0 == 0) {
      throw InfeasiblePlan("no Lambda0 in the sweep admits sqrt(rho mu) <= gamma < Lambda0");
    }
  }
  plan.cutoff = cutoff_at_time(plan.lambda0, req.x, req.t, b.eps_cutoff);
  plan.params = ModelParams{req.x, req.mu, plan.size.n_sites, plan.cutoff.lambda, 0.0, Boundary::open};
  plan.t_min = t_min(req.rho_density, req.x);
  plan.gamma = gamma_bounds(req.rho_density, req.mu, plan.lambda0);
  plan.p0 = p0_min(req.rho_density, req.mu, plan.size.n_sites);

  if (req.method == Method::pf2) {
    plan.trotter = trotter_steps(plan.params, req.t, b.eps_trotter);
  } else {
    plan.ip = plan_ip_segments(plan.params, req.t, b.eps1_total, b.eps2_total,
                               segment_t0(o.sorted), o.alpha, o.collisions);
    plan.dyson = DysonConfig{plan.ip.params.truncation.order, plan.ip.params.discretization.points,
                             o.collisions, plan.ip.t_seg, plan.ip.t0, plan.ip.alpha_v};
  }

  const auto bad = plan_violations(plan);
  if (!bad.empty()) {
    std::string msg = "infeasible plan:";
    for (const auto& s : bad) msg += " " + s + ";";
    throw InfeasiblePlan(msg);
  }
  return plan;
}

std::vector<std::string> plan_violations(const Plan& plan) {
  std::vector<std::string> out;
  const auto& req = plan.request;
  const auto& b = plan.budget;
  const double x = req.x;
  const double t = req.t;

  const double leak = leakage_bound(x, t, plan.cutoff.delta);
  if (!within(leak, b.eps_cutoff)) {
    out.push_back("leakage bound " + fmt(leak) + " exceeds eps_cutoff " + fmt(b.eps_cutoff));
  }
  if (plan.cutoff.delta < 3) out.push_back("Delta below 3");
  if (plan.cutoff.lambda != plan.lambda0 + light_cone_hops(x, t) * (plan.cutoff.delta - 1)) {
    out.push_back("Lambda(t) does not equal Lambda0 + ceil(4xt)(Delta-1)");
  }
  if (plan.params.lambda_cutoff != plan.cutoff.lambda || plan.params.eta() != plan.cutoff.eta) {
    out.push_back("installed cutoff differs from Lambda(t)");
  }
  const double tail = lightcone_tail(req.n0, x, t, plan.size.l);
  if (!within(tail, b.eps_total)) {
    out.push_back("light-cone tail " + fmt(tail) + " exceeds eps " + fmt(b.eps_total));
  }
  if (plan.size.n_sites != req.n0 + 2 * plan.size.l || plan.params.n_sites != plan.size.n_sites ||
      plan.size.n_sites < 2) {
    out.push_back("system size inconsistent with n0 + 2l");
  }
  if (plan.gamma.empty) {
    out.push_back("empty gamma range: sqrt(rho mu) = " + fmt(plan.gamma.lower) +
                  " >= Lambda0 = " + fmt(plan.gamma.upper));
  }
  if (!(b.eps_cutoff > 0) || !(b.eps3_total > 0)) out.push_back("non-positive budget share");
  const double spent = b.eps_cutoff + b.eps_trotter + b.eps1_total + b.eps2_total + b.eps3_total;
  if (!within(spent, b.eps_total)) {
    out.push_back("budget shares sum to " + fmt(spent) + " > eps " + fmt(b.eps_total));
  }

  if (req.method == Method::pf2) {
    const auto& tr = plan.trotter;
    if (!(b.eps_trotter > 0)) out.push_back("non-positive Trotter share");
    if (tr.steps < 1) out.push_back("Trotter step count below 1");
    const double rho = commutator_bound_rho(plan.params);
    if (tr.rho_bound != rho) out.push_back("Trotter rho not evaluated at Lambda(t), N");
    const double err = rho * t * t * t / (static_cast<double>(tr.steps) * static_cast<double>(tr.steps));
    if (!within(err, b.eps_trotter)) {
      out.push_back("Trotter bound " + fmt(err) + " exceeds eps_t " + fmt(b.eps_trotter));
    }
  } else {
    const auto& ip = plan.ip;
    if (!(b.eps1_total > 0) || !(b.eps2_total > 0)) out.push_back("non-positive Dyson share");
    if (static_cast<double>(ip.segments) * ip.t_seg < t * (1 - 1e-12)) {
      out.push_back("segments do not cover the evolution time");
    }
    const auto& tr = ip.params.truncation;
    const auto& ds = ip.params.discretization;
    const double ttail = truncation_tail(ip.v_norm, ip.t_seg, tr.order);
    if (!within(ttail, ip.eps1)) {
      out.push_back("truncation tail " + fmt(ttail) + " exceeds eps1 " + fmt(ip.eps1));
    }
    if (tr.order < 1) out.push_back("truncation order below 1");
    const auto need = discretization_count(ip.v_norm, ip.h0_norm, ip.t_seg, ip.eps2, tr.order,
                                           req.options.collisions);
    for (double lb : need.lower_bounds) {
      if (static_cast<double>(ds.points) < lb) {
        out.push_back("grid size " + std::to_string(ds.points) + " below bound " + fmt(lb));
      }
    }
    if (ds.points < 1 || (ds.points & (ds.points - 1)) != 0) out.push_back("grid size not a power of two");
    if (plan.dyson.order != tr.order || plan.dyson.points != ds.points) {
      out.push_back("Dyson config differs from certified K, M");
    }
  }
  return out;
}

std::string plan_to_json(const Plan& plan, int indent) {
  using nlohmann::ordered_json;
  const auto& req = plan.request;
  ordered_json j;
  j["schema"] = "schwinger-plan/1";
  j["request"] = {{"x", req.x},
                  {"mu", req.mu},
                  {"rho_density", req.rho_density},
                  {"t", req.t},
                  {"eps", req.eps},
                  {"n0", req.n0},
                  {"method", to_string(req.method)},
                  {"sorted", req.options.sorted},
                  {"collisions", req.options.collisions},
                  {"alpha_convention", req.options.alpha == AlphaConvention::sites ? "sites" : "exact"}};
  j["lambda0"] = plan.lambda0;
  j["delta"] = plan.cutoff.delta;
  j["lambda_t"] = plan.cutoff.lambda;
  j["eta"] = plan.cutoff.eta;
  j["n_sites"] = plan.size.n_sites;
  j["lightcone_l"] = plan.size.l;
  j["lightcone_l_closed_form"] = plan.size.closed_form_l;
  j["t_min"] = plan.t_min;
  j["gamma_range"] = {{"lower", plan.gamma.lower}, {"upper", plan.gamma.upper}, {"empty", plan.gamma.empty}};
  j["p0_min"] = {{"value", plan.p0.value}, {"warning", plan.p0.warning}};
  const auto& b = plan.budget;
  j["budget"] = {{"eps_total", b.eps_total},   {"eps_cutoff", b.eps_cutoff},
                 {"eps_prime", b.eps_prime},   {"eps_trotter", b.eps_trotter},
                 {"eps1_total", b.eps1_total}, {"eps2_total", b.eps2_total},
                 {"eps3_total", b.eps3_total}};
  if (req.method == Method::pf2) {
    j["trotter"] = {{"steps", plan.trotter.steps},
                    {"tau", plan.trotter.tau},
                    {"rho_bound", plan.trotter.rho_bound},
                    {"eps_trotter", plan.trotter.eps_trotter}};
  } else {
    const auto& ip = plan.ip;
    j["dyson"] = {{"order", plan.dyson.order},
                  {"points", plan.dyson.points},
                  {"collisions", plan.dyson.collisions},
                  {"segments", ip.segments},
                  {"t0", ip.t0},
                  {"t_seg", ip.t_seg},
                  {"alpha_v", ip.alpha_v},
                  {"eps1_segment", ip.eps1},
                  {"eps2_segment", ip.eps2},
                  {"h0_norm", ip.h0_norm},
                  {"v_norm", ip.v_norm},
                  {"order_branch", to_string(ip.params.truncation.branch)},
                  {"points_branch", ip.params.discretization.branch}};
  }
  return j.dump(indent);
}

}  // namespace schwinger
