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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "goldens.hpp"
#include "oracles.hpp"
#include "schwinger/costs.hpp"
#include "schwinger/dyson.hpp"
#include "schwinger/oracle.hpp"
#include "schwinger/planner.hpp"
#include "schwinger/trotter.hpp"

using namespace schwinger;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

ModelParams open_chain(int n, int lambda, double x, double mu) {
  return ModelParams{x, mu, n, lambda, 0.0, Boundary::open};
}

// 1. e^{-iHt} = e^{-iH0 t} U_I(t)
Verdict interaction_identity() {
  Verdict v;
  const auto p = open_chain(2, 2, 0.1, 1.0);
  const auto h0 = split_interaction(p).h0();
  const auto h = build_hamiltonian(p);
  double worst = 0, slowest = 0;
  for (double t : {0.3, 0.7, 1.5}) {
    Stopwatch sw;
    const auto ui = interaction_picture_unitary(p, t);
    const double err = spectral_norm(exact_evolution(h, t) - diagonal_phases(h0, t).asDiagonal() * ui);
    slowest = std::max(slowest, sw.seconds());
    worst = std::max(worst, err);
  }
  v.pass = worst <= 1e-12 && slowest < 1.0;
  v.detail = "max error " + sci(worst) + " (limit 1e-12), slowest point " + sci(slowest) + " s";
  return v;
}

// 2. second-order product formula error and its r^-2 scaling
Verdict trotter_bound() {
  Verdict v;
  Stopwatch sw;
  int over = 0;
  double lo = 0, hi = -10;
  std::ostringstream bad;
  for (int n : {2, 3}) {
    for (double x : {0.1, 1.0}) {
      const auto p = open_chain(n, 2, x, 1.0);
      const double rho = commutator_bound_rho(p);
      for (double t : {0.5, 1.0}) {
        std::vector<double> rs, errs;
        for (long long r : {1, 2, 4, 8, 16}) {
          const double err = measured_trotter_error(p, t, r);
          if (err > t * t * t * rho / static_cast<double>(r * r)) ++over;
          rs.push_back(static_cast<double>(r));
          errs.push_back(err);
        }
        const double slope = loglog_slope(rs, errs);
        lo = std::min(lo, slope);
        hi = std::max(hi, slope);
        if (slope < -2.2 || slope > -1.8) {
          bad << " (N=" << n << " x=" << x << " t=" << t << ": " << sci(slope) << ")";
        }
      }
    }
  }
  const double secs = sw.seconds();
  v.pass = over == 0 && bad.str().empty() && secs < 120;
  v.detail = std::to_string(over) + " bound violations, slopes in [" + sci(lo) + ", " + sci(hi) +
             "] (window -2 +- 0.2)" + (bad.str().empty() ? "" : ", outside:" + bad.str()) + ", " +
             sci(secs) + " s";
  return v;
}

// 3. truncated series error against the tail bound plus the discretization
// bound evaluated at the oversampled M
Verdict dyson_truncation() {
  Verdict v;
  Stopwatch sw;
  const auto p = open_chain(2, 2, 0.1, 1.0);
  const auto nb = norm_bounds(p);
  const DysonLimits lim{4096, std::int64_t{1} << 24};
  int over = 0, checked = 0;
  double worst_ratio = 0;
  for (double tau : {0.05, 0.1, 0.2}) {
    const double t = tau / nb.v_norm;
    for (int k = 1; k <= 4; ++k) {
      const auto m = 64 * discretization_count(nb.v_norm, nb.h0_norm, t, 1e-3, k, false).points;
      const DysonConfig cfg{k, m, false, t, std::numbers::ln2, lcu_one_norm(p).per_site};
      const double measured = measured_dyson_error(p, cfg, 0.5, 0.5, lim).measured;
      const double slack = 2 * t * t * nb.v_norm * std::exp(t * nb.v_norm) * (nb.h0_norm + 2 * nb.v_norm) /
                           static_cast<double>(m);
      const double bound = truncation_tail(nb.v_norm, t, k) + slack;
      ++checked;
      if (measured > bound) ++over;
      worst_ratio = std::max(worst_ratio, measured / bound);
    }
  }
  const double secs = sw.seconds();
  v.pass = over == 0 && secs < 180;
  v.detail = std::to_string(checked - over) + "/" + std::to_string(checked) +
             " within tail + slack, worst measured/bound " + sci(worst_ratio) + ", " + sci(secs) + " s";
  return v;
}

// 4. certified (K, M) per variant, plus brute-force tuple sums
Verdict discretization_bounds() {
  Verdict v;
  const auto p = open_chain(2, 2, 0.1, 1.0);
  const auto nb = norm_bounds(p);
  const double alpha = lcu_one_norm(p).per_site;
  const double t_seg = std::numbers::ln2 / alpha;
  const DysonLimits lim{4096, std::int64_t{1} << 22};
  std::ostringstream os;
  for (bool collisions : {false, true}) {
    for (double e : {1e-2, 1e-3}) {
      const auto seg = certify_segment(nb.v_norm, nb.h0_norm, t_seg, e, e, collisions);
      const DysonConfig cfg{seg.truncation.order, seg.discretization.points, collisions, t_seg,
                            std::numbers::ln2, alpha};
      const auto err = measured_dyson_error(p, cfg, e, e, lim);
      v.pass = v.pass && err.within_bound;
      os << (collisions ? " coll" : " free") << "(K=" << cfg.order << ",M=" << cfg.points
         << "): " << sci(err.measured) << "<=" << sci(err.bound) << ";";
    }
  }
  // Brute-force enumeration on a small register.
  const auto q = open_chain(2, 1, 0.7, 1.3);
  const auto terms = split_interaction(q);
  const Eigen::Map<const Eigen::VectorXd> h0(terms.h0().values.data(),
                                             static_cast<Eigen::Index>(terms.h0().dim()));
  const Eigen::VectorXd h0v = h0;
  const oracle::Mat vd = to_dense(terms.h_i);
  double brute = 0;
  for (bool collisions : {false, true}) {
    for (int k = 0; k <= 3; ++k) {
      for (int m = 1; m <= 8; ++m) {
        const auto mine = dyson_series(terms.h0(), terms.h_i, 0.9, k, m, collisions);
        const auto ref = oracle::dyson_brute_force(h0v, vd, 0.9, k, m, collisions);
        brute = std::max(brute, (mine - ref).cwiseAbs().maxCoeff());
      }
    }
  }
  v.pass = v.pass && brute <= 1e-12;
  v.detail = os.str().substr(1) + " brute-force max entry diff " + sci(brute) + " (M<=8, K<=3)";
  return v;
}

// 5. field leakage out of the evolved cutoff window
Verdict leakage() {
  Verdict v;
  Stopwatch sw;
  int over = 0, checked = 0;
  double worst_ratio = 0;
  for (double x : {0.25, 0.5}) {
    const auto small = open_chain(2, 1, x, 1.0);
    const auto big = open_chain(2, 8, x, 1.0);
    for (double t : {0.25, 0.5}) {
      const DenseOperator u = exact_evolution(build_hamiltonian(big), t);
      for (int delta = 3; delta <= 5; ++delta) {
        const int lambda_t = 1 + static_cast<int>(std::ceil(4 * x * t)) * (delta - 1);
        const double measured = leakage_norm(u, big, small.lambda_cutoff, lambda_t);
        const double bound = leakage_bound(x, t, delta);
        ++checked;
        if (measured > bound) ++over;
        worst_ratio = std::max(worst_ratio, measured / bound);
      }
    }
  }
  const double secs = sw.seconds();
  v.pass = over == 0 && secs < 60;
  v.detail = std::to_string(checked - over) + "/" + std::to_string(checked) + " within bound, worst ratio " +
             sci(worst_ratio) + ", " + sci(secs) + " s";
  return v;
}

// 6. Gauss law along the quench evolution
Verdict gauss_law() {
  Verdict v;
  double worst = 0;
  std::ostringstream os;
  for (double x : {0.1, 1.0}) {
    const auto p = open_chain(3, 4, x, 1.0);
    const SpectralPropagator prop(build_hamiltonian(p));
    const auto psi0 = build_quench_state(p, 0);
    const auto g = build_gauss_operator(p, 1);
    double drift = 0;
    for (int i = 0; i <= 40; ++i) {
      const auto psi = prop.apply(psi0, i / 40.0);
      drift = std::max(drift, std::abs(g.expectation(psi.amplitudes)));
    }
    worst = std::max(worst, drift);
    os << " x=" << x << ": " << sci(drift) << ";";
  }
  v.pass = worst <= 1e-8;
  v.detail = "max |<G_1>| over t in [0,1]" + os.str() + " limit 1e-8";
  return v;
}

// 7. subroutine cost rows against the scripted tables
Verdict cost_goldens() {
  Verdict v;
  int rows = 0, mismatched = 0;
  auto check = [&](const std::vector<SubroutineCost>& got, const std::vector<golden::GoldenRow>& want) {
    if (got.size() != want.size()) {
      ++mismatched;
      return;
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
      ++rows;
      const bool same = got[i].name == want[i].name && got[i].t_gates == want[i].t_gates &&
                        got[i].rotations == want[i].rotations && got[i].ancilla == want[i].ancilla &&
                        got[i].calls == want[i].calls;
      if (!same) ++mismatched;
    }
  };
  check(trotter_subroutine_costs(8, 3, 5), golden::kTable2_N8_eta3_r5);
  check(trotter_subroutine_costs(9, 3, 1), golden::kTable2_N9_eta3_r1);
  check(trotter_subroutine_costs(4, 2, 7), golden::kTable2_N4_eta2_r7);
  check(ip_subroutine_costs(8, 3, 4, 16, IpVariant::pga, true), golden::kTable3_N8_eta3_K4_M16_pga);
  check(ip_subroutine_costs(8, 3, 4, 16, IpVariant::mult, true), golden::kTable3_N8_eta3_K4_M16_mult);
  check(ip_subroutine_costs(9, 3, 4, 16, IpVariant::pga, true), golden::kTable3_N9_eta3_K4_M16_pga);
  check(ip_subroutine_costs(9, 3, 4, 16, IpVariant::mult, true), golden::kTable3_N9_eta3_K4_M16_mult);
  check(ip_subroutine_costs(4, 2, 2, 8, IpVariant::pga, true), golden::kTable3_N4_eta2_K2_M8_pga);
  check(ip_subroutine_costs(4, 2, 2, 8, IpVariant::mult, true), golden::kTable3_N4_eta2_K2_M8_mult);
  std::int64_t electric = -1;
  for (const auto& r : trotter_subroutine_costs(8, 3, 5)) {
    if (r.name == "exp_HE_half") electric = r.t_gates;
  }
  v.pass = mismatched == 0 && electric == 140;
  v.detail = std::to_string(rows - mismatched) + "/" + std::to_string(rows) +
             " rows equal, electric half step at N=8 eta=3 costs " + std::to_string(electric) + " T";
  return v;
}

// 8. cost trends over the comparison sweep
Verdict comparison_trends() {
  Verdict v;
  Stopwatch sw;
  double ip_max = 0, pf2_lo = 10, pf2_hi = 0;
  bool flips = true;
  std::string flip_note;
  double ratio_lo = 10, ratio_hi = 0;
  for (double x : {0.1, 1.0, 10.0, 100.0}) {
    CompareRequest req;
    req.x = x;
    req.mu = 1;
    req.rho_density = 0.5;
    req.n0 = 8;
    const double tm = t_min(req.rho_density, x);
    for (int i = 1; i <= 10; ++i) req.t_grid.push_back(i * tm);
    req.eps_grid = {1e-1, 1e-2, 1e-3};
    const auto res = compare(req);
    for (const auto& f : res.t_fits) {
      if (f.method == "ip") ip_max = std::max(ip_max, f.t_exponent_fixed_size);
      if (f.method == "pf2") {
        pf2_lo = std::min(pf2_lo, f.t_exponent_fixed_size);
        pf2_hi = std::max(pf2_hi, f.t_exponent_fixed_size);
      }
    }
    if (x == 0.1) {
      // winner[lambda0][(t, eps)]
      std::map<int, std::map<std::pair<double, double>, std::string>> win;
      for (const auto& r : res.rows) win[r.lambda0][{r.t, r.eps}] = r.winner;
      // The winner may only change from pf2 to ip as t grows and eps shrinks,
      // and the change must be visible at the planner's default lambda0.
      const int default_l0 = make_plan(PlanRequest{.x = x, .mu = 1, .rho_density = 0.5,
                                                   .t = req.t_grid.front(), .eps = 1e-1})
                                 .lambda0;
      int flipped = 0;
      for (auto& [l0, w] : win) {
        const double t_lo = req.t_grid.front(), t_hi = req.t_grid.back();
        const bool starts_pf2 = w[{t_lo, 1e-1}] == "pf2";
        const bool ends_ip = w[{t_hi, 1e-3}] == "ip";
        bool monotone = true;
        for (const auto& [key, who] : w) {
          if (who != "ip") continue;
          for (const auto& [k2, w2] : w) {
            if (k2.first >= key.first && k2.second <= key.second && w2 != "ip") monotone = false;
          }
        }
        flipped += starts_pf2 && ends_ip;
        if (!ends_ip || !monotone || (l0 == default_l0 && !starts_pf2)) {
          flips = false;
          flip_note += " lambda0=" + std::to_string(l0);
        }
      }
      flip_note = std::to_string(flipped) + "/" + std::to_string(win.size()) + " lambda0 values flip" +
                  (flips ? "" : ", broken at" + flip_note);
      // Segment counts with and without sorted time registers.
      for (double t : req.t_grid) {
        PlanRequest pr;
        pr.x = x;
        pr.mu = 1;
        pr.rho_density = 0.5;
        pr.t = t;
        pr.eps = 1e-2;
        pr.method = Method::ip;
        const auto plan = make_plan(pr);
        const auto s = ip_total(plan, IpVariant::mult, true).segments_or_steps;
        const auto u = ip_total(plan, IpVariant::mult, false).segments_or_steps;
        const double ratio = static_cast<double>(u) / static_cast<double>(s);
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
      }
    }
  }
  const double secs = sw.seconds();
  const double target = std::numbers::ln2 / 0.5;
  const bool a = ip_max <= 1.3 && pf2_lo >= 1.3 && pf2_hi <= 1.7;
  const bool c = std::abs(ratio_lo / target - 1) <= 0.05 && std::abs(ratio_hi / target - 1) <= 0.05;
  v.pass = a && flips && c && secs < 300;
  v.detail = "(a) fixed-size t exponents ip<=" + sci(ip_max) + " pf2 in [" + sci(pf2_lo) + ", " +
             sci(pf2_hi) + "]; (b) x=0.1 " + flip_note +
             "; (c) unsorted/sorted segments in [" + sci(ratio_lo) + ", " + sci(ratio_hi) + "] vs " +
             sci(target) + "; " + sci(secs) + " s";
  return v;
}

// 9. randomized planner self-consistency
Verdict planner_consistency() {
  Verdict v;
  std::mt19937_64 rng(20261016);
  auto log_uniform = [&](double lo, double hi) {
    return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
  };
  int feasible = 0, attempts = 0, violations = 0, unstable = 0;
  while (feasible < 1000 && attempts < 20000) {
    ++attempts;
    PlanRequest req;
    req.x = log_uniform(0.05, 50);
    req.mu = log_uniform(0.1, 10);
    req.rho_density = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    req.t = t_min(req.rho_density, req.x) * std::uniform_real_distribution<double>(1, 10)(rng);
    req.eps = log_uniform(1e-4, 0.2);
    req.n0 = std::uniform_int_distribution<int>(2, 32)(rng);
    req.method = rng() % 2 ? Method::pf2 : Method::ip;
    req.options.sorted = rng() % 2;
    Plan plan;
    try {
      plan = make_plan(req);
    } catch (const InfeasiblePlan&) {
      continue;
    }
    ++feasible;
    violations += static_cast<int>(!plan_violations(plan).empty());
    if (plan_to_json(plan) != plan_to_json(make_plan(req))) ++unstable;
  }
  v.pass = feasible == 1000 && violations == 0 && unstable == 0;
  v.detail = std::to_string(feasible) + " feasible plans from " + std::to_string(attempts) + " draws, " +
             std::to_string(violations) + " with violations, " + std::to_string(unstable) +
             " with unstable serialization";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"interaction-picture identity", interaction_identity},
      {"product formula error bound", trotter_bound},
      {"series truncation bound", dyson_truncation},
      {"discretization bounds", discretization_bounds},
      {"field leakage bound", leakage},
      {"gauss law conservation", gauss_law},
      {"subroutine cost tables", cost_goldens},
      {"method comparison trends", comparison_trends},
      {"planner self-consistency", planner_consistency},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s criterion %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
