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

#include "schwinger/cli/commands.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "schwinger/cli/worker_pool.hpp"
#include "schwinger/dyson.hpp"
#include "schwinger/oracle.hpp"
#include "schwinger/trotter.hpp"

namespace schwinger::cli {

namespace {

// Absolute floor for bound comparisons where the bound itself is zero.
constexpr double kNumericalFloor = 1e-12;
constexpr double kUnitarityTol = 1e-10;
constexpr double kGaussTol = 1e-8;
constexpr double kLeakageForGauss = 1e-10;

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

struct SweepPoint {
  double x = 0;
  double mu = 0;
  double rho = 0;
  double t = 0;
  double t_multiple = 0;
  double eps = 0;
  int lambda0 = 0;
};

// Grid order: x, mu, rho, t, eps, lambda0 (innermost).
std::vector<SweepPoint> sweep_points(const SweepConfig& cfg) {
  std::vector<SweepPoint> out;
  for (double x : cfg.x) {
    for (double mu : cfg.mu) {
      const auto lambdas = cfg.lambda0.empty() ? lambda0_sweep(mu) : cfg.lambda0;
      for (double rho : cfg.rho_density) {
        std::vector<std::pair<double, double>> times;
        if (!cfg.t_absolute.empty()) {
          for (double t : cfg.t_absolute) times.emplace_back(t, 0.0);
        } else {
          for (double m : cfg.t_multiples) times.emplace_back(x > 0 ? m * rho / x : NAN, m);
        }
        for (auto [t, m] : times) {
          for (double eps : cfg.eps) {
            for (int l0 : lambdas) out.push_back({x, mu, rho, t, m, eps, l0});
          }
        }
      }
    }
  }
  return out;
}

PlanRequest plan_request(const SweepConfig& cfg, const SweepPoint& p, Method m) {
  PlanRequest r;
  r.x = p.x;
  r.mu = p.mu;
  r.rho_density = p.rho;
  r.t = p.t;
  r.eps = p.eps;
  r.n0 = cfg.n0;
  r.lambda0 = p.lambda0;
  r.method = m;
  r.options = cfg.planner;
  return r;
}

std::vector<Method> methods(const SweepConfig& cfg) {
  std::vector<Method> out;
  if (cfg.want_pf2()) out.push_back(Method::pf2);
  if (cfg.want_ip()) out.push_back(Method::ip);
  return out;
}

// ---- CSV cost rows ----------------------------------------------------------

struct CostRow {
  SweepPoint point;
  int lambda_t = 0;
  int n_sites = 0;
  CostReport report;
  std::string winner;
};

void write_cost_header(std::ostream& os) {
  os << "#schema=" << kCostsSchema << '\n'
     << "x,mu,t,eps,lambda0,lambda_t,N,method,variant,sorted,K,M,r,total_t,rotations,qubits,winner\n";
}

void write_cost_row(std::ostream& os, const CostRow& row) {
  const auto& r = row.report;
  const bool ip = r.method != "pf2";
  os << num(row.point.x) << ',' << num(row.point.mu) << ',' << num(row.point.t) << ','
     << num(row.point.eps) << ',' << row.point.lambda0 << ',' << row.lambda_t << ','
     << row.n_sites << ',' << (ip ? "ip" : "pf2") << ',' << (ip ? r.method.substr(3) : "") << ','
     << (ip ? (r.sorted ? "true" : "false") : "") << ',';
  if (ip) {
    os << r.order << ',' << r.points << ',';
  } else {
    os << ",,";
  }
  os << r.segments_or_steps << ',' << r.total_t << ',' << r.total_rotations << ','
     << r.logical_qubits << ',' << row.winner << '\n';
}

struct PointCosts {
  std::vector<CostRow> rows;
  std::vector<std::string> problems;
};

std::string describe(const SweepPoint& p) {
  return "x=" + num(p.x) + " mu=" + num(p.mu) + " rho=" + num(p.rho) + " t=" + num(p.t) +
         " eps=" + num(p.eps) + " lambda0=" + std::to_string(p.lambda0);
}

PointCosts estimate_point(const SweepConfig& cfg, const SweepPoint& p) {
  PointCosts out;
  for (Method m : methods(cfg)) {
    try {
      const Plan plan = make_plan(plan_request(cfg, p, m));
      auto add = [&](CostReport rep) {
        out.rows.push_back({p, plan.cutoff.lambda, plan.size.n_sites, std::move(rep), ""});
      };
      if (m == Method::pf2) {
        add(pf2_total(plan, cfg.synthesis));
      } else {
        for (bool sorted : cfg.sorted_values()) {
          for (IpVariant v : cfg.variant_values()) add(ip_total(plan, v, sorted, cfg.synthesis));
        }
      }
    } catch (const std::exception& e) {
      out.problems.push_back(describe(p) + " method=" + to_string(m) + ": " + e.what());
    }
  }
  if (!out.rows.empty()) {
    const auto best = std::min_element(out.rows.begin(), out.rows.end(), [](const auto& a, const auto& b) {
      return a.report.total_t < b.report.total_t;
    });
    const std::string winner = best->report.method == "pf2" ? "pf2" : "ip";
    for (auto& r : out.rows) r.winner = winner;
  }
  return out;
}

int emit_costs(const std::vector<PointCosts>& results, std::ostream& out, std::ostream& err) {
  write_cost_header(out);
  std::size_t rows = 0;
  for (const auto& r : results) {
    for (const auto& row : r.rows) write_cost_row(out, row);
    for (const auto& msg : r.problems) err << "infeasible: " << msg << '\n';
    rows += r.rows.size();
  }
  return rows > 0 ? kExitOk : kExitFail;
}

// ---- verify ----------------------------------------------------------------

struct VerifyPoint {
  double x, mu, t, eps;
  int n_sites, lambda;
};

struct Check {
  VerifyPoint point;
  std::string name;
  double measured = 0;
  double bound = 0;
  std::string status;  // PASS, FAIL or SKIP
  std::string note;
};

Check judge(const VerifyPoint& p, std::string name, double measured, double bound, std::string note = "") {
  const bool ok = measured <= bound || measured <= kNumericalFloor;
  return {p, std::move(name), measured, bound, ok ? "PASS" : "FAIL", std::move(note)};
}

Check skip(const VerifyPoint& p, std::string name, std::string why) {
  return {p, std::move(name), 0, 0, "SKIP", std::move(why)};
}

std::vector<Check> verify_point(const SweepConfig& cfg, const VerifyPoint& vp) {
  std::vector<Check> out;
  const ModelParams p{vp.x, vp.mu, vp.n_sites, vp.lambda, 0.0, Boundary::open};
  const EvolutionLimits lim{cfg.max_dim, 1e-12};
  if (p.hilbert_dim() > cfg.max_dim) {
    for (const char* c : {"unitarity", "trotter", "dyson", "leakage", "gauss"}) {
      out.push_back(skip(vp, c, "dimension " + std::to_string(p.hilbert_dim()) + " exceeds max_dim"));
    }
    return out;
  }
  const auto terms = split_interaction(p);
  const auto h = build_hamiltonian(p);

  // Product formula with the step count the planner would assign for this eps.
  const auto trotter = trotter_steps(p, vp.t, vp.eps);
  const DenseOperator exact = exact_evolution(h, vp.t, lim);
  const DenseOperator pf2 = pf2_operator(terms, vp.t, trotter.steps);
  const double unit = std::max(unitarity_defect(exact), unitarity_defect(pf2));
  out.push_back(judge(vp, "unitarity", unit, kUnitarityTol));
  out.push_back(judge(vp, "trotter", spectral_norm(exact - pf2),
                      trotter.rho_bound * vp.t * vp.t * vp.t /
                          (static_cast<double>(trotter.steps) * static_cast<double>(trotter.steps)),
                      "r=" + std::to_string(trotter.steps)));

  // One interaction-picture segment of length min(t, ln2 / (2 N x)).
  const double alpha = lcu_one_norm(p).per_site;
  const double t_seg = alpha > 0 ? std::min(vp.t, std::numbers::ln2 / alpha) : vp.t;
  const double half = vp.eps / 2;
  const auto nb = norm_bounds(p);
  const auto seg = certify_segment(nb.v_norm, nb.h0_norm, t_seg, half, half, cfg.planner.collisions);
  DysonConfig dc{cfg.verify_order > 0 ? cfg.verify_order : seg.truncation.order,
                 seg.discretization.points, cfg.planner.collisions, t_seg, std::numbers::ln2, alpha};
  DysonLimits dl{cfg.max_dim, std::int64_t{1} << 24};
  const std::string kd = "K=" + std::to_string(dc.order) + " M=" + std::to_string(dc.points);
  try {
    const auto e = measured_dyson_error(p, dc, half, half, dl);
    out.push_back(judge(vp, "dyson", e.measured, e.bound, kd));
  } catch (const CapacityError& e) {
    out.push_back(skip(vp, "dyson", std::string(e.what())));
  }

  // Leakage and Gauss law on an enlarged field cutoff.
  const ModelParams big{vp.x, vp.mu, vp.n_sites, cfg.verify_lambda_big, 0.0, Boundary::open};
  if (big.hilbert_dim() > cfg.max_dim) {
    out.push_back(skip(vp, "leakage", "enlarged dimension exceeds max_dim"));
    out.push_back(skip(vp, "gauss", "enlarged dimension exceeds max_dim"));
    return out;
  }
  const SpectralPropagator prop(build_hamiltonian(big), lim);
  const DenseOperator u_big = prop.evolution(vp.t);
  if (vp.x > 0) {
    // Every Delta from 3 up to the planner's choice whose window fits in the enlarged cutoff.
    const auto c = cutoff_at_time(vp.lambda, vp.x, vp.t, cfg.planner.cutoff_fraction * vp.eps);
    const int hops = (c.lambda - vp.lambda) / (c.delta - 1);
    bool any = false;
    for (int delta = 3; delta <= c.delta; ++delta) {
      const int lambda_t = vp.lambda + hops * (delta - 1);
      if (lambda_t >= big.lambda_cutoff) break;
      any = true;
      out.push_back(judge(vp, "leakage", leakage_norm(u_big, big, vp.lambda, lambda_t),
                          leakage_bound(vp.x, vp.t, delta),
                          "Lambda(t)=" + std::to_string(lambda_t) + " Delta=" + std::to_string(delta)));
    }
    if (!any) out.push_back(skip(vp, "leakage", "Lambda(t) at Delta=3 not below verify_lambda_big"));
  } else {
    out.push_back(judge(vp, "leakage", leakage_norm(u_big, big, vp.lambda, vp.lambda), 0.0, "free field"));
  }

  if (vp.n_sites < 3) {
    out.push_back(skip(vp, "gauss", "no interior site"));
    return out;
  }
  const double edge = leakage_norm(u_big, big, vp.lambda, big.lambda_cutoff - 1);
  if (edge >= kLeakageForGauss) {
    out.push_back(skip(vp, "gauss", "leakage to the enlarged cutoff is " + num(edge)));
    return out;
  }
  const auto psi0 = build_quench_state(big, 0);
  double drift = 0;
  for (int k = 1; k <= 8; ++k) {
    const auto psi = prop.apply(psi0, vp.t * k / 8);
    for (int r = 1; r <= vp.n_sites - 2; ++r) {
      drift = std::max(drift, std::abs(build_gauss_operator(big, r).expectation(psi.amplitudes)));
    }
  }
  out.push_back(judge(vp, "gauss", drift, kGaussTol));
  return out;
}

void write_text(const SweepConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
  f << text;
}

}  // namespace

int cmd_plan(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
  using nlohmann::ordered_json;
  struct Job {
    SweepPoint point;
    Method method;
  };
  std::vector<Job> jobs;
  for (const auto& p : sweep_points(cfg)) {
    for (Method m : methods(cfg)) jobs.push_back({p, m});
  }
  struct Outcome {
    std::string plan;
    std::string reason;
  };
  const auto results = parallel_map<Outcome>(jobs.size(), cfg.workers, [&](std::size_t i) {
    try {
      return Outcome{plan_to_json(make_plan(plan_request(cfg, jobs[i].point, jobs[i].method)), -1), ""};
    } catch (const std::exception& e) {
      return Outcome{"", e.what()};
    }
  });

  ordered_json doc;
  doc["schema"] = kPlanListSchema;
  doc["plans"] = ordered_json::array();
  doc["infeasible"] = ordered_json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!results[i].plan.empty()) {
      doc["plans"].push_back(ordered_json::parse(results[i].plan));
      continue;
    }
    const auto& p = jobs[i].point;
    doc["infeasible"].push_back({{"x", p.x}, {"mu", p.mu}, {"rho_density", p.rho},
                                 {"t", std::isnan(p.t) ? ordered_json(nullptr) : ordered_json(p.t)},
                                 {"eps", p.eps}, {"lambda0", p.lambda0},
                                 {"method", to_string(jobs[i].method)},
                                 {"reason", results[i].reason}});
    err << "infeasible: " << describe(p) << " method=" << to_string(jobs[i].method) << ": "
        << results[i].reason << '\n';
  }
  write_text(cfg, doc.dump(2) + "\n", out);
  return doc["plans"].empty() ? kExitFail : kExitOk;
}

int cmd_estimate(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto points = sweep_points(cfg);
  const auto results = parallel_map<PointCosts>(points.size(), cfg.workers,
                                                [&](std::size_t i) { return estimate_point(cfg, points[i]); });
  std::ostringstream os;
  const int code = emit_costs(results, os, err);
  write_text(cfg, os.str(), out);
  return code;
}

int cmd_compare(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto points = sweep_points(cfg);
  auto request_for = [&](const SweepPoint& p) {
    CompareRequest req;
    req.x = p.x;
    req.mu = p.mu;
    req.rho_density = p.rho;
    req.n0 = cfg.n0;
    req.variants = cfg.variant_values();
    req.sorted = cfg.sorted_values();
    req.options = cfg.planner;
    req.synthesis = cfg.synthesis;
    return req;
  };
  const auto rows = parallel_map<CompareRow>(points.size(), cfg.workers, [&](std::size_t i) {
    const auto& p = points[i];
    return compare_point(request_for(p), GridPoint{p.t, p.eps, p.lambda0});
  });

  std::vector<PointCosts> costs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& row = rows[i];
    if (row.pf2) costs[i].rows.push_back({points[i], row.lambda_t, row.n_sites, *row.pf2, row.winner});
    if (row.ip) costs[i].rows.push_back({points[i], row.lambda_t, row.n_sites, *row.ip, row.winner});
    if (!row.pf2_error.empty()) costs[i].problems.push_back(describe(points[i]) + " method=pf2: " + row.pf2_error);
    if (!row.ip_error.empty()) costs[i].problems.push_back(describe(points[i]) + " method=ip: " + row.ip_error);
  }
  std::ostringstream os;
  const int code = emit_costs(costs, os, err);
  write_text(cfg, os.str(), out);

  if (!cfg.fits_out.empty()) {
    // Fits are taken per (x, mu, rho) slice of the grid.
    std::map<std::tuple<double, double, double>, CompareResult> slices;
    for (std::size_t i = 0; i < points.size(); ++i) {
      slices[{points[i].x, points[i].mu, points[i].rho}].rows.push_back(rows[i]);
    }
    std::ofstream f(cfg.fits_out);
    if (!f) throw ConfigError("cannot write '" + cfg.fits_out + "'");
    f << "#schema=" << kFitsSchema << '\n'
      << "x,mu,rho_density,kind,method,eps,t,lambda0,exponent,exponent_fixed_size,points\n";
    for (auto& [key, res] : slices) {
      auto [x, mu, rho] = key;
      if (!(x > 0)) continue;
      CompareRequest req = request_for(SweepPoint{x, mu, rho, 0, 0, 0, 0});
      fill_scaling_fits(req, res);
      for (const auto& fit : res.t_fits) {
        f << num(x) << ',' << num(mu) << ',' << num(rho) << ",t," << fit.method << ',' << num(fit.eps)
          << ",," << fit.lambda0 << ',' << num(fit.t_exponent) << ','
          << num(fit.t_exponent_fixed_size) << ',' << fit.points << '\n';
      }
      for (const auto& fit : res.eps_fits) {
        f << num(x) << ',' << num(mu) << ',' << num(rho) << ",inv_eps," << fit.method << ",,"
          << num(fit.t) << ',' << fit.lambda0 << ',' << num(fit.inv_eps_exponent) << ",,"
          << fit.points << '\n';
      }
    }
  }
  return code;
}

int cmd_verify(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<VerifyPoint> points;
  for (double x : cfg.x) {
    for (double mu : cfg.mu) {
      for (int n : cfg.verify_n_sites) {
        for (int lam : cfg.verify_lambda) {
          for (double t : cfg.verify_t) {
            for (double eps : cfg.eps) points.push_back({x, mu, t, eps, n, lam});
          }
        }
      }
    }
  }
  const auto results = parallel_map<std::vector<Check>>(points.size(), cfg.workers, [&](std::size_t i) {
    try {
      return verify_point(cfg, points[i]);
    } catch (const CapacityError& e) {
      return std::vector<Check>{skip(points[i], "all", e.what())};
    }
  });

  std::ostringstream os;
  os << "#schema=" << kVerifySchema << '\n'
     << "x,mu,N,lambda,t,eps,check,measured,bound,status,note\n";
  std::size_t failed = 0;
  std::size_t passed = 0;
  for (const auto& checks : results) {
    for (const auto& c : checks) {
      const auto& p = c.point;
      os << num(p.x) << ',' << num(p.mu) << ',' << p.n_sites << ',' << p.lambda << ',' << num(p.t)
         << ',' << num(p.eps) << ',' << c.name << ',' << num(c.measured) << ',' << num(c.bound)
         << ',' << c.status << ',' << c.note << '\n';
      failed += c.status == "FAIL";
      passed += c.status == "PASS";
    }
  }
  write_text(cfg, os.str(), out);
  err << "verify: " << passed << " passed, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitFail;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resource estimates and bound checks for lattice Schwinger-model simulation"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::string> out_path, method, variant, sorted;
  std::optional<long long> max_dim;
  std::optional<int> workers;

  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"plan", "derive simulation parameters for every grid point"},
           {"verify", "measure desk-scale errors against their bounds"},
           {"estimate", "T-count and qubit estimates per method"},
           {"compare", "best product-formula versus best interaction-picture cost"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "sweep config file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--max-dim", max_dim, "largest dense dimension for verify");
    sub->add_option("--workers", workers, "worker threads");
    sub->add_option("--method", method, "pf2, ip or both");
    sub->add_option("--variant", variant, "pga, mult or both");
    sub->add_option("--sorted", sorted, "true, false or both");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  SweepConfig cfg;
  try {
    cfg = config_path.empty() ? parse_config("") : load_config(config_path);
    if (out_path) cfg.out = *out_path;
    if (max_dim) {
      if (*max_dim < 1) throw ConfigError("--max-dim must be positive");
      cfg.max_dim = static_cast<std::size_t>(*max_dim);
    }
    if (workers) cfg.workers = *workers;
    if (method) cfg.method = parse_method(*method);
    if (variant) cfg.variant = parse_variant(*variant);
    if (sorted) cfg.sorted = parse_sorted(*sorted);
    cfg.validate();

    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "plan") return cmd_plan(cfg, out, err);
    if (name == "verify") return cmd_verify(cfg, out, err);
    if (name == "estimate") return cmd_estimate(cfg, out, err);
    return cmd_compare(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace schwinger::cli
