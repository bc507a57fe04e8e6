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

#include "schwinger/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace schwinger::cli {

namespace {

const std::set<std::string> kKeys = {
    "schema", "x", "mu", "rho_density", "t_multiples", "t", "eps", "n0", "lambda0",
    "method", "variant", "sorted", "alpha", "collisions", "cutoff_fraction",
    "pf2_trotter_fraction", "ip_weights", "synthesis_a", "synthesis_b", "workers", "max_dim",
    "out", "fits_out", "verify_n_sites", "verify_lambda", "verify_lambda_big", "verify_t",
    "verify_order"};

template <class T>
T scalar(const YAML::Node& n, const std::string& key) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

template <class T>
std::vector<T> grid(const YAML::Node& n, const std::string& key) {
  std::vector<T> out;
  if (n.IsSequence()) {
    for (const auto& item : n) out.push_back(scalar<T>(item, key));
  } else if (n.IsScalar()) {
    out.push_back(scalar<T>(n, key));
  } else if (!n.IsNull()) {
    throw ConfigError("config key '" + key + "' must be a scalar or a list");
  }
  return out;
}

Choice parse_choice(const std::string& s, const char* a, const char* b, const char* what) {
  if (s == a) return Choice::first;
  if (s == b) return Choice::second;
  if (s == "both") return Choice::both;
  throw ConfigError(std::string("unknown ") + what + " '" + s + "'");
}

void require_non_negative(const std::vector<double>& v, const char* key) {
  for (double d : v) {
    if (!(d >= 0) || !std::isfinite(d)) throw ConfigError(std::string(key) + " values must be non-negative");
  }
}

void require_positive(const std::vector<double>& v, const char* key) {
  for (double d : v) {
    if (!(d > 0) || !std::isfinite(d)) throw ConfigError(std::string(key) + " values must be positive");
  }
}

}  // namespace

Choice parse_method(const std::string& s) { return parse_choice(s, "pf2", "ip", "method"); }
Choice parse_variant(const std::string& s) { return parse_choice(s, "pga", "mult", "variant"); }
Choice parse_sorted(const std::string& s) { return parse_choice(s, "true", "false", "sorted setting"); }

std::vector<bool> SweepConfig::sorted_values() const {
  if (sorted == Choice::first) return {true};
  if (sorted == Choice::second) return {false};
  return {true, false};
}

std::vector<IpVariant> SweepConfig::variant_values() const {
  if (variant == Choice::first) return {IpVariant::pga};
  if (variant == Choice::second) return {IpVariant::mult};
  return {IpVariant::pga, IpVariant::mult};
}

void SweepConfig::validate() const {
  auto non_empty = [](bool empty, const char* key) {
    if (empty) throw ConfigError(std::string("grid '") + key + "' is empty");
  };
  non_empty(x.empty(), "x");
  non_empty(mu.empty(), "mu");
  non_empty(rho_density.empty(), "rho_density");
  non_empty(t_multiples.empty() && t_absolute.empty(), "t_multiples");
  non_empty(eps.empty(), "eps");
  // x = 0 is kept for free-field verification; planning rejects it per point.
  require_non_negative(x, "x");
  require_positive(mu, "mu");
  require_positive(rho_density, "rho_density");
  require_positive(t_multiples, "t_multiples");
  require_positive(t_absolute, "t");
  require_positive(eps, "eps");
  for (double r : rho_density) {
    if (r > 1) throw ConfigError("rho_density must not exceed 1");
  }
  for (double e : eps) {
    if (e >= 1) throw ConfigError("eps values must be below 1");
  }
  if (n0 < 2) throw ConfigError("n0 must be at least 2");
  for (int l : lambda0) {
    if (l < 1) throw ConfigError("lambda0 values must be at least 1");
  }
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (max_dim < 1) throw ConfigError("max_dim must be positive");
  if (!(synthesis.coeff_a > 0) || synthesis.coeff_b < 0) throw ConfigError("synthesis_a must be > 0 and synthesis_b >= 0");
  if (!(planner.cutoff_fraction > 0 && planner.cutoff_fraction < 1)) throw ConfigError("cutoff_fraction must lie in (0,1)");
  if (!(planner.pf2_trotter_fraction > 0 && planner.pf2_trotter_fraction < 1)) {
    throw ConfigError("pf2_trotter_fraction must lie in (0,1)");
  }
  if (verify_n_sites.empty() || verify_lambda.empty() || verify_t.empty()) {
    throw ConfigError("verify grids must not be empty");
  }
  for (int n : verify_n_sites) {
    if (n < 2) throw ConfigError("verify_n_sites values must be at least 2");
  }
  for (int l : verify_lambda) {
    if (l < 1 || l >= verify_lambda_big) throw ConfigError("verify_lambda values must lie in [1, verify_lambda_big)");
  }
  require_positive(verify_t, "verify_t");
  if (verify_order < 0) throw ConfigError("verify_order must be non-negative");
}

SweepConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  SweepConfig c;
  if (root.IsNull()) {
    c.validate();
    return c;
  }
  if (!root.IsMap()) throw ConfigError("config must be a flat key: value mapping");

  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!kKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    const YAML::Node& v = kv.second;
    if (key == "schema") {
      if (scalar<std::string>(v, key) != "schwinger-sweep/1") throw ConfigError("unsupported config schema");
    } else if (key == "x") {
      c.x = grid<double>(v, key);
    } else if (key == "mu") {
      c.mu = grid<double>(v, key);
    } else if (key == "rho_density") {
      c.rho_density = grid<double>(v, key);
    } else if (key == "t_multiples") {
      c.t_multiples = grid<double>(v, key);
    } else if (key == "t") {
      c.t_absolute = grid<double>(v, key);
      if (c.t_absolute.empty()) throw ConfigError("grid 't' is empty");
    } else if (key == "eps") {
      c.eps = grid<double>(v, key);
    } else if (key == "n0") {
      c.n0 = scalar<int>(v, key);
    } else if (key == "lambda0") {
      c.lambda0 = grid<int>(v, key);
    } else if (key == "method") {
      c.method = parse_method(scalar<std::string>(v, key));
    } else if (key == "variant") {
      c.variant = parse_variant(scalar<std::string>(v, key));
    } else if (key == "sorted") {
      c.sorted = parse_sorted(scalar<std::string>(v, key));
    } else if (key == "alpha") {
      const auto a = scalar<std::string>(v, key);
      if (a == "sites") {
        c.planner.alpha = AlphaConvention::sites;
      } else if (a == "exact") {
        c.planner.alpha = AlphaConvention::exact;
      } else {
        throw ConfigError("alpha must be 'sites' or 'exact'");
      }
    } else if (key == "collisions") {
      c.planner.collisions = scalar<bool>(v, key);
    } else if (key == "cutoff_fraction") {
      c.planner.cutoff_fraction = scalar<double>(v, key);
    } else if (key == "pf2_trotter_fraction") {
      c.planner.pf2_trotter_fraction = scalar<double>(v, key);
    } else if (key == "ip_weights") {
      const auto w = grid<double>(v, key);
      if (w.size() != 3) throw ConfigError("ip_weights needs three entries");
      require_positive(w, "ip_weights");
      c.planner.ip_weight1 = w[0];
      c.planner.ip_weight2 = w[1];
      c.planner.ip_weight3 = w[2];
    } else if (key == "synthesis_a") {
      c.synthesis.coeff_a = scalar<double>(v, key);
    } else if (key == "synthesis_b") {
      c.synthesis.coeff_b = scalar<double>(v, key);
    } else if (key == "workers") {
      c.workers = scalar<int>(v, key);
    } else if (key == "max_dim") {
      const auto d = scalar<long long>(v, key);
      if (d < 1) throw ConfigError("max_dim must be positive");
      c.max_dim = static_cast<std::size_t>(d);
    } else if (key == "out") {
      c.out = scalar<std::string>(v, key);
    } else if (key == "fits_out") {
      c.fits_out = scalar<std::string>(v, key);
    } else if (key == "verify_n_sites") {
      c.verify_n_sites = grid<int>(v, key);
    } else if (key == "verify_lambda") {
      c.verify_lambda = grid<int>(v, key);
    } else if (key == "verify_lambda_big") {
      c.verify_lambda_big = scalar<int>(v, key);
    } else if (key == "verify_t") {
      c.verify_t = grid<double>(v, key);
    } else if (key == "verify_order") {
      c.verify_order = scalar<int>(v, key);
    }
  }
  c.validate();
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace schwinger::cli
