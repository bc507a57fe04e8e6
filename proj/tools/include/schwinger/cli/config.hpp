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

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schwinger/costs.hpp"

namespace schwinger::cli {

/// Thrown for unreadable or invalid sweep configs (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Choice { first, second, both };

/// Flat sweep description. Grids accept a scalar or a list in the file.
struct SweepConfig {
  std::vector<double> x{0.1};
  std::vector<double> mu{1.0};
  std::vector<double> rho_density{0.5};
  /// Evolution times as multiples of t_min = rho / x.
  std::vector<double> t_multiples{1.0};
  /// Absolute times; replaces t_multiples when present.
  std::vector<double> t_absolute;
  std::vector<double> eps{0.01};
  int n0 = 8;
  /// Empty: sweep lambda0 over 0.01 mu <= lambda0^2 <= 100 mu.
  std::vector<int> lambda0;

  Choice method = Choice::both;   // first = pf2, second = ip
  Choice variant = Choice::both;  // first = pga, second = mult
  Choice sorted = Choice::both;   // first = true, second = false
  PlannerOptions planner{};
  SynthesisModel synthesis{};

  int workers = 1;
  std::size_t max_dim = 4096;
  std::string out;
  std::string fits_out;

  // verify
  std::vector<int> verify_n_sites{2, 3};
  std::vector<int> verify_lambda{2};
  int verify_lambda_big = 6;
  std::vector<double> verify_t{0.5, 1.0};
  /// Nonzero forces the Dyson truncation order instead of the certified one.
  int verify_order = 0;

  [[nodiscard]] std::vector<bool> sorted_values() const;
  [[nodiscard]] std::vector<IpVariant> variant_values() const;
  [[nodiscard]] bool want_pf2() const { return method != Choice::second; }
  [[nodiscard]] bool want_ip() const { return method != Choice::first; }

  /// Throws ConfigError on empty grids, non-positive values or eps >= 1.
  void validate() const;
};

SweepConfig parse_config(const std::string& text);
SweepConfig load_config(const std::string& path);

Choice parse_method(const std::string& s);
Choice parse_variant(const std::string& s);
Choice parse_sorted(const std::string& s);

}  // namespace schwinger::cli
