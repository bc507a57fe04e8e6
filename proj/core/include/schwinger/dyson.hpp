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
#include <cstdint>
#include <string>

#include "schwinger/model.hpp"
#include "schwinger/oracle.hpp"

namespace schwinger {

/// Principal branch of the Lambert W function (Halley iteration). Throws
/// std::domain_error for z < -1/e.
double lambert_w0(double z);

enum class TruncationBranch { lambert, explicit_form, bumped };

std::string to_string(TruncationBranch b);

struct TruncationChoice {
  int order = 0;
  TruncationBranch branch = TruncationBranch::lambert;
  int lambert_order = 0;
  int explicit_order = 0;
  /// The explicit form is only trusted when e ||V|| t > ln(1/eps1).
  bool explicit_certified = false;
};

/// 2 (t v)^(K+1) / (K+1)!
double truncation_tail(double v_norm, double t, int order);

/// Smallest certified truncation order K >= 1 with 2 (t v)^(K+1)/(K+1)! <= eps1.
TruncationChoice truncation_order(double v_norm, double t, double eps1);

struct DiscretizationChoice {
  std::int64_t points = 1;
  /// Index of the largest of the three lower bounds (0: step size, 1: order,
  /// 2: error term).
  int branch = 0;
  std::array<double, 3> lower_bounds{};
};

/// Time-grid size M, rounded up to a power of two.
DiscretizationChoice discretization_count(double v_norm, double h0_norm, double t, double eps2,
                                          int order, bool collisions);

/// Solves sum_{k<=K} t0^k / k! = beta on (0, 2] by bisection.
double t0_for_beta(int order, double beta = 2.0);

/// max(1, ceil(alpha t / t0))
std::int64_t segment_count(double alpha_v, double t, double t0);

struct DysonConfig {
  int order = 1;
  std::int64_t points = 1;
  bool collisions = false;
  double t_seg = 0;
  double t0 = 0;
  double alpha_v = 0;
};

struct DysonLimits {
  std::size_t max_dim = 4096;
  /// Cap on order * points, the number of dense products in the recurrence.
  std::int64_t max_products = 100000;
};

/// Truncated, discretized Dyson series for exp(-i int V(s) ds) in the frame of
/// a diagonal h0 over [0, t]. Without collisions the sum runs over strictly
/// increasing grid indices; with collisions it runs over non-decreasing
/// indices, a run of n equal indices weighted by 1/n!.
DenseOperator dyson_series(const DiagonalOperator& h0, const SparseOperator& v, double t,
                           int order, std::int64_t points, bool collisions,
                           const DysonLimits& lim = {});

/// dyson_series for the model, over cfg.t_seg.
DenseOperator dyson_series_matrix(const ModelParams& p, const DysonConfig& cfg,
                                  const DysonLimits& lim = {});

struct DysonError {
  double measured = 0;
  double bound = 0;
  bool within_bound = false;
};

/// ||U_I(t_seg) - D_{K,M}(t_seg)|| compared against eps1 + eps2.
DysonError measured_dyson_error(const ModelParams& p, const DysonConfig& cfg, double eps1,
                                double eps2, const DysonLimits& lim = {});

struct SegmentParams {
  TruncationChoice truncation;
  DiscretizationChoice discretization;
};

/// K and M for one segment of length t with the given per-segment budgets.
SegmentParams certify_segment(double v_norm, double h0_norm, double t, double eps1,
                              double eps2, bool collisions);

struct SegmentedOptions {
  double t0 = 0.6931471805599453;
  /// Segment rescaling; zero selects 2 N x.
  double alpha_v = 0;
  bool collisions = false;
  DysonLimits limits{};
};

struct SegmentedEvolution {
  DenseOperator w;
  std::int64_t segments = 1;
  double t_seg = 0;
  double t_last = 0;
  SegmentParams full;
  SegmentParams last;
};

/// exp(-i H0 t') D(t') [exp(-i H0 t_seg) D(t_seg)]^(r-1) with per-segment
/// budgets eps1 = eps2 = eps_prime / (2 r).
SegmentedEvolution segmented_evolution(const ModelParams& p, double t, double eps_prime,
                                       const SegmentedOptions& opt = {});

}  // namespace schwinger
