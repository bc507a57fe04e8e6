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

#include "schwinger/dyson.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace schwinger {

std::string to_string(TruncationBranch b) {
  switch (b) {
    case TruncationBranch::lambert: return "lambert";
    case TruncationBranch::explicit_form: return "explicit";
    case TruncationBranch::bumped: return "bumped";
  }
  return "unknown";
}

double lambert_w0(double z) {
  constexpr double kBranch = -1.0 / std::numbers::e;
  if (std::isnan(z) || z < kBranch) throw std::domain_error("lambert_w0: z < -1/e");
  if (z == 0) return 0;
  if (z == kBranch) return -1;
  if (std::isinf(z)) return z;

  double w = 0;
  if (z < -0.25) {
    const double p = std::sqrt(2 * (std::numbers::e * z + 1));
    w = -1 + p - p * p / 3;
  } else if (z < 3) {
    w = std::log1p(z);
  } else {
    const double l = std::log(z);
    w = l - std::log(l);
  }
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double denom = ew * (w + 1) - (w + 2) * f / (2 * w + 2);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * (1 + std::abs(w))) break;
  }
  return w;
}

double truncation_tail(double v_norm, double t, int order) {
  const double tv = v_norm * t;
  if (tv == 0) return 0;
  const double k1 = order + 1;
  return std::exp(std::log(2.0) + k1 * std::log(tv) - std::lgamma(k1 + 1));
}

TruncationChoice truncation_order(double v_norm, double t, double eps1) {
  if (!(eps1 > 0 && eps1 < 1)) throw std::invalid_argument("truncation_order: eps1 must lie in (0,1)");
  if (!(t > 0) || v_norm < 0) throw std::invalid_argument("truncation_order: need t > 0, v >= 0");
  TruncationChoice out;
  const double vt = v_norm * t;
  if (vt == 0) {
    out.order = out.lambert_order = out.explicit_order = 1;
    return out;
  }
  const double l = std::log(1 / eps1);
  const double floor2 = std::ceil(2 * vt);
  const double lam = std::ceil(-1 + l / lambert_w0(l / (t * std::numbers::e * v_norm)));
  out.lambert_order = static_cast<int>(std::max({floor2, lam, 1.0}));
  out.explicit_order =
      static_cast<int>(std::max(1.0, std::ceil(std::max(2 * vt, std::numbers::e * vt + l))));
  out.explicit_certified = std::numbers::e * vt > l;

  out.order = out.lambert_order;
  out.branch = TruncationBranch::lambert;
  if (out.explicit_certified && out.explicit_order < out.order) {
    out.order = out.explicit_order;
    out.branch = TruncationBranch::explicit_form;
  }
  while (truncation_tail(v_norm, t, out.order) > eps1) {
    ++out.order;
    out.branch = TruncationBranch::bumped;
  }
  return out;
}

DiscretizationChoice discretization_count(double v_norm, double h0_norm, double t, double eps2,
                                          int order, bool collisions) {
  if (!(eps2 > 0 && eps2 < 1)) throw std::invalid_argument("discretization_count: eps2 must lie in (0,1)");
  if (!(t > 0) || v_norm < 0 || h0_norm < 0 || order < 0) {
    throw std::invalid_argument("discretization_count: bad arguments");
  }
  DiscretizationChoice out;
  const double km1 = order - 1;
  const double growth = t * t * v_norm * std::exp(t * v_norm);
  out.lower_bounds[0] = 2 * t * h0_norm;
  out.lower_bounds[1] = km1 * km1 / std::numbers::ln2;
  out.lower_bounds[2] = collisions ? 6 * growth * h0_norm / eps2
                                   : 2 * growth * (h0_norm + 2 * v_norm) / eps2;
  const auto it = std::max_element(out.lower_bounds.begin(), out.lower_bounds.end());
  out.branch = static_cast<int>(it - out.lower_bounds.begin());
  const double need = std::ceil(*it);
  if (!(need < 0x1p62)) throw std::overflow_error("discretization count exceeds 2^62");
  std::int64_t m = 1;
  while (static_cast<double>(m) < need) m <<= 1;
  out.points = m;
  return out;
}

double t0_for_beta(int order, double beta) {
  if (order < 1) throw std::invalid_argument("t0_for_beta: order must be >= 1");
  auto series = [order](double s) {
    double term = 1;
    double acc = 1;
    for (int k = 1; k <= order; ++k) {
      term *= s / k;
      acc += term;
    }
    return acc;
  };
  double lo = 0;
  double hi = 2;
  if (series(lo) >= beta || series(hi) < beta) throw std::domain_error("t0_for_beta: no root in (0, 2]");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (series(mid) < beta ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::int64_t segment_count(double alpha_v, double t, double t0) {
  if (!(alpha_v > 0) || !(t > 0) || !(t0 > 0)) throw std::invalid_argument("segment_count: inputs must be positive");
  const double ratio = alpha_v * t / t0;
  // Absorb rounding noise when alpha t is an exact multiple of t0.
  const double r = std::ceil(ratio * (1 - 1e-14));
  if (!(r < 0x1p62)) throw std::overflow_error("segment count overflows");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(r));
}

DenseOperator dyson_series(const DiagonalOperator& h0, const SparseOperator& v, double t,
                           int order, std::int64_t points, bool collisions,
                           const DysonLimits& lim) {
  if (h0.dim() != v.dim()) throw std::invalid_argument("dyson_series: dimension mismatch");
  if (order < 0 || points < 1) throw std::invalid_argument("dyson_series: need K >= 0, M >= 1");
  if (v.dim() > lim.max_dim) throw CapacityError("dyson_series: dimension exceeds dense limit");
  if (static_cast<double>(order) * static_cast<double>(points) > static_cast<double>(lim.max_products)) {
    throw CapacityError("dyson_series: K*M = " + std::to_string(order * points) +
                        " exceeds product cap " + std::to_string(lim.max_products));
  }
  using Sparse = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
  const auto n = static_cast<Eigen::Index>(v.dim());
  Sparse vs(n, n);
  {
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(v.nnz());
    for (const auto& e : v.entries()) {
      trips.emplace_back(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col), e.value);
    }
    vs.setFromTriplets(trips.begin(), trips.end());
  }
  const double delta = t / static_cast<double>(points);

  // prefix[k] accumulates the ordered k-fold products over grid points seen so far.
  std::vector<DenseOperator> prefix(order + 1, DenseOperator::Zero(n, n));
  prefix[0] = DenseOperator::Identity(n, n);
  std::vector<double> inv_fact(order + 1, 1.0);
  for (int k = 1; k <= order; ++k) inv_fact[k] = inv_fact[k - 1] / k;

  // V(s) = D^dag V D with D = exp(-i H0 s) diagonal, so V(s)^q = D^dag V^q D and
  // the powers of V are time independent.
  std::vector<Sparse> vpow{vs};
  if (collisions) {
    for (int q = 2; q <= order; ++q) vpow.push_back((vpow.back() * vs).pruned());
  }
  DenseOperator scratch(n, n);

  for (std::int64_t m = 0; m < points && order > 0; ++m) {
    const double s = static_cast<double>(m) * delta;
    const Eigen::VectorXcd ph = diagonal_phases(h0, s);
    const auto right = ph.asDiagonal();
    const auto left = ph.conjugate().asDiagonal();
    for (int k = order; k >= 1; --k) {
      const int qmax = collisions ? k : 1;
      for (int q = 1; q <= qmax; ++q) {
        scratch.noalias() = right * prefix[k - q];
        const DenseOperator term = vpow[q - 1] * scratch;
        if (collisions) {
          prefix[k].noalias() += inv_fact[q] * (left * term);
        } else {
          prefix[k].noalias() += left * term;
        }
      }
    }
  }

  DenseOperator out = DenseOperator::Zero(n, n);
  cplx coeff = 1;
  const cplx step{0, -delta};
  for (int k = 0; k <= order; ++k) {
    out += coeff * prefix[k];
    coeff *= step;
  }
  return out;
}

DenseOperator dyson_series_matrix(const ModelParams& p, const DysonConfig& cfg,
                                  const DysonLimits& lim) {
  const auto terms = split_interaction(p);
  return dyson_series(terms.h0(), terms.h_i, cfg.t_seg, cfg.order, cfg.points, cfg.collisions, lim);
}

DysonError measured_dyson_error(const ModelParams& p, const DysonConfig& cfg, double eps1,
                                double eps2, const DysonLimits& lim) {
  const DenseOperator ui = interaction_picture_unitary(p, cfg.t_seg, EvolutionLimits{lim.max_dim});
  DysonError out;
  out.measured = spectral_norm(ui - dyson_series_matrix(p, cfg, lim));
  out.bound = eps1 + eps2;
  out.within_bound = out.measured <= out.bound;
  return out;
}

SegmentParams certify_segment(double v_norm, double h0_norm, double t, double eps1,
                              double eps2, bool collisions) {
  SegmentParams out;
  out.truncation = truncation_order(v_norm, t, eps1);
  out.discretization =
      discretization_count(v_norm, h0_norm, t, eps2, out.truncation.order, collisions);
  return out;
}

SegmentedEvolution segmented_evolution(const ModelParams& p, double t, double eps_prime,
                                       const SegmentedOptions& opt) {
  if (!(t > 0) || !(eps_prime > 0 && eps_prime < 1)) {
    throw std::invalid_argument("segmented_evolution: need t > 0 and eps' in (0,1)");
  }
  const auto terms = split_interaction(p);
  const auto h0 = terms.h0();
  const auto norms = norm_bounds(p);
  const double alpha = opt.alpha_v > 0 ? opt.alpha_v : lcu_one_norm(p).per_site;

  SegmentedEvolution out;
  out.segments = segment_count(alpha, t, opt.t0);
  out.t_seg = opt.t0 / alpha;
  out.t_last = t - static_cast<double>(out.segments - 1) * out.t_seg;
  const double eps_each = eps_prime / (2.0 * static_cast<double>(out.segments));

  auto segment = [&](double len, SegmentParams& params) {
    params = certify_segment(norms.v_norm, norms.h0_norm, len, eps_each, eps_each, opt.collisions);
    const DenseOperator d = dyson_series(h0, terms.h_i, len, params.truncation.order,
                                         params.discretization.points, opt.collisions, opt.limits);
    return DenseOperator(diagonal_phases(h0, len).asDiagonal() * d);
  };

  out.w = segment(out.t_last, out.last);
  if (out.segments > 1) {
    const DenseOperator full = segment(out.t_seg, out.full);
    for (std::int64_t s = 1; s < out.segments; ++s) out.w = out.w * full;
  } else {
    out.full = out.last;
  }
  return out;
}

}  // namespace schwinger
