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

#include "schwinger/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace schwinger {

namespace {

void check_capacity(std::size_t dim, const Capacity& cap) {
  if (dim > cap.max_dim) {
    throw CapacityError("operator dimension " + std::to_string(dim) +
                        " exceeds limit " + std::to_string(cap.max_dim));
  }
}

bool entry_less(const SparseEntry& a, const SparseEntry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

}  // namespace

int ModelParams::eta() const {
  int bits = 0;
  while ((std::size_t{1} << bits) < field_dim()) ++bits;
  return std::max(bits, 1);
}

int ModelParams::link_count() const {
  return boundary == Boundary::open ? n_sites - 1 : n_sites;
}

std::size_t ModelParams::field_dim() const {
  return 2 * static_cast<std::size_t>(lambda_cutoff);
}

std::size_t ModelParams::hilbert_dim() const {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  if (n_sites >= 63) throw CapacityError("too many sites for a 64-bit basis index");
  std::size_t dim = std::size_t{1} << n_sites;
  const std::size_t f = field_dim();
  for (int l = 0; l < link_count(); ++l) {
    if (dim > kMax / f) throw CapacityError("Hilbert dimension overflows 64 bits");
    dim *= f;
  }
  return dim;
}

void ModelParams::validate() const {
  if (!std::isfinite(x) || !std::isfinite(mu) || !std::isfinite(alpha_bg)) {
    throw std::invalid_argument("model parameters must be finite");
  }
  if (x < 0) throw std::invalid_argument("x must be non-negative");
  if (mu < 0) throw std::invalid_argument("mu must be non-negative");
  if (lambda_cutoff < 1) throw std::invalid_argument("field cutoff must be at least 1");
  if (n_sites < 1) throw std::invalid_argument("need at least one site");
  if (boundary == Boundary::periodic && n_sites < 2) {
    throw std::invalid_argument("periodic chain needs at least two sites");
  }
}

BasisLayout::BasisLayout(const ModelParams& p)
    : n_sites_(p.n_sites),
      links_(p.link_count()),
      lambda_(p.lambda_cutoff),
      field_base_(p.field_dim()),
      fermion_states_(std::size_t{1} << p.n_sites),
      field_states_(1),
      link_stride_(static_cast<std::size_t>(std::max(links_, 0))) {
  for (int l = links_ - 1; l >= 0; --l) {
    link_stride_[l] = field_states_;
    field_states_ *= field_base_;
  }
}

int BasisLayout::occupation(std::size_t index, int site) const {
  const std::size_t bits = index / field_states_;
  return static_cast<int>((bits >> (n_sites_ - 1 - site)) & 1U);
}

int BasisLayout::field(std::size_t index, int link) const {
  const std::size_t digit = (index % field_states_) / link_stride_[link] % field_base_;
  return static_cast<int>(digit) - lambda_;
}

std::size_t BasisLayout::encode(std::span<const int> occupations,
                                std::span<const int> fields) const {
  if (occupations.size() != static_cast<std::size_t>(n_sites_) ||
      fields.size() != static_cast<std::size_t>(links_)) {
    throw std::invalid_argument("encode: wrong number of sites or links");
  }
  std::size_t bits = 0;
  for (int r = 0; r < n_sites_; ++r) {
    if (occupations[r] != 0 && occupations[r] != 1) {
      throw std::invalid_argument("occupation must be 0 or 1");
    }
    bits = (bits << 1) | static_cast<std::size_t>(occupations[r]);
  }
  std::size_t f = 0;
  for (int l = 0; l < links_; ++l) {
    if (fields[l] < -lambda_ || fields[l] > lambda_ - 1) {
      throw std::out_of_range("field value outside cutoff window");
    }
    f += static_cast<std::size_t>(fields[l] + lambda_) * link_stride_[l];
  }
  return bits * field_states_ + f;
}

double DiagonalOperator::expectation(std::span<const cplx> psi) const {
  if (psi.size() != values.size()) throw std::invalid_argument("dimension mismatch");
  double acc = 0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += values[i] * std::norm(psi[i]);
  return acc;
}

double DiagonalOperator::max_abs() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

DiagonalOperator operator+(const DiagonalOperator& a, const DiagonalOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  DiagonalOperator out{a.values};
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

SparseOperator::SparseOperator(std::size_t dim, std::vector<SparseEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.row >= dim_ || e.col >= dim_) throw std::out_of_range("sparse entry outside matrix");
  }
  normalize();
}

void SparseOperator::normalize() {
  std::sort(entries_.begin(), entries_.end(), entry_less);
  std::vector<SparseEntry> merged;
  merged.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const SparseEntry& e) { return e.value == cplx{}; });
  entries_ = std::move(merged);
}

cplx SparseOperator::at(std::size_t row, std::size_t col) const {
  const SparseEntry key{row, col, {}};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key, entry_less);
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return {};
}

SparseOperator SparseOperator::adjoint() const {
  std::vector<SparseEntry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back({e.col, e.row, std::conj(e.value)});
  return SparseOperator(dim_, std::move(out));
}

double SparseOperator::hermiticity_defect() const {
  double worst = 0;
  for (const auto& e : entries_) {
    worst = std::max(worst, std::abs(e.value - std::conj(at(e.col, e.row))));
  }
  return worst;
}

double SparseOperator::max_abs_difference(const SparseOperator& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("dimension mismatch");
  double worst = 0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && entry_less(*a, *b))) {
      worst = std::max(worst, std::abs(a->value));
      ++a;
    } else if (a == entries_.end() || entry_less(*b, *a)) {
      worst = std::max(worst, std::abs(b->value));
      ++b;
    } else {
      worst = std::max(worst, std::abs(a->value - b->value));
      ++a;
      ++b;
    }
  }
  return worst;
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& other) {
  if (dim_ != other.dim_) throw std::invalid_argument("dimension mismatch");
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  normalize();
  return *this;
}

void write_triplets(std::ostream& os, const SparseOperator& op) {
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  os << op.dim() << ' ' << op.nnz() << '\n';
  for (const auto& e : op.entries()) {
    os << e.row << ' ' << e.col << ' ' << e.value.real() << ' ' << e.value.imag() << '\n';
  }
  os.precision(old);
}

void write_triplets(std::ostream& os, const DiagonalOperator& op) {
  std::vector<SparseEntry> entries;
  for (std::size_t i = 0; i < op.dim(); ++i) {
    if (op.values[i] != 0) entries.push_back({i, i, op.values[i]});
  }
  write_triplets(os, SparseOperator(op.dim(), std::move(entries)));
}

SparseOperator read_triplets(std::istream& is) {
  std::size_t dim = 0;
  std::size_t nnz = 0;
  if (!(is >> dim >> nnz)) throw std::runtime_error("triplet header: expected 'dim nnz'");
  std::vector<SparseEntry> entries;
  entries.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t i = 0;
    std::size_t j = 0;
    double re = 0;
    double im = 0;
    if (!(is >> i >> j >> re >> im)) {
      throw std::runtime_error("triplet row " + std::to_string(k) + " is malformed");
    }
    entries.push_back({i, j, {re, im}});
  }
  return SparseOperator(dim, std::move(entries));
}

double StateVector::norm() const {
  double acc = 0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

DiagonalOperator build_electric_term(const ModelParams& p, const Capacity& cap) {
  p.validate();
  const std::size_t dim = p.hilbert_dim();
  check_capacity(dim, cap);
  const BasisLayout basis(p);
  DiagonalOperator out{std::vector<double>(dim, 0.0)};
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = 0;
    for (int l = 0; l < basis.links(); ++l) {
      const double e = basis.field(i, l) + p.alpha_bg;
      acc += e * e;
    }
    out.values[i] = acc;
  }
  return out;
}

DiagonalOperator build_mass_term(const ModelParams& p, const Capacity& cap) {
  p.validate();
  const std::size_t dim = p.hilbert_dim();
  check_capacity(dim, cap);
  const BasisLayout basis(p);
  DiagonalOperator out{std::vector<double>(dim, 0.0)};
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = 0;
    // (mu/2)(-1)^r (1 - Z_r): +mu for an occupied even site, -mu for an occupied odd one.
    for (int r = 0; r < p.n_sites; ++r) {
      if (basis.occupation(i, r) == 1) acc += (r % 2 == 0) ? p.mu : -p.mu;
    }
    out.values[i] = acc;
  }
  return out;
}

HamiltonianTerms split_interaction(const ModelParams& p, const Capacity& cap) {
  p.validate();
  const std::size_t dim = p.hilbert_dim();
  check_capacity(dim, cap);
  const BasisLayout basis(p);
  const int base = static_cast<int>(p.field_dim());

  // parts[branch][parity]; branch 0 moves an even offset, branch 1 an odd one
  // (which includes the wraparound from the top of the window).
  std::vector<SparseEntry> parts[2][2];
  std::vector<int> occ(p.n_sites);
  std::vector<int> fld(basis.links());
  for (std::size_t i = 0; i < dim; ++i) {
    for (int r = 0; r < p.n_sites; ++r) occ[r] = basis.occupation(i, r);
    for (int l = 0; l < basis.links(); ++l) fld[l] = basis.field(i, l);
    for (int l = 0; l < basis.links(); ++l) {
      const int left = l;
      const int right = basis.right_site(l);
      if (occ[left] != 0 || occ[right] != 1) continue;
      const int offset = fld[l] + p.lambda_cutoff;
      auto occ2 = occ;
      auto fld2 = fld;
      occ2[left] = 1;
      occ2[right] = 0;
      fld2[l] = (offset + 1) % base - p.lambda_cutoff;
      const std::size_t j = basis.encode(occ2, fld2);
      auto& bucket = parts[offset % 2][l % 2];
      bucket.push_back({j, i, p.x});
      bucket.push_back({i, j, p.x});
    }
  }

  HamiltonianTerms terms;
  terms.h_e = build_electric_term(p, cap);
  terms.h_m = build_mass_term(p, cap);
  terms.h1e = SparseOperator(dim, std::move(parts[0][0]));
  terms.h1o = SparseOperator(dim, std::move(parts[0][1]));
  terms.h2e = SparseOperator(dim, std::move(parts[1][0]));
  terms.h2o = SparseOperator(dim, std::move(parts[1][1]));
  terms.h_i = terms.h1e + terms.h1o + terms.h2e + terms.h2o;
  return terms;
}

SparseOperator build_interaction_term(const ModelParams& p, const Capacity& cap) {
  return split_interaction(p, cap).h_i;
}

SparseOperator build_hamiltonian(const ModelParams& p, const Capacity& cap) {
  const auto terms = split_interaction(p, cap);
  const auto h0 = terms.h0();
  std::vector<SparseEntry> diag;
  diag.reserve(h0.dim());
  for (std::size_t i = 0; i < h0.dim(); ++i) diag.push_back({i, i, h0.values[i]});
  return SparseOperator(h0.dim(), std::move(diag)) + terms.h_i;
}

DiagonalOperator build_observable(const ModelParams& p, const Observable& obs,
                                  const Capacity& cap) {
  p.validate();
  const std::size_t dim = p.hilbert_dim();
  check_capacity(dim, cap);
  const BasisLayout basis(p);

  int hi = 0;
  int lo = 0;
  if (obs.kind == Observable::Kind::half_polarization) {
    hi = p.n_sites / 2;
    lo = 0;
    if (hi > basis.links() - 1) {
      throw std::out_of_range("half-system polarization needs link N/2 to exist");
    }
  } else if (obs.kind == Observable::Kind::local_polarization) {
    if (obs.k < 0 || obs.k % 2 != 0) {
      throw std::invalid_argument("local polarization width must be even and non-negative");
    }
    hi = obs.k0 + obs.k / 2;
    lo = obs.k0 - obs.k / 2;
    if (obs.k0 <= obs.k / 2 || hi > basis.links() - 1) {
      throw std::out_of_range("local polarization window outside the chain");
    }
  }

  DiagonalOperator out{std::vector<double>(dim, 0.0)};
  for (std::size_t i = 0; i < dim; ++i) {
    if (obs.kind == Observable::Kind::density) {
      int count = 0;
      for (int r = 0; r < p.n_sites; ++r) {
        const int n = basis.occupation(i, r);
        count += (r % 2 == 0) ? n : 1 - n;
      }
      out.values[i] = static_cast<double>(count) / p.n_sites;
    } else {
      out.values[i] = basis.field(i, hi) - basis.field(i, lo);
    }
  }
  return out;
}

DiagonalOperator build_gauss_operator(const ModelParams& p, int site, const Capacity& cap) {
  p.validate();
  if (site < 1 || site > p.n_sites - 2) {
    throw std::out_of_range("Gauss operator defined for interior sites 1..N-2 only");
  }
  const std::size_t dim = p.hilbert_dim();
  check_capacity(dim, cap);
  const BasisLayout basis(p);
  DiagonalOperator out{std::vector<double>(dim, 0.0)};
  const int background = site % 2;
  for (std::size_t i = 0; i < dim; ++i) {
    const int charge = basis.occupation(i, site) - background;
    out.values[i] = basis.field(i, site) - basis.field(i, site - 1) - charge;
  }
  return out;
}

StateVector build_quench_state(const ModelParams& p, int gamma, const Capacity& cap) {
  p.validate();
  if (gamma < -p.lambda_cutoff || gamma > p.lambda_cutoff - 1) {
    throw std::out_of_range("quench field value outside the cutoff window");
  }
  const std::size_t dim = p.hilbert_dim();
  check_capacity(dim, cap);
  const BasisLayout basis(p);
  std::vector<int> occ(p.n_sites);
  for (int r = 0; r < p.n_sites; ++r) occ[r] = r % 2;
  const std::vector<int> fld(basis.links(), gamma);
  StateVector psi{std::vector<cplx>(dim)};
  psi.amplitudes[basis.encode(occ, fld)] = 1.0;
  return psi;
}

OneNorm lcu_one_norm(const ModelParams& p) {
  return {2.0 * p.x * p.link_count(), 2.0 * p.x * p.n_sites};
}

NormBounds norm_bounds(const ModelParams& p) {
  p.validate();
  const double lo = -p.lambda_cutoff + p.alpha_bg;
  const double hi = p.lambda_cutoff - 1 + p.alpha_bg;
  const double field_sup = std::max(lo * lo, hi * hi);
  const double h0 = p.link_count() * field_sup + p.mu * ((p.n_sites + 1) / 2);
  return {h0, lcu_one_norm(p).exact};
}

}  // namespace schwinger
