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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "schwinger/errors.hpp"

namespace schwinger {

using cplx = std::complex<double>;

enum class Boundary { open, periodic };

/// Lattice and coupling parameters of the qubit-mapped, field-truncated
/// Schwinger Hamiltonian in dimensionless units.
///
/// Each link carries an integer electric field value in [-lambda_cutoff,
/// lambda_cutoff - 1]. Sites are indexed 0..n_sites-1; even sites hold
/// electrons, odd sites positrons.
struct ModelParams {
  double x = 1.0;
  double mu = 0.0;
  int n_sites = 2;
  int lambda_cutoff = 1;
  double alpha_bg = 0.0;
  Boundary boundary = Boundary::open;

  /// Qubits per link register, ceil(log2(2 * lambda_cutoff)).
  [[nodiscard]] int eta() const;
  [[nodiscard]] int link_count() const;
  /// Number of field values per link (2 * lambda_cutoff).
  [[nodiscard]] std::size_t field_dim() const;
  /// 2^N * (2 Lambda)^links; throws CapacityError when it does not fit 64 bits.
  [[nodiscard]] std::size_t hilbert_dim() const;

  /// Throws std::invalid_argument on x < 0, mu < 0, Lambda < 1, N < 1 or
  /// non-finite inputs. x = 0 (free fields) and N = 1 are accepted here for
  /// unit-level checks; the planner is stricter.
  void validate() const;
};

/// Upper bound on operator dimension for the matrix builders.
struct Capacity {
  std::size_t max_dim = std::size_t{1} << 20;
};

/// Index bookkeeping for the product basis. Fermion qubits are the most
/// significant digits (site 0 first), followed by one base-(2 Lambda) digit
/// per link with link 0 most significant. A field value e is stored as the
/// unsigned offset e + Lambda.
class BasisLayout {
 public:
  explicit BasisLayout(const ModelParams& p);

  [[nodiscard]] std::size_t dim() const { return fermion_states_ * field_states_; }
  [[nodiscard]] int n_sites() const { return n_sites_; }
  [[nodiscard]] int links() const { return links_; }
  [[nodiscard]] int lambda() const { return lambda_; }

  /// Occupation (0/1) of site r in basis state `index`.
  [[nodiscard]] int occupation(std::size_t index, int site) const;
  /// Field value (not offset) on `link` in basis state `index`.
  [[nodiscard]] int field(std::size_t index, int link) const;

  [[nodiscard]] std::size_t encode(std::span<const int> occupations,
                                   std::span<const int> fields) const;

  /// Sites joined by `link`: (link, link + 1 mod N).
  [[nodiscard]] int right_site(int link) const { return (link + 1) % n_sites_; }

 private:
  int n_sites_;
  int links_;
  int lambda_;
  std::size_t field_base_;
  std::size_t fermion_states_;
  std::size_t field_states_;
  std::vector<std::size_t> link_stride_;
};

struct DiagonalOperator {
  std::vector<double> values;

  [[nodiscard]] std::size_t dim() const { return values.size(); }
  /// <psi| D |psi>
  [[nodiscard]] double expectation(std::span<const cplx> psi) const;
  [[nodiscard]] double max_abs() const;
};

DiagonalOperator operator+(const DiagonalOperator& a, const DiagonalOperator& b);

struct SparseEntry {
  std::size_t row;
  std::size_t col;
  cplx value;
};

/// Coordinate-format complex matrix. Entries are kept sorted by (row, col)
/// with duplicates merged.
class SparseOperator {
 public:
  SparseOperator() = default;
  explicit SparseOperator(std::size_t dim) : dim_(dim) {}
  SparseOperator(std::size_t dim, std::vector<SparseEntry> entries);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t nnz() const { return entries_.size(); }
  [[nodiscard]] const std::vector<SparseEntry>& entries() const { return entries_; }

  /// Value at (row, col), zero if absent.
  [[nodiscard]] cplx at(std::size_t row, std::size_t col) const;
  [[nodiscard]] SparseOperator adjoint() const;
  /// Largest |A_ij - conj(A_ji)|.
  [[nodiscard]] double hermiticity_defect() const;
  [[nodiscard]] bool is_hermitian(double tol = 1e-14) const {
    return hermiticity_defect() <= tol;
  }
  /// Largest entrywise |A_ij - B_ij|.
  [[nodiscard]] double max_abs_difference(const SparseOperator& other) const;

  SparseOperator& operator+=(const SparseOperator& other);
  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) {
    a += b;
    return a;
  }

 private:
  void normalize();

  std::size_t dim_ = 0;
  std::vector<SparseEntry> entries_;
};

/// Writes "dim nnz" followed by one "i j re im" line per entry, with
/// round-trip precision.
void write_triplets(std::ostream& os, const SparseOperator& op);
void write_triplets(std::ostream& os, const DiagonalOperator& op);
SparseOperator read_triplets(std::istream& is);

struct StateVector {
  std::vector<cplx> amplitudes;

  [[nodiscard]] std::size_t dim() const { return amplitudes.size(); }
  [[nodiscard]] double norm() const;
};

struct HamiltonianTerms {
  DiagonalOperator h_e;
  DiagonalOperator h_m;
  SparseOperator h_i;
  /// Trotter split of h_i: index 1 carries the sigma+_0 (even offset) part of
  /// the link increment, index 2 the conjugated U sigma+_0 U^dag part; e/o is
  /// the link parity.
  SparseOperator h1e, h1o, h2e, h2o;

  [[nodiscard]] DiagonalOperator h0() const { return h_e + h_m; }
};

DiagonalOperator build_electric_term(const ModelParams& p, const Capacity& cap = {});
DiagonalOperator build_mass_term(const ModelParams& p, const Capacity& cap = {});
SparseOperator build_interaction_term(const ModelParams& p, const Capacity& cap = {});
HamiltonianTerms split_interaction(const ModelParams& p, const Capacity& cap = {});

/// H_E + H_M + H_I as a single sparse operator.
SparseOperator build_hamiltonian(const ModelParams& p, const Capacity& cap = {});

struct Observable {
  enum class Kind { density, half_polarization, local_polarization };
  Kind kind = Kind::density;
  int k0 = 0;
  int k = 0;

  static Observable density() { return {Kind::density, 0, 0}; }
  static Observable half_polarization() { return {Kind::half_polarization, 0, 0}; }
  /// E_{k0 + k/2} - E_{k0 - k/2}; k must be even.
  static Observable local_polarization(int k0, int k) {
    return {Kind::local_polarization, k0, k};
  }
};

DiagonalOperator build_observable(const ModelParams& p, const Observable& obs,
                                  const Capacity& cap = {});

/// G_r = E_r - E_{r-1} - rho_r for an interior site 1 <= r <= N-2, with the
/// staggered charge rho_r = n_r - (1 - (-1)^r)/2.
DiagonalOperator build_gauss_operator(const ModelParams& p, int site,
                                      const Capacity& cap = {});

/// Staggered-vacuum product state with uniform field gamma on every link.
StateVector build_quench_state(const ModelParams& p, int gamma, const Capacity& cap = {});

struct OneNorm {
  /// 2 x * link_count, the exact LCU coefficient sum.
  double exact;
  /// 2 N x, the value used for segment planning.
  double per_site;
};

OneNorm lcu_one_norm(const ModelParams& p);

struct NormBounds {
  double h0_norm;
  double v_norm;
};

/// h0_norm = link_count * max_e (e + alpha)^2 + mu * ceil(N/2),
/// v_norm = lcu_one_norm(p).exact.
NormBounds norm_bounds(const ModelParams& p);

}  // namespace schwinger
