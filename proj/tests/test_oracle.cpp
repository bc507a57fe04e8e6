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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "schwinger/oracle.hpp"
#include "schwinger/planner.hpp"

using namespace schwinger;

namespace {

ModelParams small(double x = 0.1, double mu = 1, int lambda = 2, int n = 2) {
  return ModelParams{x, mu, n, lambda, 0.0, Boundary::open};
}

double max_entry(const DenseOperator& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(ExactEvolution, ZeroTimeIsIdentity) {
  const auto u = exact_evolution(build_hamiltonian(small()), 0.0);
  EXPECT_LT(max_entry(u - DenseOperator::Identity(u.rows(), u.cols())), 1e-14);
}

TEST(ExactEvolution, DiagonalGeneratorGivesPhases) {
  const auto h0 = split_interaction(small()).h0();
  std::vector<SparseEntry> e;
  for (std::size_t i = 0; i < h0.dim(); ++i) e.push_back({i, i, h0.values[i]});
  const auto u = exact_evolution(SparseOperator(h0.dim(), e), 0.83);
  const Eigen::VectorXcd ph = diagonal_phases(h0, 0.83);
  EXPECT_LT(max_entry(u - DenseOperator(ph.asDiagonal())), 1e-13);
  EXPECT_LT(std::abs(ph(3) - std::polar(1.0, -h0.values[3] * 0.83)), 1e-15);
}

TEST(ExactEvolution, GroupLawAndUnitarity) {
  const auto h = build_hamiltonian(small(0.7, 1.3));
  const SpectralPropagator prop(h);
  const auto a = prop.evolution(0.4);
  const auto b = prop.evolution(1.1);
  EXPECT_LT(spectral_norm(a * b - prop.evolution(1.5)), 1e-10);
  for (double t : {0.1, 1.0, 5.0, 20.0}) EXPECT_LT(unitarity_defect(prop.evolution(t)), 1e-10);
}

TEST(ExactEvolution, AgreesWithTensorProductOracle) {
  const auto p = small(0.45, 0.8);
  const oracle::Lattice lat{2, 2, false, 0.45, 0.8, 0.0};
  const auto ref = oracle::expi(oracle::hamiltonian(lat), 1.7);
  EXPECT_LT(oracle::norm2(exact_evolution(build_hamiltonian(p), 1.7) - ref), 1e-11);
}

TEST(ExactEvolution, Errors) {
  EXPECT_THROW(exact_evolution(build_hamiltonian(small()), 1.0, EvolutionLimits{8}),
               CapacityError);
  SparseOperator bad(2, {{0, 1, cplx(1.0)}});
  EXPECT_THROW(exact_evolution(bad, 1.0), std::invalid_argument);
}

TEST(ExactEvolution, EnergyAndNormConserved) {
  const auto p = small(0.9, 0.6, 2, 3);
  const auto h = build_hamiltonian(p);
  const SpectralPropagator prop(h);
  const auto psi0 = build_quench_state(p, 0);
  const auto hd = to_dense(h);
  auto energy = [&](const StateVector& s) {
    const Eigen::Map<const Eigen::VectorXcd> v(s.amplitudes.data(),
                                               static_cast<Eigen::Index>(s.dim()));
    return (v.adjoint() * hd * v)(0, 0).real();
  };
  const double e0 = energy(psi0);
  for (double t = 0.25; t <= 4.0; t += 0.25) {
    const auto psi = prop.apply(psi0, t);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    EXPECT_NEAR(energy(psi), e0, 1e-9);
  }
}

TEST(InteractionFrame, ZeroShiftAndDiagonalEntries) {
  const auto terms = split_interaction(small(0.3));
  const auto h0 = terms.h0();
  EXPECT_EQ(interaction_frame(terms.h_i, h0, 0.0).max_abs_difference(terms.h_i), 0.0);
  SparseOperator diag(h0.dim(), {{1, 1, cplx(2.5)}, {3, 5, cplx(1.0)}, {5, 3, cplx(1.0)}});
  const auto f = interaction_frame(diag, h0, 1.234);
  EXPECT_EQ(f.at(1, 1), cplx(2.5));
}

TEST(InteractionFrame, MatchesDenseFrameAndKeepsNorm) {
  const auto terms = split_interaction(small(0.6, 1.4));
  const auto h0 = terms.h0();
  const Eigen::Map<const Eigen::VectorXd> d(h0.values.data(), static_cast<Eigen::Index>(h0.dim()));
  const double vn = spectral_norm(to_dense(terms.h_i));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 5; ++i) {
    const double s = u(rng);
    const auto f = to_dense(interaction_frame(terms.h_i, h0, s));
    EXPECT_LT(max_entry(f - oracle::frame(to_dense(terms.h_i), d, s)), 1e-14);
    EXPECT_NEAR(spectral_norm(f), vn, 1e-12);
  }
}

TEST(InteractionPicture, DefiningIdentity) {
  for (double t : {0.0, 0.3, 0.7, 1.5}) {
    const auto p = small();
    const auto ui = interaction_picture_unitary(p, t);
    const auto h0 = split_interaction(p).h0();
    const auto u = exact_evolution(build_hamiltonian(p), t);
    EXPECT_LE(spectral_norm(u - diagonal_phases(h0, t).asDiagonal() * ui), 1e-12);
    EXPECT_LT(unitarity_defect(ui), 1e-10);
  }
  const auto z = interaction_picture_unitary(small(0.0), 2.0);
  EXPECT_LT(spectral_norm(z - DenseOperator::Identity(z.rows(), z.cols())), 1e-12);
}

TEST(SpectralNorm, SimpleValues) {
  EXPECT_NEAR(spectral_norm(DenseOperator::Identity(5, 5)), 1.0, 1e-15);
  DenseOperator d = DenseOperator::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = -4;
  EXPECT_NEAR(spectral_norm(d), 4.0, 1e-15);
  EXPECT_EQ(spectral_norm(DenseOperator::Zero(3, 3)), 0.0);
}

TEST(SpectralNorm, InteractionAgainstEigenvalues) {
  const auto hi = to_dense(build_interaction_term(small(1.0, 0.0, 1)));
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(hi);
  const double ref = es.eigenvalues().cwiseAbs().maxCoeff();
  EXPECT_NEAR(spectral_norm(hi), ref, 1e-12);
  EXPECT_NEAR(ref, 1.0, 1e-12);
}

TEST(SpectralNorm, PowerIterationMatchesSvd) {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  DenseOperator a(40, 40);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = {g(rng), g(rng)};
  NormOptions power;
  power.svd_max_dim = 0;
  power.max_iterations = 200000;
  const double ref = spectral_norm(a);
  EXPECT_NEAR(spectral_norm(a, power), ref, 1e-9 * ref);
  EXPECT_EQ(spectral_norm(a, power), spectral_norm(a, power));
  NormOptions starved = power;
  starved.max_iterations = 2;
  EXPECT_THROW(spectral_norm(a, starved), NumericalError);
}

TEST(Leakage, TrivialCases) {
  const auto s = small(0.5, 1, 1);
  const auto b = small(0.5, 1, 8);
  EXPECT_EQ(leakage_norm(s, b, 3, 0.0), 0.0);
  EXPECT_LT(leakage_norm(small(0.0, 1, 1), small(0.0, 1, 8), 2, 3.0), 1e-14);
  EXPECT_THROW(leakage_norm(s, small(0.4, 1, 8), 3, 0.5), std::invalid_argument);
  EXPECT_THROW(leakage_norm(s, b, 8, 0.5), std::invalid_argument);
}

TEST(Leakage, BelowPlannerBound) {
  const auto s = small(0.5, 1, 1);
  const auto b = small(0.5, 1, 8);
  for (int delta = 3; delta <= 5; ++delta) {
    const int lambda_t = 1 + static_cast<int>(std::ceil(4 * 0.5 * 0.5)) * (delta - 1);
    EXPECT_LE(leakage_norm(s, b, lambda_t, 0.5), leakage_bound(0.5, 0.5, delta)) << delta;
  }
}

TEST(Leakage, PrecomputedEvolutionAgrees) {
  const auto s = small(0.5, 1, 1);
  const auto b = small(0.5, 1, 6);
  const DenseOperator u = exact_evolution(build_hamiltonian(b), 0.7);
  for (int lambda_t = 1; lambda_t < 6; ++lambda_t) {
    EXPECT_NEAR(leakage_norm(u, b, 1, lambda_t), leakage_norm(s, b, lambda_t, 0.7), 1e-13) << lambda_t;
  }
  EXPECT_THROW(leakage_norm(u, b, 1, 6), std::invalid_argument);
  EXPECT_THROW(leakage_norm(u, small(0.5, 1, 5), 1, 2), std::invalid_argument);
}

TEST(Leakage, WindowMaskIsClosed) {
  const auto p = small(0.5, 1, 2);
  const auto mask = field_window_mask(p, 1);
  const BasisLayout b(p);
  for (std::size_t i = 0; i < b.dim(); ++i) EXPECT_EQ(mask[i], b.field(i, 0) >= -1);
}
