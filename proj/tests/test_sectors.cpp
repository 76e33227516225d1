#include <gtest/gtest.h>

#include <cmath>

#include "pbh/linalg.hpp"
#include "pbh/sectors.hpp"

using namespace pbh;
using namespace pbh::sectors;

namespace {
const ModelParams kDefault{0.5, 0.75};
}

TEST(SectorBasis, Examples) {
  const auto t = fock::TruncationSpec::square(4);
  EXPECT_EQ(sector_basis({0, 3}, t), (std::vector<std::size_t>{t.index(0, 0), t.index(1, 1), t.index(2, 2)}));
  EXPECT_EQ(sector_basis({2, 2}, t), (std::vector<std::size_t>{t.index(2, 0), t.index(3, 1)}));
  EXPECT_EQ(sector_basis({-1, 2}, t), (std::vector<std::size_t>{t.index(0, 1), t.index(1, 2)}));
  EXPECT_THROW(sector_basis({3, 3}, t), Error);
  EXPECT_EQ(sector_depth_in(t, 3), 2u);
  EXPECT_EQ(sector_depth_in(t, -5), 0u);
}

TEST(Casimir, EigenvaluesOnBasis) {
  const auto t = fock::TruncationSpec::square(4);
  const auto c = casimir_full(t);
  EXPECT_DOUBLE_EQ(c.casimir.element(3, 3, 3, 3).real(), -1.0);
  EXPECT_DOUBLE_EQ(c.casimir.element(2, 0, 2, 0).real(), 3.0);
  EXPECT_DOUBLE_EQ(c.label.element(2, 0, 2, 0).real(), 2.0);
}

TEST(Casimir, CommutesWithHamiltonian) {
  const auto t = fock::TruncationSpec{5, 4};
  const auto H = pseudoboson::build_hamiltonian(kDefault, t);
  const auto c = casimir_full(t);
  EXPECT_LE(max_abs(fock::commutator(c.casimir, H.h).matrix()), 1e-12);
  EXPECT_LE(max_abs(fock::commutator(c.label, H.h).matrix()), 1e-12);
}

TEST(Generators, Entries) {
  const auto A = su11_generators({1, 3});
  EXPECT_NEAR(A.plus(1, 0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(A.plus(2, 1), std::sqrt(6.0), 1e-15);
  EXPECT_EQ(A.minus, A.plus.transpose());
  const auto A0 = su11_generators({0, 4}).zero;
  for (std::size_t j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(A0(j, j), 1.0 + 2.0 * j);
  EXPECT_THROW(su11_generators({0, 1}), Error);
}

TEST(Generators, CommutationRelationsInterior) {
  for (int k = -3; k <= 3; ++k) {
    const auto A = su11_generators({k, 6});
    EXPECT_LE(su11_cr_deviation(A.plus, A.minus, A.zero), 1e-12);
    // the bottom row is a finite-section artifact
    EXPECT_GT(su11_cr_deviation(A.plus, A.minus, A.zero, 0), 1.0);
  }
}

TEST(Generators, PrimedVariant) {
  for (int k = -3; k <= 3; ++k) {
    const auto A = su11_generators({k, 8});
    const auto P = su11_generators({k, 8}, true);
    EXPECT_EQ(P.plus, A.minus);
    EXPECT_EQ(P.zero, -1.0 * A.zero);
    EXPECT_LE(su11_cr_deviation(P.plus, P.minus, P.zero), 1e-12);
    // chain start is annihilated by A'+
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(P.plus(i, 0), 0.0);
  }
}

TEST(PseudoJacobi, Examples) {
  const RMatrix h = pseudo_jacobi({2, 2}, kDefault);
  EXPECT_DOUBLE_EQ(h(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(h(1, 1), 6.0);
  EXPECT_NEAR(h(0, 1), -0.75 * std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(h(1, 0), 0.75 * std::sqrt(3.0), 1e-15);
  const RMatrix h0 = pseudo_jacobi({0, 3}, {7.0, 0.0});
  EXPECT_EQ(h0, RMatrix::diagonal(RVector{1, 3, 5}));
}

TEST(PseudoJacobi, GeneratorAssembly) {
  for (int k : {-2, 0, 3}) {
    const SectorSpec s{k, 7};
    const auto A = su11_generators(s);
    const RMatrix expect = A.zero + (kDefault.beta * k) * RMatrix::identity(7) + kDefault.gamma * (A.plus - A.minus);
    EXPECT_EQ(max_abs_diff(pseudo_jacobi(s, kDefault), expect), 0.0);
  }
}

TEST(PseudoJacobi, MatchesFullHamiltonianBlocks) {
  const auto t = fock::TruncationSpec{6, 4};
  for (int k = -4; k <= 6; ++k) EXPECT_LE(sector_block_deviation(kDefault, t, k), 1e-13);
}

TEST(TransposeSimilarity, Examples) {
  EXPECT_LE(transpose_similarity_check({1, 6}, kDefault), 1e-13);
  EXPECT_LE(transpose_similarity_check({-3, 6}, kDefault), 1e-13);
  EXPECT_EQ(transpose_similarity_check({1, 6}, {0.5, 0.0}), 0.0);
}

TEST(BGenerators, CommutationRelations) {
  for (double g : {0.25, 0.75, 2.0})
    for (int k = -3; k <= 3; ++k) {
      const auto B = b_generators({k, 8}, g);
      EXPECT_LE(su11_cr_deviation(B.plus, B.minus, B.zero), 1e-10) << "k " << k << " gamma " << g;
    }
  EXPECT_THROW(b_generators({0, 4}, 0.0), Error);
}

TEST(BGenerators, ZeroIsScaledHamiltonian) {
  const SectorSpec s{2, 8};
  const auto B = b_generators(s, 0.75);
  const RMatrix h0 = pseudo_jacobi(s, {0.0, 0.75});
  EXPECT_LE(max_abs_diff(B.zero, (1.0 / 1.25) * h0), 1e-14);
  EXPECT_GT(max_abs_diff(B.zero, B.zero.transpose()), 0.1);
  EXPECT_GT(max_abs_diff(B.plus, B.minus.transpose()), 0.1);
}

TEST(Casimir, SectorReductions) {
  const auto r = casimir_reduction_check({2, 10}, 0.75);
  EXPECT_LE(r.b_deviation, 1e-9);
  EXPECT_LE(r.a_deviation, 1e-9);
  const auto A = su11_generators({0, 6});
  EXPECT_LE(casimir_deviation(A.plus, A.minus, A.zero, 0, 2), 1e-12);
}

TEST(LowestWeight, Components) {
  const RVector v = lowest_weight_vector({1, 4}, 0.75);
  EXPECT_DOUBLE_EQ(v[0], 1.0);
  EXPECT_NEAR(v[1], -std::sqrt(2.0) / 3.0, 1e-15);
  EXPECT_NEAR(v[2], std::sqrt(3.0) / 9.0, 1e-15);
  EXPECT_NEAR(v[3], -2.0 / 27.0, 1e-15);
  const RVector w = lowest_weight_vector({0, 4}, 0.75);
  EXPECT_NEAR(w[3], -1.0 / 27.0, 1e-16);
  EXPECT_THROW(lowest_weight_vector({0, 4}, -1.0), Error);
}

TEST(LowestWeight, AnnihilatedAndEigenvector) {
  for (int k : {-2, 0, 1, 3}) {
    const SectorSpec s{k, 30};
    const auto B = b_generators(s, 0.75);
    const RVector lw = lowest_weight_vector(s, 0.75);
    const CVector v(lw.begin(), lw.end());
    EXPECT_LE(linalg::residual(B.minus, 0.0, v), 1e-8);
    EXPECT_LE(linalg::residual(B.zero, double(std::abs(k) + 1), v), 1e-8);
  }
}

TEST(SectorSpectrum, LowestThreeAtK2) {
  const auto s = sector_spectrum({2, 60}, kDefault, 3);
  const double expect[3] = {4.75, 7.25, 9.75};
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(s.report.values[i] - expect[i]), 0.0, 1e-6);
  for (double r : s.report.residuals) EXPECT_LE(r, 1e-8 * frobenius_norm(pseudo_jacobi({2, 60}, kDefault)));
  EXPECT_THROW(sector_spectrum({2, 2}, kDefault, 3), Error);
}

TEST(SectorSpectrum, OscillatorExact) {
  const auto s = sector_spectrum({0, 20}, {0.5, 0.0}, 5);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(std::abs(s.report.values[i] - (1.0 + 2.0 * i)), 0.0, 1e-13);
}

TEST(SectorSpectrum, AdjointIsospectral) {
  const RMatrix h = pseudo_jacobi({-1, 30}, kDefault);
  EXPECT_LE(linalg::multiset_distance(linalg::eig_dense(h).values, linalg::eig_dense(h.transpose()).values), 1e-6);
}

TEST(SectorSpectrum, DepthDoublingConverges) {
  for (int k = -2; k <= 2; ++k) {
    const auto c = sector_spectrum_converged(k, kDefault, 3, 30, 120);
    EXPECT_TRUE(c.converged) << "k " << k;
    EXPECT_LE(c.final().max_error(), 1e-6);
  }
}

TEST(SectorConsistency, EnergiesMatchSectorList) {
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n)
      EXPECT_NEAR(pseudoboson::energy(kDefault, m, n), sector_energy(kDefault, m - n, std::min(m, n)), 1e-12);
}

TEST(SectorConsistency, FullSpectrumIsSectorUnion) {
  const auto t = fock::TruncationSpec::square(10);
  const auto H = pseudoboson::build_hamiltonian(kDefault, t);
  const auto full = linalg::eig_dense(H.h.matrix());
  ASSERT_TRUE(full.converged);
  const CVector uni = sector_union_spectrum(kDefault, t);
  ASSERT_EQ(uni.size(), full.values.size());
  EXPECT_LE(linalg::multiset_distance(full.values, uni), 1e-8);
}

TEST(Stability, BoundedCouplingConverges) {
  const auto scan = hermitian_variant_scan(0, 0.0, 0.6, {20, 40, 60});
  EXPECT_TRUE(scan.bounded);
  EXPECT_NEAR(scan.analytic_lowest, 0.8, 1e-15);
  EXPECT_NEAR(scan.points.back().lowest, 0.8, 1e-6);
  for (std::size_t n = 0; n < 3; ++n) EXPECT_NEAR(scan.points.back().low_spectrum[n], 0.8 * (1 + 2.0 * n), 1e-6);
}

TEST(Stability, StrongCouplingUnbounded) {
  const auto scan = hermitian_variant_scan(0, 0.0, 1.2, {40, 80});
  EXPECT_FALSE(scan.bounded);
  EXPECT_GT(scan.points[0].lowest - scan.points[1].lowest, 1.0);
}

TEST(Stability, PhaseConjugatedFormIsSpectrallyEqual) {
  const CMatrix h = hermitian_variant_matrix(1, 0.3, 0.6, 12);
  EXPECT_EQ(max_abs_diff(h, h.adjoint()), 0.0);
  const auto [d, e] = hermitian_variant_tridiag(1, 0.3, 0.6, 12);
  EXPECT_LE(linalg::multiset_distance(linalg::eig_dense(h).values, linalg::eig_sym_tridiag(d, e).values), 1e-10);
  EXPECT_THROW(hermitian_variant_scan(0, 0.0, 0.5, {0}), Error);
}
