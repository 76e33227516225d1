#include <gtest/gtest.h>

#include <cmath>

#include "pbh/fock2.hpp"

using namespace pbh;
using namespace pbh::fock;

TEST(Ladder, SingleQuantum) {
  const TruncationSpec t{1, 0};
  const auto L = build_ladder_ops(t);
  EXPECT_EQ(L.a.dim(), 2u);
  EXPECT_EQ(L.a.element(0, 0, 1, 0), cplx(1.0));
  int nonzero = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) nonzero += L.a(i, j) != cplx{};
  EXPECT_EQ(nonzero, 1);
}

TEST(Ladder, RaisingEntry) {
  const auto L = build_ladder_ops({2, 0});
  EXPECT_NEAR(L.a_dag.element(2, 0, 1, 0).real(), std::sqrt(2.0), 1e-15);
}

TEST(Ladder, EmptyTruncationGivesZeroScalar) {
  const auto L = build_ladder_ops({0, 0});
  EXPECT_EQ(L.a.dim(), 1u);
  EXPECT_EQ(L.a(0, 0), cplx{});
}

TEST(Ladder, EntriesMatchSquareRoots) {
  const auto t = TruncationSpec::square(5);
  const auto L = build_ladder_ops(t);
  for (std::size_t m = 0; m <= 5; ++m)
    for (std::size_t n = 0; n <= 5; ++n)
      for (std::size_t p = 0; p <= 5; ++p)
        for (std::size_t q = 0; q <= 5; ++q) {
          const double a = (p == m + 1 && q == n) ? std::sqrt(double(p)) : 0.0;
          const double b = (q == n + 1 && p == m) ? std::sqrt(double(q)) : 0.0;
          EXPECT_EQ(L.a.element(m, n, p, q), cplx(a));
          EXPECT_EQ(L.b.element(m, n, p, q), cplx(b));
          EXPECT_EQ(L.a_dag.element(p, q, m, n), cplx(a));
        }
}

TEST(Commutator, BoundaryDiagonal) {
  const std::size_t N = 5;
  const auto t = TruncationSpec::square(N);
  const auto L = build_ladder_ops(t);
  const auto c = commutator(L.a, L.a_dag);
  for (std::size_t m = 0; m <= N; ++m)
    for (std::size_t n = 0; n <= N; ++n) {
      const double expect = m < N ? 1.0 : -static_cast<double>(N);
      EXPECT_NEAR(std::abs(c.element(m, n, m, n) - expect), 0.0, 1e-13);
    }
}

TEST(Commutator, SelfAndCrossModesVanish) {
  const auto t = TruncationSpec::square(4);
  const auto L = build_ladder_ops(t);
  EXPECT_EQ(max_abs(commutator(L.a, L.a).matrix()), 0.0);
  EXPECT_EQ(max_abs(commutator(L.a, L.b_dag).matrix()), 0.0);
  EXPECT_EQ(max_abs(commutator(L.a, L.b).matrix()), 0.0);
  EXPECT_EQ(max_abs(commutator(L.a_dag, L.b_dag).matrix()), 0.0);
}

TEST(Commutator, InteriorIdentity) {
  const auto t = TruncationSpec::square(5);
  const auto L = build_ladder_ops(t);
  const auto id = Operator::identity(t);
  EXPECT_LE(masked_deviation(commutator(L.a, L.a_dag), id, {1}), 1e-14);
  EXPECT_LE(masked_deviation(commutator(L.b, L.b_dag), id, {1}), 1e-14);
  EXPECT_GT(masked_deviation(commutator(L.a, L.a_dag), id, {0}), 1.0);
}

TEST(Commutator, MismatchThrows) {
  const auto A = build_ladder_ops(TruncationSpec::square(2));
  const auto B = build_ladder_ops(TruncationSpec::square(3));
  EXPECT_THROW(commutator(A.a, B.a), Error);
  EXPECT_THROW(apply(A.a, FockVector::vacuum(TruncationSpec::square(3))), Error);
}

TEST(Mask, MarginBeyondTruncationThrows) {
  EXPECT_THROW(InteriorMask{4}.validate(TruncationSpec::square(3)), Error);
}

TEST(InnerProduct, Examples) {
  const auto t = TruncationSpec::square(2);
  const auto e = FockVector::basis(t, 1, 2);
  EXPECT_EQ(inner_product(e, e), cplx(1.0));
  EXPECT_EQ(inner_product(FockVector::basis(t, 1, 0), FockVector::basis(t, 0, 1)), cplx{});
  FockVector v(t), w(t);
  v.at(0, 1) = cplx(1, 2);
  v.at(2, 2) = 3;
  w.at(0, 1) = cplx(0.5, -1);
  w.at(2, 2) = cplx(0, 1);
  const cplx i(0, 1);
  EXPECT_NEAR(std::abs(inner_product(i * v, w) + i * inner_product(v, w)), 0, 1e-15);
  EXPECT_NEAR(std::abs(inner_product(v, i * w) - i * inner_product(v, w)), 0, 1e-15);
}

TEST(Apply, VacuumAndComposition) {
  const auto t = TruncationSpec::square(3);
  const auto L = build_ladder_ops(t);
  const auto vac = FockVector::vacuum(t);
  EXPECT_EQ(apply(L.a, vac).norm(), 0.0);
  EXPECT_EQ(apply(L.b, vac).norm(), 0.0);
  const auto id = apply(Operator::identity(t), vac);
  EXPECT_EQ(id.coeffs(), vac.coeffs());
  const auto v = apply(L.a_dag * L.b_dag, vac);
  EXPECT_EQ(v.at(1, 1), cplx(1.0));
  EXPECT_NEAR(v.norm(), 1.0, 1e-15);
}

TEST(Operator, AdjointOfLadderIsRaising) {
  const auto t = TruncationSpec{3, 2};
  const auto L = build_ladder_ops(t);
  EXPECT_EQ(L.a.adjoint().matrix(), L.a_dag.matrix());
  EXPECT_EQ(L.b.adjoint().matrix(), L.b_dag.matrix());
}

TEST(Truncation, IndexRoundTrip) {
  const TruncationSpec t{3, 4};
  EXPECT_EQ(t.dim(), 20u);
  for (std::size_t i = 0; i < t.dim(); ++i) {
    const auto [m, n] = t.occupation(i);
    EXPECT_EQ(t.index(m, n), i);
  }
  EXPECT_THROW(FockVector::basis(t, 4, 0), Error);
}
