#include <gtest/gtest.h>

#include "pbh/matrix.hpp"

using namespace pbh;

TEST(Matrix, IdentityAndProduct) {
  const RMatrix a{{1, 2}, {3, 4}};
  EXPECT_EQ(a * RMatrix::identity(2), a);
  const RMatrix sq = a * a;
  EXPECT_DOUBLE_EQ(sq(0, 0), 7);
  EXPECT_DOUBLE_EQ(sq(0, 1), 10);
  EXPECT_DOUBLE_EQ(sq(1, 0), 15);
  EXPECT_DOUBLE_EQ(sq(1, 1), 22);
}

TEST(Matrix, AdjointConjugates) {
  CMatrix m{{cplx(1, 2), cplx(0, 1)}, {cplx(3, 0), cplx(4, -1)}};
  const CMatrix h = m.adjoint();
  EXPECT_EQ(h(0, 1), cplx(3, 0));
  EXPECT_EQ(h(1, 0), cplx(0, -1));
  EXPECT_EQ(h(1, 1), cplx(4, 1));
  EXPECT_EQ(h.adjoint(), m);
}

TEST(Matrix, Norms) {
  const RMatrix a{{3, 0}, {0, -4}};
  EXPECT_DOUBLE_EQ(frobenius_norm(a), 5.0);
  EXPECT_DOUBLE_EQ(max_abs(a), 4.0);
  EXPECT_DOUBLE_EQ(max_abs_diff(a, RMatrix::identity(2)), 5.0);
}

TEST(Matrix, ShapeMismatchThrows) {
  RMatrix a(2, 3), b(2, 2);
  EXPECT_THROW(a += b, Error);
  EXPECT_THROW((void)(b * a * b), Error);
}
