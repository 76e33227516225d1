#include <gtest/gtest.h>

#include <random>

#include "pbh/finitesim.hpp"
#include "pbh/sectors.hpp"

using namespace pbh;
using namespace pbh::finitesim;

namespace {

// V diag(lambda) V^-1 with V = I + small random perturbation (well conditioned).
RMatrix real_spectrum_matrix(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  CMatrix v = CMatrix::identity(n), d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) v(i, j) += u(rng) / std::sqrt(double(n));
    d(i, i) = -3.0 + 1.5 * double(i) + u(rng);
  }
  return real_part(v * d * linalg::inverse(v));
}

}  // namespace

TEST(FiniteSimilarity, UpperTriangularExample) {
  const auto rep = verify_theorem1(RMatrix{{1, 1}, {0, 2}});
  EXPECT_NEAR(rep.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(rep.eigenvalues[1], 2.0, 1e-14);
  // S = [[1,-1],[-1,2]] up to one overall phase
  const CMatrix expect{{1, -1}, {-1, 2}};
  const cplx ph = rep.S(0, 0) / expect(0, 0);
  EXPECT_NEAR(std::abs(ph), 1.0, 1e-12);
  EXPECT_LE(max_abs_diff(rep.S, ph * expect), 1e-12);
  EXPECT_GT(rep.unitarity_defect, 1.0);
  EXPECT_LE(rep.similarity_error, 1e-12);
  EXPECT_LE(rep.biorth_error, 1e-12);
}

TEST(FiniteSimilarity, SelfAdjointGivesUnitary) {
  const auto rep = verify_theorem1(RMatrix{{1, 0}, {0, 2}});
  EXPECT_LE(rep.unitarity_defect, 1e-14);
  EXPECT_LE(rep.similarity_error, 1e-14);
}

TEST(FiniteSimilarity, RandomRealSpectrum) {
  std::mt19937 rng(77);
  for (int i = 0; i < 20; ++i) {
    const auto rep = verify_theorem1(real_spectrum_matrix(5, rng));
    EXPECT_LE(rep.similarity_error, 1e-8);
    EXPECT_LE(rep.biorth_error, 1e-10);
    EXPECT_LE(rep.intertwining_residual, 1e-8);
    EXPECT_LE(rep.spectrum_match, 1e-8);
  }
}

TEST(FiniteSimilarity, PseudoJacobiSection) {
  // weak coupling keeps the finite section's spectrum real
  const RMatrix h = sectors::pseudo_jacobi({0, 5}, {0.5, 0.1});
  const auto rep = verify_theorem1(h);
  EXPECT_LE(rep.similarity_error, 1e-8);
  EXPECT_LE(rep.biorth_error, 1e-10);
  // at gamma = 0.75 the depth-5 section already has complex eigenvalues
  EXPECT_THROW(verify_theorem1(sectors::pseudo_jacobi({0, 5}, {0.5, 0.75})), Error);
}

TEST(FiniteSimilarity, ScaleInvariance) {
  std::mt19937 rng(5);
  const RMatrix m = real_spectrum_matrix(4, rng);
  const auto a = verify_theorem1(m);
  const auto b = verify_theorem1(3.0 * m);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(b.eigenvalues[i], 3.0 * a.eigenvalues[i], 1e-10);
  EXPECT_LE(b.similarity_error, 1e-8);
}

TEST(FiniteSimilarity, Errors) {
  EXPECT_THROW(verify_theorem1(RMatrix{{0, -1}, {1, 0}}), Error);
  EXPECT_THROW(verify_theorem1(RMatrix{{1, 0}, {0, 1}}), Error);
  EXPECT_THROW(verify_theorem1(CMatrix(2, 3)), Error);
}
