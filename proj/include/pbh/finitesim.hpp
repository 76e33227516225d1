#pragma once

// Numerical check of the finite-dimensional statement: a non-self-adjoint
// matrix with distinct real eigenvalues shares its spectrum with its adjoint,
// the two eigenbases can be biorthonormalized, and S defined by psi_i = S phi_i
// intertwines them, M* S = S M.
//
// S is reported together with ||S*S - 1||. The constructed S is generally not
// unitary ([[1,1],[0,2]] gives S = [[1,-1],[-1,2]]), so unitarity is measured,
// never asserted.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pbh/linalg.hpp"
#include "pbh/matrix.hpp"

namespace pbh::finitesim {

struct Theorem1Report {
  RVector eigenvalues;          // real parts, ascending
  double max_imag = 0.0;        // max |Im lambda|
  bool spectrum_real = false;
  double spectrum_match = 0.0;  // Hausdorff distance between sigma(M) and sigma(M*)
  double biorth_error = 0.0;    // max |<psi_i, phi_j> - delta_ij|
  double similarity_error = 0.0;// ||M* - S M S^-1||_F / ||M||_F
  double intertwining_residual = 0.0;  // max_i ||M* S phi_i - lambda_i S phi_i|| / ||S phi_i||
  double unitarity_defect = 0.0;       // ||S* S - 1||_F
  CMatrix S;
  CMatrix phi;
  CMatrix psi;
};

inline constexpr double kMinGapFactor = 1e-8;

inline Theorem1Report verify_theorem1(const CMatrix& m, double real_tol = 1e-8) {
  if (!m.square() || m.rows() == 0) throw Error("verify_theorem1: matrix must be square and nonempty");
  const std::size_t n = m.rows();
  const double mnorm = frobenius_norm(m);
  const CMatrix madj = m.adjoint();

  const auto right = linalg::eig_dense(m, {.want_vectors = true});
  if (!right.converged) throw Error("verify_theorem1: eigensolver did not converge on M");

  Theorem1Report rep;
  for (const cplx z : right.values) rep.max_imag = std::max(rep.max_imag, std::abs(z.imag()));
  rep.spectrum_real = rep.max_imag <= real_tol;
  if (!rep.spectrum_real)
    throw Error("verify_theorem1: spectrum is not real (max |Im lambda| = " + std::to_string(rep.max_imag) + ")");
  rep.eigenvalues = right.real_values();
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n; ++i) gap = std::min(gap, rep.eigenvalues[i] - rep.eigenvalues[i - 1]);
  if (n > 1 && gap <= kMinGapFactor * mnorm)
    throw Error("verify_theorem1: eigenvalues are not distinct (min gap " + std::to_string(gap) + ")");

  const auto left = linalg::eig_dense(madj, {.want_vectors = true});
  if (!left.converged) throw Error("verify_theorem1: eigensolver did not converge on M*");
  rep.spectrum_match = linalg::hausdorff_distance(right.values, left.values);

  // pair psi_i with phi_i by eigenvalue proximity, injective greedy
  std::vector<bool> used(n, false);
  CMatrix psi(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = n;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j] && std::abs(right.values[i] - left.values[j]) < bd) {
        bd = std::abs(right.values[i] - left.values[j]);
        best = j;
      }
    used[best] = true;
    psi.set_col(i, left.vectors->col(best));
  }

  const auto bi = linalg::biorthonormalize(*right.vectors, psi);
  rep.phi = bi.phi;
  rep.psi = bi.psi;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rep.biorth_error = std::max(rep.biorth_error, std::abs(bi.gram(i, j) - (i == j ? 1.0 : 0.0)));

  rep.S = rep.psi * linalg::inverse(rep.phi);
  const CMatrix conj = rep.S * m * linalg::inverse(rep.S);
  rep.similarity_error = frobenius_norm(madj - conj) / mnorm;
  for (std::size_t i = 0; i < n; ++i) {
    const CVector sphi = rep.S * rep.phi.col(i);
    rep.intertwining_residual = std::max(rep.intertwining_residual, linalg::residual(madj, rep.eigenvalues[i], sphi));
  }
  rep.unitarity_defect = frobenius_norm(rep.S.adjoint() * rep.S - CMatrix::identity(n));
  return rep;
}

inline Theorem1Report verify_theorem1(const RMatrix& m, double real_tol = 1e-8) {
  return verify_theorem1(to_complex(m), real_tol);
}

}  // namespace pbh::finitesim
