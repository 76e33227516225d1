#pragma once

// Casimir sectors H_k = span{|m,n> : m - n = k}. Each sector carries a
// lowest-weight su(1,1) representation in which the model Hamiltonian is a
// pseudo-Jacobi (tridiagonal, antisymmetric off-diagonal) matrix.
//
// Sector coordinates: chain state j is |j + max(k,0), j + max(-k,0)>.
// Finite sections corrupt the last row(s) of commutator and product
// identities, so those are compared on interior rows only.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "pbh/fock2.hpp"
#include "pbh/linalg.hpp"
#include "pbh/matrix.hpp"
#include "pbh/pseudoboson.hpp"

namespace pbh::sectors {

using pseudoboson::ModelParams;

struct SectorSpec {
  int k = 0;
  std::size_t depth = 1;

  std::size_t abs_k() const { return static_cast<std::size_t>(std::abs(k)); }
};

/// Length of the sector-k chain inside a truncation (0 if the sector is absent).
inline std::size_t sector_depth_in(fock::TruncationSpec t, int k) {
  const long na = static_cast<long>(t.n_max_a), nb = static_cast<long>(t.n_max_b);
  const long top = k >= 0 ? std::min(na - k, nb) : std::min(na, nb + k);
  return top < 0 ? 0 : static_cast<std::size_t>(top + 1);
}

inline std::vector<std::size_t> sector_basis(const SectorSpec& s, fock::TruncationSpec t) {
  if (s.depth > sector_depth_in(t, s.k))
    throw Error("sector_basis: sector k=" + std::to_string(s.k) + " holds only " +
                std::to_string(sector_depth_in(t, s.k)) + " states in this truncation");
  const std::size_t dm = s.k > 0 ? s.abs_k() : 0, dn = s.k < 0 ? s.abs_k() : 0;
  std::vector<std::size_t> idx(s.depth);
  for (std::size_t j = 0; j < s.depth; ++j) idx[j] = t.index(j + dm, j + dn);
  return idx;
}

struct CasimirOperators {
  fock::Operator label;     // a*a - b*b, eigenvalue m - n
  fock::Operator casimir;   // (a*a - b*b - 1)(a*a - b*b + 1), eigenvalue (m - n)^2 - 1
};

inline CasimirOperators casimir_full(fock::TruncationSpec t) {
  const auto L = fock::build_ladder_ops(t);
  const auto id = fock::Operator::identity(t);
  fock::Operator label = L.a_dag * L.a - L.b_dag * L.b;
  fock::Operator c = (label - id) * (label + id);
  return {std::move(label), std::move(c)};
}

/// Chain coupling sqrt((j+1)(|k|+j+1)) between states j and j+1.
inline double chain_coupling(std::size_t abs_k, std::size_t j) {
  return std::sqrt(static_cast<double>((j + 1) * (abs_k + j + 1)));
}

struct Su11Generators {
  RMatrix plus, minus, zero;
  bool primed = false;
};

inline Su11Generators su11_generators(const SectorSpec& s, bool primed = false) {
  if (s.depth < 2) throw Error("su11_generators: depth must be at least 2");
  const std::size_t d = s.depth, K = s.abs_k();
  RMatrix lower(d, d), a0(d, d);
  for (std::size_t j = 0; j + 1 < d; ++j) lower(j + 1, j) = chain_coupling(K, j);
  for (std::size_t j = 0; j < d; ++j) a0(j, j) = static_cast<double>(K + 1 + 2 * j);
  if (!primed) return {lower, lower.transpose(), a0, false};
  // A'+ carries the lowering pattern above the diagonal, A'0 = -A0
  RMatrix upper = lower.transpose();
  return {upper, lower, -a0, true};
}

/// Max deviation of [-,+] = 0, [0,+] = 2+, [0,-] = -2- on rows below depth - margin.
inline double su11_cr_deviation(const RMatrix& plus, const RMatrix& minus, const RMatrix& zero, std::size_t margin = 1) {
  auto comm = [](const RMatrix& x, const RMatrix& y) { return x * y - y * x; };
  const RMatrix e1 = comm(minus, plus) - zero;
  const RMatrix e2 = comm(zero, plus) - 2.0 * plus;
  const RMatrix e3 = comm(zero, minus) + 2.0 * minus;
  const std::size_t rows = plus.rows() > margin ? plus.rows() - margin : 0;
  double worst = 0.0;
  for (const RMatrix* e : {&e1, &e2, &e3})
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < e->cols(); ++j) worst = std::max(worst, std::abs((*e)(i, j)));
  return worst;
}

/// H restricted to sector k: diag beta k + |k| + 1 + 2j, sub +gamma c_j, super -gamma c_j.
inline RMatrix pseudo_jacobi(const SectorSpec& s, const ModelParams& p) {
  if (s.depth < 1) throw Error("pseudo_jacobi: depth must be at least 1");
  const std::size_t d = s.depth, K = s.abs_k();
  RMatrix h(d, d);
  for (std::size_t j = 0; j < d; ++j) h(j, j) = p.beta * s.k + static_cast<double>(K + 1 + 2 * j);
  for (std::size_t j = 0; j + 1 < d; ++j) {
    const double c = p.gamma * chain_coupling(K, j);
    h(j + 1, j) = c;
    h(j, j + 1) = -c;
  }
  return h;
}

/// max |H^T - e^{i pi/2 A0} H e^{-i pi/2 A0}|
inline double transpose_similarity_check(const SectorSpec& s, const ModelParams& p) {
  const RMatrix h = pseudo_jacobi(s, p);
  const std::size_t d = s.depth, K = s.abs_k();
  static constexpr std::array<cplx, 4> ipow{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
  CMatrix u(d, d);
  for (std::size_t j = 0; j < d; ++j) u(j, j) = ipow[(K + 1 + 2 * j) % 4];
  const CMatrix conj = u * to_complex(h) * u.adjoint();
  return max_abs_diff(to_complex(h.transpose()), conj);
}

struct BGenerators {
  RMatrix plus, minus, zero;
};

inline BGenerators b_generators(const SectorSpec& s, double gamma) {
  if (gamma == 0.0) throw Error("b_generators: gamma = 0 makes the B- coefficient singular");
  const auto A = su11_generators(s);
  const double g = gamma, r = std::sqrt(1.0 + g * g), f = g / (2.0 * r);
  RMatrix bp = f * (((1 + r) / g) * A.plus + (g / (1 + r)) * A.minus - A.zero);
  RMatrix bm = f * (((-1 + r) / g) * A.plus + (g / (-1 + r)) * A.minus + A.zero);
  RMatrix b0 = (1.0 / r) * (A.zero + g * (A.plus - A.minus));
  return {std::move(bp), std::move(bm), std::move(b0)};
}

/// Components (-alpha)^j sqrt(binom(|k|+j, j)) in sector coordinates.
inline RVector lowest_weight_vector(const SectorSpec& s, double gamma) {
  if (gamma < 0.0) throw Error("lowest_weight_vector: gamma must be nonnegative");
  const double al = ModelParams{0.0, gamma}.alpha();
  const std::size_t K = s.abs_k();
  RVector v(s.depth);
  double binom = 1.0, pw = 1.0;
  for (std::size_t j = 0; j < s.depth; ++j) {
    if (j > 0) binom *= static_cast<double>(K + j) / static_cast<double>(j);
    v[j] = ((j % 2) ? -pw : pw) * std::sqrt(binom);
    pw *= al;
  }
  return v;
}

struct CasimirReduction {
  double b_deviation = 0.0;  // B0^2 - 2 B0 - 4 B+ B- vs (k^2 - 1) I
  double a_deviation = 0.0;  // A0^2 - 2 A0 - 4 A+ A- vs (k^2 - 1) I
  double max() const { return std::max(b_deviation, a_deviation); }
};

inline double casimir_deviation(const RMatrix& plus, const RMatrix& minus, const RMatrix& zero, int k, std::size_t margin) {
  const std::size_t d = zero.rows();
  const RMatrix c = zero * zero - 2.0 * zero - 4.0 * (plus * minus);
  const double target = static_cast<double>(k) * k - 1.0;
  double worst = 0.0;
  const std::size_t rows = d > margin ? d - margin : 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < d; ++j) worst = std::max(worst, std::abs(c(i, j) - (i == j ? target : 0.0)));
  return worst;
}

inline CasimirReduction casimir_reduction_check(const SectorSpec& s, double gamma, std::size_t margin = 2) {
  const auto A = su11_generators(s);
  const auto B = b_generators(s, gamma);
  return {casimir_deviation(B.plus, B.minus, B.zero, s.k, margin), casimir_deviation(A.plus, A.minus, A.zero, s.k, margin)};
}

/// beta k + rho (|k| + 1 + 2n)
inline double sector_energy(const ModelParams& p, int k, int n) {
  return p.beta * k + p.rho() * static_cast<double>(std::abs(k) + 1 + 2 * n);
}

struct SectorSpectrum {
  SectorSpec spec;
  linalg::EigenReport report;  // lowest n_eigs values (by real part) with residuals
  RVector targets;
  RVector abs_errors;
  double max_error() const {
    double w = 0.0;
    for (double e : abs_errors) w = std::max(w, e);
    return w;
  }
};

inline SectorSpectrum sector_spectrum(const SectorSpec& s, const ModelParams& p, std::size_t n_eigs) {
  if (n_eigs > s.depth) throw Error("sector_spectrum: n_eigs exceeds depth");
  const RMatrix h = pseudo_jacobi(s, p);
  linalg::EigenReport full = linalg::eig_dense(h);
  if (!full.converged)
    throw Error("sector_spectrum: QR iteration did not converge for k=" + std::to_string(s.k) +
                " depth=" + std::to_string(s.depth) + " after " + std::to_string(full.iterations) + " iterations");
  SectorSpectrum out{s, {}, {}, {}};
  out.report.iterations = full.iterations;
  out.report.values.assign(full.values.begin(), full.values.begin() + static_cast<long>(n_eigs));
  const CMatrix hc = to_complex(h);
  CMatrix vecs(s.depth, n_eigs);
  for (std::size_t i = 0; i < n_eigs; ++i) {
    const CVector v = linalg::inverse_iteration(hc, out.report.values[i]);
    vecs.set_col(i, v);
    out.report.residuals.push_back(linalg::residual(hc, out.report.values[i], v));
    out.targets.push_back(sector_energy(p, s.k, static_cast<int>(i)));
    out.abs_errors.push_back(std::abs(out.report.values[i] - out.targets.back()));
  }
  out.report.vectors = std::move(vecs);
  return out;
}

struct ConvergedSpectrum {
  std::vector<SectorSpectrum> steps;  // one per depth tried
  bool converged = false;             // successive lists agreed within tol
  const SectorSpectrum& final() const { return steps.back(); }
};

/// Depth doubling from start_depth until successive lowest-n_eigs lists differ by < tol.
inline ConvergedSpectrum sector_spectrum_converged(int k, const ModelParams& p, std::size_t n_eigs,
                                                   std::size_t start_depth, std::size_t max_depth, double tol = 1e-8) {
  ConvergedSpectrum out;
  for (std::size_t d = start_depth; d <= max_depth; d *= 2) {
    out.steps.push_back(sector_spectrum({k, d}, p, n_eigs));
    if (out.steps.size() >= 2) {
      const auto& a = out.steps[out.steps.size() - 2].report.values;
      const auto& b = out.steps.back().report.values;
      double diff = 0.0;
      for (std::size_t i = 0; i < n_eigs; ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
      if (diff < tol) {
        out.converged = true;
        break;
      }
    }
  }
  return out;
}

/// Max |H_full restricted to the sector chain - pseudo_jacobi|; zero when the truncation is a direct sum of sectors.
inline double sector_block_deviation(const ModelParams& p, fock::TruncationSpec t, int k) {
  const SectorSpec s{k, sector_depth_in(t, k)};
  const auto idx = sector_basis(s, t);
  const auto H = pseudoboson::build_hamiltonian(p, t);
  const RMatrix pj = pseudo_jacobi(s, p);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.depth; ++i)
    for (std::size_t j = 0; j < s.depth; ++j) worst = std::max(worst, std::abs(H.h(idx[i], idx[j]) - pj(i, j)));
  return worst;
}

/// Union of the eigenvalues of every sector section contained in the truncation.
inline CVector sector_union_spectrum(const ModelParams& p, fock::TruncationSpec t) {
  CVector all;
  const int lo = -static_cast<int>(t.n_max_b), hi = static_cast<int>(t.n_max_a);
  for (int k = lo; k <= hi; ++k) {
    const std::size_t d = sector_depth_in(t, k);
    if (d == 0) continue;
    const auto rep = linalg::eig_dense(pseudo_jacobi({k, d}, p));
    if (!rep.converged) throw Error("sector_union_spectrum: eigensolver failed in sector " + std::to_string(k));
    all.insert(all.end(), rep.values.begin(), rep.values.end());
  }
  std::sort(all.begin(), all.end(), linalg::eig_less);
  return all;
}

// --- self-adjoint variant gamma -> i lambda -------------------------------

/// Hermitian sector matrix with sub-diagonal i lambda c_j and super-diagonal -i lambda c_j.
inline CMatrix hermitian_variant_matrix(int k, double beta, double lambda, std::size_t depth) {
  const std::size_t K = static_cast<std::size_t>(std::abs(k));
  CMatrix h(depth, depth);
  for (std::size_t j = 0; j < depth; ++j) h(j, j) = beta * k + static_cast<double>(K + 1 + 2 * j);
  for (std::size_t j = 0; j + 1 < depth; ++j) {
    const double c = lambda * chain_coupling(K, j);
    h(j + 1, j) = cplx(0, c);
    h(j, j + 1) = cplx(0, -c);
  }
  return h;
}

/// The same matrix after diagonal phase conjugation: real symmetric tridiagonal.
inline std::pair<RVector, RVector> hermitian_variant_tridiag(int k, double beta, double lambda, std::size_t depth) {
  const std::size_t K = static_cast<std::size_t>(std::abs(k));
  RVector d(depth), e(depth ? depth - 1 : 0);
  for (std::size_t j = 0; j < depth; ++j) d[j] = beta * k + static_cast<double>(K + 1 + 2 * j);
  for (std::size_t j = 0; j + 1 < depth; ++j) e[j] = lambda * chain_coupling(K, j);
  return {std::move(d), std::move(e)};
}

struct StabilityPoint {
  std::size_t depth = 0;
  double lowest = 0.0;
  RVector low_spectrum;  // up to the lowest 5 eigenvalues
};

struct StabilityScan {
  int k = 0;
  double beta = 0.0;
  double lambda = 0.0;
  bool bounded = false;   // |lambda| < 1
  double analytic_lowest = std::numeric_limits<double>::quiet_NaN();  // beta k + sqrt(1 - lambda^2)(|k|+1) when bounded
  std::vector<StabilityPoint> points;
};

inline StabilityScan hermitian_variant_scan(int k, double beta, double lambda, const std::vector<std::size_t>& depths) {
  StabilityScan scan{k, beta, lambda, std::abs(lambda) < 1.0, std::numeric_limits<double>::quiet_NaN(), {}};
  if (scan.bounded) scan.analytic_lowest = beta * k + std::sqrt(1.0 - lambda * lambda) * (std::abs(k) + 1);
  for (std::size_t d : depths) {
    if (d == 0) throw Error("hermitian_variant_scan: depth must be positive");
    const auto [diag, off] = hermitian_variant_tridiag(k, beta, lambda, d);
    const auto rep = linalg::eig_sym_tridiag(diag, off);
    if (!rep.converged) throw Error("hermitian_variant_scan: tridiagonal QL failed at depth " + std::to_string(d));
    StabilityPoint pt{d, rep.values.front().real(), {}};
    for (std::size_t i = 0; i < std::min<std::size_t>(5, rep.values.size()); ++i) pt.low_spectrum.push_back(rep.values[i].real());
    scan.points.push_back(std::move(pt));
  }
  return scan;
}

}  // namespace pbh::sectors
