#pragma once

// The two-boson model H = a*a + bb* + beta (a*a - b*b) + gamma (a*b* - ab),
// its pseudo-boson operators, biorthogonal eigenbases, and the phase
// similarity taking H to its adjoint.
//
// Conventions: the Fock basis is orthonormal, so <Phi_0, Phi_0> = 1, and the
// eigenvectors Psi_{m,n} = c‡^m d‡^n Psi_0 are built from raw powers (no
// 1/sqrt(m! n!)), which keeps the m! n! factors in the biorthogonality grid.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pbh/fock2.hpp"
#include "pbh/matrix.hpp"

namespace pbh::pseudoboson {

using fock::FockVector;
using fock::InteriorMask;
using fock::Operator;
using fock::TruncationSpec;

struct ModelParams {
  double beta = 0.5;
  double gamma = 0.75;

  double rho() const { return std::sqrt(1.0 + gamma * gamma); }
  /// gamma / (1 + rho); equals (rho - 1) / gamma for gamma != 0.
  double alpha() const { return gamma / (1.0 + rho()); }
  /// (2 gamma rho)^(-1/2), defined for gamma > 0.
  double norm_N() const {
    if (!(gamma > 0.0)) throw Error("ModelParams: normalization requires gamma > 0");
    return 1.0 / std::sqrt(2.0 * gamma * rho());
  }
};

struct Hamiltonian {
  Operator h;
  Operator h_adj;
};

inline Hamiltonian build_hamiltonian(const ModelParams& p, TruncationSpec t) {
  const auto L = fock::build_ladder_ops(t);
  const Operator id = Operator::identity(t);
  const Operator na = L.a_dag * L.a;
  const Operator nb = L.b_dag * L.b;
  // bb* enters as b*b + 1 so the diagonal stays exact at the truncation edge.
  Operator h = na + (nb + id) + p.beta * (na - nb) + p.gamma * (L.a_dag * L.b_dag - L.a * L.b);
  Operator h_adj = h.adjoint();
  return {std::move(h), std::move(h_adj)};
}

struct PseudoBosonSet {
  Operator c, d, c_ddag, d_ddag;
  bool degenerate = false;  // gamma == 0: ordinary bosons returned
};

inline PseudoBosonSet build_pseudoboson_ops(const ModelParams& p, TruncationSpec t) {
  if (p.gamma < 0.0)
    throw Error("build_pseudoboson_ops: gamma < 0 is not supported (normalization undefined)");
  auto L = fock::build_ladder_ops(t);
  if (p.gamma == 0.0) return {L.a, L.b, L.a_dag, L.b_dag, true};
  const double N = p.norm_N();
  const double r = p.rho();
  const double g = p.gamma;
  Operator c = N * ((r - 1.0) * L.b_dag + g * L.a);
  Operator d = N * ((r - 1.0) * L.a_dag + g * L.b);
  Operator d_ddag = N * ((1.0 + r) * L.b_dag - g * L.a);
  Operator c_ddag = N * ((1.0 + r) * L.a_dag - g * L.b);
  return {std::move(c), std::move(d), std::move(c_ddag), std::move(d_ddag), false};
}

/// Max deviation of all pairwise commutators among {c, d, c‡, d‡} from the
/// Weyl-Heisenberg pattern, on the interior mask.
inline double weyl_heisenberg_deviation(const PseudoBosonSet& s, InteriorMask mask = {1}) {
  const std::array<const Operator*, 4> ops{&s.c, &s.d, &s.c_ddag, &s.d_ddag};
  const TruncationSpec t = s.c.trunc();
  const Operator id = Operator::identity(t);
  const Operator zero(t);
  double worst = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i; j < ops.size(); ++j) {
      // [c, c‡] = [d, d‡] = 1
      const bool unit = (i == 0 && j == 2) || (i == 1 && j == 3);
      worst = std::max(worst, fock::masked_deviation(fock::commutator(*ops[i], *ops[j]), unit ? id : zero, mask));
    }
  return worst;
}

/// beta (c‡c - d‡d) + rho (c‡c + d d‡)
inline Operator diagonal_form(const ModelParams& p, const PseudoBosonSet& s) {
  const Operator nc = s.c_ddag * s.c;
  const Operator nd = s.d_ddag * s.d;
  return p.beta * (nc - nd) + p.rho() * (nc + s.d * s.d_ddag);
}

inline double diagonal_form_check(const ModelParams& p, TruncationSpec t) {
  const auto s = build_pseudoboson_ops(p, t);
  const auto H = build_hamiltonian(p, t);
  return fock::masked_deviation(H.h, diagonal_form(p, s), {1});
}

/// E_{m,n} = rho + m (beta + rho) + n (rho - beta)
inline double energy(const ModelParams& p, int m, int n) {
  if (m < 0 || n < 0) throw Error("energy: occupations must be nonnegative");
  const double r = p.rho();
  return r + m * (p.beta + r) + n * (r - p.beta);
}

struct Vacua {
  FockVector psi0;        // exp(-alpha a*b*) |0,0>, annihilated by c and d
  FockVector psi0_prime;  // exp(+alpha a*b*) |0,0>, annihilated by c‡* and d‡*
};

inline Vacua build_vacua(const ModelParams& p, TruncationSpec t) {
  const double al = p.alpha();
  FockVector v(t), w(t);
  const std::size_t top = std::min(t.n_max_a, t.n_max_b);
  double pw = 1.0;
  for (std::size_t n = 0; n <= top; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    v.at(n, n) = sign * pw;
    w.at(n, n) = pw;
    pw *= al;
  }
  return {std::move(v), std::move(w)};
}

/// Smallest square truncation depth N with alpha^(N - excitations) < tol.
inline std::size_t required_depth(const ModelParams& p, int excitations, double tol) {
  const double al = std::abs(p.alpha());
  std::size_t extra = 1;
  if (al > 0.0) extra = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log(tol) / std::log(al))) + 1);
  return static_cast<std::size_t>(excitations) + extra;
}

inline constexpr double kEigenTailTol = 1e-10;
inline constexpr double kBiorthTailTol = 1e-12;

inline void require_tail(const ModelParams& p, TruncationSpec t, int excitations, double tol, const char* who) {
  const std::size_t depth = std::min(t.n_max_a, t.n_max_b);
  const std::size_t need = required_depth(p, excitations, tol);
  if (depth < need)
    throw Error(std::string(who) + ": truncation too shallow, need min(n_max_a, n_max_b) >= " + std::to_string(need) +
                " (have " + std::to_string(depth) + ")");
}

/// Psi_{m,n} = c‡^m d‡^n Psi_0, or with primed = true, Psi'_{m,n} = c*^m d*^n Psi'_0.
/// Variant reusing prebuilt operators and vacua; the caller owns the tail check.
inline FockVector eigenvector(const PseudoBosonSet& s, const Vacua& vac, int m, int n, bool primed = false) {
  if (m < 0 || n < 0) throw Error("eigenvector: occupations must be nonnegative");
  const Operator up_c = primed ? s.c.adjoint() : s.c_ddag;
  const Operator up_d = primed ? s.d.adjoint() : s.d_ddag;
  FockVector v = primed ? vac.psi0_prime : vac.psi0;
  for (int k = 0; k < n; ++k) v = fock::apply(up_d, v);
  for (int k = 0; k < m; ++k) v = fock::apply(up_c, v);
  return v;
}

inline FockVector eigenvector(const ModelParams& p, int m, int n, TruncationSpec t, bool primed = false) {
  if (m < 0 || n < 0) throw Error("eigenvector: occupations must be nonnegative");
  require_tail(p, t, m + n, kEigenTailTol, "eigenvector");
  return eigenvector(build_pseudoboson_ops(p, t), build_vacua(p, t), m, n, primed);
}

struct BiorthReport {
  int m_max = 0;
  int n_max = 0;
  CMatrix gram;  // gram(idx(m,n), idx(p,q)) = <Psi'_{p,q}, Psi_{m,n}>, idx(m,n) = m (n_max+1) + n
  cplx scale;    // <Psi'_0, Psi_0>
  double max_offdiag = 0.0;
  double max_diag_error = 0.0;

  std::size_t index(int m, int n) const { return static_cast<std::size_t>(m * (n_max + 1) + n); }
  cplx at(int m, int n, int p, int q) const { return gram(index(m, n), index(p, q)); }
};

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline BiorthReport biorthogonality_matrix(const ModelParams& p, int m_max, int n_max, TruncationSpec t) {
  if (m_max < 0 || n_max < 0) throw Error("biorthogonality_matrix: negative grid size");
  require_tail(p, t, m_max + n_max, kBiorthTailTol, "biorthogonality_matrix");
  const auto s = build_pseudoboson_ops(p, t);
  const auto vac = build_vacua(p, t);
  const Operator cs = s.c.adjoint();
  const Operator ds = s.d.adjoint();

  BiorthReport rep;
  rep.m_max = m_max;
  rep.n_max = n_max;
  const std::size_t cells = static_cast<std::size_t>((m_max + 1) * (n_max + 1));
  std::vector<FockVector> right, left;
  right.reserve(cells);
  left.reserve(cells);
  // powers built incrementally: column n via d‡ / d*, then rows m via c‡ / c*
  FockVector rd = vac.psi0, ld = vac.psi0_prime;
  std::vector<FockVector> rcol, lcol;
  for (int n = 0; n <= n_max; ++n) {
    rcol.push_back(rd);
    lcol.push_back(ld);
    rd = fock::apply(s.d_ddag, rd);
    ld = fock::apply(ds, ld);
  }
  std::vector<FockVector> rgrid(cells, FockVector(t)), lgrid(cells, FockVector(t));
  for (int n = 0; n <= n_max; ++n) {
    FockVector r = rcol[n], l = lcol[n];
    for (int m = 0; m <= m_max; ++m) {
      rgrid[rep.index(m, n)] = r;
      lgrid[rep.index(m, n)] = l;
      r = fock::apply(s.c_ddag, r);
      l = fock::apply(cs, l);
    }
  }
  rep.scale = fock::inner_product(vac.psi0_prime, vac.psi0);
  rep.gram = CMatrix(cells, cells);
  for (int m = 0; m <= m_max; ++m)
    for (int n = 0; n <= n_max; ++n)
      for (int pp = 0; pp <= m_max; ++pp)
        for (int q = 0; q <= n_max; ++q) {
          const cplx g = fock::inner_product(lgrid[rep.index(pp, q)], rgrid[rep.index(m, n)]);
          rep.gram(rep.index(m, n), rep.index(pp, q)) = g;
          if (m == pp && n == q)
            rep.max_diag_error = std::max(rep.max_diag_error, std::abs(g - factorial(m) * factorial(n) * rep.scale));
          else
            rep.max_offdiag = std::max(rep.max_offdiag, std::abs(g));
        }
  return rep;
}

/// S |m,n> = exp(-i pi (m+n) / 2) |m,n>
inline Operator phase_operator(TruncationSpec t) {
  Operator s(t);
  static constexpr std::array<cplx, 4> powers{cplx{1, 0}, cplx{0, -1}, cplx{-1, 0}, cplx{0, 1}};
  for (std::size_t i = 0; i < t.dim(); ++i) {
    const auto [m, n] = t.occupation(i);
    s(i, i) = powers[(m + n) % 4];
  }
  return s;
}

/// max |H* - S H S^-1|
inline double similarity_check(const ModelParams& p, TruncationSpec t) {
  const auto H = build_hamiltonian(p, t);
  const Operator s = phase_operator(t);
  const Operator conj = s * H.h * s.adjoint();
  return max_abs_diff(H.h_adj.matrix(), conj.matrix());
}

struct SpectrumTable {
  int m_max = 0;
  int n_max = 0;
  std::vector<std::vector<double>> grid;  // grid[m][n] = E_{m,n}; row m is the m-th diagonal block

  const std::vector<double>& block(int k) const { return grid.at(static_cast<std::size_t>(k)); }
};

inline SpectrumTable spectrum_table(const ModelParams& p, int m_max, int n_max) {
  if (m_max < 0 || n_max < 0) throw Error("spectrum_table: negative grid size");
  SpectrumTable tab{m_max, n_max, {}};
  tab.grid.assign(static_cast<std::size_t>(m_max + 1), std::vector<double>(static_cast<std::size_t>(n_max + 1)));
  for (int m = 0; m <= m_max; ++m)
    for (int n = 0; n <= n_max; ++n) tab.grid[m][n] = energy(p, m, n);
  return tab;
}

/// Diagonal of diag(rho, beta+2rho, 2beta+3rho, ...) (x) I + I (x) diag(0, rho-beta, 2(rho-beta), ...).
inline std::vector<double> kronecker_sum_diagonal(const ModelParams& p, int m_max, int n_max) {
  const double r = p.rho();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>((m_max + 1) * (n_max + 1)));
  for (int m = 0; m <= m_max; ++m)
    for (int n = 0; n <= n_max; ++n) out.push_back((m * p.beta + (m + 1) * r) + n * (r - p.beta));
  return out;
}

}  // namespace pbh::pseudoboson
