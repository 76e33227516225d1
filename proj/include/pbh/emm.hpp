#pragma once

// Equation-of-motion method: the adjoint action [H, .] of a quadratic boson
// Hamiltonian on the span of ladder operators, the model's 4x4 matrix T with
// its closed-form eigenpairs, the symplectic pairing [f, g], and the 3x3
// secular problem of the su(1,1) adjoint action.

#include <array>
#include <cmath>
#include <vector>

#include "pbh/fock2.hpp"
#include "pbh/linalg.hpp"
#include "pbh/matrix.hpp"
#include "pbh/pseudoboson.hpp"

namespace pbh::emm {

using pseudoboson::ModelParams;

/// H = sum A_ij a*_i a_j + sum B_ij a*_i a*_j + sum C_ij a_i a_j + constant, B and C symmetric.
struct QuadraticHamiltonian {
  std::size_t n_modes = 0;
  CMatrix hopping;          // A
  CMatrix pair_creation;    // B
  CMatrix pair_annihilation;// C
  cplx constant{};

  void validate() const {
    const std::size_t n = n_modes;
    for (const CMatrix* m : {&hopping, &pair_creation, &pair_annihilation})
      if (m->rows() != n || m->cols() != n) throw Error("QuadraticHamiltonian: block size mismatch");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (pair_creation(i, j) != pair_creation(j, i) || pair_annihilation(i, j) != pair_annihilation(j, i))
          throw Error("QuadraticHamiltonian: pair blocks must be symmetric");
  }
};

/// The model as a two-mode quadratic form; mode 0 is a, mode 1 is b.
inline QuadraticHamiltonian model_quadratic(const ModelParams& p) {
  QuadraticHamiltonian h{2, CMatrix(2, 2), CMatrix(2, 2), CMatrix(2, 2), 1.0};
  h.hopping(0, 0) = 1.0 + p.beta;
  h.hopping(1, 1) = 1.0 - p.beta;
  h.pair_creation(0, 1) = h.pair_creation(1, 0) = 0.5 * p.gamma;
  h.pair_annihilation(0, 1) = h.pair_annihilation(1, 0) = -0.5 * p.gamma;
  return h;
}

/// Matrix M with [H, f] = M f for f = sum x_i a*_i + y_i a_i, coordinates ordered (x, y).
inline CMatrix adjoint_action_matrix(const QuadraticHamiltonian& h) {
  h.validate();
  const std::size_t n = h.n_modes;
  CMatrix m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      // [H, a*_k] = sum_i A_ik a*_i + 2 sum_i C_ik a_i
      m(i, k) = h.hopping(i, k);
      m(n + i, k) = 2.0 * h.pair_annihilation(i, k);
      // [H, a_k] = -2 sum_i B_ik a*_i - sum_i A_ki a_i
      m(i, n + k) = -2.0 * h.pair_creation(i, k);
      m(n + i, n + k) = -h.hopping(k, i);
    }
  return m;
}

/// Rows/cols ordered (x_a, x_b, y_a, y_b).
inline RMatrix emm_T_matrix(const ModelParams& p) {
  const double b = p.beta, g = p.gamma;
  return RMatrix{{1 + b, 0, 0, -g}, {0, 1 - b, -g, 0}, {0, -g, -1 - b, 0}, {-g, 0, 0, -1 + b}};
}

struct LadderCombination {
  CVector x;  // creation coefficients
  CVector y;  // annihilation coefficients

  CVector stacked() const {
    CVector v = x;
    v.insert(v.end(), y.begin(), y.end());
    return v;
  }
  LadderCombination scaled(double s) const {
    LadderCombination r = *this;
    for (auto& v : r.x) v *= s;
    for (auto& v : r.y) v *= s;
    return r;
  }
  static LadderCombination from4(double xa, double xb, double ya, double yb) { return {{xa, xb}, {ya, yb}}; }
};

struct EmmEigenpair {
  double lambda = 0.0;
  LadderCombination vec;
};

struct EmmSolution {
  std::array<EmmEigenpair, 4> pairs;  // lambda_1..lambda_4 = -b-r, b-r, -b+r, b+r
  bool degenerate = false;            // gamma == 0: coordinate axes returned
  int max_multiplicity = 1;
};

/// Closed-form eigenpairs of T, unnormalized.
inline EmmSolution emm_eigenpairs(const ModelParams& p) {
  const double b = p.beta, g = p.gamma, r = p.rho();
  EmmSolution s;
  s.pairs[0].lambda = -b - r;
  s.pairs[1].lambda = b - r;
  s.pairs[2].lambda = -b + r;
  s.pairs[3].lambda = b + r;
  if (g == 0.0) {
    s.degenerate = true;
    s.pairs[0].vec = LadderCombination::from4(0, 0, 1, 0);
    s.pairs[1].vec = LadderCombination::from4(0, 0, 0, 1);
    s.pairs[2].vec = LadderCombination::from4(0, 1, 0, 0);
    s.pairs[3].vec = LadderCombination::from4(1, 0, 0, 0);
  } else {
    s.pairs[0].vec = LadderCombination::from4(0, -1 + r, g, 0);
    s.pairs[1].vec = LadderCombination::from4(-1 + r, 0, 0, g);
    s.pairs[2].vec = LadderCombination::from4(0, 1 + r, -g, 0);
    s.pairs[3].vec = LadderCombination::from4(1 + r, 0, 0, -g);
  }
  const double tol = 1e-12 * (std::abs(b) + r);
  for (const auto& pi : s.pairs) {
    int mult = 0;
    for (const auto& pj : s.pairs)
      if (std::abs(pi.lambda - pj.lambda) <= tol) ++mult;
    s.max_multiplicity = std::max(s.max_multiplicity, mult);
  }
  return s;
}

/// Normalized coefficient vectors of c, d, c‡, d‡ (gamma > 0).
struct PseudoBosonCoefficients {
  LadderCombination c, d, c_ddag, d_ddag;
};

inline PseudoBosonCoefficients pseudoboson_coefficients(const ModelParams& p) {
  const double N = p.norm_N();
  const auto s = emm_eigenpairs(p);
  return {s.pairs[0].vec.scaled(N), s.pairs[1].vec.scaled(N), s.pairs[3].vec.scaled(N), s.pairs[2].vec.scaled(N)};
}

/// The scalar [f, g] from the Weyl-Heisenberg relations.
inline cplx symplectic_pairing(const LadderCombination& f, const LadderCombination& g) {
  const std::size_t n = f.x.size();
  if (f.y.size() != n || g.x.size() != n || g.y.size() != n) throw Error("symplectic_pairing: mode count mismatch");
  cplx s{};
  for (std::size_t i = 0; i < n; ++i) s += f.y[i] * g.x[i] - f.x[i] * g.y[i];
  return s;
}

/// The operator sum x_a a* + x_b b* + y_a a + y_b b on a truncation.
inline fock::Operator realize(const LadderCombination& f, fock::TruncationSpec t) {
  if (f.x.size() != 2 || f.y.size() != 2) throw Error("realize: two-mode combination required");
  const auto L = fock::build_ladder_ops(t);
  return f.x[0] * L.a_dag + f.x[1] * L.b_dag + f.y[0] * L.a + f.y[1] * L.b;
}

/// Max masked deviation of [H, X] from lambda_X X over X in {c‡, d‡, c, d}.
inline double operator_eom_deviation(const ModelParams& p, fock::TruncationSpec t, fock::InteriorMask mask = {1}) {
  const auto H = pseudoboson::build_hamiltonian(p, t);
  const auto s = pseudoboson::build_pseudoboson_ops(p, t);
  const double r = p.rho();
  const std::array<std::pair<const fock::Operator*, double>, 4> cases{
      {{&s.c_ddag, p.beta + r}, {&s.d_ddag, -p.beta + r}, {&s.c, -(p.beta + r)}, {&s.d, -(-p.beta + r)}}};
  double worst = 0.0;
  for (const auto& [op, lam] : cases)
    worst = std::max(worst, fock::masked_deviation(fock::commutator(H.h, *op), lam * *op, mask));
  return worst;
}

struct SecularPair {
  double lambda = 0.0;
  std::array<double, 3> vec{};  // coefficients of (A+, A-, A0)
};

struct Su11Secular {
  RMatrix matrix;  // not symmetric
  std::array<SecularPair, 3> pairs;  // +2 rho, -2 rho, 0
  bool degenerate = false;
};

inline Su11Secular su11_secular(double gamma) {
  const double g = gamma, r = std::sqrt(1.0 + g * g);
  Su11Secular s{RMatrix{{2, 0, -2 * g}, {0, -2, -2 * g}, {-g, -g, 0}}, {}, false};
  s.pairs[0].lambda = 2 * r;
  s.pairs[1].lambda = -2 * r;
  s.pairs[2].lambda = 0.0;
  if (g == 0.0) {
    s.degenerate = true;
    s.pairs[0].vec = {1, 0, 0};
    s.pairs[1].vec = {0, 1, 0};
    s.pairs[2].vec = {0, 0, 1};
  } else {
    s.pairs[0].vec = {(1 + r) / g, g / (1 + r), -1};
    s.pairs[1].vec = {(-1 + r) / g, g / (-1 + r), 1};
    s.pairs[2].vec = {g, -g, 1};
  }
  return s;
}

}  // namespace pbh::emm
