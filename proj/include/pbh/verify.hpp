#pragma once

// Named verification suites. Each suite runs module operations and compares
// the results with closed forms at fixed tolerances; the CLI only serializes
// what these return.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pbh/emm.hpp"
#include "pbh/finitesim.hpp"
#include "pbh/fock2.hpp"
#include "pbh/linalg.hpp"
#include "pbh/pseudoboson.hpp"
#include "pbh/sectors.hpp"

namespace pbh::verify {

using pseudoboson::ModelParams;

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool lower_bound = false;  // passes when value > threshold instead of value <= threshold

  bool passed() const { return lower_bound ? value > threshold : value <= threshold; }
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed()) return &c;
    return nullptr;
  }
  /// Largest value among the upper-bound checks.
  double max_deviation() const {
    double w = 0.0;
    for (const auto& c : checks)
      if (!c.lower_bound) w = std::max(w, c.value);
    return w;
  }
  void add(std::string n, double v, double thr, bool lower = false) { checks.push_back({std::move(n), v, thr, lower}); }
};

struct Tolerances {
  double emm = 1e-10;
  double emm_residual = 1e-12;
  double commutator = 1e-10;
  double eom = 1e-9;
  double diagonal = 1e-10;
  double eigen_residual = 1e-8;
  double biorth = 1e-9;
  double similarity = 1e-13;
  double sector = 1e-6;
  double sector_union = 1e-8;
  double su11 = 1e-10;
  double casimir = 1e-9;
  double lowest_weight = 1e-8;
  double stability = 1e-6;
  double theorem1_similarity = 1e-8;
  double theorem1_biorth = 1e-10;
};

inline SuiteReport emm_suite(const ModelParams& p, const Tolerances& tol = {}) {
  SuiteReport r{"emm", {}};
  const RMatrix T = emm::emm_T_matrix(p);
  r.add("adjoint_action_equals_T", max_abs_diff(emm::adjoint_action_matrix(emm::model_quadratic(p)), to_complex(T)), 0.0);
  const auto sol = emm::emm_eigenpairs(p);
  CVector closed;
  double res = 0.0, jacobi = 0.0;
  for (const auto& e : sol.pairs) {
    closed.emplace_back(e.lambda);
    res = std::max(res, linalg::residual(T, e.lambda, e.vec.stacked()));
  }
  for (const auto& e : sol.pairs)
    for (const auto& f : sol.pairs) jacobi = std::max(jacobi, std::abs((e.lambda + f.lambda) * emm::symplectic_pairing(e.vec, f.vec)));
  r.add("numeric_vs_closed_eigenvalues", linalg::multiset_distance(linalg::eig_dense(T).values, closed), tol.emm);
  r.add("closed_form_residual", res, tol.emm_residual);
  r.add("jacobi_pairing", jacobi, tol.emm_residual);
  if (p.gamma > 0.0) {
    const auto co = emm::pseudoboson_coefficients(p);
    r.add("pairing_c_cddag_minus_1", std::abs(emm::symplectic_pairing(co.c, co.c_ddag) - 1.0), tol.emm_residual);
    r.add("pairing_d_dddag_minus_1", std::abs(emm::symplectic_pairing(co.d, co.d_ddag) - 1.0), tol.emm_residual);
  }
  const auto sec = emm::su11_secular(p.gamma);
  double sres = 0.0;
  for (const auto& e : sec.pairs) {
    const CVector v{e.vec[0], e.vec[1], e.vec[2]};
    sres = std::max(sres, linalg::residual(sec.matrix, e.lambda, v));
  }
  r.add("su11_secular_residual", sres, tol.emm_residual);
  return r;
}

inline SuiteReport commutator_suite(const ModelParams& p, std::size_t trunc, const Tolerances& tol = {}) {
  SuiteReport r{"commutators", {}};
  const auto t = fock::TruncationSpec::square(trunc);
  const auto L = fock::build_ladder_ops(t);
  const fock::Operator id = fock::Operator::identity(t);
  r.add("ladder_a_ad_interior", fock::masked_deviation(fock::commutator(L.a, L.a_dag), id, {1}), tol.commutator);
  r.add("ladder_b_bd_interior", fock::masked_deviation(fock::commutator(L.b, L.b_dag), id, {1}), tol.commutator);
  r.add("ladder_a_bd_exact", max_abs(fock::commutator(L.a, L.b_dag).matrix()), 0.0);
  const auto s = pseudoboson::build_pseudoboson_ops(p, t);
  r.add("pseudoboson_weyl_heisenberg", pseudoboson::weyl_heisenberg_deviation(s), tol.commutator);
  if (p.gamma > 0.0) {
    r.add("operator_eom", emm::operator_eom_deviation(p, t), tol.eom);
    r.add("c_ddag_differs_from_c_adjoint", max_abs_diff(s.c_ddag.matrix(), s.c.adjoint().matrix()), 0.0, true);
  }
  r.add("diagonal_form", pseudoboson::diagonal_form_check(p, t), tol.diagonal);
  const auto cas = sectors::casimir_full(t);
  const auto H = pseudoboson::build_hamiltonian(p, t);
  r.add("casimir_commutes_with_H", max_abs(fock::commutator(cas.casimir, H.h).matrix()), tol.commutator);
  return r;
}

inline SuiteReport eigenvector_suite(const ModelParams& p, int m_max, int n_max, std::size_t trunc, const Tolerances& tol = {}) {
  SuiteReport r{"eigenvectors", {}};
  const auto t = fock::TruncationSpec::square(trunc);
  const auto H = pseudoboson::build_hamiltonian(p, t);
  pseudoboson::require_tail(p, t, m_max + n_max, pseudoboson::kEigenTailTol, "eigenvector_suite");
  const auto ops = pseudoboson::build_pseudoboson_ops(p, t);
  const auto vac = pseudoboson::build_vacua(p, t);
  double worst = 0.0, worst_adj = 0.0;
  for (int m = 0; m <= m_max; ++m)
    for (int n = 0; n <= n_max; ++n) {
      const double e = pseudoboson::energy(p, m, n);
      const auto v = pseudoboson::eigenvector(ops, vac, m, n);
      const auto w = pseudoboson::eigenvector(ops, vac, m, n, true);
      worst = std::max(worst, linalg::residual(H.h.matrix(), e, v.coeffs()));
      worst_adj = std::max(worst_adj, linalg::residual(H.h_adj.matrix(), e, w.coeffs()));
    }
  r.add("H_residual", worst, tol.eigen_residual);
  r.add("H_adjoint_residual", worst_adj, tol.eigen_residual);
  if (p.gamma > 0.0) {
    const double c0 = fock::apply(ops.c, vac.psi0).norm() / vac.psi0.norm();
    const double d0 = fock::apply(ops.d, vac.psi0).norm() / vac.psi0.norm();
    r.add("vacuum_annihilated", std::max(c0, d0), 1e-12);
  }
  return r;
}

inline SuiteReport biorth_suite(const ModelParams& p, int m_max, int n_max, std::size_t trunc, const Tolerances& tol = {}) {
  SuiteReport r{"biorthogonality", {}};
  const auto rep = pseudoboson::biorthogonality_matrix(p, m_max, n_max, fock::TruncationSpec::square(trunc));
  const double al = p.alpha();
  r.add("scale_vs_closed_form", std::abs(rep.scale - 1.0 / (1.0 + al * al)), tol.biorth);
  r.add("diagonal_factorials", rep.max_diag_error, tol.biorth);
  r.add("off_diagonal", rep.max_offdiag, tol.biorth);
  return r;
}

inline SuiteReport similarity_suite(const ModelParams& p, std::size_t trunc, int k_min, int k_max, std::size_t depth,
                                    const Tolerances& tol = {}) {
  SuiteReport r{"similarity", {}};
  const auto t = fock::TruncationSpec::square(trunc);
  r.add("H_adjoint_phase_conjugation", pseudoboson::similarity_check(p, t), tol.similarity);
  const auto S = pseudoboson::phase_operator(t);
  r.add("S_unitary", max_abs_diff((S * S.adjoint()).matrix(), CMatrix::identity(t.dim())), tol.similarity);
  double worst = 0.0;
  for (int k = k_min; k <= k_max; ++k) worst = std::max(worst, sectors::transpose_similarity_check({k, depth}, p));
  r.add("sector_transpose_similarity", worst, tol.similarity);
  return r;
}

inline SuiteReport sectors_suite(const ModelParams& p, int k_min, int k_max, std::size_t depth, std::size_t n_eigs,
                                 std::size_t union_trunc, const Tolerances& tol = {}) {
  SuiteReport r{"sectors", {}};
  double worst = 0.0, worst_step = 0.0, worst_res = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const auto a = sectors::sector_spectrum({k, depth}, p, n_eigs);
    const auto b = sectors::sector_spectrum({k, 2 * depth}, p, n_eigs);
    worst = std::max({worst, a.max_error(), b.max_error()});
    for (std::size_t i = 0; i < n_eigs; ++i) {
      worst_step = std::max(worst_step, std::abs(a.report.values[i] - b.report.values[i]));
      worst_res = std::max(worst_res, a.report.residuals[i]);
    }
  }
  r.add("lowest_vs_analytic", worst, tol.sector);
  r.add("depth_doubling_change", worst_step, tol.sector);
  r.add("eigen_residual", worst_res, tol.eigen_residual);
  const auto t = fock::TruncationSpec::square(union_trunc);
  const auto H = pseudoboson::build_hamiltonian(p, t);
  const auto full = linalg::eig_dense(H.h.matrix());
  r.add("full_vs_sector_union", linalg::multiset_distance(full.values, sectors::sector_union_spectrum(p, t)), tol.sector_union);
  double block = 0.0;
  for (int k = -static_cast<int>(union_trunc); k <= static_cast<int>(union_trunc); ++k)
    block = std::max(block, sectors::sector_block_deviation(p, t, k));
  r.add("sector_blocks_exact", block, 1e-13);
  return r;
}

inline SuiteReport su11_suite(const ModelParams& p, int k_min, int k_max, std::size_t depth, const Tolerances& tol = {}) {
  SuiteReport r{"su11", {}};
  double a_cr = 0.0, ap_cr = 0.0, b_cr = 0.0, cas_a = 0.0, cas_b = 0.0, lw_b0 = 0.0, lw_bm = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const sectors::SectorSpec s{k, depth};
    const auto A = sectors::su11_generators(s);
    const auto Ap = sectors::su11_generators(s, true);
    a_cr = std::max(a_cr, sectors::su11_cr_deviation(A.plus, A.minus, A.zero));
    ap_cr = std::max(ap_cr, sectors::su11_cr_deviation(Ap.plus, Ap.minus, Ap.zero));
    if (p.gamma != 0.0) {
      const auto B = sectors::b_generators(s, p.gamma);
      b_cr = std::max(b_cr, sectors::su11_cr_deviation(B.plus, B.minus, B.zero));
      const auto cr = sectors::casimir_reduction_check(s, p.gamma);
      cas_a = std::max(cas_a, cr.a_deviation);
      cas_b = std::max(cas_b, cr.b_deviation);
      const RVector lw = sectors::lowest_weight_vector(s, p.gamma);
      const CVector v(lw.begin(), lw.end());
      lw_b0 = std::max(lw_b0, linalg::residual(B.zero, static_cast<double>(std::abs(k) + 1), v));
      lw_bm = std::max(lw_bm, linalg::residual(B.minus, 0.0, v));
    }
  }
  r.add("A_commutation", a_cr, tol.su11);
  r.add("A_primed_commutation", ap_cr, tol.su11);
  r.add("casimir_A", cas_a, tol.casimir);
  if (p.gamma != 0.0) {
    r.add("B_commutation", b_cr, tol.su11);
    r.add("casimir_B", cas_b, tol.casimir);
    r.add("lowest_weight_B0", lw_b0, tol.lowest_weight);
    r.add("lowest_weight_Bminus", lw_bm, tol.lowest_weight);
  }
  return r;
}

inline SuiteReport stability_suite(const sectors::StabilityScan& scan, const Tolerances& tol = {}) {
  SuiteReport r{"stability", {}};
  if (scan.points.empty()) return r;
  if (scan.bounded) {
    r.add("lowest_vs_analytic", std::abs(scan.points.back().lowest - scan.analytic_lowest), tol.stability);
  } else if (scan.points.size() >= 2) {
    r.add("unbounded_drop", scan.points.front().lowest - scan.points.back().lowest, 1.0, true);
  }
  return r;
}

inline SuiteReport theorem1_suite(const finitesim::Theorem1Report& rep, const Tolerances& tol = {}) {
  SuiteReport r{"theorem1", {}};
  r.add("similarity_error", rep.similarity_error, tol.theorem1_similarity);
  r.add("biorth_error", rep.biorth_error, tol.theorem1_biorth);
  r.add("intertwining_residual", rep.intertwining_residual, tol.theorem1_similarity);
  r.add("spectrum_match", rep.spectrum_match, tol.theorem1_similarity);
  return r;
}

}  // namespace pbh::verify
