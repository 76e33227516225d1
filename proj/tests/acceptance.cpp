// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "pbh/emm.hpp"
#include "pbh/finitesim.hpp"
#include "pbh/linalg.hpp"
#include "pbh/pseudoboson.hpp"
#include "pbh/sectors.hpp"

using namespace pbh;
using pseudoboson::ModelParams;

namespace {

int failures = 0;

void report(int id, const char* what, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, what, detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

void emm_closed_form() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> ub(-2.0, 2.0), ug(0.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    double g = 0.0;
    while (g <= 0.0) g = ug(rng);
    const ModelParams p{ub(rng), g};
    const double r = p.rho();
    const CVector closed{-p.beta - r, p.beta - r, -p.beta + r, p.beta + r};
    worst = std::max(worst, linalg::multiset_distance(linalg::eig_dense(emm::emm_T_matrix(p)).values, closed));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(1, "EMM eigenvalues match +-beta+-rho", worst <= 1e-10 && secs < 1.0,
         fmt("max deviation %.3e (tol 1e-10), runtime %.3f s (limit 1 s)", worst, secs));
}

void pseudoboson_algebra() {
  const auto t = fock::TruncationSpec::square(8);
  double wh = 0.0, eom = 0.0;
  for (double g : {0.25, 0.75, 1.0, 2.0}) {
    const ModelParams p{0.5, g};
    wh = std::max(wh, pseudoboson::weyl_heisenberg_deviation(pseudoboson::build_pseudoboson_ops(p, t)));
    eom = std::max(eom, emm::operator_eom_deviation(p, t));
  }
  report(2, "pseudo-boson commutators and equations of motion", wh <= 1e-10 && eom <= 1e-9,
         fmt("commutators %.3e (tol 1e-10), [H,X] - lambda X %.3e (tol 1e-9)", wh, eom));
}

void diagonal_form() {
  double worst = 0.0;
  for (const ModelParams& p : {ModelParams{0.5, 0.75}, ModelParams{2.0, 1.0}, ModelParams{-0.7, 2.5}})
    worst = std::max(worst, pseudoboson::diagonal_form_check(p, fock::TruncationSpec::square(8)));
  report(3, "diagonal form on interior", worst <= 1e-10, fmt("max deviation %.3e (tol %.0e)", worst, 1e-10));
}

void spectrum_residuals() {
  const ModelParams p{0.5, 0.75};
  const auto t = fock::TruncationSpec::square(40);
  const auto H = pseudoboson::build_hamiltonian(p, t);
  const auto ops = pseudoboson::build_pseudoboson_ops(p, t);
  const auto vac = pseudoboson::build_vacua(p, t);
  double res = 0.0, res_adj = 0.0, sector = 0.0;
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      const double e = pseudoboson::energy(p, m, n);
      res = std::max(res, linalg::residual(H.h.matrix(), e, pseudoboson::eigenvector(ops, vac, m, n).coeffs()));
      res_adj = std::max(res_adj, linalg::residual(H.h_adj.matrix(), e, pseudoboson::eigenvector(ops, vac, m, n, true).coeffs()));
    }
  for (int k = -3; k <= 3; ++k) {
    const auto s = sectors::sector_spectrum({k, 60}, p, 4);
    for (int m = std::max(k, 0), n = std::max(-k, 0); m <= 3 && n <= 3; ++m, ++n)
      sector = std::max(sector, std::abs(s.report.values[static_cast<std::size_t>(std::min(m, n))] - pseudoboson::energy(p, m, n)));
  }
  report(4, "eigenvector residuals for H and H*, energies against sector eigensolves",
         res <= 1e-8 && res_adj <= 1e-8 && sector <= 1e-6,
         fmt("residuals H %.3e, H* %.3e (tol 1e-8)", res, res_adj) + fmt(", sector deviation %.3e (tol %.0e)", sector, 1e-6));
}

void biorthogonality() {
  const ModelParams p{0.5, 0.75};
  const auto rep = pseudoboson::biorthogonality_matrix(p, 4, 4, fock::TruncationSpec::square(40));
  const double scale_err = std::abs(rep.scale - 0.9);
  const double worst = std::max({rep.max_diag_error, rep.max_offdiag, scale_err});
  report(5, "Gram grid m!n! delta scale, scale 0.9", worst <= 1e-9,
         fmt("max abs error %.3e (tol 1e-9); scale error %.3e", worst, scale_err));
}

void similarity() {
  const ModelParams p{0.5, 0.75};
  const double full = pseudoboson::similarity_check(p, fock::TruncationSpec::square(6));
  double sec = 0.0;
  for (int k = -3; k <= 3; ++k) sec = std::max(sec, sectors::transpose_similarity_check({k, 20}, p));
  report(6, "phase similarity H* = S H S^-1 and sector transpose", full <= 1e-13 && sec <= 1e-13,
         fmt("full %.3e, sectors %.3e (tol 1e-13)", full, sec));
}

void sector_spectra() {
  const ModelParams p{0.5, 0.75};
  double err = 0.0, step = 0.0;
  for (int k = -2; k <= 2; ++k) {
    const auto a = sectors::sector_spectrum({k, 30}, p, 3);
    err = std::max(err, a.max_error());
    const auto b = sectors::sector_spectrum({k, 60}, p, 3);
    const auto c = sectors::sector_spectrum({k, 120}, p, 3);
    err = std::max({err, b.max_error(), c.max_error()});
    for (std::size_t i = 0; i < 3; ++i) step = std::max(step, std::abs(b.report.values[i] - c.report.values[i]));
  }
  const auto t = fock::TruncationSpec::square(10);
  const auto full = linalg::eig_dense(pseudoboson::build_hamiltonian(p, t).h.matrix());
  const double d = linalg::multiset_distance(full.values, sectors::sector_union_spectrum(p, t));
  report(7, "sector eigenvalues converge to beta k + rho(|k|+1+2n); trunc(10,10) spectrum is the sector union",
         err <= 1e-6 && step <= 1e-6 && full.converged && d <= 1e-8,
         fmt("max error %.3e, 60->120 change %.3e (tol 1e-6)", err, step) + fmt(", union distance %.3e (tol %.0e)", d, 1e-8));
}

void su11_structure() {
  double a_cr = 0.0, b_cr = 0.0, cas = 0.0, lw = 0.0;
  for (double g : {0.25, 0.75, 2.0})
    for (int k = -3; k <= 3; ++k) {
      const sectors::SectorSpec s{k, 8};
      const auto A = sectors::su11_generators(s);
      const auto Ap = sectors::su11_generators(s, true);
      const auto B = sectors::b_generators(s, g);
      a_cr = std::max({a_cr, sectors::su11_cr_deviation(A.plus, A.minus, A.zero),
                       sectors::su11_cr_deviation(Ap.plus, Ap.minus, Ap.zero)});
      b_cr = std::max(b_cr, sectors::su11_cr_deviation(B.plus, B.minus, B.zero));
      cas = std::max(cas, sectors::casimir_reduction_check({k, 10}, g).max());
      const sectors::SectorSpec deep{k, 90};
      const auto Bd = sectors::b_generators(deep, g);
      const RVector v = sectors::lowest_weight_vector(deep, g);
      const CVector cv(v.begin(), v.end());
      lw = std::max({lw, linalg::residual(Bd.zero, double(std::abs(k) + 1), cv), linalg::residual(Bd.minus, 0.0, cv)});
    }
  report(8, "su(1,1) commutation relations, Casimir reductions, lowest weight vector",
         std::max(a_cr, b_cr) <= 1e-10 && cas <= 1e-9 && lw <= 1e-8,
         fmt("CR A %.3e, B %.3e (tol 1e-10)", a_cr, b_cr) + fmt(", Casimir %.3e (tol 1e-9), lowest weight %.3e (tol 1e-8)", cas, lw));
}

void stability() {
  const auto low = sectors::hermitian_variant_scan(0, 0.0, 0.6, {15, 30, 60});
  const double e = std::abs(low.points.back().lowest - 0.8);
  const auto high = sectors::hermitian_variant_scan(0, 0.0, 1.2, {40, 80});
  const double drop = high.points[0].lowest - high.points[1].lowest;
  report(9, "lambda=0.6 lowest eigenvalue reaches 0.8 by depth 60; lambda=1.2 drops between depths 40 and 80",
         e <= 1e-6 && drop > 1.0, fmt("|E - 0.8| = %.3e (tol 1e-6), drop %.4f (must exceed 1.0)", e, drop));
}

void theorem1() {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  double sim = 0.0, bi = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5;
    CMatrix v = CMatrix::identity(n), d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) v(i, j) += u(rng) / std::sqrt(double(n));
      d(i, i) = -3.0 + 1.5 * double(i) + u(rng);
    }
    const auto rep = finitesim::verify_theorem1(real_part(v * d * linalg::inverse(v)));
    sim = std::max(sim, rep.similarity_error);
    bi = std::max(bi, rep.biorth_error);
  }
  const auto rep = finitesim::verify_theorem1(RMatrix{{1, 1}, {0, 2}});
  const CMatrix expect{{1, -1}, {-1, 2}};
  const cplx ph = rep.S(0, 0);
  const double dev = std::abs(std::abs(ph) - 1.0) + max_abs_diff(rep.S, ph * expect);
  report(10, "random 5x5 real-spectrum matrices; [[1,1],[0,2]] gives S = [[1,-1],[-1,2]], not unitary",
         sim <= 1e-8 && bi <= 1e-10 && dev <= 1e-12 && rep.unitarity_defect > 0.0,
         fmt("similarity %.3e (tol 1e-8), biorth %.3e (tol 1e-10)", sim, bi) +
             fmt(", S deviation %.3e, unitarity defect %.6f", dev, rep.unitarity_defect));
}

}  // namespace

int main() {
  emm_closed_form();
  pseudoboson_algebra();
  diagonal_form();
  spectrum_residuals();
  biorthogonality();
  similarity();
  sector_spectra();
  su11_structure();
  stability();
  theorem1();
  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
