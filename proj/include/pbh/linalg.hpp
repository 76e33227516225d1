#pragma once

// Dense eigensolvers and small linear-algebra utilities.
//
// Nonsymmetric problems go through Householder reduction to upper Hessenberg
// form followed by shifted QR: a Francis implicit double shift when the input
// is real, a single Wilkinson shift otherwise. Eigenvectors are recovered on
// demand by inverse iteration against the original matrix.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pbh/matrix.hpp"

namespace pbh::linalg {

inline constexpr double kDeflationTol = 1e-14;
inline constexpr double kShiftPerturbation = 1e-10;
inline constexpr double kResidualContract = 1e-8;
inline constexpr std::size_t kDefaultMaxDim = 4096;

struct EigenReport {
  CVector values;                 // sorted by (real, imag)
  std::optional<CMatrix> vectors; // column i pairs with values[i]
  RVector residuals;              // ||Mv - lv|| / ||v||, aligned with values when vectors exist
  int iterations = 0;
  bool converged = true;

  RVector real_values() const {
    RVector r(values.size());
    std::transform(values.begin(), values.end(), r.begin(), [](cplx z) { return z.real(); });
    return r;
  }
};

struct EigOptions {
  bool want_vectors = false;
  std::size_t max_dim = kDefaultMaxDim;
};

inline bool eig_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Partial-pivoting LU factorization of a square complex matrix.
class LuDecomposition {
 public:
  explicit LuDecomposition(CMatrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    if (!lu_.square()) throw Error("LU: matrix is not square");
    const std::size_t n = lu_.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    const double scale = max_abs(lu_);
    const double tiny = std::numeric_limits<double>::epsilon() * scale * static_cast<double>(std::max<std::size_t>(n, 1));
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      double best = std::abs(lu_(k, k));
      for (std::size_t i = k + 1; i < n; ++i)
        if (double v = std::abs(lu_(i, k)); v > best) {
          best = v;
          piv = i;
        }
      if (best <= tiny) throw Error("LU: matrix is singular to working precision (pivot " + std::to_string(k) + ")");
      if (piv != k) {
        std::swap(perm_[k], perm_[piv]);
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      }
      const cplx pivot = lu_(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        const cplx f = lu_(i, k) / pivot;
        lu_(i, k) = f;
        if (f == cplx{}) continue;
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
      }
    }
  }

  CVector solve(std::span<const cplx> rhs) const {
    const std::size_t n = lu_.rows();
    if (rhs.size() != n) throw Error("LU: right-hand side has wrong length");
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
      cplx acc = rhs[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * x[j];
      x[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
      cplx acc = x[i];
      for (std::size_t j = i + 1; j < n; ++j) acc -= lu_(i, j) * x[j];
      x[i] = acc / lu_(i, i);
    }
    return x;
  }

 private:
  CMatrix lu_;
  std::vector<std::size_t> perm_;
};

inline CVector solve(const CMatrix& m, std::span<const cplx> rhs) {
  if (!m.square()) throw Error("solve: matrix is not square");
  return LuDecomposition(m).solve(rhs);
}
inline CVector solve(const CMatrix& m, const CVector& rhs) { return solve(m, std::span<const cplx>(rhs)); }

template <class T>
double residual(const Matrix<T>& m, cplx lambda, std::span<const cplx> v) {
  if (!m.square() || m.cols() != v.size()) throw Error("residual: dimension mismatch");
  const double vn = norm2(v);
  if (vn == 0.0) throw Error("residual: zero vector");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx acc = -lambda * v[i];
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    s += std::norm(acc);
  }
  return std::sqrt(s) / vn;
}
template <class T>
double residual(const Matrix<T>& m, cplx lambda, const CVector& v) {
  return residual(m, lambda, std::span<const cplx>(v));
}

/// Scales v so its largest-magnitude entry (first one on ties) equals 1.
inline void normalize_max_component(CVector& v) {
  std::size_t idx = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (double a = std::abs(v[i]); a > best * (1.0 + 1e-12)) {
      best = a;
      idx = i;
    }
  if (best <= 0.0) return;
  const cplx s = 1.0 / v[idx];
  for (auto& x : v) x *= s;
  v[idx] = 1.0;
}

/// Right eigenvector for an approximate eigenvalue, by inverse iteration with
/// the shift perturbed off the eigenvalue. Returned with its largest entry = 1.
inline CVector inverse_iteration(const CMatrix& m, cplx lambda, int sweeps = 3) {
  const std::size_t n = m.rows();
  if (!m.square()) throw Error("inverse_iteration: matrix is not square");
  CVector x(n, cplx{});
  if (n == 0) return x;
  const double nrm = frobenius_norm(m);
  if (nrm == 0.0) {
    x[0] = 1.0;
    return x;
  }
  double delta = kShiftPerturbation * nrm;
  for (int attempt = 0; attempt < 8; ++attempt, delta *= 10.0) {
    CMatrix shifted = m;
    const cplx mu = lambda + delta;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= mu;
    std::optional<LuDecomposition> lu;
    try {
      lu.emplace(std::move(shifted));
    } catch (const Error&) {
      continue;
    }
    std::mt19937 gen(12345);
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    for (auto& xi : x) xi = dist(gen);
    for (int s = 0; s < sweeps; ++s) {
      x = lu->solve(x);
      const double xn = norm2(x);
      if (!std::isfinite(xn) || xn == 0.0) break;
      for (auto& xi : x) xi /= xn;
    }
    if (std::isfinite(norm2(x)) && norm2(x) > 0.0) {
      normalize_max_component(x);
      return x;
    }
  }
  throw Error("inverse_iteration: could not factor shifted matrix");
}

namespace detail {

template <class T>
T unit_phase(T x) {
  const double a = std::abs(x);
  if (a == 0.0) return T{1};
  return x / a;
}

/// In-place Householder reduction to upper Hessenberg form (similarity).
template <class T>
void reduce_to_hessenberg(Matrix<T>& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<T> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    double xnorm = 0.0;
    for (std::size_t i = 0; i < len; ++i) xnorm += std::norm(a(k + 1 + i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const T alpha = -unit_phase(a(k + 1, k)) * xnorm;
    for (std::size_t i = 0; i < len; ++i) v[i] = a(k + 1 + i, k);
    v[0] -= alpha;
    double vn2 = 0.0;
    for (std::size_t i = 0; i < len; ++i) vn2 += std::norm(v[i]);
    if (vn2 == 0.0) continue;
    const double tau = 2.0 / vn2;
    for (std::size_t j = k; j < n; ++j) {
      T s{};
      for (std::size_t i = 0; i < len; ++i) s += conj_of(v[i]) * a(k + 1 + i, j);
      s *= tau;
      for (std::size_t i = 0; i < len; ++i) a(k + 1 + i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      T s{};
      for (std::size_t j = 0; j < len; ++j) s += a(i, k + 1 + j) * v[j];
      s *= tau;
      for (std::size_t j = 0; j < len; ++j) a(i, k + 1 + j) -= s * conj_of(v[j]);
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = 1; i < len; ++i) a(k + 1 + i, k) = T{};
  }
}

struct QrOutcome {
  CVector values;
  int iterations = 0;
  bool converged = true;
};

// Index of the top of the unreduced active block ending at `hi`.
template <class T>
int active_block_start(Matrix<T>& h, int hi, double fallback_scale) {
  int l = hi;
  for (; l > 0; --l) {
    double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
    if (s == 0.0) s = fallback_scale;
    if (std::abs(h(l, l - 1)) <= kDeflationTol * s) {
      h(l, l - 1) = T{};
      break;
    }
  }
  return l;
}

inline std::pair<cplx, cplx> eig2x2_real(double a, double b, double c, double d) {
  const double p = 0.5 * (a - d);
  const double bc = b * c;
  const double disc = p * p + bc;
  if (disc >= 0.0) {
    const double z = p + std::copysign(std::sqrt(disc), p);
    const double l1 = d + z;
    const double l2 = (z != 0.0) ? d - bc / z : d + z;
    return {l1, l2};
  }
  const double re = d + p;
  const double im = std::sqrt(-disc);
  return {cplx(re, im), cplx(re, -im)};
}

inline void apply_reflector3(RMatrix& h, int k, int col_lo, int col_hi, int row_lo, int row_hi, const double v[3], double beta) {
  for (int j = col_lo; j <= col_hi; ++j) {
    const double t = beta * (v[0] * h(k, j) + v[1] * h(k + 1, j) + v[2] * h(k + 2, j));
    h(k, j) -= t * v[0];
    h(k + 1, j) -= t * v[1];
    h(k + 2, j) -= t * v[2];
  }
  for (int i = row_lo; i <= row_hi; ++i) {
    const double t = beta * (h(i, k) * v[0] + h(i, k + 1) * v[1] + h(i, k + 2) * v[2]);
    h(i, k) -= t * v[0];
    h(i, k + 1) -= t * v[1];
    h(i, k + 2) -= t * v[2];
  }
}

// Householder vector for (x, y, z) mapping it onto a multiple of e1; beta = 0 when trivial.
inline double householder3(double x, double y, double z, double v[3]) {
  const double nrm = std::sqrt(x * x + y * y + z * z);
  if (nrm == 0.0) {
    v[0] = 1.0;
    v[1] = v[2] = 0.0;
    return 0.0;
  }
  const double alpha = -std::copysign(nrm, x);
  v[0] = x - alpha;
  v[1] = y;
  v[2] = z;
  const double vn2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  return vn2 == 0.0 ? 0.0 : 2.0 / vn2;
}

// One Francis double-shift sweep over the active window [l, hi], hi - l >= 2.
inline void francis_step(RMatrix& h, int l, int hi, double shift_sum, double shift_prod) {
  double x = h(l, l) * h(l, l) + h(l, l + 1) * h(l + 1, l) - shift_sum * h(l, l) + shift_prod;
  double y = h(l + 1, l) * (h(l, l) + h(l + 1, l + 1) - shift_sum);
  double z = h(l + 1, l) * h(l + 2, l + 1);
  double v[3];
  for (int k = l; k <= hi - 2; ++k) {
    const double beta = householder3(x, y, z, v);
    if (beta != 0.0) {
      apply_reflector3(h, k, std::max(l, k - 1), hi, l, std::min(k + 3, hi), v, beta);
      if (k > l) {
        h(k + 1, k - 1) = 0.0;
        h(k + 2, k - 1) = 0.0;
      }
    }
    x = h(k + 1, k);
    y = h(k + 2, k);
    if (k < hi - 2) z = h(k + 3, k);
  }
  // closing 2x2 reflector
  const double nrm = std::hypot(x, y);
  if (nrm == 0.0) return;
  const double alpha = -std::copysign(nrm, x);
  const double w0 = x - alpha;
  const double w1 = y;
  const double beta = 2.0 / (w0 * w0 + w1 * w1);
  const int k = hi - 1;
  for (int j = std::max(l, k - 1); j <= hi; ++j) {
    const double t = beta * (w0 * h(k, j) + w1 * h(k + 1, j));
    h(k, j) -= t * w0;
    h(k + 1, j) -= t * w1;
  }
  for (int i = l; i <= hi; ++i) {
    const double t = beta * (h(i, k) * w0 + h(i, k + 1) * w1);
    h(i, k) -= t * w0;
    h(i, k + 1) -= t * w1;
  }
  if (k > l) h(k + 1, k - 1) = 0.0;
}

/// Eigenvalues of a real upper Hessenberg matrix (destroyed).
inline QrOutcome hessenberg_qr(RMatrix h) {
  const int n = static_cast<int>(h.rows());
  QrOutcome out;
  out.values.reserve(n);
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));
  const int cap = 40 * std::max(n, 1);
  int hi = n - 1;
  int its = 0;
  while (hi >= 0) {
    const int l = active_block_start(h, hi, anorm);
    if (l == hi) {
      out.values.emplace_back(h(hi, hi));
      --hi;
      its = 0;
      continue;
    }
    if (l == hi - 1) {
      auto [e1, e2] = eig2x2_real(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
      out.values.push_back(e1);
      out.values.push_back(e2);
      hi -= 2;
      its = 0;
      continue;
    }
    if (out.iterations >= cap) {
      out.converged = false;
      break;
    }
    ++its;
    ++out.iterations;
    double ssum, sprod;
    if (its % 10 == 0) {
      // exceptional shift
      const double ex = std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2));
      const double x = h(hi, hi);
      ssum = 2.0 * x + 1.5 * ex;
      sprod = x * x + 1.5 * ex * x + ex * ex;
    } else {
      const double a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
      ssum = a + d;
      sprod = a * d - b * c;
    }
    francis_step(h, l, hi, ssum, sprod);
  }
  return out;
}

inline std::pair<cplx, cplx> eig2x2(cplx a, cplx b, cplx c, cplx d) {
  const cplx half_tr = 0.5 * (a + d);
  const cplx p = 0.5 * (a - d);
  const cplx root = std::sqrt(p * p + b * c);
  return {half_tr + root, half_tr - root};
}

/// Eigenvalues of a complex upper Hessenberg matrix (destroyed), single-shift QR.
inline QrOutcome hessenberg_qr(CMatrix h) {
  const int n = static_cast<int>(h.rows());
  QrOutcome out;
  out.values.reserve(n);
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));
  const int cap = 40 * std::max(n, 1);
  std::vector<std::pair<double, cplx>> rot(n);
  int hi = n - 1;
  int its = 0;
  while (hi >= 0) {
    const int l = active_block_start(h, hi, anorm);
    if (l == hi) {
      out.values.push_back(h(hi, hi));
      --hi;
      its = 0;
      continue;
    }
    if (l == hi - 1) {
      auto [e1, e2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
      out.values.push_back(e1);
      out.values.push_back(e2);
      hi -= 2;
      its = 0;
      continue;
    }
    if (out.iterations >= cap) {
      out.converged = false;
      break;
    }
    ++its;
    ++out.iterations;
    cplx mu;
    if (its % 10 == 0) {
      mu = h(hi, hi) + 0.75 * (std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2)));
    } else {
      auto [e1, e2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
      mu = std::abs(e1 - h(hi, hi)) <= std::abs(e2 - h(hi, hi)) ? e1 : e2;
    }
    for (int i = l; i <= hi; ++i) h(i, i) -= mu;
    // H - mu = QR via Givens, then RQ
    for (int k = l; k < hi; ++k) {
      const cplx a = h(k, k), b = h(k + 1, k);
      const double r = std::hypot(std::abs(a), std::abs(b));
      double c = 1.0;
      cplx s{};
      if (r != 0.0) {
        const double aa = std::abs(a);
        c = aa / r;
        s = (aa == 0.0 ? cplx{1.0} : a / aa) * std::conj(b) / r;
      }
      rot[k] = {c, s};
      for (int j = k; j <= hi; ++j) {
        const cplx t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = c * t1 + s * t2;
        h(k + 1, j) = -std::conj(s) * t1 + c * t2;
      }
      h(k + 1, k) = cplx{};
    }
    for (int k = l; k < hi; ++k) {
      const auto [c, s] = rot[k];
      for (int i = l; i <= std::min(k + 1, hi); ++i) {
        const cplx t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = c * t1 + std::conj(s) * t2;
        h(i, k + 1) = -s * t1 + c * t2;
      }
    }
    for (int i = l; i <= hi; ++i) h(i, i) += mu;
  }
  return out;
}

inline void sort_report(EigenReport& rep) {
  const std::size_t n = rep.values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return eig_less(rep.values[a], rep.values[b]); });
  CVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rep.values[idx[i]];
  rep.values = std::move(v);
}

}  // namespace detail

/// All eigenvalues of a square matrix; eigenvectors via inverse iteration on request.
inline EigenReport eig_dense(const CMatrix& m, const EigOptions& opt = {}) {
  if (!m.square()) throw Error("eig_dense: matrix is not square");
  if (m.rows() > opt.max_dim)
    throw Error("eig_dense: dimension " + std::to_string(m.rows()) + " exceeds cap " + std::to_string(opt.max_dim));
  EigenReport rep;
  if (m.rows() == 0) return rep;
  detail::QrOutcome qr;
  if (is_real(m)) {
    RMatrix h = real_part(m);
    detail::reduce_to_hessenberg(h);
    qr = detail::hessenberg_qr(std::move(h));
  } else {
    CMatrix h = m;
    detail::reduce_to_hessenberg(h);
    qr = detail::hessenberg_qr(std::move(h));
  }
  rep.values = std::move(qr.values);
  rep.iterations = qr.iterations;
  rep.converged = qr.converged;
  detail::sort_report(rep);
  if (opt.want_vectors) {
    const std::size_t n = m.rows();
    CMatrix vecs(n, rep.values.size());
    rep.residuals.resize(rep.values.size());
    const double bound = kResidualContract * frobenius_norm(m);
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
      const CVector x = inverse_iteration(m, rep.values[i]);
      vecs.set_col(i, x);
      rep.residuals[i] = residual(m, rep.values[i], x);
      if (rep.residuals[i] > bound) rep.converged = false;
    }
    rep.vectors = std::move(vecs);
  }
  return rep;
}

inline EigenReport eig_dense(const RMatrix& m, const EigOptions& opt = {}) { return eig_dense(to_complex(m), opt); }

/// Symmetric tridiagonal eigenproblem by implicit-shift QL.
inline EigenReport eig_sym_tridiag(std::span<const double> diag, std::span<const double> offdiag, bool want_vectors = false) {
  const std::size_t n = diag.size();
  if ((n == 0 && !offdiag.empty()) || (n > 0 && offdiag.size() != n - 1))
    throw Error("eig_sym_tridiag: off-diagonal must have length n-1");
  EigenReport rep;
  if (n == 0) return rep;
  RVector d(diag.begin(), diag.end());
  RVector e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  RMatrix z = want_vectors ? RMatrix::identity(n) : RMatrix{};
  const int cap = 40 * static_cast<int>(n);
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (rep.iterations >= cap) {
        rep.converged = false;
        break;
      }
      ++rep.iterations;
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (want_vectors)
          for (std::size_t k = 0; k < n; ++k) {
            const double t = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * t;
            z(k, i) = c * z(k, i) - s * t;
          }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
    if (!rep.converged) break;
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  rep.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) rep.values[i] = d[idx[i]];
  if (want_vectors) {
    CMatrix vecs(n, n);
    rep.residuals.resize(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale += diag[i] * diag[i];
    for (double o : offdiag) scale += 2.0 * o * o;
    const double bound = kResidualContract * std::sqrt(scale);
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t src = idx[c];
      CVector v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = z(k, src);
      double s2 = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        double acc = diag[k] * z(k, src) - rep.values[c].real() * z(k, src);
        if (k > 0) acc += offdiag[k - 1] * z(k - 1, src);
        if (k + 1 < n) acc += offdiag[k] * z(k + 1, src);
        s2 += acc * acc;
      }
      rep.residuals[c] = std::sqrt(s2) / norm2(v);
      if (rep.residuals[c] > bound) rep.converged = false;
      vecs.set_col(c, v);
    }
    rep.vectors = std::move(vecs);
  }
  return rep;
}

inline EigenReport eig_sym_tridiag(const RVector& diag, const RVector& offdiag, bool want_vectors = false) {
  return eig_sym_tridiag(std::span<const double>(diag), std::span<const double>(offdiag), want_vectors);
}

/// Inner product antilinear in the first argument.
inline cplx dot(std::span<const cplx> v, std::span<const cplx> w) {
  if (v.size() != w.size()) throw Error("dot: dimension mismatch");
  cplx s{};
  for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * w[i];
  return s;
}

struct Biorthonormal {
  CMatrix phi;
  CMatrix psi;
  CMatrix gram;  // gram(i, j) = <psi_i, phi_j>
};

inline CMatrix mutual_gram(const CMatrix& phi, const CMatrix& psi) {
  if (phi.rows() != psi.rows() || phi.cols() != psi.cols()) throw Error("gram: shape mismatch");
  CMatrix g(psi.cols(), phi.cols());
  for (std::size_t i = 0; i < psi.cols(); ++i) {
    const CVector pi = psi.col(i);
    for (std::size_t j = 0; j < phi.cols(); ++j) g(i, j) = dot(pi, phi.col(j));
  }
  return g;
}

/// Rescales the left vectors so that <psi_i, phi_i> = 1; phi is left untouched.
inline Biorthonormal biorthonormalize(const CMatrix& phi, const CMatrix& psi) {
  if (phi.rows() != psi.rows() || phi.cols() != psi.cols())
    throw Error("biorthonormalize: Phi and Psi must have equal shapes");
  Biorthonormal out{phi, psi, {}};
  for (std::size_t i = 0; i < phi.cols(); ++i) {
    const CVector p = phi.col(i);
    CVector q = psi.col(i);
    const cplx g = dot(q, p);
    if (std::abs(g) <= 1e-12 * norm2(p) * norm2(q))
      throw Error("biorthonormalize: vanishing pairing <psi_" + std::to_string(i) + ", phi_" + std::to_string(i) +
                  "> (eigenvalue collision or defective pair)");
    const cplx s = 1.0 / std::conj(g);
    for (auto& x : q) x *= s;
    out.psi.set_col(i, q);
  }
  out.gram = mutual_gram(out.phi, out.psi);
  return out;
}

/// Max distance over a greedy nearest-neighbour pairing of two equal-size multisets.
inline double multiset_distance(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw Error("multiset_distance: sizes differ");
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const cplx x : a) {
    std::size_t best = b.size();
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j] && std::abs(x - b[j]) < bd) {
        bd = std::abs(x - b[j]);
        best = j;
      }
    used[best] = true;
    worst = std::max(worst, bd);
  }
  return worst;
}
inline double multiset_distance(const CVector& a, const CVector& b) {
  return multiset_distance(std::span<const cplx>(a), std::span<const cplx>(b));
}

inline double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b) {
  auto directed = [](std::span<const cplx> x, std::span<const cplx> y) {
    double worst = 0.0;
    for (const cplx p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const cplx q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace pbh::linalg

namespace pbh::linalg {

/// Inverse via LU; throws when singular to working precision.
inline CMatrix inverse(const CMatrix& m) {
  if (!m.square()) throw Error("inverse: matrix is not square");
  const LuDecomposition lu(m);
  const std::size_t n = m.rows();
  CMatrix inv(n, n);
  CVector e(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), cplx{});
    e[j] = 1.0;
    inv.set_col(j, lu.solve(e));
  }
  return inv;
}

}  // namespace pbh::linalg
