#pragma once

// Truncated two-mode Fock space.
//
// States |m,n> with 0 <= m <= n_max_a, 0 <= n <= n_max_b form an orthonormal
// basis, stored row-major: index(m, n) = m * (n_max_b + 1) + n. Ladder moves
// that would leave the truncation are projected to zero.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "pbh/linalg.hpp"
#include "pbh/matrix.hpp"

namespace pbh::fock {

struct TruncationSpec {
  std::size_t n_max_a = 0;
  std::size_t n_max_b = 0;

  static constexpr TruncationSpec square(std::size_t n) { return {n, n}; }

  constexpr std::size_t dim() const noexcept { return (n_max_a + 1) * (n_max_b + 1); }
  constexpr std::size_t index(std::size_t m, std::size_t n) const noexcept { return m * (n_max_b + 1) + n; }
  constexpr std::pair<std::size_t, std::size_t> occupation(std::size_t idx) const noexcept {
    return {idx / (n_max_b + 1), idx % (n_max_b + 1)};
  }
  constexpr bool contains(std::size_t m, std::size_t n) const noexcept { return m <= n_max_a && n <= n_max_b; }

  friend constexpr bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

inline void require_same(const TruncationSpec& x, const TruncationSpec& y, const char* what) {
  if (!(x == y)) throw Error(std::string(what) + ": truncation mismatch");
}

/// Complex matrix on a truncated Fock space.
class Operator {
 public:
  explicit Operator(TruncationSpec t) : trunc_(t), m_(t.dim(), t.dim()) {}
  Operator(TruncationSpec t, CMatrix m) : trunc_(t), m_(std::move(m)) {
    if (m_.rows() != t.dim() || m_.cols() != t.dim()) throw Error("Operator: matrix size does not match truncation");
  }

  static Operator identity(TruncationSpec t) { return {t, CMatrix::identity(t.dim())}; }

  const TruncationSpec& trunc() const noexcept { return trunc_; }
  const CMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }

  cplx operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  cplx& operator()(std::size_t i, std::size_t j) noexcept { return m_(i, j); }

  /// <m,n| X |p,q>
  cplx element(std::size_t m, std::size_t n, std::size_t p, std::size_t q) const {
    return m_(trunc_.index(m, n), trunc_.index(p, q));
  }

  Operator adjoint() const { return {trunc_, m_.adjoint()}; }

  Operator& operator+=(const Operator& o) {
    require_same(trunc_, o.trunc_, "Operator +");
    m_ += o.m_;
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    require_same(trunc_, o.trunc_, "Operator -");
    m_ -= o.m_;
    return *this;
  }
  Operator& operator*=(cplx s) {
    m_ *= s;
    return *this;
  }

  friend Operator operator+(Operator x, const Operator& y) { return x += y; }
  friend Operator operator-(Operator x, const Operator& y) { return x -= y; }
  friend Operator operator*(Operator x, cplx s) { return x *= s; }
  friend Operator operator*(cplx s, Operator x) { return x *= s; }
  friend Operator operator*(double s, Operator x) { return x *= cplx(s); }
  friend Operator operator*(const Operator& x, const Operator& y) {
    require_same(x.trunc_, y.trunc_, "Operator product");
    return {x.trunc_, x.m_ * y.m_};
  }

 private:
  TruncationSpec trunc_;
  CMatrix m_;
};

/// Coefficient vector over the truncated basis.
class FockVector {
 public:
  explicit FockVector(TruncationSpec t) : trunc_(t), c_(t.dim(), cplx{}) {}
  FockVector(TruncationSpec t, CVector c) : trunc_(t), c_(std::move(c)) {
    if (c_.size() != t.dim()) throw Error("FockVector: coefficient count does not match truncation");
  }

  static FockVector basis(TruncationSpec t, std::size_t m, std::size_t n) {
    if (!t.contains(m, n)) throw Error("FockVector: basis state outside truncation");
    FockVector v(t);
    v.c_[t.index(m, n)] = 1.0;
    return v;
  }
  static FockVector vacuum(TruncationSpec t) { return basis(t, 0, 0); }

  const TruncationSpec& trunc() const noexcept { return trunc_; }
  const CVector& coeffs() const noexcept { return c_; }
  std::size_t size() const noexcept { return c_.size(); }

  cplx operator[](std::size_t i) const noexcept { return c_[i]; }
  cplx& operator[](std::size_t i) noexcept { return c_[i]; }
  cplx at(std::size_t m, std::size_t n) const { return c_.at(trunc_.index(m, n)); }
  cplx& at(std::size_t m, std::size_t n) { return c_.at(trunc_.index(m, n)); }

  double norm() const { return norm2(c_); }

  FockVector& operator+=(const FockVector& o) {
    require_same(trunc_, o.trunc_, "FockVector +");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    require_same(trunc_, o.trunc_, "FockVector -");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  FockVector& operator*=(cplx s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend FockVector operator+(FockVector x, const FockVector& y) { return x += y; }
  friend FockVector operator-(FockVector x, const FockVector& y) { return x -= y; }
  friend FockVector operator*(cplx s, FockVector x) { return x *= s; }

 private:
  TruncationSpec trunc_;
  CVector c_;
};

/// Selects basis states with m <= n_max_a - margin and n <= n_max_b - margin.
struct InteriorMask {
  std::size_t margin = 0;

  void validate(const TruncationSpec& t) const {
    if (margin > std::min(t.n_max_a, t.n_max_b))
      throw Error("InteriorMask: margin " + std::to_string(margin) + " exceeds truncation");
  }
  bool contains(const TruncationSpec& t, std::size_t idx) const {
    const auto [m, n] = t.occupation(idx);
    return m + margin <= t.n_max_a && n + margin <= t.n_max_b;
  }
};

struct LadderOps {
  Operator a, b, a_dag, b_dag;
};

inline LadderOps build_ladder_ops(TruncationSpec t) {
  Operator a(t), b(t);
  for (std::size_t m = 0; m <= t.n_max_a; ++m)
    for (std::size_t n = 0; n <= t.n_max_b; ++n) {
      const std::size_t col = t.index(m, n);
      if (m > 0) a(t.index(m - 1, n), col) = std::sqrt(static_cast<double>(m));
      if (n > 0) b(t.index(m, n - 1), col) = std::sqrt(static_cast<double>(n));
    }
  Operator a_dag = a.adjoint();
  Operator b_dag = b.adjoint();
  return {std::move(a), std::move(b), std::move(a_dag), std::move(b_dag)};
}

/// XY - YX
inline Operator commutator(const Operator& x, const Operator& y) {
  require_same(x.trunc(), y.trunc(), "commutator");
  return x * y - y * x;
}

/// <v, w>, antilinear in v.
inline cplx inner_product(const FockVector& v, const FockVector& w) {
  require_same(v.trunc(), w.trunc(), "inner_product");
  return linalg::dot(v.coeffs(), w.coeffs());
}

inline FockVector apply(const Operator& x, const FockVector& v) {
  require_same(x.trunc(), v.trunc(), "apply");
  return {v.trunc(), x.matrix() * v.coeffs()};
}

/// Max |X_ij - Y_ij| over entries whose row and column both lie in the mask.
inline double masked_deviation(const Operator& x, const Operator& y, InteriorMask mask) {
  require_same(x.trunc(), y.trunc(), "masked_deviation");
  const auto& t = x.trunc();
  mask.validate(t);
  double worst = 0.0;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    if (!mask.contains(t, i)) continue;
    for (std::size_t j = 0; j < t.dim(); ++j)
      if (mask.contains(t, j)) worst = std::max(worst, std::abs(x(i, j) - y(i, j)));
  }
  return worst;
}

}  // namespace pbh::fock
