#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morita/errors.hpp"

namespace morita {

using Rational = mpq_class;

/** Element a + b*i of Q(i) with exact rational parts. */
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ /= o.re_;
      return *this;
    }
    Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  /** this += a * b without building a temporary for the common real case. */
  void add_product(const GaussianRational& a, const GaussianRational& b) {
    if (a.is_zero() || b.is_zero()) return;
    if (sgn(a.im_) == 0 && sgn(b.im_) == 0) {
      re_ += a.re_ * b.re_;
      return;
    }
    re_ += a.re_ * b.re_ - a.im_ * b.im_;
    im_ += a.re_ * b.im_ + a.im_ * b.re_;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /** Lexicographic order on (re, im); used only for canonical sorting. */
  friend int compare(const GaussianRational& a, const GaussianRational& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c < 0 ? -1 : 1;
    c = cmp(a.im_, b.im_);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }

  std::string to_string() const;
  static GaussianRational parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& q) { return os << q.to_string(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

using Scalar = GaussianRational;

namespace detail {

inline std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Parses "p" or "p/q" with q > 0 and gcd(p, q) = 1.
inline Rational parse_rational(std::string_view s, std::string_view whole) {
  auto bad = [&](const char* why) {
    return ParseError("malformed scalar '" + std::string(whole) + "': " + why);
  };
  if (s.empty()) throw bad("empty component");
  std::size_t slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
  auto digits_ok = [](std::string_view d, bool allow_sign) {
    if (allow_sign && !d.empty() && (d[0] == '-' || d[0] == '+')) d.remove_prefix(1);
    if (d.empty()) return false;
    return std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!digits_ok(num, true)) throw bad("bad numerator");
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  mpz_class nz(n, 10);
  if (slash == std::string_view::npos) return Rational(nz);
  if (!digits_ok(den, false)) throw bad("bad denominator");
  mpz_class dz(std::string(den), 10);
  if (dz == 0) throw bad("zero denominator");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), nz.get_mpz_t(), dz.get_mpz_t());
  if (g != 1) throw bad("not in lowest terms");
  return Rational(nz, dz);
}

}  // namespace detail

inline std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return detail::rational_to_string(re_);
  std::string s = detail::rational_to_string(re_);
  if (sgn(im_) > 0) s += "+";
  s += detail::rational_to_string(im_) + "*i";
  return s;
}

/**
 * Accepts "a", "a/b", "a/b+c/d*i", "a-c*i", "c/d*i", "i", "-i".
 * Components must be in lowest terms with positive denominators.
 */
inline GaussianRational GaussianRational::parse(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw ParseError("malformed scalar: empty string");
  if (s.back() != 'i') return {detail::parse_rational(s, text), Rational(0)};
  s.remove_suffix(1);
  const bool star = !s.empty() && s.back() == '*';
  if (star) s.remove_suffix(1);
  // The sign separating real and imaginary parts is never at position 0.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string_view re_part = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? s : s.substr(split);
  Rational im;
  if (star) {
    im = detail::parse_rational(im_part, text);
  } else if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    throw ParseError("malformed scalar '" + std::string(text) + "': expected '*i'");
  }
  Rational re = re_part.empty() ? Rational(0) : detail::parse_rational(re_part, text);
  return {re, im};
}

/** Dense matrix over Q(i). Shapes with zero rows or columns are allowed. */
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
  }
  static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }
  static Matrix from_flat(std::size_t r, std::size_t c, std::vector<Scalar> flat) {
    if (flat.size() != r * c) throw ShapeError("flat data does not match shape");
    Matrix m;
    m.rows_ = r;
    m.cols_ = c;
    m.data_ = std::move(flat);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  std::size_t size() const { return data_.size(); }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<Scalar>& flat() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
    return m;
  }

  Scalar trace() const {
    Scalar t;
    for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) t += (*this)(k, k);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
    Matrix m(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeError("block out of range");
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  static Matrix block_diagonal(std::span<const Matrix> blocks) {
    std::size_t R = 0, C = 0;
    for (const auto& b : blocks) R += b.rows_, C += b.cols_;
    Matrix m(R, C);
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
      m.set_block(r, c, b);
      r += b.rows_;
      c += b.cols_;
    }
    return m;
  }

  Matrix kron(const Matrix& b) const {
    Matrix m(rows_ * b.rows_, cols_ * b.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) {
        const Scalar& s = (*this)(r, c);
        if (s.is_zero()) continue;
        for (std::size_t rr = 0; rr < b.rows_; ++rr)
          for (std::size_t cc = 0; cc < b.cols_; ++cc) m(r * b.rows_ + rr, c * b.cols_ + cc) = s * b(rr, cc);
      }
    return m;
  }

  bool is_self_adjoint() const { return square() && *this == adjoint(); }
  bool is_idempotent() const { return square() && (*this) * (*this) == *this; }
  bool is_projection() const { return is_self_adjoint() && is_idempotent(); }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const Scalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw ShapeError("matrix product of " + a.shape_string() + " and " + b.shape_string());
    Matrix m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& s = a(r, k);
        if (s.is_zero()) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) m(r, c).add_product(s, b(k, c));
      }
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << (r ? "; " : "");
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
    }
    return os << "]";
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeError("shape mismatch " + shape_string() + " vs " + o.shape_string());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/**
 * Reduced row echelon basis of a subspace of Q(i)^n. Rows are kept fully
 * reduced and sorted by pivot, so two bases of the same subspace compare equal.
 */
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t n = 0) : n_(n) {}

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /** Residual of v after reduction against the basis. */
  std::vector<Scalar> reduce(std::vector<Scalar> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Scalar f = v[pivots_[k]];
      if (f.is_zero()) continue;
      const auto& row = rows_[k];
      for (std::size_t j = pivots_[k]; j < n_; ++j)
        if (!row[j].is_zero()) v[j] -= f * row[j];
    }
    return v;
  }

  bool contains(const std::vector<Scalar>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  /** Inserts v; returns false when v already lies in the span. */
  bool insert(const std::vector<Scalar>& v) {
    if (v.size() != n_) throw ShapeError("vector length does not match ambient dimension");
    auto r = reduce(v);
    std::size_t p = 0;
    while (p < n_ && r[p].is_zero()) ++p;
    if (p == n_) return false;
    Scalar inv = Scalar(1) / r[p];
    for (std::size_t j = p; j < n_; ++j)
      if (!r[j].is_zero()) r[j] *= inv;
    for (auto& row : rows_) {
      Scalar f = row[p];
      if (f.is_zero()) continue;
      for (std::size_t j = p; j < n_; ++j)
        if (!r[j].is_zero()) row[j] -= f * r[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(r));
    return true;
  }

  /** Coordinates of v in the echelon basis, or nullopt if v is outside the span. */
  std::optional<std::vector<Scalar>> coordinates(const std::vector<Scalar>& v) const {
    std::vector<Scalar> c(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) c[k] = v[pivots_[k]];
    std::vector<Scalar> w(n_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (c[k].is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (!rows_[k][j].is_zero()) w[j].add_product(c[k], rows_[k][j]);
    }
    if (w != v) return std::nullopt;
    return c;
  }

  friend bool operator==(const EchelonBasis& a, const EchelonBasis& b) {
    return a.n_ == b.n_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t n_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

/** Subspace of rows x cols matrices, stored as a canonical echelon basis. */
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), basis_(rows * cols) {}

  static Subspace span(std::size_t rows, std::size_t cols, std::span<const Matrix> gens) {
    Subspace s(rows, cols);
    for (const auto& g : gens) s.insert(g);
    return s;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return basis_.dim(); }
  bool empty() const { return basis_.dim() == 0; }

  bool insert(const Matrix& m) {
    check(m);
    return basis_.insert(m.flat());
  }
  bool contains(const Matrix& m) const {
    if (m.rows() != rows_ || m.cols() != cols_) return false;
    return basis_.contains(m.flat());
  }
  std::optional<std::vector<Scalar>> coordinates(const Matrix& m) const {
    check(m);
    return basis_.coordinates(m.flat());
  }

  Matrix basis_element(std::size_t k) const { return Matrix::from_flat(rows_, cols_, basis_.rows()[k]); }
  std::vector<Matrix> basis() const {
    std::vector<Matrix> out;
    out.reserve(dim());
    for (std::size_t k = 0; k < dim(); ++k) out.push_back(basis_element(k));
    return out;
  }

  Matrix combine(std::span<const Scalar> coeffs) const {
    if (coeffs.size() != dim()) throw ShapeError("coefficient count does not match subspace dimension");
    Matrix m(rows_, cols_);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      const auto& row = basis_.rows()[k];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (!row[j].is_zero()) m(j / cols_, j % cols_).add_product(coeffs[k], row[j]);
    }
    return m;
  }

  const EchelonBasis& echelon() const { return basis_; }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.basis_ == b.basis_;
  }

 private:
  void check(const Matrix& m) const {
    if (m.rows() != rows_ || m.cols() != cols_)
      throw ShapeError("matrix " + m.shape_string() + " does not fit subspace of " + std::to_string(rows_) + "x" +
                       std::to_string(cols_) + " matrices");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  EchelonBasis basis_{0};
};

/** Rank by row reduction. */
inline std::size_t rank(const Matrix& m) {
  EchelonBasis e(m.cols());
  std::size_t r = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Scalar> row(m.flat().begin() + i * m.cols(), m.flat().begin() + (i + 1) * m.cols());
    if (e.insert(row)) ++r;
    if (r == m.cols()) break;
  }
  return r;
}

/** Gauss-Jordan inverse; nullopt when singular. */
inline std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.square()) throw ShapeError("inverse of non-square matrix " + m.shape_string());
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Scalar f = Scalar(1) / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= f;
      inv(c, j) *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      Scalar g = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(c, j).is_zero()) a(r, j) -= g * a(c, j);
        if (!inv(c, j).is_zero()) inv(r, j) -= g * inv(c, j);
      }
    }
  }
  return inv;
}

/**
 * Solves sum_k c_k * basis[k] = target. Returns some solution (free variables
 * set to zero) or nullopt when target is outside the span.
 */
inline std::optional<std::vector<Scalar>> span_membership(const Matrix& target, std::span<const Matrix> basis) {
  const std::size_t K = basis.size();
  const std::size_t L = target.size();
  for (const auto& b : basis)
    if (b.rows() != target.rows() || b.cols() != target.cols())
      throw ShapeError("span_membership: basis element " + b.shape_string() + " vs target " + target.shape_string());
  // Augmented system with one row per matrix entry, columns = basis elements | target.
  std::vector<std::vector<Scalar>> rows;
  rows.reserve(L);
  for (std::size_t e = 0; e < L; ++e) {
    std::vector<Scalar> row(K + 1);
    bool any = !target.flat()[e].is_zero();
    for (std::size_t k = 0; k < K; ++k) {
      row[k] = basis[k].flat()[e];
      any = any || !row[k].is_zero();
    }
    row[K] = target.flat()[e];
    if (any) rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < K && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Scalar f = Scalar(1) / rows[r][c];
    for (std::size_t j = c; j <= K; ++j) rows[r][j] *= f;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Scalar g = rows[i][c];
      for (std::size_t j = c; j <= K; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= g * rows[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (!rows[i][K].is_zero()) return std::nullopt;
  std::vector<Scalar> sol(K);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) sol[pivot_cols[i]] = rows[i][K];
  return sol;
}

/**
 * Orthogonal projection onto the range of an idempotent e, via
 * p = e e* (1 + (e - e*)(e* - e))^{-1}. Throws if e is not an idempotent.
 */
inline Matrix range_projection(const Matrix& e) {
  if (!e.square()) throw ShapeError("range_projection: non-square input " + e.shape_string());
  if (!e.is_idempotent()) throw InvalidInput("range_projection: input is not idempotent");
  const std::size_t n = e.rows();
  Matrix ea = e.adjoint();
  Matrix z = Matrix::identity(n) + (e - ea) * (ea - e);
  auto zi = inverse(z);
  if (!zi) throw std::logic_error("range_projection: 1 + (e - e*)(e* - e) is singular");
  Matrix p = e * ea * (*zi);
  if (!p.is_projection()) throw std::logic_error("range_projection: result is not a projection");
  if (!(p * e == e) || !(e * p == p)) throw std::logic_error("range_projection: result has the wrong range");
  return p;
}

}  // namespace morita
