#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <vector>

#include "morita/errors.hpp"
#include "morita/scalar.hpp"

namespace morita {

/** Polynomial with rational coefficients, lowest degree first. */
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(std::size_t d) {
    std::vector<Rational> c(d + 1);
    c[d] = 1;
    return Polynomial(std::move(c));
  }

  /** Degree; the zero polynomial has degree -1. */
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  /** Evaluates at h inside the algebra whose unit is `unit`. */
  Matrix evaluate(const Matrix& h, const Matrix& unit) const {
    Matrix acc(h.rows(), h.cols());
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * h + Scalar(c_[k]) * unit;
    return acc;
  }

  Polynomial monic() const {
    if (c_.empty()) return *this;
    std::vector<Rational> c = c_;
    Rational l = c.back();
    for (auto& x : c) x /= l;
    return Polynomial(std::move(c));
  }

  Polynomial derivative() const {
    std::vector<Rational> c;
    for (std::size_t k = 1; k < c_.size(); ++k) c.push_back(c_[k] * static_cast<long>(k));
    return Polynomial(std::move(c));
  }

  /** Quotient by (t - r); r must be a root. */
  Polynomial divide_linear(const Rational& r) const {
    if (c_.empty()) return *this;
    std::vector<Rational> q(c_.size() - 1);
    Rational carry = 0;
    for (std::size_t k = c_.size(); k-- > 1;) {
      carry = carry * r + c_[k];
      q[k - 1] = carry;
    }
    if (carry * r + c_[0] != 0) throw std::logic_error("divide_linear: not a root");
    return Polynomial(std::move(q));
  }

  friend Polynomial remainder(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = a.c_;
    while (r.size() >= b.c_.size() && !r.empty()) {
      Rational f = r.back() / b.c_.back();
      std::size_t shift = r.size() - b.c_.size();
      for (std::size_t k = 0; k < b.c_.size(); ++k) r[shift + k] -= f * b.c_[k];
      r.pop_back();
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return Polynomial(std::move(r));
  }

  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = remainder(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Rational& a = c_[k];
      if (a == 0) continue;
      Rational mag = abs(a);
      if (s.empty()) {
        if (a < 0) s += "-";
      } else {
        s += a < 0 ? " - " : " + ";
      }
      std::string m = detail::rational_to_string(mag);
      if (k == 0) {
        s += m;
      } else {
        if (mag != 1) s += m + "*";
        s += var;
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

namespace detail {

/** Exact quotient a / b; the remainder is discarded. */
inline Polynomial quotient(const Polynomial& a, const Polynomial& b) {
  if (a.degree() < b.degree()) return Polynomial();
  std::vector<Rational> r = a.coeffs();
  std::vector<Rational> q(r.size() - b.coeffs().size() + 1);
  const auto& bc = b.coeffs();
  for (std::size_t shift = q.size(); shift-- > 0;) {
    Rational f = r[shift + bc.size() - 1] / bc.back();
    q[shift] = f;
    for (std::size_t k = 0; k < bc.size(); ++k) r[shift + k] -= f * bc[k];
  }
  return Polynomial(std::move(q));
}

inline std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Polynomial r = remainder(chain[chain.size() - 2], chain.back());
    if (r.is_zero()) break;
    std::vector<Rational> c = r.coeffs();
    for (auto& x : c) x = -x;
    chain.push_back(Polynomial(std::move(c)));
  }
  return chain;
}

inline int sign_changes(const std::vector<Polynomial>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    int s = sgn(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

/**
 * Distinct rational roots, ascending. Real roots of the squarefree part are
 * isolated by Sturm bisection until each interval is narrower than 1 / a_n;
 * a rational root p/q of a primitive integer polynomial has q | a_n, so each
 * interval holds at most one candidate m / a_n, which is tested exactly.
 */
inline std::vector<Rational> rational_roots(const Polynomial& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  Polynomial sf = p.degree() == 1 ? p : detail::quotient(p, gcd(p, p.derivative()));
  mpz_class l = 1;
  for (const auto& c : sf.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  mpz_class g = 0;
  for (const auto& c : sf.coeffs()) {
    mpz_class v(c * l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  mpz_class lead(sf.leading() * l / g);
  if (lead < 0) lead = -lead;
  Rational bound = 0;
  for (const auto& c : sf.coeffs()) bound = std::max(bound, Rational(abs(c / sf.leading())));
  bound += 1;
  const auto chain = detail::sturm_chain(sf);
  struct Interval {
    Rational lo, hi;
    int vlo, vhi;
  };
  std::vector<Interval> stack{{-bound, bound, detail::sign_changes(chain, -bound), detail::sign_changes(chain, bound)}};
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    if (iv.vlo - iv.vhi <= 0) continue;
    if ((iv.hi - iv.lo) * lead < 1) {
      mpz_class m;
      mpz_class num(iv.hi.get_num() * lead);
      mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), iv.hi.get_den().get_mpz_t());
      Rational r(m, lead);
      r.canonicalize();
      if (r > iv.lo && sf(r) == 0) roots.push_back(r);
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    int vmid = detail::sign_changes(chain, mid);
    stack.push_back({iv.lo, mid, iv.vlo, vmid});
    stack.push_back({mid, iv.hi, vmid, iv.vhi});
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/**
 * Minimal polynomial of h in the unital algebra with unit `unit` (h = unit h unit).
 * Coefficients are returned over Q(i).
 */
inline std::vector<Scalar> minimal_polynomial_coeffs(const Matrix& h, const Matrix& unit) {
  std::vector<Matrix> powers{unit};
  for (std::size_t d = 1;; ++d) {
    Matrix next = powers.back() * h;
    if (auto c = span_membership(next, powers)) {
      std::vector<Scalar> mu(d + 1);
      for (std::size_t k = 0; k < d; ++k) mu[k] = -(*c)[k];
      mu[d] = 1;
      return mu;
    }
    powers.push_back(std::move(next));
    if (d > h.rows() + 1) throw std::logic_error("minimal polynomial degree exceeds matrix size");
  }
}

/** Minimal polynomial of a self-adjoint element; its coefficients are rational. */
inline Polynomial minimal_polynomial_hermitian(const Matrix& h, const Matrix& unit) {
  auto mu = minimal_polynomial_coeffs(h, unit);
  std::vector<Rational> c;
  for (const auto& s : mu) {
    if (!s.is_real()) throw std::logic_error("self-adjoint element with non-real minimal polynomial");
    c.push_back(s.re());
  }
  return Polynomial(std::move(c));
}

/** Rational part of the spectrum of a self-adjoint element plus the rootless rest. */
struct Spectrum {
  Polynomial minimal;
  std::vector<Rational> roots;
  Polynomial rest;  // minimal divided by prod (t - root); degree 0 when fully split
};

inline Spectrum spectrum(const Matrix& h, const Matrix& unit) {
  Spectrum s;
  s.minimal = minimal_polynomial_hermitian(h, unit);
  if (gcd(s.minimal, s.minimal.derivative()).degree() > 0)
    throw NotSemisimple("self-adjoint element has a repeated eigenvalue in its minimal polynomial " +
                        s.minimal.to_string());
  s.roots = rational_roots(s.minimal);
  s.rest = s.minimal;
  for (const auto& r : s.roots) s.rest = s.rest.divide_linear(r);
  return s;
}

/**
 * Projection onto the kernel of a self-adjoint h within the algebra with unit
 * `unit`. Uses only the minimal polynomial, so no eigenvalues beyond 0 are needed.
 */
inline Matrix kernel_projection(const Matrix& h, const Matrix& unit) {
  Polynomial mu = minimal_polynomial_hermitian(h, unit);
  if (mu(0) != 0) return Matrix(h.rows(), h.cols());
  Polynomial g = mu.divide_linear(0);
  Rational g0 = g(0);
  if (g0 == 0) throw NotSemisimple("self-adjoint element with repeated root 0");
  return Scalar(Rational(1) / g0) * g.evaluate(h, unit);
}

/** Spectral projection of a self-adjoint h for the rational eigenvalue lambda. */
inline Matrix eigenprojection(const Matrix& h, const Matrix& unit, const Rational& lambda) {
  return kernel_projection(h - Scalar(lambda) * unit, unit);
}

}  // namespace morita
