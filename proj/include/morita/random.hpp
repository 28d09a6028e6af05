#pragma once

#include <random>
#include <vector>

#include "morita/completion.hpp"
#include "morita/scalar.hpp"
#include "morita/semisimple.hpp"
#include "morita/starcat.hpp"

namespace morita {

using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/** Small Gaussian integer, real with probability 1/2. */
inline Scalar random_scalar(Rng& rng, long range = 2) {
  long re = uniform_int(rng, -range, range);
  long im = uniform_int(rng, 0, 1) ? uniform_int(rng, -range, range) : 0;
  return {Rational(re), Rational(im)};
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long range = 2) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_scalar(rng, range);
  return m;
}

/** Random idempotent of the given rank: e = v (w v)^{-1} w. */
inline Matrix random_idempotent(Rng& rng, std::size_t n, std::size_t r) {
  if (r == 0) return Matrix(n, n);
  for (;;) {
    Matrix v = random_matrix(rng, n, r);
    Matrix w = random_matrix(rng, r, n);
    auto inv = inverse(w * v);
    if (!inv) continue;
    return v * (*inv) * w;
  }
}

/** Inverse of a inside the corner algebra with unit p. */
inline std::optional<Matrix> corner_inverse(const Matrix& a, const Matrix& p) {
  Matrix id = Matrix::identity(p.rows());
  auto inv = inverse(a + (id - p));
  if (!inv) return std::nullopt;
  return p * (*inv) * p;
}

/** Cayley transform (p - s)(p + s)^{-1} of a skew-adjoint s in the corner of p: a unitary there. */
inline Matrix cayley(const Matrix& s, const Matrix& p) {
  auto inv = corner_inverse(p + s, p);
  if (!inv) throw std::logic_error("cayley: p + s not invertible for skew-adjoint s");
  return (p - s) * (*inv);
}

/** Random unitary of the algebra spanned by `algebra` with unit p. */
inline Matrix random_unitary_in(Rng& rng, const Subspace& algebra, const Matrix& p, long range = 1) {
  Matrix x(p.rows(), p.cols());
  for (const auto& b : algebra.basis()) x += random_scalar(rng, range) * b;
  return cayley(x - x.adjoint(), p);
}

inline Matrix random_unitary(Rng& rng, std::size_t n, long range = 1) {
  Matrix x = random_matrix(rng, n, n, range);
  return cayley(x - x.adjoint(), Matrix::identity(n));
}

/** Random semisimple form with no phantom blocks. */
inline SemisimpleForm random_form(Rng& rng, std::size_t max_blocks, std::size_t max_objects, std::size_t max_mult,
                                  std::size_t min_blocks = 1) {
  SemisimpleForm f;
  std::size_t k = static_cast<std::size_t>(uniform_int(rng, static_cast<long>(min_blocks), static_cast<long>(max_blocks)));
  std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(max_objects)));
  f.blocks = default_block_labels(k);
  for (std::size_t x = 0; x < n; ++x) {
    f.objects.push_back("x" + std::to_string(x + 1));
    std::vector<std::size_t> row;
    for (std::size_t i = 0; i < k; ++i) row.push_back(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(max_mult))));
    f.mult.push_back(row);
  }
  for (std::size_t i = 0; i < k; ++i) {
    bool supported = false;
    for (const auto& r : f.mult) supported = supported || r[i] > 0;
    if (!supported) f.mult[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(n) - 1))][i] = 1;
  }
  return f;
}

/**
 * A concrete realization of a form with known structure: each canonical arrow
 * a : x -> y is realized as U_y (a (x) I_c) U_x* padded by `pad` zero coordinates.
 */
struct GeneratedCategory {
  SemisimpleForm form;
  CategoryPtr canonical;
  CategoryPtr category;
  std::size_t copies = 1;
  std::size_t pad = 0;
  std::vector<Matrix> twist;  // U_x, unitary of size dim_x * copies + pad

  Matrix embed(std::size_t x, std::size_t y, const Matrix& a) const {
    Matrix amp = a.kron(Matrix::identity(copies));
    Matrix big(amp.rows() + pad, amp.cols() + pad);
    big.set_block(0, 0, amp);
    return twist[y] * big * twist[x].adjoint();
  }

  /** The functor canonical -> category given by embed. */
  StarFunctor embedding() const {
    std::vector<std::size_t> ids(form.objects.size());
    for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k;
    return StarFunctor::from_rule(canonical, category, ids,
                                  [&](std::size_t x, std::size_t y, const Matrix& a) { return embed(x, y, a); });
  }
};

inline GeneratedCategory generate_category(Rng& rng, const SemisimpleForm& form, bool twisted = true,
                                           std::size_t max_copies = 2, bool allow_pad = true) {
  GeneratedCategory g;
  g.form = form;
  g.canonical = share(realize(form));
  g.copies = twisted ? static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(max_copies))) : 1;
  g.pad = (twisted && allow_pad) ? static_cast<std::size_t>(uniform_int(rng, 0, 1)) : 0;
  const auto& can = *g.canonical;
  for (std::size_t x = 0; x < can.size(); ++x) {
    std::size_t d = can.dim(x) * g.copies + g.pad;
    g.twist.push_back(twisted ? random_unitary(rng, d) : Matrix::identity(d));
  }
  ConcreteCategory c;
  for (std::size_t x = 0; x < can.size(); ++x)
    c.add_object(can.object(x).name, can.dim(x) * g.copies + g.pad, g.embed(x, x, can.unit(x)));
  for (std::size_t x = 0; x < can.size(); ++x)
    for (std::size_t y = 0; y < can.size(); ++y) {
      Subspace s(c.dim(y), c.dim(x));
      for (const auto& a : can.hom(x, y).basis()) s.insert(g.embed(x, y, a));
      c.set_hom(x, y, std::move(s));
    }
  g.category = share(std::move(c));
  return g;
}

/** Random projection in End(z) of a saturation: a unitary conjugate of a sum of block pieces. */
inline Matrix random_projection_in(Rng& rng, const LazySaturation& sat, const ProjObject& z,
                                   const std::vector<Matrix>& pieces) {
  Matrix q(z.proj.rows(), z.proj.cols());
  for (const auto& p : pieces)
    if (uniform_int(rng, 0, 1)) q += p;
  auto end = sat.hom(z, z);
  if (end->empty()) return q;
  Matrix u = random_unitary_in(rng, *end, z.proj);
  return u * q * u.adjoint();
}

}  // namespace morita
