#pragma once

// Independent brute-force oracles and generators shared by the unit tests and
// the acceptance binary. Nothing here calls decompose or class_of_functor.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "morita/completion.hpp"
#include "morita/presentations.hpp"
#include "morita/random.hpp"
#include "morita/scalar.hpp"
#include "morita/starcat.hpp"

namespace oracle {

using namespace morita;

/** Basis of {c : sum_k c_k cols[k] = 0}. */
inline std::vector<std::vector<Scalar>> nullspace(const std::vector<std::vector<Scalar>>& cols) {
  const std::size_t K = cols.size();
  if (K == 0) return {};
  const std::size_t L = cols[0].size();
  std::vector<std::vector<Scalar>> rows(L, std::vector<Scalar>(K));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t e = 0; e < L; ++e) rows[e][k] = cols[k][e];
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < K && r < L; ++c) {
    std::size_t p = r;
    while (p < L && rows[p][c].is_zero()) ++p;
    if (p == L) continue;
    std::swap(rows[p], rows[r]);
    Scalar f = Scalar(1) / rows[r][c];
    for (std::size_t j = c; j < K; ++j) rows[r][j] *= f;
    for (std::size_t i = 0; i < L; ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Scalar g = rows[i][c];
      for (std::size_t j = c; j < K; ++j) rows[i][j] -= g * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<std::vector<Scalar>> out;
  std::vector<bool> is_pivot(K, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < K; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(K);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
    out.push_back(std::move(v));
  }
  return out;
}

/**
 * Natural unitary isomorphism test for two functors with the same source and
 * target saturation: solve for the intertwiner space and test a generic
 * member for invertibility at every object.
 */
inline bool naturally_isomorphic(const SatFunctor& f, const SatFunctor& g, Rng& rng) {
  const auto& A = f.source();
  const auto& sat = f.target();
  const std::size_t n = A.size();
  for (std::size_t x = 0; x < n; ++x)
    if (rank(f.object(x).proj) != rank(g.object(x).proj)) return false;
  // Unknowns: coefficients of t_x in a basis of Hom(Fx, Gx), for every x.
  std::vector<std::vector<Matrix>> bases(n);
  std::vector<std::size_t> offset{0};
  for (std::size_t x = 0; x < n; ++x) {
    bases[x] = sat.hom(f.object(x), g.object(x))->basis();
    offset.push_back(offset.back() + bases[x].size());
  }
  const std::size_t K = offset.back();
  std::vector<std::vector<Scalar>> cols(K);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& basis = A.hom(x, y).basis();
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const Matrix& fa = f.basis_images(x, y)[b];
        const Matrix& ga = g.basis_images(x, y)[b];
        // t_y F(a) - G(a) t_x = 0
        for (std::size_t k = 0; k < K; ++k) {
          Matrix term(ga.rows(), fa.cols());
          if (k >= offset[y] && k < offset[y + 1]) term += bases[y][k - offset[y]] * fa;
          if (k >= offset[x] && k < offset[x + 1]) term -= ga * bases[x][k - offset[x]];
          cols[k].insert(cols[k].end(), term.flat().begin(), term.flat().end());
        }
      }
    }
  auto null = nullspace(cols);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Scalar> c(K);
    for (const auto& v : null) {
      Scalar w = random_scalar(rng, 3);
      for (std::size_t k = 0; k < K; ++k) c[k] += w * v[k];
    }
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      Matrix t(g.object(x).proj.rows(), f.object(x).proj.rows());
      for (std::size_t k = 0; k < bases[x].size(); ++k) t += c[offset[x] + k] * bases[x][k];
      ok = rank(t) == rank(f.object(x).proj);
    }
    if (ok) return true;
  }
  return false;
}

/**
 * Cheap functor-axiom check for functors whose image words are too long to
 * materialize: units, adjoints and products of random arrows.
 */
inline std::optional<std::string> spot_check_functor(const SatFunctor& f, Rng& rng, int products = 4) {
  const auto& A = f.source();
  const auto& sat = f.target();
  for (std::size_t x = 0; x < A.size(); ++x) {
    const auto& p = f.object(x).proj;
    if (!p.is_projection()) return "image of " + A.object(x).name + " is not a projection";
    if (!sat.in_blocks(f.object(x).word, f.object(x).word, p)) return "image unit is not an arrow";
    if (!(f.apply(x, x, A.unit(x)) == p)) return "unit not preserved";
  }
  auto random_arrow = [&](std::size_t x, std::size_t y) {
    Matrix m(A.dim(y), A.dim(x));
    for (const auto& b : A.hom(x, y).basis()) m += random_scalar(rng, 2) * b;
    return m;
  };
  for (int k = 0; k < products; ++k) {
    auto pick = [&] { return static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(A.size()) - 1)); };
    std::size_t x = pick(), y = pick(), z = pick();
    Matrix a = random_arrow(x, y), b = random_arrow(y, z);
    if (!(f.apply(x, z, b * a) == f.apply(y, z, b) * f.apply(x, y, a))) return std::string("products not preserved");
    if (!(f.apply(y, x, a.adjoint()) == f.apply(x, y, a).adjoint())) return std::string("adjoints not preserved");
  }
  return std::nullopt;
}

/** Stack of generic elements of Hom(y, l) for the letters l: an element of Hom(iota y, word). */
inline Matrix generic_into_word(const ConcreteCategory& c, std::size_t y, const std::vector<std::size_t>& word,
                                Rng& rng) {
  std::vector<Matrix> parts;
  std::size_t rows = 0;
  for (auto l : word) {
    Matrix m(c.dim(l), c.dim(y));
    for (const auto& b : c.hom(y, l).basis()) m += random_scalar(rng, 3) * b;
    rows += m.rows();
    parts.push_back(std::move(m));
  }
  Matrix out(rows, c.dim(y));
  std::size_t off = 0;
  for (const auto& p : parts) {
    out.set_block(off, 0, p);
    off += p.rows();
  }
  return out;
}

/**
 * Brute closure: is every object of C a retract of a word of length <= max_len
 * in the image objects and their total sum? y is a retract of w iff some
 * arrow y -> w is injective on the range of 1_y; generic arrows are tried.
 */
inline bool closure_contains_all(const ConcreteCategory& c, const std::vector<std::size_t>& image, std::size_t max_len,
                                 Rng& rng) {
  // Letters: each image object, and the total sum T (as a multi-letter block).
  std::vector<std::vector<std::size_t>> letters;
  for (auto x : image) letters.push_back({x});
  letters.push_back(image);
  for (std::size_t y = 0; y < c.size(); ++y) {
    const std::size_t need = rank(c.unit(y));
    if (need == 0) continue;
    bool found = false;
    std::vector<std::size_t> choice;
    auto rec = [&](auto&& self, std::size_t len) -> void {
      if (found) return;
      if (!choice.empty()) {
        std::vector<std::size_t> word;
        for (auto k : choice) word.insert(word.end(), letters[k].begin(), letters[k].end());
        for (int attempt = 0; attempt < 2 && !found; ++attempt)
          if (rank(generic_into_word(c, y, word, rng) * c.unit(y)) == need) found = true;
      }
      if (len == max_len) return;
      std::size_t start = choice.empty() ? 0 : choice.back();
      for (std::size_t k = start; k < letters.size() && !found; ++k) {
        choice.push_back(k);
        self(self, len + 1);
        choice.pop_back();
      }
    };
    rec(rec, 0);
    if (!found) return false;
  }
  return true;
}

/** The category with every hom conjugated: C(x, y) = w_y B(x, y) w_x*. */
inline CategoryPtr conjugate_category(const ConcreteCategory& b, const std::vector<Matrix>& w) {
  ConcreteCategory c;
  for (std::size_t x = 0; x < b.size(); ++x)
    c.add_object(b.object(x).name, b.dim(x), w[x] * b.unit(x) * w[x].adjoint());
  for (std::size_t x = 0; x < b.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      Subspace s(b.dim(y), b.dim(x));
      for (const auto& m : b.hom(x, y).basis()) s.insert(w[y] * m * w[x].adjoint());
      c.set_hom(x, y, std::move(s));
    }
  return share(std::move(c));
}

// ---------------------------------------------------------------------------
// Lifting squares

/** F : A -> B in Surj: A is B plus unitarily twisted duplicates of some objects. */
struct SurjFunctor {
  CategoryPtr a;
  CategoryPtr b;
  StarFunctor f;
};

inline SurjFunctor make_surj(Rng& rng, const CategoryPtr& b, std::size_t extra) {
  ConcreteCategory a;
  std::vector<std::size_t> origin;
  std::vector<Matrix> w;
  for (std::size_t y = 0; y < b->size(); ++y) {
    origin.push_back(y);
    w.push_back(Matrix::identity(b->dim(y)));
  }
  for (std::size_t e = 0; e < extra; ++e) {
    auto y = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(b->size()) - 1));
    origin.push_back(y);
    w.push_back(random_unitary(rng, b->dim(y)));
  }
  for (std::size_t x = 0; x < origin.size(); ++x) {
    std::string name = x < b->size() ? b->object(x).name : b->object(origin[x]).name + "_" + std::to_string(x);
    a.add_object(name, b->dim(origin[x]), w[x] * b->unit(origin[x]) * w[x].adjoint());
  }
  for (std::size_t x = 0; x < origin.size(); ++x)
    for (std::size_t y = 0; y < origin.size(); ++y) {
      Subspace s(a.dim(y), a.dim(x));
      for (const auto& m : b->hom(origin[x], origin[y]).basis()) s.insert(w[y] * m * w[x].adjoint());
      a.set_hom(x, y, std::move(s));
    }
  SurjFunctor out;
  out.a = share(std::move(a));
  out.b = b;
  out.f = StarFunctor::from_rule(out.a, b, origin, [w](std::size_t x, std::size_t y, const Matrix& m) {
    return w[y].adjoint() * m * w[x];
  });
  return out;
}

/**
 * A generic isometry V : y -> word in Sat(B) built from the known canonical
 * structure of a generated category, or nullopt if y does not fit.
 */
inline std::optional<Matrix> isometry_into_word(Rng& rng, const GeneratedCategory& g, const LazySaturation& sat,
                                                std::size_t y, const std::vector<std::size_t>& word) {
  const auto& form = g.form;
  const auto& can = *g.canonical;
  // Free canonical coordinates per block in the word.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> free(form.k());  // (letter index, coordinate)
  for (std::size_t l = 0; l < word.size(); ++l)
    for (std::size_t i = 0; i < form.k(); ++i)
      for (std::size_t a = 0; a < form.mult[word[l]][i]; ++a)
        free[i].push_back({l, realization_offset(form, word[l], i) + a});
  for (std::size_t i = 0; i < form.k(); ++i)
    if (free[i].size() < form.mult[y][i]) return std::nullopt;
  auto offs = sat.offsets(word);
  offs.push_back(sat.word_dim(word));
  Matrix v(offs.back(), g.category->dim(y));
  std::vector<std::size_t> used(form.k(), 0);
  for (std::size_t i = 0; i < form.k(); ++i)
    for (std::size_t a = 0; a < form.mult[y][i]; ++a) {
      auto [l, coord] = free[i][used[i]++];
      Matrix e(can.dim(word[l]), can.dim(y));
      e(coord, realization_offset(form, y, i) + a) = 1;
      const std::size_t rows = g.category->dim(word[l]);
      v.set_block(offs[l], 0, v.block(offs[l], 0, rows, g.category->dim(y)) + g.embed(y, word[l], e));
    }
  ProjObject w = sat.word_object(word);
  Matrix u = random_unitary_in(rng, *sat.hom(w, w), w.proj);
  return u * v;
}

/** R_n square for F : A -> B with H built from an isometry into the word F(x_1..x_n). */
inline std::optional<RangeSquare> random_range_square(Rng& rng, const StarFunctor& f, const GeneratedCategory& gb,
                                                      const LazySaturation& satb, std::size_t n) {
  const auto& A = f.source();
  std::vector<std::size_t> xs, fx;
  for (std::size_t k = 0; k < n; ++k) {
    xs.push_back(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(A.size()) - 1)));
    fx.push_back(f.object(xs.back()));
  }
  std::vector<std::size_t> candidates;
  for (std::size_t y = 0; y < f.target().size(); ++y) candidates.push_back(y);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (auto y : candidates) {
    auto v = isometry_into_word(rng, gb, satb, y, fx);
    if (!v) continue;
    auto offs = satb.offsets(fx);
    offs.push_back(satb.word_dim(fx));
    RangeSquare sq;
    sq.r_b = y;
    for (std::size_t k = 0; k < n; ++k)
      sq.s_b.push_back(v->block(offs[k], 0, offs[k + 1] - offs[k], v->cols()).adjoint());
    // G(p_kl) is the preimage of s_k* s_l; F is fully faithful on these homs when a lift can exist.
    sq.g.objects = xs;
    sq.g.p.assign(n, {});
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k)
      for (std::size_t l = 0; l < n && ok; ++l) {
        Matrix target = sq.s_b[k].adjoint() * sq.s_b[l];
        const auto& imgs = f.basis_images(xs[l], xs[k]);
        auto c = span_membership(target, imgs);
        if (!c) {
          ok = false;
          break;
        }
        sq.g.p[k].push_back(A.hom(xs[l], xs[k]).combine(*c));
      }
    if (!ok) continue;
    // The preimage must itself be a projection matrix; it is whenever F is faithful.
    Assignment as = sq.g.to_assignment(f.source_ptr());
    if (!check_representation(build_universal("P", n), as).ok) continue;
    return sq;
  }
  return std::nullopt;
}

/** S_n square: H(s) is an object of B whose class is the sum of the F(x_k), with isometries v_k. */
inline std::optional<SumSquare> random_sum_square(Rng& rng, const StarFunctor& f, const GeneratedCategory& gb,
                                                  const LazySaturation& satb, std::size_t n) {
  const auto& A = f.source();
  const auto& form = gb.form;
  std::vector<std::size_t> xs, fx;
  std::vector<std::size_t> total(form.k(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    xs.push_back(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(A.size()) - 1)));
    fx.push_back(f.object(xs.back()));
    for (std::size_t i = 0; i < form.k(); ++i) total[i] += form.mult[fx.back()][i];
  }
  for (std::size_t y = 0; y < f.target().size(); ++y) {
    if (form.mult[y] != total) continue;
    auto v = isometry_into_word(rng, gb, satb, y, fx);
    if (!v) continue;
    // v : y -> word is unitary onto the word, so its adjoint blocks are the sum isometries.
    auto offs = satb.offsets(fx);
    offs.push_back(satb.word_dim(fx));
    SumSquare sq;
    sq.objects = xs;
    sq.s_b = y;
    for (std::size_t k = 0; k < n; ++k) sq.v_b.push_back(v->block(offs[k], 0, offs[k + 1] - offs[k], v->cols()).adjoint());
    return sq;
  }
  return std::nullopt;
}

}  // namespace oracle
