#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "morita/completion.hpp"
#include "morita/errors.hpp"
#include "morita/semisimple.hpp"
#include "morita/starcat.hpp"

namespace morita {

using NatMatrix = std::vector<std::vector<std::size_t>>;

/** Morphism of the homotopy category in normal form: mult[j][i] copies of target block j per source block i. */
struct HoMorphism {
  SemisimpleForm source;
  SemisimpleForm target;
  NatMatrix mult;  // k_target x k_source

  std::size_t rows() const { return target.k(); }
  std::size_t cols() const { return source.k(); }

  void check() const {
    if (mult.size() != target.k()) throw ShapeError("HoMorphism: expected " + std::to_string(target.k()) + " rows");
    for (const auto& r : mult)
      if (r.size() != source.k()) throw ShapeError("HoMorphism: expected " + std::to_string(source.k()) + " columns");
  }

  friend bool operator==(const HoMorphism&, const HoMorphism&) = default;
};

/** Description of the free commutative monoid Hom(A, B). */
struct HoHomMonoid {
  std::size_t k_target = 0;
  std::size_t k_source = 0;
  std::vector<std::string> generators;  // "target_block<-source_block"
  std::size_t rank() const { return k_target * k_source; }
};

inline HoHomMonoid hom_monoid(const SemisimpleForm& a, const SemisimpleForm& b) {
  HoHomMonoid m;
  m.k_source = a.k();
  m.k_target = b.k();
  for (std::size_t j = 0; j < b.k(); ++j)
    for (std::size_t i = 0; i < a.k(); ++i) m.generators.push_back(b.blocks[j] + "<-" + a.blocks[i]);
  return m;
}

inline HoMorphism zero_morphism(const SemisimpleForm& a, const SemisimpleForm& b) {
  return {a, b, NatMatrix(b.k(), std::vector<std::size_t>(a.k(), 0))};
}

inline HoMorphism identity_morphism(const SemisimpleForm& a) {
  HoMorphism f = zero_morphism(a, a);
  for (std::size_t i = 0; i < a.k(); ++i) f.mult[i][i] = 1;
  return f;
}

/** Decomposition of the canonical realization whose block order is that of the form. */
inline Decomposition canonical_decomposition(const SemisimpleForm& form, CategoryPtr realized = nullptr) {
  if (!realized) realized = share(realize(form));
  Decomposition d;
  d.category = realized;
  d.form = form;
  d.copies.assign(form.k(), 1);
  for (std::size_t i = 0; i < form.k(); ++i) {
    std::vector<Matrix> zs;
    for (std::size_t x = 0; x < form.objects.size(); ++x) {
      Matrix z(realized->dim(x), realized->dim(x));
      for (std::size_t a = 0; a < form.mult[x][i]; ++a) {
        std::size_t c = realization_offset(form, x, i) + a;
        z(c, c) = 1;
      }
      zs.push_back(std::move(z));
    }
    d.central.push_back(std::move(zs));
  }
  return d;
}

/** Entry (j, i) is the multiplicity of target block j in the image of a block-i minimal projection. */
inline HoMorphism class_of_functor(const SatFunctor& f, const Decomposition& da, const Decomposition& db) {
  HoMorphism h = zero_morphism(da.form, db.form);
  for (std::size_t i = 0; i < da.k(); ++i) {
    std::size_t x = 0;
    while (da.form.mult[x][i] == 0) ++x;
    ProjObject img{f.object(x).word, f.apply(x, x, da.central[i][x])};
    auto cls = object_class(db, img);
    for (std::size_t j = 0; j < db.k(); ++j) {
      if (cls[j] % da.form.mult[x][i] != 0)
        throw std::logic_error("class_of_functor: image class not divisible by the source multiplicity");
      h.mult[j][i] = cls[j] / da.form.mult[x][i];
    }
  }
  return h;
}

inline HoMorphism class_of_functor(const SatFunctor& f) {
  return class_of_functor(f, decompose(f.source_ptr()), decompose(f.target().base_ptr()));
}

inline HoMorphism class_of_functor(const StarFunctor& f) { return class_of_functor(to_saturation(f)); }

/**
 * Canonical representative on canonical realizations: block i of x goes to
 * mult[j][i] copies of the block-j minimal projection of the first object
 * supporting j, one copy per coordinate of x in block i.
 */
inline SatFunctor representative(const HoMorphism& f, const CategoryPtr& src, const SaturationPtr& tgt) {
  f.check();
  const auto& A = f.source;
  const auto& B = f.target;
  std::vector<std::size_t> support(B.k());
  for (std::size_t j = 0; j < B.k(); ++j) {
    std::size_t y = 0;
    while (B.mult[y][j] == 0) ++y;
    support[j] = y;
  }
  const auto& real_b = tgt->base();
  // slot(x)[(i, a, j, c)] = position in the word of x
  struct Slot {
    std::size_t i, a, j, c;
  };
  std::vector<std::vector<Slot>> slots(A.objects.size());
  std::vector<ProjObject> objs;
  for (std::size_t x = 0; x < A.objects.size(); ++x) {
    Word w;
    std::vector<Matrix> ps;
    for (std::size_t i = 0; i < A.k(); ++i)
      for (std::size_t a = 0; a < A.mult[x][i]; ++a)
        for (std::size_t j = 0; j < B.k(); ++j)
          for (std::size_t c = 0; c < f.mult[j][i]; ++c) {
            slots[x].push_back({i, a, j, c});
            std::size_t y = support[j];
            w.push_back(y);
            Matrix e(real_b.dim(y), real_b.dim(y));
            std::size_t o = realization_offset(B, y, j);
            e(o, o) = 1;
            ps.push_back(std::move(e));
          }
    objs.push_back({w, Matrix::block_diagonal(ps)});
  }
  auto word_offsets = [&](std::size_t x) { return tgt->offsets(objs[x].word); };
  return SatFunctor::from_rule(src, tgt, objs, [&, slots, support, objs](std::size_t x, std::size_t y, const Matrix& m) {
    Matrix out(objs[y].proj.rows(), objs[x].proj.rows());
    auto ox = word_offsets(x), oy = word_offsets(y);
    for (std::size_t p = 0; p < slots[x].size(); ++p)
      for (std::size_t q = 0; q < slots[y].size(); ++q) {
        const auto& s = slots[x][p];
        const auto& t = slots[y][q];
        if (s.i != t.i || s.j != t.j || s.c != t.c) continue;
        const Scalar& coef = m(realization_offset(A, y, t.i) + t.a, realization_offset(A, x, s.i) + s.a);
        if (coef.is_zero()) continue;
        std::size_t o = realization_offset(B, support[s.j], s.j);
        out(oy[q] + o, ox[p] + o) = coef;
      }
    return out;
  });
}

inline HoMorphism ho_compose(const HoMorphism& g, const HoMorphism& f) {
  g.check();
  f.check();
  if (g.source.k() != f.target.k())
    throw ShapeError("ho_compose: " + std::to_string(f.target.k()) + " target blocks vs " +
                     std::to_string(g.source.k()) + " source blocks");
  HoMorphism h = zero_morphism(f.source, g.target);
  for (std::size_t j = 0; j < g.rows(); ++j)
    for (std::size_t i = 0; i < f.cols(); ++i)
      for (std::size_t l = 0; l < f.rows(); ++l) h.mult[j][i] += g.mult[j][l] * f.mult[l][i];
  return h;
}

inline HoMorphism ho_add(const HoMorphism& f, const HoMorphism& g) {
  f.check();
  g.check();
  if (f.rows() != g.rows() || f.cols() != g.cols()) throw ShapeError("ho_add: shapes differ");
  HoMorphism h = f;
  for (std::size_t j = 0; j < f.rows(); ++j)
    for (std::size_t i = 0; i < f.cols(); ++i) h.mult[j][i] += g.mult[j][i];
  return h;
}

inline bool is_permutation_matrix(const NatMatrix& m) {
  const std::size_t n = m.size();
  std::vector<int> col(n, 0);
  for (const auto& r : m) {
    if (r.size() != n) return false;
    std::size_t ones = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (r[c] > 1) return false;
      if (r[c] == 1) {
        ++ones;
        ++col[c];
      }
    }
    if (ones != 1) return false;
  }
  return std::all_of(col.begin(), col.end(), [](int c) { return c == 1; });
}

inline bool ho_is_iso(const HoMorphism& f) { return is_permutation_matrix(f.mult); }

inline NatMatrix transpose(const NatMatrix& m) {
  if (m.empty()) return {};
  NatMatrix t(m[0].size(), std::vector<std::size_t>(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) t[c][r] = m[r][c];
  return t;
}

/** Inverse of an isomorphism (the transpose); throws InvalidInput otherwise. */
inline HoMorphism ho_inverse(const HoMorphism& f) {
  if (!ho_is_iso(f)) throw InvalidInput("ho_inverse: not a permutation matrix");
  return {f.target, f.source, transpose(f.mult)};
}

struct PicardGroup {
  std::size_t k = 0;
  std::uint64_t order = 1;
  std::vector<NatMatrix> generators;  // adjacent transpositions
  std::string name() const { return k <= 1 ? "trivial group" : "S_" + std::to_string(k); }
};

inline PicardGroup aut_group(const SemisimpleForm& a) {
  PicardGroup g;
  g.k = a.k();
  for (std::size_t n = 2; n <= g.k; ++n) g.order *= n;
  for (std::size_t t = 0; t + 1 < g.k; ++t) {
    NatMatrix m(g.k, std::vector<std::size_t>(g.k, 0));
    for (std::size_t i = 0; i < g.k; ++i) m[i][i] = 1;
    m[t][t] = m[t + 1][t + 1] = 0;
    m[t][t + 1] = m[t + 1][t] = 1;
    g.generators.push_back(std::move(m));
  }
  return g;
}

namespace detail {

inline std::int64_t det_int(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  std::int64_t d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    std::int64_t term = m[0][c] * det_int(minor);
    d += (c % 2 == 0) ? term : -term;
  }
  return d;
}

}  // namespace detail

/** True when the integer inverse of m exists and has no negative entry. */
inline bool has_nat_inverse(const NatMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = static_cast<std::int64_t>(m[r][c]);
  std::int64_t d = detail::det_int(a);
  if (d != 1 && d != -1) return false;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      // adjugate entry (r, c) = (-1)^{r+c} det(minor without row c, column r)
      std::vector<std::vector<std::int64_t>> minor;
      for (std::size_t rr = 0; rr < n; ++rr) {
        if (rr == c) continue;
        std::vector<std::int64_t> row;
        for (std::size_t cc = 0; cc < n; ++cc)
          if (cc != r) row.push_back(a[rr][cc]);
        minor.push_back(std::move(row));
      }
      std::int64_t adj = ((r + c) % 2 == 0 ? 1 : -1) * detail::det_int(minor);
      if (adj * d < 0) return false;
    }
  return true;
}

/** Every rows x cols matrix with entries <= max_entry and entry sum <= max_sum, in lexicographic order. */
inline std::vector<NatMatrix> enumerate_nat_matrices(std::size_t rows, std::size_t cols, std::size_t max_entry,
                                                     std::size_t max_sum = SIZE_MAX) {
  std::vector<NatMatrix> out;
  std::vector<std::size_t> cur(rows * cols, 0);
  auto emit = [&] {
    NatMatrix m(rows, std::vector<std::size_t>(cols));
    for (std::size_t k = 0; k < cur.size(); ++k) m[k / cols][k % cols] = cur[k];
    out.push_back(std::move(m));
  };
  auto rec = [&](auto&& self, std::size_t pos, std::size_t sum) -> void {
    if (pos == cur.size()) {
      emit();
      return;
    }
    for (std::size_t v = 0; v <= max_entry && sum + v <= max_sum; ++v) {
      cur[pos] = v;
      self(self, pos + 1, sum + v);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

struct PicardVerification {
  std::size_t examined = 0;
  std::size_t invertible = 0;
  bool all_permutations = true;
  bool matches = false;  // invertible count equals the group order
};

/** Bounded enumeration of N-invertible k x k matrices with entries <= bound. */
inline PicardVerification verify_aut_group(const PicardGroup& g, std::size_t bound) {
  PicardVerification v;
  for (const auto& m : enumerate_nat_matrices(g.k, g.k, bound)) {
    ++v.examined;
    if (!has_nat_inverse(m)) continue;
    ++v.invertible;
    if (!is_permutation_matrix(m)) v.all_permutations = false;
  }
  v.matches = v.all_permutations && v.invertible == g.order;
  return v;
}

inline std::size_t default_picard_bound(std::size_t k) { return k <= 3 ? 2 : 1; }

/** Comparison functor A ⊔ B -> (sample of Sat A) x (sample of Sat B) and its Morita certificate. */
struct SemiadditivityReport {
  bool passes = false;
  std::size_t k_coproduct = 0;
  std::size_t k_product = 0;
  MoritaCertificate certificate;
};

inline SemiadditivityReport semiadditivity_check(const CategoryPtr& a, const CategoryPtr& b) {
  auto coprod = share(coproduct(*a, *b));
  auto sa = saturation(a);
  auto sb = saturation(b);
  std::vector<ProjObject> pa{sa->zero_object()}, pb{sb->zero_object()};
  std::vector<std::string> na{"0"}, nb{"0"};
  for (std::size_t x = 0; x < a->size(); ++x) {
    pa.push_back(sa->iota(x));
    na.push_back(a->object(x).name);
  }
  for (std::size_t y = 0; y < b->size(); ++y) {
    pb.push_back(sb->iota(y));
    nb.push_back(b->object(y).name);
  }
  auto ca = share(sa->materialize(pa, na));
  auto cb = share(sb->materialize(pb, nb));
  auto prod = share(product(*ca, *cb));
  const std::size_t width = cb->size();
  std::vector<std::size_t> objs;
  for (std::size_t x = 0; x < a->size(); ++x) objs.push_back((1 + x) * width + 0);
  for (std::size_t y = 0; y < b->size(); ++y) objs.push_back(0 * width + (1 + y));
  const std::size_t na_count = a->size();
  auto cmp = StarFunctor::from_rule(coprod, prod, objs, [&](std::size_t x, std::size_t y, const Matrix& m) {
    // coproduct homs across the two halves vanish, so the image is block diagonal with a zero part
    if (x < na_count && y < na_count) return m;
    if (x >= na_count && y >= na_count) return m;
    return Matrix(prod->dim(objs[y]), prod->dim(objs[x]));
  });
  SemiadditivityReport rep;
  Decomposition dc = decompose(coprod);
  Decomposition dp = decompose(prod);
  rep.k_coproduct = dc.k();
  rep.k_product = dp.k();
  rep.certificate = is_morita_equivalence(to_saturation(cmp), dp);
  rep.passes = rep.certificate.equivalent && rep.k_coproduct == rep.k_product;
  return rep;
}

}  // namespace morita
