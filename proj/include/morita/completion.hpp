#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "morita/errors.hpp"
#include "morita/scalar.hpp"
#include "morita/starcat.hpp"

namespace morita {

using Word = std::vector<std::size_t>;

/**
 * Object of the saturation Sat(A): a word of objects of A together with a
 * projection in the matrix algebra of the word.
 */
struct ProjObject {
  Word word;
  Matrix proj;

  friend bool operator==(const ProjObject& a, const ProjObject& b) { return a.word == b.word && a.proj == b.proj; }

  std::string key() const {
    std::string k;
    for (auto w : word) k += std::to_string(w) + ",";
    k += "|";
    for (const auto& s : proj.flat()) k += s.to_string() + ";";
    return k;
  }
};

struct SumResult {
  ProjObject sum;
  std::vector<Matrix> isometries;  // v_i : summand i -> sum
};

struct RangeResult {
  ProjObject range;
  Matrix isometry;  // v : range -> z with v v* = q
};

/**
 * Saturation of a concrete category, computed on demand. Hom spaces are
 * memoized by content; the cache is safe for concurrent readers.
 */
class LazySaturation {
 public:
  explicit LazySaturation(CategoryPtr base) : base_(std::move(base)) {}

  const ConcreteCategory& base() const { return *base_; }
  const CategoryPtr& base_ptr() const { return base_; }

  std::size_t word_dim(const Word& w) const {
    std::size_t d = 0;
    for (auto x : w) d += base_->dim(x);
    return d;
  }
  std::vector<std::size_t> offsets(const Word& w) const {
    std::vector<std::size_t> off;
    std::size_t d = 0;
    for (auto x : w) {
      off.push_back(d);
      d += base_->dim(x);
    }
    return off;
  }
  Matrix word_unit(const Word& w) const {
    std::vector<Matrix> us;
    for (auto x : w) us.push_back(base_->unit(x));
    return Matrix::block_diagonal(us);
  }

  /** m : word a -> word b has every block (i, j) in A(a_j, b_i). */
  bool in_blocks(const Word& a, const Word& b, const Matrix& m) const {
    if (m.rows() != word_dim(b) || m.cols() != word_dim(a)) return false;
    auto oa = offsets(a), ob = offsets(b);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        if (!base_->hom(a[j], b[i]).contains(m.block(ob[i], oa[j], base_->dim(b[i]), base_->dim(a[j]))))
          return false;
    return true;
  }

  bool is_object(const ProjObject& p, std::string* why = nullptr) const {
    auto fail = [&](const std::string& s) {
      if (why) *why = s;
      return false;
    };
    for (auto x : p.word)
      if (x >= base_->size()) return fail("word letter out of range");
    const std::size_t d = word_dim(p.word);
    if (p.proj.rows() != d || p.proj.cols() != d)
      return fail("projection is " + p.proj.shape_string() + ", word needs " + std::to_string(d) + "x" +
                  std::to_string(d));
    if (!p.proj.is_projection()) return fail("matrix is not a self-adjoint idempotent");
    if (!in_blocks(p.word, p.word, p.proj)) return fail("projection is not an endomorphism of the word");
    return true;
  }

  void require_object(const ProjObject& p) const {
    std::string why;
    if (!is_object(p, &why)) throw InvalidInput("not an object of the saturation: " + why);
  }

  ProjObject iota(std::size_t x) const { return {{x}, base_->unit(x)}; }
  ProjObject zero_object() const { return {{}, Matrix()}; }
  ProjObject word_object(const Word& w) const { return {w, word_unit(w)}; }

  /** hom(a, b) = b.proj * Blocks(a.word, b.word) * a.proj. */
  std::shared_ptr<const Subspace> hom(const ProjObject& a, const ProjObject& b) const {
    std::string key = a.key() + "=>" + b.key();
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    auto oa = offsets(a.word), ob = offsets(b.word);
    auto s = std::make_shared<Subspace>(b.proj.rows(), a.proj.cols());
    for (std::size_t i = 0; i < b.word.size(); ++i) {
      const std::size_t di = base_->dim(b.word[i]);
      Matrix left = b.proj.block(0, ob[i], b.proj.rows(), di);
      for (std::size_t j = 0; j < a.word.size(); ++j) {
        const std::size_t dj = base_->dim(a.word[j]);
        const Subspace& h = base_->hom(a.word[j], b.word[i]);
        if (h.empty()) continue;
        Matrix right = a.proj.block(oa[j], 0, dj, a.proj.cols());
        for (const auto& t : h.basis()) {
          Matrix m = left * t * right;
          if (!m.is_zero()) s->insert(m);
          if (s->dim() == s->rows() * s->cols()) break;
        }
      }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = cache_.emplace(std::move(key), std::move(s));
    return it->second;
  }

  bool contains_arrow(const ProjObject& a, const ProjObject& b, const Matrix& m) const {
    if (m.rows() != b.proj.rows() || m.cols() != a.proj.cols()) return false;
    if (!(b.proj * m * a.proj == m)) return false;
    return in_blocks(a.word, b.word, m);
  }

  SumResult canonical_sum(const std::vector<ProjObject>& parts) const {
    SumResult r;
    std::vector<Matrix> ps;
    for (const auto& p : parts) {
      r.sum.word.insert(r.sum.word.end(), p.word.begin(), p.word.end());
      ps.push_back(p.proj);
    }
    r.sum.proj = Matrix::block_diagonal(ps);
    std::size_t off = 0;
    for (const auto& p : parts) {
      Matrix v(r.sum.proj.rows(), p.proj.cols());
      v.set_block(off, 0, p.proj);
      off += p.proj.rows();
      r.isometries.push_back(std::move(v));
    }
    return r;
  }

  /** Splits a projection q in End(z): the range is (z.word, q), embedded by q itself. */
  RangeResult canonical_range(const ProjObject& z, const Matrix& q) const {
    if (!q.is_projection()) throw InvalidInput("canonical_range: not a projection");
    if (!contains_arrow(z, z, q)) throw InvalidInput("canonical_range: projection is not an endomorphism of z");
    return {{z.word, q}, q};
  }

  std::string object_name(const ProjObject& p) const {
    std::string n = "(";
    for (std::size_t k = 0; k < p.word.size(); ++k) n += (k ? " " : "") + base_->object(p.word[k]).name;
    n += ")";
    if (!(p.proj == word_unit(p.word))) n += "[" + std::to_string(rank(p.proj)) + "]";
    return n;
  }

  /** Full subcategory of Sat(A) on the given objects, as a concrete category. */
  ConcreteCategory materialize(const std::vector<ProjObject>& objs, std::vector<std::string> names = {}) const {
    ConcreteCategory c;
    for (std::size_t k = 0; k < objs.size(); ++k) {
      require_object(objs[k]);
      std::string name = k < names.size() ? names[k] : object_name(objs[k]);
      while (c.find(name)) name += "'";
      c.add_object(name, objs[k].proj.rows(), objs[k].proj);
    }
    for (std::size_t x = 0; x < objs.size(); ++x)
      for (std::size_t y = 0; y < objs.size(); ++y) c.set_hom(x, y, *hom(objs[x], objs[y]));
    return c;
  }

  std::size_t cache_size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
  }

 private:
  CategoryPtr base_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const Subspace>> cache_;
};

using SaturationPtr = std::shared_ptr<const LazySaturation>;

inline SaturationPtr saturation(CategoryPtr base) { return std::make_shared<const LazySaturation>(std::move(base)); }

/** All words of length <= max_len over n letters, shortest first. */
inline std::vector<Word> words_up_to(std::size_t n, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_len && n > 0; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (std::size_t x = 0; x < n; ++x) {
        Word v = w;
        v.push_back(x);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/**
 * Functor from a concrete category into a saturation Sat(C): objects go to
 * ProjObjects over C, arrows to matrices between them.
 */
class SatFunctor {
 public:
  SatFunctor() = default;
  SatFunctor(CategoryPtr source, SaturationPtr target, std::vector<ProjObject> objects)
      : source_(std::move(source)), target_(std::move(target)), objects_(std::move(objects)) {
    if (objects_.size() != source_->size()) throw InvalidInput("object map has the wrong length");
    images_.resize(source_->size() * source_->size());
  }

  template <class Rule>
  static SatFunctor from_rule(CategoryPtr source, SaturationPtr target, std::vector<ProjObject> objects, Rule&& rule) {
    SatFunctor f(std::move(source), std::move(target), std::move(objects));
    const std::size_t n = f.source_->size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (const auto& a : f.source_->hom(x, y).basis()) f.images_[x * n + y].push_back(rule(x, y, a));
    return f;
  }

  const ConcreteCategory& source() const { return *source_; }
  const CategoryPtr& source_ptr() const { return source_; }
  const LazySaturation& target() const { return *target_; }
  const SaturationPtr& target_ptr() const { return target_; }
  const ProjObject& object(std::size_t x) const { return objects_.at(x); }
  const std::vector<ProjObject>& objects() const { return objects_; }
  const std::vector<Matrix>& basis_images(std::size_t x, std::size_t y) const {
    return images_.at(x * source_->size() + y);
  }

  Matrix apply(std::size_t x, std::size_t y, const Matrix& a) const {
    auto coords = source_->hom(x, y).coordinates(a);
    if (!coords) throw InvalidInput("apply: matrix is not an arrow " + detail::arrow_label(*source_, x, y));
    const auto& imgs = basis_images(x, y);
    Matrix out(objects_[y].proj.rows(), objects_[x].proj.rows());
    for (std::size_t k = 0; k < coords->size(); ++k)
      if (!(*coords)[k].is_zero()) out += (*coords)[k] * imgs[k];
    return out;
  }

  /**
   * The same functor with its target cut down to the (distinct) image objects,
   * materialized as a concrete category.
   */
  StarFunctor to_star() const {
    std::vector<ProjObject> distinct;
    std::vector<std::size_t> map;
    for (const auto& o : objects_) {
      std::size_t k = 0;
      while (k < distinct.size() && !(distinct[k] == o)) ++k;
      if (k == distinct.size()) distinct.push_back(o);
      map.push_back(k);
    }
    auto tgt = share(target_->materialize(distinct));
    StarFunctor f(source_, tgt, map);
    const std::size_t n = source_->size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) f.set_basis_images(x, y, basis_images(x, y));
    return f;
  }

 private:
  CategoryPtr source_;
  SaturationPtr target_;
  std::vector<ProjObject> objects_;
  std::vector<std::vector<Matrix>> images_;
};

inline ValidationReport validate_sat_functor(const SatFunctor& f) {
  ValidationReport r;
  for (std::size_t x = 0; x < f.source().size(); ++x) {
    std::string why;
    if (!f.target().is_object(f.object(x), &why)) r.fail("image of " + f.source().object(x).name + ": " + why);
  }
  if (!r.ok) return r;
  return validate_functor(f.to_star());
}

/** The unit A -> Sat(A), x |-> ([x], 1_x). */
inline SatFunctor iota_functor(const CategoryPtr& a, SaturationPtr sat = nullptr) {
  if (!sat) sat = saturation(a);
  std::vector<ProjObject> objs;
  for (std::size_t x = 0; x < a->size(); ++x) objs.push_back(sat->iota(x));
  return SatFunctor::from_rule(a, sat, objs, [](std::size_t, std::size_t, const Matrix& m) { return m; });
}

/** A concrete functor A -> B viewed as A -> Sat(B). */
inline SatFunctor to_saturation(const StarFunctor& f, SaturationPtr sat = nullptr) {
  if (!sat) sat = saturation(f.target_ptr());
  std::vector<ProjObject> objs;
  for (std::size_t x = 0; x < f.source().size(); ++x) objs.push_back(sat->iota(f.object(x)));
  return SatFunctor::from_rule(f.source_ptr(), sat, objs,
                               [&](std::size_t x, std::size_t y, const Matrix& a) { return f.apply(x, y, a); });
}

/**
 * Extension of F : A -> Sat(C) to Sat(A) -> Sat(C), applying F letterwise to
 * words and blockwise to matrices.
 */
class Extension {
 public:
  explicit Extension(SatFunctor f) : f_(std::move(f)) {}

  const SatFunctor& functor() const { return f_; }

  Matrix arrow(const Word& a, const Word& b, const Matrix& m) const {
    const auto& base = f_.source();
    std::vector<std::size_t> ia, ib, fa, fb;
    std::size_t d = 0, e = 0;
    for (auto x : a) {
      ia.push_back(d);
      d += base.dim(x);
      fa.push_back(e);
      e += f_.object(x).proj.rows();
    }
    std::size_t d2 = 0, e2 = 0;
    for (auto y : b) {
      ib.push_back(d2);
      d2 += base.dim(y);
      fb.push_back(e2);
      e2 += f_.object(y).proj.rows();
    }
    if (m.rows() != d2 || m.cols() != d) throw ShapeError("extension: arrow has the wrong shape");
    Matrix out(e2, e);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) {
        Matrix blk = m.block(ib[i], ia[j], base.dim(b[i]), base.dim(a[j]));
        if (blk.is_zero()) continue;
        out.set_block(fb[i], fa[j], f_.apply(a[j], b[i], blk));
      }
    return out;
  }

  ProjObject object(const ProjObject& p) const {
    ProjObject out;
    for (auto x : p.word) out.word.insert(out.word.end(), f_.object(x).word.begin(), f_.object(x).word.end());
    out.proj = arrow(p.word, p.word, p.proj);
    return out;
  }

  /** Restriction to the full subcategory of Sat(A) on objs. */
  SatFunctor restrict(const LazySaturation& sat_a, const std::vector<ProjObject>& objs,
                      std::vector<std::string> names = {}) const {
    auto src = share(sat_a.materialize(objs, std::move(names)));
    std::vector<ProjObject> images;
    for (const auto& o : objs) images.push_back(object(o));
    return SatFunctor::from_rule(src, f_.target_ptr(), images, [&](std::size_t x, std::size_t y, const Matrix& m) {
      return arrow(objs[x].word, objs[y].word, m);
    });
  }

 private:
  SatFunctor f_;
};

inline Extension extend_along_iota(const SatFunctor& f) { return Extension(f); }

/** g~ after f, for f : A -> Sat(B) and g : B -> Sat(C). */
inline SatFunctor compose(const SatFunctor& g, const SatFunctor& f) {
  if (f.target().base_ptr() != g.source_ptr() && !(f.target().base() == g.source()))
    throw InvalidInput("compose: saturation base does not match the source of the second functor");
  Extension ge(g);
  std::vector<ProjObject> objs;
  for (const auto& o : f.objects()) objs.push_back(ge.object(o));
  return SatFunctor::from_rule(f.source_ptr(), g.target_ptr(), objs, [&](std::size_t x, std::size_t y, const Matrix& a) {
    return ge.arrow(f.object(x).word, f.object(y).word, f.apply(x, y, a));
  });
}

/** Pointwise direct sum of two functors with the same source and target. */
inline SatFunctor pointwise_sum(const SatFunctor& f, const SatFunctor& g) {
  if (f.source_ptr() != g.source_ptr() && !(f.source() == g.source()))
    throw InvalidInput("pointwise_sum: sources differ");
  const auto& sat = f.target();
  std::vector<ProjObject> objs;
  for (std::size_t x = 0; x < f.source().size(); ++x) objs.push_back(sat.canonical_sum({f.object(x), g.object(x)}).sum);
  return SatFunctor::from_rule(f.source_ptr(), f.target_ptr(), objs, [&](std::size_t x, std::size_t y, const Matrix& a) {
    std::vector<Matrix> bl{f.apply(x, y, a), g.apply(x, y, a)};
    return Matrix::block_diagonal(bl);
  });
}

/** Truncated additive hull: words of length <= max_len with identity projections. */
struct AdditiveHull {
  SaturationPtr sat;
  std::vector<ProjObject> objects;
  CategoryPtr category;
  StarFunctor sigma;  // A -> hull, x |-> [x]
};

inline AdditiveHull additive_hull(const CategoryPtr& a, std::size_t max_len) {
  AdditiveHull h;
  h.sat = saturation(a);
  for (const auto& w : words_up_to(a->size(), max_len)) h.objects.push_back(h.sat->word_object(w));
  h.category = share(h.sat->materialize(h.objects));
  std::vector<std::size_t> map;
  for (std::size_t x = 0; x < a->size(); ++x) map.push_back(1 + x);  // words_up_to lists [] then single letters
  h.sigma = StarFunctor::from_rule(a, h.category, map, [](std::size_t, std::size_t, const Matrix& m) { return m; });
  return h;
}

/** Hom space of the idempotent completion: q A(x, y) p. */
inline Subspace idempotent_completion_hom(const CategoryPtr& a, std::size_t x, const Matrix& p, std::size_t y,
                                          const Matrix& q) {
  LazySaturation sat(a);
  ProjObject px{{x}, p}, qy{{y}, q};
  sat.require_object(px);
  sat.require_object(qy);
  return *sat.hom(px, qy);
}

}  // namespace morita
