#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "morita/errors.hpp"
#include "morita/scalar.hpp"

namespace morita {

/** Object of a concrete category: a space Q(i)^dim cut down by a projection. */
struct Object {
  std::string name;
  std::size_t dim = 0;
  Matrix unit;  // projection onto the part of Q(i)^dim the object occupies
};

/**
 * Finite-dimensional *-category realized by matrices. hom(x, y) is the space
 * of arrows x -> y, a subspace of dim(y) x dim(x) matrices.
 */
class ConcreteCategory {
 public:
  ConcreteCategory() = default;

  std::size_t size() const { return objects_.size(); }
  const Object& object(std::size_t x) const { return objects_.at(x); }
  const std::vector<Object>& objects() const { return objects_; }
  const Matrix& unit(std::size_t x) const { return objects_.at(x).unit; }
  std::size_t dim(std::size_t x) const { return objects_.at(x).dim; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t k = 0; k < objects_.size(); ++k)
      if (objects_[k].name == name) return k;
    return std::nullopt;
  }
  std::size_t index(const std::string& name) const {
    if (auto k = find(name)) return *k;
    throw InvalidInput("unknown object '" + name + "'");
  }

  /** Adds an object; End(x) starts as the span of its unit. */
  std::size_t add_object(std::string name, std::size_t dim, std::optional<Matrix> unit = std::nullopt) {
    if (find(name)) throw InvalidInput("duplicate object name '" + name + "'");
    Matrix u = unit ? *unit : Matrix::identity(dim);
    if (u.rows() != dim || u.cols() != dim) throw ShapeError("unit of '" + name + "' has the wrong shape");
    objects_.push_back({std::move(name), dim, std::move(u)});
    const std::size_t n = objects_.size();
    std::vector<Subspace> homs(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        homs[x * n + y] = (x < n - 1 && y < n - 1) ? std::move(homs_[x * (n - 1) + y])
                                                   : Subspace(objects_[y].dim, objects_[x].dim);
    homs_ = std::move(homs);
    Subspace e(dim, dim);
    if (!objects_.back().unit.is_zero()) e.insert(objects_.back().unit);
    homs_[(n - 1) * n + (n - 1)] = std::move(e);
    return n - 1;
  }

  const Subspace& hom(std::size_t x, std::size_t y) const { return homs_.at(x * size() + y); }

  void set_hom(std::size_t x, std::size_t y, Subspace s) {
    if (s.rows() != dim(y) || s.cols() != dim(x)) throw ShapeError("hom space has the wrong shape");
    homs_.at(x * size() + y) = std::move(s);
  }

  /** Adds m to hom(x, y); returns true if the space grew. */
  bool add_arrow(std::size_t x, std::size_t y, const Matrix& m) { return homs_.at(x * size() + y).insert(m); }

  std::size_t total_dimension() const {
    std::size_t d = 0;
    for (const auto& h : homs_) d += h.dim();
    return d;
  }

  friend bool operator==(const ConcreteCategory& a, const ConcreteCategory& b) {
    if (a.objects_.size() != b.objects_.size()) return false;
    for (std::size_t k = 0; k < a.objects_.size(); ++k) {
      const auto &oa = a.objects_[k], &ob = b.objects_[k];
      if (oa.name != ob.name || oa.dim != ob.dim || !(oa.unit == ob.unit)) return false;
    }
    return a.homs_ == b.homs_;
  }

 private:
  std::vector<Object> objects_;
  std::vector<Subspace> homs_;
};

using CategoryPtr = std::shared_ptr<const ConcreteCategory>;

inline CategoryPtr share(ConcreteCategory c) { return std::make_shared<const ConcreteCategory>(std::move(c)); }

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string why) {
    ok = false;
    violations.push_back(std::move(why));
  }
};

namespace detail {

inline std::string arrow_label(const ConcreteCategory& c, std::size_t x, std::size_t y) {
  return c.object(x).name + "->" + c.object(y).name;
}

}  // namespace detail

/**
 * Checks that units are projections lying in End(x), that every hom space is
 * cut down by the units, and closure under composition and adjoint.
 */
inline ValidationReport validate_category(const ConcreteCategory& c) {
  ValidationReport r;
  const std::size_t n = c.size();
  for (std::size_t x = 0; x < n; ++x) {
    const Matrix& u = c.unit(x);
    if (!u.is_projection()) r.fail("unit of " + c.object(x).name + " is not a projection");
    if (!u.is_zero() && !c.hom(x, x).contains(u)) r.fail("identity of " + c.object(x).name + " missing from End");
  }
  if (!r.ok) return r;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto basis = c.hom(x, y).basis();
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const Matrix& a = basis[k];
        if (!(c.unit(y) * a * c.unit(x) == a))
          r.fail("arrow " + std::to_string(k) + " of " + detail::arrow_label(c, x, y) + " not supported on units");
        if (!c.hom(y, x).contains(a.adjoint()))
          r.fail("adjoint of arrow " + std::to_string(k) + " of " + detail::arrow_label(c, x, y) + " missing");
      }
      for (std::size_t z = 0; z < n; ++z) {
        if (c.hom(y, z).empty() || basis.empty()) continue;
        for (const auto& b : c.hom(y, z).basis())
          for (const auto& a : basis)
            if (!c.hom(x, z).contains(b * a)) {
              r.fail("composite " + detail::arrow_label(c, x, y) + " then " + detail::arrow_label(c, y, z) +
                     " leaves " + detail::arrow_label(c, x, z));
              goto next_pair;
            }
      }
    next_pair:;
    }
  return r;
}

struct Arrow {
  std::size_t src = 0;
  std::size_t tgt = 0;
  Matrix m;
};

/**
 * Smallest *-category on the given objects containing the generators:
 * spans of composites of generators, their adjoints and units.
 */
inline ConcreteCategory closure(std::vector<Object> objects, const std::vector<Arrow>& generators) {
  ConcreteCategory c;
  for (auto& o : objects) c.add_object(o.name, o.dim, o.unit);
  const std::size_t n = c.size();
  for (const auto& g : generators) {
    if (g.src >= n || g.tgt >= n) throw InvalidInput("generator refers to a missing object");
    if (g.m.rows() != c.dim(g.tgt) || g.m.cols() != c.dim(g.src)) throw ShapeError("generator has the wrong shape");
    c.add_arrow(g.src, g.tgt, g.m);
    c.add_arrow(g.tgt, g.src, g.m.adjoint());
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (c.hom(x, y).empty()) continue;
        auto as = c.hom(x, y).basis();
        for (std::size_t z = 0; z < n; ++z) {
          if (c.hom(y, z).empty()) continue;
          auto bs = c.hom(y, z).basis();
          for (const auto& b : bs)
            for (const auto& a : as) grew = c.add_arrow(x, z, b * a) || grew;
        }
      }
  }
  return c;
}

/** Single object of dimension n with End = all n x n matrices. */
inline ConcreteCategory matrix_algebra(std::size_t n, std::string name = "x") {
  ConcreteCategory c;
  c.add_object(std::move(name), n);
  Subspace s(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t col = 0; col < n; ++col) {
      Matrix e(n, n);
      e(r, col) = 1;
      s.insert(e);
    }
  c.set_hom(0, 0, std::move(s));
  return c;
}

/** n objects of dimension 1 with only scalar endomorphisms. */
inline ConcreteCategory discrete_category(std::size_t n) {
  ConcreteCategory c;
  for (std::size_t k = 0; k < n; ++k) c.add_object("e" + std::to_string(k + 1), 1);
  return c;
}

inline ConcreteCategory full_subcategory(const ConcreteCategory& a, const std::vector<std::size_t>& keep) {
  ConcreteCategory c;
  for (auto k : keep) c.add_object(a.object(k).name, a.dim(k), a.unit(k));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) c.set_hom(i, j, a.hom(keep[i], keep[j]));
  return c;
}

/** Disjoint union; object names get the given prefixes when they collide. */
inline ConcreteCategory coproduct(const ConcreteCategory& a, const ConcreteCategory& b) {
  ConcreteCategory c;
  for (const auto& o : a.objects()) c.add_object(o.name, o.dim, o.unit);
  for (const auto& o : b.objects()) {
    std::string name = o.name;
    while (c.find(name)) name += "'";
    c.add_object(name, o.dim, o.unit);
  }
  const std::size_t na = a.size();
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < na; ++y) c.set_hom(x, y, a.hom(x, y));
  for (std::size_t x = 0; x < b.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) c.set_hom(na + x, na + y, b.hom(x, y));
  return c;
}

/** Product category: pairs of objects, arrows realized block-diagonally. */
inline ConcreteCategory product(const ConcreteCategory& a, const ConcreteCategory& b) {
  ConcreteCategory c;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      std::vector<Matrix> us{a.unit(x), b.unit(y)};
      c.add_object("(" + a.object(x).name + "," + b.object(y).name + ")", a.dim(x) + b.dim(y),
                   Matrix::block_diagonal(us));
    }
  const std::size_t nb = b.size();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < nb; ++y)
      for (std::size_t x2 = 0; x2 < a.size(); ++x2)
        for (std::size_t y2 = 0; y2 < nb; ++y2) {
          Subspace s(a.dim(x2) + b.dim(y2), a.dim(x) + b.dim(y));
          for (const auto& m : a.hom(x, x2).basis()) {
            std::vector<Matrix> bl{m, Matrix(b.dim(y2), b.dim(y))};
            s.insert(Matrix::block_diagonal(bl));
          }
          for (const auto& m : b.hom(y, y2).basis()) {
            std::vector<Matrix> bl{Matrix(a.dim(x2), a.dim(x)), m};
            s.insert(Matrix::block_diagonal(bl));
          }
          c.set_hom(x * nb + y, x2 * nb + y2, std::move(s));
        }
  return c;
}

/** Tensor product: pairs of objects, hom spaces spanned by Kronecker products. */
inline ConcreteCategory kronecker(const ConcreteCategory& a, const ConcreteCategory& b) {
  ConcreteCategory c;
  const std::size_t nb = b.size();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < nb; ++y)
      c.add_object(a.object(x).name + "*" + b.object(y).name, a.dim(x) * b.dim(y), a.unit(x).kron(b.unit(y)));
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < nb; ++y)
      for (std::size_t x2 = 0; x2 < a.size(); ++x2)
        for (std::size_t y2 = 0; y2 < nb; ++y2) {
          Subspace s(a.dim(x2) * b.dim(y2), a.dim(x) * b.dim(y));
          for (const auto& m : a.hom(x, x2).basis())
            for (const auto& w : b.hom(y, y2).basis()) s.insert(m.kron(w));
          c.set_hom(x * nb + y, x2 * nb + y2, std::move(s));
        }
  return c;
}

/**
 * *-functor between concrete categories, stored as the images of the
 * canonical basis of every hom space.
 */
class StarFunctor {
 public:
  StarFunctor() = default;
  StarFunctor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> object_map)
      : source_(std::move(source)), target_(std::move(target)), objects_(std::move(object_map)) {
    if (objects_.size() != source_->size()) throw InvalidInput("object map has the wrong length");
    for (auto y : objects_)
      if (y >= target_->size()) throw InvalidInput("object map points outside the target");
    images_.resize(source_->size() * source_->size());
  }

  /** Builds the functor from a rule giving the image of each basis arrow. */
  template <class Rule>
  static StarFunctor from_rule(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> object_map,
                               Rule&& rule) {
    StarFunctor f(std::move(source), std::move(target), std::move(object_map));
    const std::size_t n = f.source_->size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        auto& slot = f.images_[x * n + y];
        for (const auto& a : f.source_->hom(x, y).basis()) slot.push_back(rule(x, y, a));
      }
    return f;
  }

  const ConcreteCategory& source() const { return *source_; }
  const ConcreteCategory& target() const { return *target_; }
  const CategoryPtr& source_ptr() const { return source_; }
  const CategoryPtr& target_ptr() const { return target_; }
  std::size_t object(std::size_t x) const { return objects_.at(x); }
  const std::vector<std::size_t>& object_map() const { return objects_; }
  const std::vector<Matrix>& basis_images(std::size_t x, std::size_t y) const {
    return images_.at(x * source_->size() + y);
  }
  void set_basis_images(std::size_t x, std::size_t y, std::vector<Matrix> imgs) {
    if (imgs.size() != source_->hom(x, y).dim()) throw InvalidInput("wrong number of basis images");
    images_.at(x * source_->size() + y) = std::move(imgs);
  }

  /** Image of an arbitrary arrow a : x -> y. */
  Matrix apply(std::size_t x, std::size_t y, const Matrix& a) const {
    auto coords = source_->hom(x, y).coordinates(a);
    if (!coords)
      throw InvalidInput("apply: matrix is not an arrow " + detail::arrow_label(*source_, x, y));
    const auto& imgs = basis_images(x, y);
    Matrix out(target_->dim(object(y)), target_->dim(object(x)));
    for (std::size_t k = 0; k < coords->size(); ++k)
      if (!(*coords)[k].is_zero()) out += (*coords)[k] * imgs[k];
    return out;
  }

 private:
  CategoryPtr source_;
  CategoryPtr target_;
  std::vector<std::size_t> objects_;
  std::vector<std::vector<Matrix>> images_;
};

inline StarFunctor identity_functor(const CategoryPtr& a) {
  std::vector<std::size_t> ids(a->size());
  for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k;
  return StarFunctor::from_rule(a, a, ids, [](std::size_t, std::size_t, const Matrix& m) { return m; });
}

/** Inclusion of the full subcategory on `keep` (built with full_subcategory). */
inline StarFunctor inclusion_functor(const CategoryPtr& sub, const CategoryPtr& whole,
                                     const std::vector<std::size_t>& keep) {
  return StarFunctor::from_rule(sub, whole, keep, [](std::size_t, std::size_t, const Matrix& m) { return m; });
}

/** g after f. */
inline StarFunctor compose(const StarFunctor& g, const StarFunctor& f) {
  if (f.target_ptr() != g.source_ptr() && !(f.target() == g.source()))
    throw InvalidInput("compose: target of the first functor is not the source of the second");
  std::vector<std::size_t> objs(f.source().size());
  for (std::size_t x = 0; x < objs.size(); ++x) objs[x] = g.object(f.object(x));
  const std::size_t n = f.source().size();
  StarFunctor h(f.source_ptr(), g.target_ptr(), objs);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::vector<Matrix> imgs;
      for (const auto& m : f.basis_images(x, y)) imgs.push_back(g.apply(f.object(x), f.object(y), m));
      h.set_basis_images(x, y, std::move(imgs));
    }
  return h;
}

inline ValidationReport validate_functor(const StarFunctor& f) {
  ValidationReport r;
  const auto& a = f.source();
  const auto& b = f.target();
  const std::size_t n = a.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& imgs = f.basis_images(x, y);
      if (imgs.size() != a.hom(x, y).dim()) {
        r.fail("missing images for " + detail::arrow_label(a, x, y));
        continue;
      }
      for (std::size_t k = 0; k < imgs.size(); ++k)
        if (!b.hom(f.object(x), f.object(y)).contains(imgs[k]))
          r.fail("image of basis arrow " + std::to_string(k) + " of " + detail::arrow_label(a, x, y) +
                 " is not an arrow " + detail::arrow_label(b, f.object(x), f.object(y)));
    }
  if (!r.ok) return r;
  for (std::size_t x = 0; x < n; ++x) {
    if (a.unit(x).is_zero()) {
      if (!b.unit(f.object(x)).is_zero() && !b.hom(f.object(x), f.object(x)).empty())
        r.fail("zero object " + a.object(x).name + " sent to a nonzero object");
      continue;
    }
    if (!(f.apply(x, x, a.unit(x)) == b.unit(f.object(x))))
      r.fail("identity of " + a.object(x).name + " not preserved");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto basis = a.hom(x, y).basis();
      const auto& imgs = f.basis_images(x, y);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (!(f.apply(y, x, basis[k].adjoint()) == imgs[k].adjoint()))
          r.fail("adjoint not preserved on " + detail::arrow_label(a, x, y));
        for (std::size_t z = 0; z < n; ++z) {
          const auto& bimgs = f.basis_images(y, z);
          auto bbasis = a.hom(y, z).basis();
          for (std::size_t j = 0; j < bbasis.size(); ++j)
            if (!(f.apply(x, z, bbasis[j] * basis[k]) == bimgs[j] * imgs[k])) {
              r.fail("composition not preserved through " + detail::arrow_label(a, x, y) + " and " +
                     detail::arrow_label(a, y, z));
              break;
            }
        }
      }
    }
  return r;
}

/** Injective and surjective on hom spaces. */
inline bool is_fully_faithful(const StarFunctor& f) {
  const std::size_t n = f.source().size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Subspace& target = f.target().hom(f.object(x), f.object(y));
      if (target.dim() != f.source().hom(x, y).dim()) return false;
      Subspace img(target.rows(), target.cols());
      for (const auto& m : f.basis_images(x, y)) img.insert(m);
      if (img.dim() != target.dim()) return false;
    }
  return true;
}

/** Cofibrations are the functors injective on objects. */
inline bool is_cofibration(const StarFunctor& f) {
  std::vector<bool> hit(f.target().size(), false);
  for (auto y : f.object_map()) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

/** Trivial fibrations: surjective on objects and fully faithful. */
inline bool is_trivial_fibration(const StarFunctor& f) {
  std::vector<bool> hit(f.target().size(), false);
  for (auto y : f.object_map()) hit[y] = true;
  for (bool h : hit)
    if (!h) return false;
  return is_fully_faithful(f);
}

}  // namespace morita
