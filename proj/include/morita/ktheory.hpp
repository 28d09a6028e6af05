#pragma once

#include <string>
#include <vector>

#include "morita/completion.hpp"
#include "morita/errors.hpp"
#include "morita/homotopy.hpp"
#include "morita/semisimple.hpp"
#include "morita/starcat.hpp"

namespace morita {

using IntVector = std::vector<long>;
using IntMatrix = std::vector<std::vector<long>>;

/** Morphism of the group-completed homotopy category: an integer block matrix. */
struct GcMorphism {
  SemisimpleForm source;
  SemisimpleForm target;
  IntMatrix mult;  // k_target x k_source

  friend bool operator==(const GcMorphism&, const GcMorphism&) = default;
};

inline GcMorphism group_complete(const HoMorphism& f) {
  f.check();
  GcMorphism g{f.source, f.target, {}};
  for (const auto& r : f.mult) {
    IntVector row;
    for (auto v : r) row.push_back(static_cast<long>(v));
    g.mult.push_back(std::move(row));
  }
  return g;
}

inline GcMorphism gc_add(const GcMorphism& a, const GcMorphism& b) {
  if (a.mult.size() != b.mult.size()) throw ShapeError("gc_add: shapes differ");
  GcMorphism c = a;
  for (std::size_t j = 0; j < a.mult.size(); ++j) {
    if (a.mult[j].size() != b.mult[j].size()) throw ShapeError("gc_add: shapes differ");
    for (std::size_t i = 0; i < a.mult[j].size(); ++i) c.mult[j][i] += b.mult[j][i];
  }
  return c;
}

inline GcMorphism gc_negate(const GcMorphism& a) {
  GcMorphism c = a;
  for (auto& r : c.mult)
    for (auto& v : r) v = -v;
  return c;
}

inline GcMorphism gc_compose(const GcMorphism& g, const GcMorphism& f) {
  const std::size_t inner = f.mult.size();
  if (g.source.k() != inner) throw ShapeError("gc_compose: shapes do not match");
  GcMorphism h{f.source, g.target, IntMatrix(g.mult.size(), IntVector(f.source.k(), 0))};
  for (std::size_t j = 0; j < g.mult.size(); ++j)
    for (std::size_t i = 0; i < f.source.k(); ++i)
      for (std::size_t l = 0; l < inner; ++l) h.mult[j][i] += g.mult[j][l] * f.mult[l][i];
  return h;
}

inline bool gc_is_zero(const GcMorphism& a) {
  for (const auto& r : a.mult)
    for (auto v : r)
      if (v != 0) return false;
  return true;
}

/** Free abelian group on the blocks, with the classes of the declared objects. */
struct K0Group {
  std::size_t rank = 0;
  std::vector<std::string> generators;
  std::vector<std::string> objects;
  std::vector<IntVector> classes;

  friend bool operator==(const K0Group&, const K0Group&) = default;
};

inline K0Group k0(const SemisimpleForm& form) {
  K0Group g;
  g.rank = form.k();
  g.generators = form.blocks;
  g.objects = form.objects;
  for (const auto& m : form.mult) g.classes.push_back(IntVector(m.begin(), m.end()));
  return g;
}

inline K0Group k0(const CategoryPtr& a) { return k0(decompose(a).form); }

inline IntVector k0_class(const Decomposition& d, const ProjObject& p) {
  auto cls = object_class(d, p);
  return IntVector(cls.begin(), cls.end());
}

/** Map induced on K0 by a functor into the saturation of the target. */
inline GcMorphism k0_map(const SatFunctor& f, const Decomposition& da, const Decomposition& db) {
  return group_complete(class_of_functor(f, da, db));
}

inline IntVector k0_apply(const GcMorphism& f, const IntVector& a) {
  if (a.size() != f.source.k()) throw ShapeError("k0_apply: rank mismatch");
  IntVector out(f.mult.size(), 0);
  for (std::size_t j = 0; j < f.mult.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i) out[j] += f.mult[j][i] * a[i];
  return out;
}

/** Tensor product of forms: blocks are pairs (i, j) in row-major order, classes are outer products. */
inline SemisimpleForm tensor(const SemisimpleForm& a, const SemisimpleForm& b) {
  SemisimpleForm t;
  for (const auto& i : a.blocks)
    for (const auto& j : b.blocks) t.blocks.push_back(i + "*" + j);
  for (std::size_t x = 0; x < a.objects.size(); ++x)
    for (std::size_t y = 0; y < b.objects.size(); ++y) {
      t.objects.push_back(a.objects[x] + "*" + b.objects[y]);
      std::vector<std::size_t> m;
      for (auto u : a.mult[x])
        for (auto v : b.mult[y]) m.push_back(u * v);
      t.mult.push_back(std::move(m));
    }
  return t;
}

inline IntVector k0_pairing(const IntVector& a, const IntVector& b) {
  IntVector out;
  for (auto u : a)
    for (auto v : b) out.push_back(u * v);
  return out;
}

/** Ring structure on K0 of a commutative form: product = K0(multiplication) after the pairing. */
struct K0Ring {
  std::size_t rank = 0;
  IntVector unit;
  IntMatrix structure;  // rank x rank^2, the K0 matrix of the multiplication functor

  IntVector multiply(const IntVector& a, const IntVector& b) const {
    if (a.size() != rank || b.size() != rank) throw ShapeError("k0 ring: rank mismatch");
    auto ab = k0_pairing(a, b);
    IntVector out(rank, 0);
    for (std::size_t l = 0; l < rank; ++l)
      for (std::size_t c = 0; c < ab.size(); ++c) out[l] += structure[l][c] * ab[c];
    return out;
  }
};

inline K0Ring k0_ring(const SemisimpleForm& form) {
  form.check();
  const std::size_t k = form.k();
  // Multiplicities <= 1 make every block one-dimensional, so the form is Morita equivalent to F^k.
  for (const auto& m : form.mult)
    for (auto v : m)
      if (v > 1) throw InvalidInput("k0_ring: input not of commutative product form (a multiplicity exceeds 1)");

  // D = diagonal algebra on one object; the form is Morita equivalent to it.
  SemisimpleForm df;
  df.blocks = form.blocks;
  df.objects = {"d"};
  df.mult = {std::vector<std::size_t>(k, 1)};
  auto d = share(realize(df));
  auto dd = share(kronecker(*d, *d));
  auto sat = saturation(d);
  auto mul = SatFunctor::from_rule(dd, sat, {sat->iota(0)}, [k](std::size_t, std::size_t, const Matrix& m) {
    Matrix out(k, k);
    for (std::size_t i = 0; i < k; ++i) out(i, i) = m(i * k + i, i * k + i);
    return out;
  });
  auto vr = validate_sat_functor(mul);
  if (!vr.ok) throw std::logic_error("k0_ring: multiplication is not a *-functor");

  // Blocks of D (x) D are the products z_i (x) z_j, in row-major order.
  Decomposition dd_dec;
  dd_dec.category = dd;
  dd_dec.form = tensor(df, df);
  dd_dec.copies.assign(k * k, 1);
  Decomposition d_dec = canonical_decomposition(df, d);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) dd_dec.central.push_back({d_dec.central[i][0].kron(d_dec.central[j][0])});

  K0Ring r;
  r.rank = k;
  r.structure = k0_map(mul, dd_dec, d_dec).mult;
  r.unit.assign(k, 1);
  return r;
}

}  // namespace morita
