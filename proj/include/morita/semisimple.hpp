#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "morita/completion.hpp"
#include "morita/errors.hpp"
#include "morita/polynomial.hpp"
#include "morita/scalar.hpp"
#include "morita/starcat.hpp"

namespace morita {

/** Normal form of a split semisimple category: objects as multiplicity vectors over blocks. */
struct SemisimpleForm {
  std::vector<std::string> blocks;
  std::vector<std::string> objects;
  std::vector<std::vector<std::size_t>> mult;  // mult[x][i]

  std::size_t k() const { return blocks.size(); }

  /** Throws InvalidInput on ragged rows or a block with no supporting object. */
  void check() const {
    if (objects.size() != mult.size()) throw InvalidInput("semisimple form: object and class counts differ");
    for (std::size_t x = 0; x < mult.size(); ++x)
      if (mult[x].size() != k())
        throw InvalidInput("semisimple form: class of '" + objects[x] + "' has " + std::to_string(mult[x].size()) +
                           " entries, expected " + std::to_string(k()));
    for (std::size_t i = 0; i < k(); ++i) {
      bool supported = false;
      for (const auto& m : mult) supported = supported || m[i] > 0;
      if (!supported) throw InvalidInput("semisimple form: no phantom blocks (block '" + blocks[i] + "' has no object)");
    }
  }

  friend bool operator==(const SemisimpleForm& a, const SemisimpleForm& b) {
    return a.blocks == b.blocks && a.objects == b.objects && a.mult == b.mult;
  }
};

inline std::vector<std::string> default_block_labels(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back("b" + std::to_string(i + 1));
  return out;
}

/** Block decomposition of a concrete category with central idempotent witnesses. */
struct Decomposition {
  CategoryPtr category;
  SemisimpleForm form;
  std::vector<std::vector<Matrix>> central;  // central[i][x] = component of the i-th central projection at x
  std::vector<std::size_t> copies;           // rank of a minimal projection of block i

  std::size_t k() const { return form.k(); }
};

namespace detail {

inline std::size_t exact_isqrt(std::size_t d, const std::string& what) {
  std::size_t r = 0;
  while ((r + 1) * (r + 1) <= d) ++r;
  if (r * r != d) throw std::logic_error(what + ": dimension " + std::to_string(d) + " is not a perfect square");
  return r;
}

inline std::vector<std::size_t> linking_offsets(const ConcreteCategory& c) {
  std::vector<std::size_t> off;
  std::size_t d = 0;
  for (std::size_t x = 0; x < c.size(); ++x) {
    off.push_back(d);
    d += c.dim(x);
  }
  off.push_back(d);
  return off;
}

/**
 * Basis of the center as families (c_x) with c_y a = a c_x for every arrow a : x -> y.
 * Equations are first imposed for one fixed pseudo-random combination of each
 * hom basis; every candidate is then checked against the full basis and the
 * equations of any violated basis arrow are added until no violation remains.
 */
inline std::vector<std::vector<Matrix>> center_basis(const ConcreteCategory& c) {
  const std::size_t n = c.size();
  std::vector<std::vector<Matrix>> ends(n);
  std::vector<std::size_t> var_off;
  std::size_t U = 0;
  for (std::size_t x = 0; x < n; ++x) {
    ends[x] = c.hom(x, x).basis();
    var_off.push_back(U);
    U += ends[x].size();
  }
  EchelonBasis eqs(U);
  auto impose = [&](std::size_t x, std::size_t y, const Matrix& a) {
    std::vector<Matrix> left, right;
    for (const auto& e : ends[y]) left.push_back(e * a);
    for (const auto& e : ends[x]) right.push_back(a * e);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t s = 0; s < a.cols(); ++s) {
        std::vector<Scalar> row(U);
        bool any = false;
        for (std::size_t l = 0; l < left.size(); ++l) {
          row[var_off[y] + l] += left[l](r, s);
          any = any || !left[l](r, s).is_zero();
        }
        for (std::size_t l = 0; l < right.size(); ++l) {
          row[var_off[x] + l] -= right[l](r, s);
          any = any || !right[l](r, s).is_zero();
        }
        if (any) eqs.insert(row);
        if (eqs.dim() == U) return;
      }
  };
  auto solutions = [&] {
    std::vector<bool> is_pivot(U, false);
    for (auto p : eqs.pivots()) is_pivot[p] = true;
    std::vector<std::vector<Matrix>> out;
    for (std::size_t f = 0; f < U; ++f) {
      if (is_pivot[f]) continue;
      std::vector<Scalar> v(U);
      v[f] = 1;
      for (std::size_t k = 0; k < eqs.dim(); ++k) v[eqs.pivots()[k]] = -eqs.rows()[k][f];
      std::vector<Matrix> family;
      for (std::size_t x = 0; x < n; ++x) {
        Matrix m(c.dim(x), c.dim(x));
        for (std::size_t l = 0; l < ends[x].size(); ++l)
          if (!v[var_off[x] + l].is_zero()) m += v[var_off[x] + l] * ends[x][l];
        family.push_back(std::move(m));
      }
      out.push_back(std::move(family));
    }
    return out;
  };
  // Fixed coefficients 1, 2, 3, ... keep the result deterministic.
  for (std::size_t x = 0; x < n && eqs.dim() < U; ++x)
    for (std::size_t y = 0; y < n && eqs.dim() < U; ++y) {
      const auto basis = c.hom(x, y).basis();
      if (basis.empty()) continue;
      Matrix a(c.dim(y), c.dim(x));
      for (std::size_t k = 0; k < basis.size(); ++k) a += Scalar(static_cast<long>(k + 1)) * basis[k];
      impose(x, y, a);
    }
  for (;;) {
    if (eqs.dim() == U) return {};
    auto cands = solutions();
    bool violated = false;
    for (std::size_t x = 0; x < n && !violated; ++x)
      for (std::size_t y = 0; y < n && !violated; ++y)
        for (const auto& a : c.hom(x, y).basis()) {
          bool ok = true;
          for (const auto& z : cands)
            if (!(z[y] * a == a * z[x])) {
              ok = false;
              break;
            }
          if (!ok) {
            impose(x, y, a);
            violated = true;
            break;
          }
        }
    if (!violated) return cands;
  }
}

inline std::vector<Matrix> split_linking(const ConcreteCategory& c, const Matrix& m) {
  auto off = linking_offsets(c);
  std::vector<Matrix> out;
  for (std::size_t x = 0; x < c.size(); ++x) out.push_back(m.block(off[x], off[x], c.dim(x), c.dim(x)));
  return out;
}

/** Self-adjoint element made traceless relative to the projection e. */
inline Matrix traceless(const Matrix& h, const Matrix& e) {
  Scalar te = e.trace();
  if (te.is_zero()) return h;
  return h - (h.trace() / te) * e;
}

/** Descending lexicographic comparison of matrix entries. */
inline bool entries_greater(const Matrix& a, const Matrix& b) {
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    int c = compare(a.flat()[k], b.flat()[k]);
    if (c != 0) return c > 0;
  }
  return false;
}

}  // namespace detail

/**
 * Decomposes a concrete *-category into simple blocks. Primitive central
 * projections of the linking algebra are found by refining along rational
 * eigenvalues of self-adjoint central elements.
 */
inline Decomposition decompose(const CategoryPtr& cat) {
  const ConcreteCategory& c = *cat;
  const std::size_t n = c.size();
  auto basis = detail::center_basis(c);
  std::vector<Matrix> units;
  for (std::size_t x = 0; x < n; ++x) units.push_back(c.unit(x));
  Matrix one = Matrix::block_diagonal(units);

  std::vector<Matrix> parts;
  if (!one.is_zero() && !basis.empty()) parts.push_back(one);
  for (const auto& fam : basis) {
    if (parts.size() == basis.size()) break;
    Matrix z = Matrix::block_diagonal(fam);
    Matrix za = z.adjoint();
    const Scalar half = Scalar(Rational(1, 2));
    for (const Matrix& h : {half * (z + za), (half / Scalar::i()) * (z - za)}) {
      if (h.is_zero()) continue;
      std::vector<Matrix> refined;
      for (const auto& e : parts) {
        Matrix he = detail::traceless(h * e, e);
        if (he.is_zero()) {
          refined.push_back(e);
          continue;
        }
        Spectrum s = spectrum(he, e);
        if (s.rest.degree() > 0)
          throw NotSplitOverBaseField(s.rest.monic().to_string(), "central element with minimal polynomial " +
                                                                       s.minimal.to_string());
        for (const auto& lambda : s.roots) {
          Matrix p = eigenprojection(he, e, lambda);
          if (!p.is_zero()) refined.push_back(std::move(p));
        }
      }
      parts = std::move(refined);
    }
  }
  if (parts.size() != basis.size())
    throw std::logic_error("decompose: found " + std::to_string(parts.size()) + " central projections for a center of dimension " +
                           std::to_string(basis.size()));

  struct Block {
    std::vector<Matrix> z;
    std::vector<std::size_t> m;
    std::size_t first = 0;
  };
  std::vector<Block> blocks;
  for (const auto& p : parts) {
    Block b;
    b.z = detail::split_linking(c, p);
    b.first = n;
    for (std::size_t x = 0; x < n; ++x) {
      Subspace s(c.dim(x), c.dim(x));
      for (const auto& a : c.hom(x, x).basis()) s.insert(b.z[x] * a);
      b.m.push_back(detail::exact_isqrt(s.dim(), "block multiplicity"));
      if (b.m.back() > 0 && b.first == n) b.first = x;
    }
    blocks.push_back(std::move(b));
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.first != b.first) return a.first < b.first;
    return detail::entries_greater(a.z[a.first], b.z[b.first]);
  });

  Decomposition d;
  d.category = cat;
  d.form.blocks = default_block_labels(blocks.size());
  for (std::size_t x = 0; x < n; ++x) {
    d.form.objects.push_back(c.object(x).name);
    std::vector<std::size_t> row;
    for (const auto& b : blocks) row.push_back(b.m[x]);
    d.form.mult.push_back(std::move(row));
  }
  for (const auto& b : blocks) {
    d.central.push_back(b.z);
    std::size_t r = rank(b.z[b.first]);
    if (r % b.m[b.first] != 0) throw std::logic_error("decompose: block rank not divisible by multiplicity");
    d.copies.push_back(r / b.m[b.first]);
  }
  // Reconstruction: dim Hom(x, y) = sum_i m_{x,i} m_{y,i}.
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t s = 0;
      for (std::size_t i = 0; i < d.k(); ++i) s += d.form.mult[x][i] * d.form.mult[y][i];
      if (s != c.hom(x, y).dim())
        throw NotSemisimple("hom dimension " + std::to_string(c.hom(x, y).dim()) + " of " +
                            detail::arrow_label(c, x, y) + " differs from the block count " + std::to_string(s));
    }
  return d;
}

/**
 * decompose memoized on the category object, for callers that decompose the
 * same category once per query. Entries are dropped once their category dies.
 */
inline Decomposition decompose_cached(const CategoryPtr& cat) {
  static std::mutex mu;
  static std::map<const ConcreteCategory*, std::pair<std::weak_ptr<const ConcreteCategory>, Decomposition>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(cat.get());
    if (it != cache.end() && it->second.first.lock() == cat) {
      Decomposition d = it->second.second;
      d.category = cat;
      return d;
    }
  }
  Decomposition d = decompose(cat);
  Decomposition stored = d;
  stored.category = nullptr;  // a strong reference here would keep the category alive forever
  std::lock_guard<std::mutex> lock(mu);
  std::erase_if(cache, [](const auto& kv) { return kv.second.first.expired(); });
  cache[cat.get()] = {cat, std::move(stored)};
  return d;
}

/** Block rank vector of a projection over a word in the decomposed category. */
inline std::vector<std::size_t> object_class(const Decomposition& d, const ProjObject& p) {
  const auto& c = *d.category;
  for (auto x : p.word)
    if (x >= c.size()) throw InvalidInput("object_class: foreign object");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.k(); ++i) {
    std::vector<Matrix> zs;
    for (auto x : p.word) zs.push_back(d.central[i][x]);
    Matrix z = Matrix::block_diagonal(zs);
    if (z.rows() != p.proj.rows()) throw InvalidInput("object_class: projection does not fit its word");
    std::size_t r = rank(z * p.proj);
    if (r % d.copies[i] != 0) throw std::logic_error("object_class: rank not divisible by block copies");
    out.push_back(r / d.copies[i]);
  }
  return out;
}

inline std::vector<std::size_t> object_class(const Decomposition& d, std::size_t x) { return d.form.mult.at(x); }

namespace detail {

// Proper nonzero subprojection of q inside End(x) if one is found rationally.
inline std::optional<Matrix> split_projection(const ConcreteCategory& c, std::size_t x, const Matrix& q,
                                              const Matrix& zx) {
  auto try_hermitian = [&](const Matrix& h) -> std::optional<Matrix> {
    Matrix t = traceless(h, q);
    if (t.is_zero()) return std::nullopt;
    Spectrum s = spectrum(t, q);
    for (const auto& lambda : s.roots) {
      Matrix p = eigenprojection(t, q, lambda);
      if (!p.is_zero() && !(p == q)) return p;
    }
    // Range of t*t is still a subprojection even if the spectrum is irrational.
    return std::nullopt;
  };
  auto ends = c.hom(x, x).basis();
  for (const auto& b : ends) {
    Matrix cq = q * zx * b * q;
    Matrix ca = cq.adjoint();
    for (const Matrix& h : {cq + ca, Scalar::i() * (cq - ca), cq * ca})
      if (auto p = try_hermitian(h)) return p;
  }
  for (std::size_t y = 0; y < c.size(); ++y) {
    if (y == x) continue;
    for (const auto& a : c.hom(y, x).basis()) {
      Matrix h = q * zx * a * a.adjoint() * zx * q;
      if (auto p = try_hermitian(h)) return p;
    }
  }
  for (std::size_t k = 0; k < ends.size(); ++k)
    for (std::size_t l = k + 1; l < ends.size(); ++l) {
      Matrix cq = q * zx * (ends[k] + Scalar(static_cast<long>(l + 1)) * ends[l]) * q;
      Matrix ca = cq.adjoint();
      for (const Matrix& h : {cq + ca, Scalar::i() * (cq - ca)})
        if (auto p = try_hermitian(h)) return p;
    }
  return std::nullopt;
}

}  // namespace detail

/**
 * A projection of class e_i on a single object of smallest positive
 * multiplicity in block i. Throws RationalWitnessUnavailable if the rational
 * search cannot split the block further.
 */
inline ProjObject minimal_projection(const Decomposition& d, std::size_t i) {
  if (i >= d.k()) throw InvalidInput("minimal_projection: no block " + std::to_string(i));
  const auto& c = *d.category;
  std::size_t x = c.size();
  for (std::size_t y = 0; y < c.size(); ++y)
    if (d.form.mult[y][i] > 0 && (x == c.size() || d.form.mult[y][i] < d.form.mult[x][i])) x = y;
  Matrix q = d.central[i][x];
  std::size_t m = d.form.mult[x][i];
  LazySaturation sat(d.category);
  while (m > 1) {
    auto p = detail::split_projection(c, x, q, d.central[i][x]);
    if (!p) throw RationalWitnessUnavailable("minimal_projection: no rational splitting of block " + d.form.blocks[i]);
    ProjObject po{{x}, *p};
    std::size_t r = object_class(d, po)[i];
    Matrix rest = q - *p;
    if (r * 2 <= m) {
      q = *p;
      m = r;
    } else {
      q = rest;
      m = m - r;
    }
  }
  return {{x}, q};
}

namespace detail {

/** alpha in Q(i) with |alpha|^2 = lambda, if one exists with small search. */
inline std::optional<Scalar> norm_root(const Rational& lambda) {
  if (sgn(lambda) <= 0) return std::nullopt;
  mpz_class p = lambda.get_num(), q = lambda.get_den();
  mpz_class n = p * q;  // lambda = n / q^2
  if (n > mpz_class("1000000000000")) return std::nullopt;
  for (mpz_class a = 0; a * a <= n; ++a) {
    mpz_class b2 = n - a * a;
    mpz_class b = sqrt(b2);
    if (b * b == b2) return Scalar(Rational(a, q), Rational(b, q));
  }
  return std::nullopt;
}

inline Scalar corner_scalar(const Matrix& m, const Matrix& f) { return m.trace() / f.trace(); }

}  // namespace detail

/**
 * Matrix units: for each block i a minimal projection f_i on object base[i],
 * and for each object y partial isometries w[i][y][a] : base[i] -> y with
 * w* w = f_i and mutually orthogonal ranges exhausting block i of y.
 */
struct MatrixUnits {
  std::vector<std::size_t> base;
  std::vector<Matrix> minimal;
  std::vector<std::vector<std::vector<Matrix>>> w;
};

inline MatrixUnits matrix_units(const Decomposition& d) {
  const auto& c = *d.category;
  MatrixUnits mu;
  for (std::size_t i = 0; i < d.k(); ++i) {
    ProjObject f = minimal_projection(d, i);
    const std::size_t x = f.word[0];
    mu.base.push_back(x);
    mu.minimal.push_back(f.proj);
    std::vector<std::vector<Matrix>> per_object;
    for (std::size_t y = 0; y < c.size(); ++y) {
      std::vector<Matrix> cands;
      if (y == x) cands.push_back(f.proj);
      for (const auto& a : c.hom(x, y).basis()) {
        Matrix u = d.central[i][y] * a * f.proj;
        if (!u.is_zero()) cands.push_back(u);
      }
      std::vector<Matrix> ortho;
      std::vector<Matrix> pending;
      for (auto& u : cands) {
        for (const auto& w : ortho) u -= w * (w.adjoint() * u);
        for (const auto& v : pending) {
          Scalar nv = detail::corner_scalar(v.adjoint() * v, f.proj);
          u -= v * (detail::corner_scalar(v.adjoint() * u, f.proj) / nv);
        }
        if (u.is_zero()) continue;
        pending.push_back(u);
        // Promote pending vectors (or small combinations of them) whose norm is a norm from Q(i).
        for (bool progress = true; progress && !pending.empty();) {
          progress = false;
          for (std::size_t s = 0; s < pending.size() && !progress; ++s)
            for (long c1 = 1; c1 <= 2 && !progress; ++c1)
              for (std::size_t t = 0; t <= pending.size() && !progress; ++t)
                for (long c2 = -2; c2 <= 2 && !progress; ++c2) {
                  if (t == pending.size() && c2 != 0) continue;
                  if (t == s) continue;
                  Matrix v = Scalar(c1) * pending[s];
                  if (t < pending.size()) v += Scalar(c2) * pending[t];
                  Scalar nv = detail::corner_scalar(v.adjoint() * v, f.proj);
                  if (nv.is_zero()) continue;
                  auto alpha = detail::norm_root(nv.re());
                  if (!alpha) continue;
                  Matrix wv = v * (Scalar(1) / *alpha);
                  ortho.push_back(wv);
                  std::vector<Matrix> rest;
                  for (std::size_t r = 0; r < pending.size(); ++r) {
                    if (r == s) continue;
                    Matrix pr = pending[r] - wv * (wv.adjoint() * pending[r]);
                    if (!pr.is_zero()) rest.push_back(pr);
                  }
                  pending = std::move(rest);
                  progress = true;
                }
        }
      }
      if (!pending.empty() || ortho.size() != d.form.mult[y][i])
        throw RationalWitnessUnavailable("matrix_units: no rational orthonormal basis for block " + d.form.blocks[i] +
                                         " at " + c.object(y).name);
      per_object.push_back(std::move(ortho));
    }
    mu.w.push_back(std::move(per_object));
  }
  return mu;
}

/** Coordinate layout of the canonical realization: block-major then copy. */
inline std::size_t realization_offset(const SemisimpleForm& f, std::size_t x, std::size_t i) {
  std::size_t off = 0;
  for (std::size_t j = 0; j < i; ++j) off += f.mult[x][j];
  return off;
}

/**
 * Canonical concrete category of a form: object x on Q(i)^{sum_i m_{x,i}},
 * hom(x, y) = block-diagonal sum of m_{y,i} x m_{x,i} matrices.
 */
inline ConcreteCategory realize(const SemisimpleForm& f) {
  f.check();
  ConcreteCategory c;
  for (std::size_t x = 0; x < f.objects.size(); ++x) {
    std::size_t dim = 0;
    for (auto m : f.mult[x]) dim += m;
    c.add_object(f.objects[x], dim);
  }
  for (std::size_t x = 0; x < f.objects.size(); ++x)
    for (std::size_t y = 0; y < f.objects.size(); ++y) {
      Subspace s(c.dim(y), c.dim(x));
      for (std::size_t i = 0; i < f.k(); ++i)
        for (std::size_t a = 0; a < f.mult[y][i]; ++a)
          for (std::size_t b = 0; b < f.mult[x][i]; ++b) {
            Matrix e(c.dim(y), c.dim(x));
            e(realization_offset(f, y, i) + a, realization_offset(f, x, i) + b) = 1;
            s.insert(e);
          }
      c.set_hom(x, y, std::move(s));
    }
  return c;
}

/** Functor from a decomposed category onto the canonical realization of its form. */
inline StarFunctor to_realization(const Decomposition& d, const MatrixUnits& mu, const CategoryPtr& realized) {
  const auto& f = d.form;
  std::vector<std::size_t> ids(f.objects.size());
  std::iota(ids.begin(), ids.end(), 0);
  return StarFunctor::from_rule(d.category, realized, ids, [&](std::size_t x, std::size_t y, const Matrix& t) {
    Matrix out(realized->dim(y), realized->dim(x));
    for (std::size_t i = 0; i < f.k(); ++i)
      for (std::size_t a = 0; a < f.mult[y][i]; ++a)
        for (std::size_t b = 0; b < f.mult[x][i]; ++b)
          out(realization_offset(f, y, i) + a, realization_offset(f, x, i) + b) =
              detail::corner_scalar(mu.w[i][y][a].adjoint() * t * mu.w[i][x][b], mu.minimal[i]);
    return out;
  });
}

/** Which blocks of the target are reached, and whether the functor is fully faithful. */
struct MoritaCertificate {
  bool equivalent = false;
  bool fully_faithful = false;
  std::vector<std::optional<std::size_t>> block_support;  // a source object reaching each target block
  std::string reason;
};

/** Morita decision for F : A -> Sat(C): fully faithful and every block of C reached. */
inline MoritaCertificate is_morita_equivalence(const SatFunctor& f, const Decomposition& target) {
  MoritaCertificate cert;
  const auto& a = f.source();
  cert.fully_faithful = true;
  for (std::size_t x = 0; x < a.size() && cert.fully_faithful; ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      auto h = f.target().hom(f.object(x), f.object(y));
      if (h->dim() != a.hom(x, y).dim()) {
        cert.fully_faithful = false;
        cert.reason = "hom " + detail::arrow_label(a, x, y) + " has dimension " + std::to_string(a.hom(x, y).dim()) +
                      " but its image space has dimension " + std::to_string(h->dim());
        break;
      }
      Subspace img(h->rows(), h->cols());
      for (const auto& m : f.basis_images(x, y)) img.insert(m);
      if (img.dim() != h->dim()) {
        cert.fully_faithful = false;
        cert.reason = "functor is not faithful on " + detail::arrow_label(a, x, y);
        break;
      }
    }
  cert.block_support.assign(target.k(), std::nullopt);
  for (std::size_t x = 0; x < a.size(); ++x) {
    auto cls = object_class(target, f.object(x));
    for (std::size_t j = 0; j < target.k(); ++j)
      if (cls[j] > 0 && !cert.block_support[j]) cert.block_support[j] = x;
  }
  bool all = true;
  for (std::size_t j = 0; j < target.k(); ++j)
    if (!cert.block_support[j]) {
      all = false;
      if (cert.reason.empty()) cert.reason = "target block " + target.form.blocks[j] + " is not reached";
    }
  cert.equivalent = cert.fully_faithful && all;
  return cert;
}

inline MoritaCertificate is_morita_equivalence(const SatFunctor& f) {
  return is_morita_equivalence(f, decompose_cached(f.target().base_ptr()));
}

inline MoritaCertificate is_morita_equivalence(const StarFunctor& f) { return is_morita_equivalence(to_saturation(f)); }

/** Outcome of comparing two categories by block count. */
struct MoritaComparison {
  bool equivalent = false;
  std::size_t k_a = 0;
  std::size_t k_b = 0;
  std::string reason;
};

inline MoritaComparison compare_blocks(const SemisimpleForm& a, const SemisimpleForm& b) {
  MoritaComparison r{a.k() == b.k(), a.k(), b.k(), ""};
  if (!r.equivalent) r.reason = "block count " + std::to_string(a.k()) + " ≠ " + std::to_string(b.k());
  return r;
}

}  // namespace morita
