#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morita/completion.hpp"
#include "morita/errors.hpp"
#include "morita/random.hpp"
#include "morita/scalar.hpp"
#include "morita/semisimple.hpp"
#include "morita/starcat.hpp"

namespace morita {

/** *-polynomial in the generators of a presentation. comp(a, b) means a after b. */
struct Term {
  enum class Kind { Gen, Adj, Comp, Sum, Scalar, Id, Zero };
  Kind kind = Kind::Zero;
  std::string name;      // generator (Gen) or vertex (Id)
  std::string src, tgt;  // Zero
  morita::Scalar coef;   // Scalar
  std::vector<Term> args;

  static Term gen(std::string n) {
    Term t;
    t.kind = Kind::Gen;
    t.name = std::move(n);
    return t;
  }
  static Term adj(Term a) {
    Term t;
    t.kind = Kind::Adj;
    t.args.push_back(std::move(a));
    return t;
  }
  static Term comp(std::vector<Term> as) {
    Term t;
    t.kind = Kind::Comp;
    t.args = std::move(as);
    return t;
  }
  static Term sum(std::vector<Term> as) {
    Term t;
    t.kind = Kind::Sum;
    t.args = std::move(as);
    return t;
  }
  static Term scalar(morita::Scalar c, Term a) {
    Term t;
    t.kind = Kind::Scalar;
    t.coef = std::move(c);
    t.args.push_back(std::move(a));
    return t;
  }
  static Term id(std::string v) {
    Term t;
    t.kind = Kind::Id;
    t.name = std::move(v);
    return t;
  }
  static Term zero(std::string s, std::string d) {
    Term t;
    t.kind = Kind::Zero;
    t.src = std::move(s);
    t.tgt = std::move(d);
    return t;
  }

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name && a.src == b.src && a.tgt == b.tgt && a.coef == b.coef &&
           a.args == b.args;
  }
};

struct ArrowDecl {
  std::string name, src, tgt;
  friend bool operator==(const ArrowDecl&, const ArrowDecl&) = default;
};

struct Relation {
  Term lhs, rhs;
  friend bool operator==(const Relation&, const Relation&) = default;
};

/** Quiver with *-algebraic relations. */
struct Presentation {
  std::string name;
  std::vector<std::string> vertices;
  std::vector<ArrowDecl> arrows;
  std::vector<Relation> relations;

  const ArrowDecl* arrow(const std::string& n) const {
    for (const auto& a : arrows)
      if (a.name == n) return &a;
    return nullptr;
  }
  bool has_vertex(const std::string& v) const {
    for (const auto& x : vertices)
      if (x == v) return true;
    return false;
  }

  /** (source, target) of a term; throws InvalidInput when ill-typed. */
  std::pair<std::string, std::string> type_of(const Term& t) const {
    switch (t.kind) {
      case Term::Kind::Gen: {
        const ArrowDecl* a = arrow(t.name);
        if (!a) throw InvalidInput("unknown generator '" + t.name + "'");
        return {a->src, a->tgt};
      }
      case Term::Kind::Adj: {
        if (t.args.size() != 1) throw InvalidInput("adj takes one argument");
        auto [s, d] = type_of(t.args[0]);
        return {d, s};
      }
      case Term::Kind::Comp: {
        if (t.args.empty()) throw InvalidInput("comp needs arguments");
        auto ty = type_of(t.args.back());
        for (std::size_t k = t.args.size() - 1; k-- > 0;) {
          auto next = type_of(t.args[k]);
          if (next.first != ty.second)
            throw InvalidInput("comp: target " + ty.second + " does not match source " + next.first);
          ty.second = next.second;
        }
        return ty;
      }
      case Term::Kind::Sum: {
        if (t.args.empty()) throw InvalidInput("sum needs arguments");
        auto ty = type_of(t.args[0]);
        for (const auto& a : t.args)
          if (type_of(a) != ty) throw InvalidInput("sum of terms with different types");
        return ty;
      }
      case Term::Kind::Scalar:
        if (t.args.size() != 1) throw InvalidInput("scalar takes one term");
        return type_of(t.args[0]);
      case Term::Kind::Id:
        if (!has_vertex(t.name)) throw InvalidInput("unknown vertex '" + t.name + "'");
        return {t.name, t.name};
      case Term::Kind::Zero:
        if (!has_vertex(t.src) || !has_vertex(t.tgt)) throw InvalidInput("zero between unknown vertices");
        return {t.src, t.tgt};
    }
    throw InvalidInput("bad term");
  }

  void validate() const {
    for (const auto& a : arrows)
      if (!has_vertex(a.src) || !has_vertex(a.tgt))
        throw InvalidInput("arrow '" + a.name + "' has an unknown endpoint");
    for (std::size_t k = 0; k < relations.size(); ++k)
      if (type_of(relations[k].lhs) != type_of(relations[k].rhs))
        throw InvalidInput("relation " + std::to_string(k) + " is ill-typed");
  }
};

/** Representation of a presentation: vertices to objects, generators to arrows. */
struct Assignment {
  CategoryPtr target;
  std::map<std::string, std::size_t> vertices;
  std::map<std::string, Matrix> arrows;
};

namespace detail {

template <class Ctx>
Matrix evaluate_term(const Presentation& p, const Ctx& ctx, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Gen: {
      auto it = ctx.arrows.find(t.name);
      if (it == ctx.arrows.end()) throw InvalidInput("generator '" + t.name + "' is not assigned");
      return it->second;
    }
    case Term::Kind::Adj:
      return evaluate_term(p, ctx, t.args[0]).adjoint();
    case Term::Kind::Comp: {
      Matrix m = evaluate_term(p, ctx, t.args.back());
      for (std::size_t k = t.args.size() - 1; k-- > 0;) m = evaluate_term(p, ctx, t.args[k]) * m;
      return m;
    }
    case Term::Kind::Sum: {
      Matrix m = evaluate_term(p, ctx, t.args[0]);
      for (std::size_t k = 1; k < t.args.size(); ++k) m += evaluate_term(p, ctx, t.args[k]);
      return m;
    }
    case Term::Kind::Scalar:
      return t.coef * evaluate_term(p, ctx, t.args[0]);
    case Term::Kind::Id:
      return ctx.unit(t.name);
    case Term::Kind::Zero:
      return Matrix(ctx.dim(t.tgt), ctx.dim(t.src));
  }
  throw InvalidInput("bad term");
}

struct ConcreteCtx {
  const Assignment& a;
  const std::map<std::string, Matrix>& arrows;
  std::size_t object(const std::string& v) const {
    auto it = a.vertices.find(v);
    if (it == a.vertices.end()) throw InvalidInput("vertex '" + v + "' is not assigned");
    return it->second;
  }
  Matrix unit(const std::string& v) const { return a.target->unit(object(v)); }
  std::size_t dim(const std::string& v) const { return a.target->dim(object(v)); }
  bool contains(const std::string& s, const std::string& t, const Matrix& m) const {
    return a.target->hom(object(s), object(t)).contains(m);
  }
};

}  // namespace detail

inline Matrix evaluate(const Presentation& p, const Assignment& a, const Term& t) {
  detail::ConcreteCtx ctx{a, a.arrows};
  return detail::evaluate_term(p, ctx, t);
}

struct RepCheck {
  bool ok = true;
  std::optional<std::size_t> failing_relation;
  std::string message;
};

namespace detail {

template <class Ctx>
RepCheck check_with(const Presentation& p, const Ctx& ctx) {
  RepCheck r;
  auto fail = [&](std::string why, std::optional<std::size_t> rel = std::nullopt) {
    r.ok = false;
    r.failing_relation = rel;
    r.message = std::move(why);
    return r;
  };
  for (const auto& v : p.vertices) ctx.object(v);
  for (const auto& a : p.arrows) {
    auto it = ctx.arrows.find(a.name);
    if (it == ctx.arrows.end()) return fail("generator '" + a.name + "' is not assigned");
    const Matrix& m = it->second;
    if (m.rows() != ctx.dim(a.tgt) || m.cols() != ctx.dim(a.src))
      throw ShapeError("generator '" + a.name + "' has shape " + m.shape_string() + ", expected " +
                       std::to_string(ctx.dim(a.tgt)) + "x" + std::to_string(ctx.dim(a.src)));
    if (!ctx.contains(a.src, a.tgt, m)) return fail("generator '" + a.name + "' is not an arrow of the target");
  }
  for (std::size_t k = 0; k < p.relations.size(); ++k) {
    Matrix l = evaluate_term(p, ctx, p.relations[k].lhs);
    Matrix rr = evaluate_term(p, ctx, p.relations[k].rhs);
    if (!(l == rr)) return fail("relation " + std::to_string(k) + " fails", k);
  }
  return r;
}

}  // namespace detail

/** Exact check that the assignment satisfies every relation. */
inline RepCheck check_representation(const Presentation& p, const Assignment& a) {
  detail::ConcreteCtx ctx{a, a.arrows};
  return detail::check_with(p, ctx);
}

/** Representation into a saturation: vertices go to ProjObjects. */
struct SatAssignment {
  SaturationPtr sat;
  std::map<std::string, ProjObject> vertices;
  std::map<std::string, Matrix> arrows;
};

inline RepCheck check_representation(const Presentation& p, const SatAssignment& a) {
  struct Ctx {
    const SatAssignment& a;
    const std::map<std::string, Matrix>& arrows;
    const ProjObject& object(const std::string& v) const {
      auto it = a.vertices.find(v);
      if (it == a.vertices.end()) throw InvalidInput("vertex '" + v + "' is not assigned");
      return it->second;
    }
    Matrix unit(const std::string& v) const { return object(v).proj; }
    std::size_t dim(const std::string& v) const { return object(v).proj.rows(); }
    bool contains(const std::string& s, const std::string& t, const Matrix& m) const {
      return a.sat->contains_arrow(object(s), object(t), m);
    }
  } ctx{a, a.arrows};
  for (const auto& [v, o] : a.vertices) a.sat->require_object(o);
  return detail::check_with(p, ctx);
}

// ---------------------------------------------------------------------------
// Universal presentations

namespace names {
inline std::string o(std::size_t i) { return "o" + std::to_string(i); }
inline std::string p(std::size_t i, std::size_t j) { return "p" + std::to_string(i) + "_" + std::to_string(j); }
inline std::string v(std::size_t i) { return "v" + std::to_string(i); }
inline std::string s(std::size_t i) { return "s" + std::to_string(i); }
inline const std::string sum_vertex = "s";
inline const std::string range_vertex = "r";
}  // namespace names

namespace detail {

inline void add_sum_relations(Presentation& P, std::size_t n) {
  using names::o;
  using names::v;
  std::vector<Term> terms;
  for (std::size_t k = 1; k <= n; ++k) terms.push_back(Term::comp({Term::gen(v(k)), Term::adj(Term::gen(v(k)))}));
  P.relations.push_back({Term::sum(terms), Term::id(names::sum_vertex)});
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      P.relations.push_back({Term::comp({Term::adj(Term::gen(v(i))), Term::gen(v(j))}),
                             i == j ? Term::id(o(i)) : Term::zero(o(j), o(i))});
}

}  // namespace detail

/** kind is one of F, S, P, R, SP, SR, I, 0. */
inline Presentation build_universal(const std::string& kind, std::size_t n = 0) {
  using names::o;
  Presentation P;
  auto need_positive = [&] {
    if (n == 0) throw InvalidInput(kind + "(n) needs n >= 1");
  };
  if (kind == "F") {
    P.name = "F^" + std::to_string(n);
    for (std::size_t i = 1; i <= n; ++i) P.vertices.push_back(o(i));
  } else if (kind == "S") {
    need_positive();
    P.name = "S(" + std::to_string(n) + ")";
    for (std::size_t i = 1; i <= n; ++i) P.vertices.push_back(o(i));
    P.vertices.push_back(names::sum_vertex);
    for (std::size_t i = 1; i <= n; ++i) P.arrows.push_back({names::v(i), o(i), names::sum_vertex});
    detail::add_sum_relations(P, n);
  } else if (kind == "P") {
    P.name = "P(" + std::to_string(n) + ")";
    for (std::size_t i = 1; i <= n; ++i) P.vertices.push_back(o(i));
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) P.arrows.push_back({names::p(i, j), o(j), o(i)});
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        P.relations.push_back({Term::adj(Term::gen(names::p(j, i))), Term::gen(names::p(i, j))});
        std::vector<Term> terms;
        for (std::size_t k = 1; k <= n; ++k)
          terms.push_back(Term::comp({Term::gen(names::p(i, k)), Term::gen(names::p(k, j))}));
        P.relations.push_back({Term::gen(names::p(i, j)), Term::sum(terms)});
      }
  } else if (kind == "R") {
    P.name = "R(" + std::to_string(n) + ")";
    for (std::size_t i = 1; i <= n; ++i) P.vertices.push_back(o(i));
    P.vertices.push_back(names::range_vertex);
    for (std::size_t i = 1; i <= n; ++i) P.arrows.push_back({names::s(i), o(i), names::range_vertex});
    if (n == 0) {
      P.relations.push_back({Term::id(names::range_vertex), Term::zero(names::range_vertex, names::range_vertex)});
    } else {
      std::vector<Term> terms;
      for (std::size_t k = 1; k <= n; ++k)
        terms.push_back(Term::comp({Term::gen(names::s(k)), Term::adj(Term::gen(names::s(k)))}));
      P.relations.push_back({Term::id(names::range_vertex), Term::sum(terms)});
    }
  } else if (kind == "SP") {
    need_positive();
    P.name = "SP(" + std::to_string(n) + ")";
    for (std::size_t i = 1; i <= n; ++i) P.vertices.push_back(o(i));
    P.vertices.push_back(names::sum_vertex);
    for (std::size_t i = 1; i <= n; ++i) P.arrows.push_back({names::v(i), o(i), names::sum_vertex});
    P.arrows.push_back({"p", names::sum_vertex, names::sum_vertex});
    detail::add_sum_relations(P, n);
    P.relations.push_back({Term::adj(Term::gen("p")), Term::gen("p")});
    P.relations.push_back({Term::comp({Term::gen("p"), Term::gen("p")}), Term::gen("p")});
  } else if (kind == "SR") {
    need_positive();
    P.name = "SR(" + std::to_string(n) + ")";
    for (std::size_t i = 1; i <= n; ++i) P.vertices.push_back(o(i));
    P.vertices.push_back(names::sum_vertex);
    P.vertices.push_back(names::range_vertex);
    for (std::size_t i = 1; i <= n; ++i) P.arrows.push_back({names::v(i), o(i), names::sum_vertex});
    P.arrows.push_back({"v", names::range_vertex, names::sum_vertex});
    detail::add_sum_relations(P, n);
    P.relations.push_back({Term::comp({Term::adj(Term::gen("v")), Term::gen("v")}), Term::id(names::range_vertex)});
  } else if (kind == "I") {
    P.name = "I";
    P.vertices = {"0", "1"};
    P.arrows.push_back({"u", "0", "1"});
    P.relations.push_back({Term::comp({Term::adj(Term::gen("u")), Term::gen("u")}), Term::id("0")});
    P.relations.push_back({Term::comp({Term::gen("u"), Term::adj(Term::gen("u"))}), Term::id("1")});
  } else if (kind == "0") {
    P.name = "0";
    P.vertices = {"z"};
    P.relations.push_back({Term::id("z"), Term::zero("z", "z")});
  } else {
    throw InvalidInput("unknown universal kind '" + kind + "' (expected F, S, P, R, SP, SR, I or 0)");
  }
  P.validate();
  return P;
}

/** Functor between presentations given on generators. */
struct GeneratingMap {
  std::string name;
  Presentation source;
  Presentation target;
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, Term> arrow_map;
};

/** Representation of the source obtained by precomposing a target representation. */
inline Assignment pullback(const GeneratingMap& g, const Assignment& a) {
  Assignment out;
  out.target = a.target;
  for (const auto& v : g.source.vertices) out.vertices[v] = a.vertices.at(g.vertex_map.at(v));
  for (const auto& arr : g.source.arrows) out.arrows[arr.name] = evaluate(g.target, a, g.arrow_map.at(arr.name));
  return out;
}

/** The comparison functors among F^n, P(n), S(n), R(n), SP(n), SR(n). */
inline std::vector<GeneratingMap> comparison_maps(std::size_t n) {
  using names::o;
  auto F = build_universal("F", n), S = build_universal("S", n), P = build_universal("P", n),
       R = build_universal("R", n), SP = build_universal("SP", n), SR = build_universal("SR", n);
  auto ids = [&] {
    std::map<std::string, std::string> m;
    for (std::size_t i = 1; i <= n; ++i) m[o(i)] = o(i);
    return m;
  };
  std::vector<GeneratingMap> maps;
  maps.push_back({"S_n", F, S, ids(), {}});
  maps.push_back({"F^n->P(n)", F, P, ids(), {}});
  {
    GeneratingMap g{"R_n", P, R, ids(), {}};
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j)
        g.arrow_map[names::p(i, j)] = Term::comp({Term::adj(Term::gen(names::s(i))), Term::gen(names::s(j))});
    maps.push_back(g);
  }
  {
    GeneratingMap g{"P(n)->SP(n)", P, SP, ids(), {}};
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j)
        g.arrow_map[names::p(i, j)] =
            Term::comp({Term::adj(Term::gen(names::v(i))), Term::gen("p"), Term::gen(names::v(j))});
    maps.push_back(g);
  }
  {
    GeneratingMap g{"S(n)->SP(n)", S, SP, ids(), {}};
    g.vertex_map[names::sum_vertex] = names::sum_vertex;
    for (std::size_t i = 1; i <= n; ++i) g.arrow_map[names::v(i)] = Term::gen(names::v(i));
    maps.push_back(g);
  }
  {
    GeneratingMap g{"SP(n)->SR(n)", SP, SR, ids(), {}};
    g.vertex_map[names::sum_vertex] = names::sum_vertex;
    for (std::size_t i = 1; i <= n; ++i) g.arrow_map[names::v(i)] = Term::gen(names::v(i));
    g.arrow_map["p"] = Term::comp({Term::gen("v"), Term::adj(Term::gen("v"))});
    maps.push_back(g);
  }
  {
    GeneratingMap g{"R(n)->SR(n)", R, SR, ids(), {}};
    g.vertex_map[names::range_vertex] = names::range_vertex;
    for (std::size_t i = 1; i <= n; ++i)
      g.arrow_map[names::s(i)] = Term::comp({Term::adj(Term::gen("v")), Term::gen(names::v(i))});
    maps.push_back(g);
  }
  return maps;
}

inline const GeneratingMap& find_map(const std::vector<GeneratingMap>& maps, const std::string& name) {
  for (const auto& m : maps)
    if (m.name == name) return m;
  throw InvalidInput("no comparison map named " + name);
}

// ---------------------------------------------------------------------------
// Pushouts

/** A plus a unitarily isomorphic copy x1 of x0, with u realized as the unit of x0. */
struct IntervalPushout {
  CategoryPtr category;
  StarFunctor inclusion;  // A -> result
  std::size_t x0 = 0;
  std::size_t x1 = 0;
  Matrix u;  // x0 -> x1
};

inline IntervalPushout pushout_interval(const CategoryPtr& a, std::size_t x0) {
  if (x0 >= a->size()) throw InvalidInput("pushout_interval: unknown object");
  ConcreteCategory c;
  for (const auto& o : a->objects()) c.add_object(o.name, o.dim, o.unit);
  std::string name = a->object(x0).name + "~";
  while (c.find(name)) name += "~";
  const std::size_t x1 = c.add_object(name, a->dim(x0), a->unit(x0));
  auto orig = [&](std::size_t x) { return x == x1 ? x0 : x; };
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y) c.set_hom(x, y, a->hom(orig(x), orig(y)));
  IntervalPushout r;
  r.category = share(std::move(c));
  std::vector<std::size_t> ids(a->size());
  for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k;
  r.inclusion = StarFunctor::from_rule(a, r.category, ids, [](std::size_t, std::size_t, const Matrix& m) { return m; });
  r.x0 = x0;
  r.x1 = x1;
  r.u = a->unit(x0);
  return r;
}

/**
 * Mediating functor for a cocone (T0 : A -> C, w : T0(x0) -> c1 unitary).
 * Throws InvalidInput when w is not unitary.
 */
inline StarFunctor mediate_interval(const IntervalPushout& po, const StarFunctor& t0, std::size_t c1, const Matrix& w) {
  const auto& C = t0.target();
  std::size_t cx0 = t0.object(po.x0);
  if (!C.hom(cx0, c1).contains(w)) throw InvalidInput("mediate_interval: w is not an arrow T0(x0) -> c1");
  if (!(w.adjoint() * w == C.unit(cx0)) || !(w * w.adjoint() == C.unit(c1)))
    throw InvalidInput("mediate_interval: w is not unitary");
  std::vector<std::size_t> objs = t0.object_map();
  objs.push_back(c1);
  const std::size_t x1 = po.x1;
  return StarFunctor::from_rule(po.category, t0.target_ptr(), objs, [&](std::size_t x, std::size_t y, const Matrix& m) {
    std::size_t ox = x == x1 ? po.x0 : x, oy = y == x1 ? po.x0 : y;
    Matrix img = t0.apply(ox, oy, m);
    if (y == x1) img = w * img;
    if (x == x1) img = img * w.adjoint();
    return img;
  });
}

/** Assignment P(n) -> A: objects x_i and the projection matrix [p_ij]. */
struct ProjectionMatrixData {
  std::vector<std::size_t> objects;
  std::vector<std::vector<Matrix>> p;  // p[i][j] : x_j -> x_i

  Assignment to_assignment(const CategoryPtr& a) const {
    Assignment as;
    as.target = a;
    for (std::size_t i = 0; i < objects.size(); ++i) as.vertices[names::o(i + 1)] = objects[i];
    for (std::size_t i = 0; i < objects.size(); ++i)
      for (std::size_t j = 0; j < objects.size(); ++j) as.arrows[names::p(i + 1, j + 1)] = p[i][j];
    return as;
  }

  Matrix block_matrix(const ConcreteCategory& a) const {
    std::vector<std::size_t> off{0};
    for (auto x : objects) off.push_back(off.back() + a.dim(x));
    Matrix m(off.back(), off.back());
    for (std::size_t i = 0; i < objects.size(); ++i)
      for (std::size_t j = 0; j < objects.size(); ++j) m.set_block(off[i], off[j], p[i][j]);
    return m;
  }

  static ProjectionMatrixData from_block(const ConcreteCategory& a, std::vector<std::size_t> objs, const Matrix& m) {
    ProjectionMatrixData d;
    d.objects = std::move(objs);
    std::vector<std::size_t> off{0};
    for (auto x : d.objects) off.push_back(off.back() + a.dim(x));
    if (m.rows() != off.back() || m.cols() != off.back()) throw ShapeError("projection matrix has the wrong shape");
    d.p.assign(d.objects.size(), {});
    for (std::size_t i = 0; i < d.objects.size(); ++i)
      for (std::size_t j = 0; j < d.objects.size(); ++j)
        d.p[i].push_back(m.block(off[i], off[j], a.dim(d.objects[i]), a.dim(d.objects[j])));
    return d;
  }
};

/**
 * Pushout of R_n along G : P(n) -> A, realized as the full subcategory of
 * Sat(A) on iota(ob A) and the range r of [G p_ij].
 */
struct RangePushout {
  SaturationPtr sat;
  std::vector<ProjObject> objects;
  CategoryPtr category;
  StarFunctor inclusion;  // U : A -> result
  std::size_t r = 0;
  ProjectionMatrixData g;
  Assignment range_map;  // R(n) -> result
};

inline RangePushout pushout_Rn(const CategoryPtr& a, const ProjectionMatrixData& g) {
  const std::size_t n = g.objects.size();
  auto P = build_universal("P", n);
  auto chk = check_representation(P, g.to_assignment(a));
  if (!chk.ok) throw InvalidInput("pushout_Rn: G is not a representation of P(n): " + chk.message);
  RangePushout po;
  po.g = g;
  po.sat = saturation(a);
  for (std::size_t x = 0; x < a->size(); ++x) po.objects.push_back(po.sat->iota(x));
  ProjObject r{g.objects, g.block_matrix(*a)};
  po.objects.push_back(r);
  std::vector<std::string> names;
  for (const auto& o : a->objects()) names.push_back(o.name);
  names.push_back("r");
  po.category = share(po.sat->materialize(po.objects, names));
  po.r = a->size();
  std::vector<std::size_t> ids(a->size());
  for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k;
  po.inclusion = StarFunctor::from_rule(a, po.category, ids, [](std::size_t, std::size_t, const Matrix& m) { return m; });
  po.range_map.target = po.category;
  po.range_map.vertices[names::range_vertex] = po.r;
  auto sum = po.sat->canonical_sum([&] {
    std::vector<ProjObject> parts;
    for (auto x : g.objects) parts.push_back(po.sat->iota(x));
    return parts;
  }());
  for (std::size_t i = 0; i < n; ++i) {
    po.range_map.vertices[names::o(i + 1)] = g.objects[i];
    po.range_map.arrows[names::s(i + 1)] = r.proj * sum.isometries[i];
  }
  return po;
}

/**
 * Mediating functor B -> C for a cocone (T0 : A -> C, T1 : R(n) -> C) with
 * T0 G = T1 R_n, using T(a) = sum_j T0(a_j) T1(s_j)*, T(b) = sum_i T1(s_i) T0(b_i),
 * T(c) = sum_ij T1(s_i) T0(c_ij) T1(s_j)*.
 */
inline StarFunctor mediate_Rn(const RangePushout& po, const StarFunctor& t0, const Assignment& t1) {
  const auto& A = po.inclusion.source();
  const std::size_t n = po.g.objects.size();
  std::vector<std::size_t> off{0};
  for (auto x : po.g.objects) off.push_back(off.back() + A.dim(x));
  std::vector<Matrix> ts;
  for (std::size_t i = 0; i < n; ++i) ts.push_back(t1.arrows.at(names::s(i + 1)));
  std::vector<std::size_t> objs = t0.object_map();
  objs.push_back(t1.vertices.at(names::range_vertex));
  const std::size_t r = po.r;
  const auto& xs = po.g.objects;
  auto tgt = t0.target_ptr();
  return StarFunctor::from_rule(po.category, tgt, objs, [&](std::size_t x, std::size_t y, const Matrix& m) {
    if (x != r && y != r) return t0.apply(x, y, m);
    Matrix out(tgt->dim(objs[y]), tgt->dim(objs[x]));
    if (x == r && y != r) {
      for (std::size_t j = 0; j < n; ++j)
        out += t0.apply(xs[j], y, m.block(0, off[j], m.rows(), A.dim(xs[j]))) * ts[j].adjoint();
    } else if (x != r && y == r) {
      for (std::size_t i = 0; i < n; ++i) out += ts[i] * t0.apply(x, xs[i], m.block(off[i], 0, A.dim(xs[i]), m.cols()));
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          out += ts[i] * t0.apply(xs[j], xs[i], m.block(off[i], off[j], A.dim(xs[i]), A.dim(xs[j]))) * ts[j].adjoint();
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
// Lifting against R_n and S_n

/** Commutative square F G = H R_n with G : P(n) -> A and H : R(n) -> B. */
struct RangeSquare {
  ProjectionMatrixData g;
  std::size_t r_b = 0;          // H(r(n))
  std::vector<Matrix> s_b;      // H(s_i) : F(x_i) -> r_b
};

/** Square F G = H S_n with G : F^n -> A and H : S(n) -> B. */
struct SumSquare {
  std::vector<std::size_t> objects;  // G(o_i)
  std::size_t s_b = 0;               // H(s(n))
  std::vector<Matrix> v_b;           // H(v_i) : F(x_i) -> s_b
};

struct LiftResult {
  bool found = false;
  bool explicit_witness = false;          // arrows below are a verified lift
  std::optional<std::size_t> object;      // r (or s) in A
  std::vector<Matrix> arrows;             // s_i (or v_i) in A
  std::string reason;
};

namespace detail {

/** Blocks of A killed by F, i.e. F(z_{i,x}) = 0. */
inline std::vector<bool> killed_blocks(const StarFunctor& f, const Decomposition& da) {
  std::vector<bool> killed(da.k(), false);
  for (std::size_t i = 0; i < da.k(); ++i) {
    std::size_t x = 0;
    while (da.form.mult[x][i] == 0) ++x;
    killed[i] = f.apply(x, x, da.central[i][x]).is_zero();
  }
  return killed;
}

/** Sum of the central parts at x of the blocks F does not kill. */
inline Matrix surviving_part(const Decomposition& da, const std::vector<bool>& killed, std::size_t x) {
  Matrix z(da.category->dim(x), da.category->dim(x));
  for (std::size_t i = 0; i < da.k(); ++i)
    if (!killed[i]) z += da.central[i][x];
  return z;
}

/** Some t in A(x, y) with F(t) = target, or nullopt. */
inline std::optional<Matrix> solve_preimage(const StarFunctor& f, std::size_t x, std::size_t y, const Matrix& target) {
  const auto& imgs = f.basis_images(x, y);
  const auto& hom = f.source().hom(x, y);
  if (imgs.empty()) {
    if (target.is_zero()) return Matrix(f.source().dim(y), f.source().dim(x));
    return std::nullopt;
  }
  auto c = span_membership(target, imgs);
  if (!c) return std::nullopt;
  return hom.combine(*c);
}

/**
 * Shared search: candidates c of A with F(c) = target object, arrows t_i :
 * x_i -> c with F(t_i) = h_i, t_i* t_j = gram_ij and sum t_k t_k* = 1 on the
 * blocks F does not kill; killed blocks are settled by class arithmetic.
 */
inline LiftResult lift_search(const StarFunctor& f, const std::vector<std::size_t>& xs,
                              const std::vector<std::vector<Matrix>>& gram, const ProjObject& gram_range,
                              std::size_t target_object, const std::vector<Matrix>& h) {
  const auto& A = f.source();
  Decomposition da = decompose_cached(f.source_ptr());
  auto killed = killed_blocks(f, da);
  auto needed = object_class(da, gram_range);
  LiftResult res;
  res.reason = "no object of the source maps to the target object with a compatible class";
  for (std::size_t c = 0; c < A.size(); ++c) {
    if (f.object(c) != target_object) continue;
    auto cls = da.form.mult[c];
    bool classes_ok = true;
    for (std::size_t i = 0; i < da.k(); ++i)
      if (killed[i] && cls[i] != needed[i]) classes_ok = false;
    if (!classes_ok) continue;
    std::vector<Matrix> ts;
    bool solvable = true;
    for (std::size_t i = 0; i < xs.size() && solvable; ++i) {
      auto t = solve_preimage(f, xs[i], c, h[i]);
      if (!t) {
        solvable = false;
        break;
      }
      Matrix zc = surviving_part(da, killed, c);
      ts.push_back(zc * (*t));
    }
    if (!solvable) continue;
    // Relations on the surviving blocks.
    Matrix zc = surviving_part(da, killed, c);
    bool rel_ok = true;
    Matrix sum(A.dim(c), A.dim(c));
    for (std::size_t i = 0; i < xs.size() && rel_ok; ++i) {
      sum += ts[i] * ts[i].adjoint();
      for (std::size_t j = 0; j < xs.size(); ++j)
        if (!(ts[i].adjoint() * ts[j] == surviving_part(da, killed, xs[i]) * gram[i][j])) {
          rel_ok = false;
          break;
        }
    }
    if (!rel_ok || !(sum == zc * A.unit(c))) continue;
    res.found = true;
    res.object = c;
    bool any_killed = false;
    for (std::size_t i = 0; i < da.k(); ++i) any_killed = any_killed || (killed[i] && cls[i] > 0);
    if (!any_killed) {
      res.explicit_witness = true;
      res.arrows = std::move(ts);
      res.reason = "explicit witness";
    } else {
      res.reason = "lift exists on killed blocks by class match; no rational witness constructed there";
    }
    return res;
  }
  return res;
}

}  // namespace detail

/** Validates F G = H R_n; throws InvalidInput when the square does not commute. */
inline void check_range_square(const StarFunctor& f, const RangeSquare& sq) {
  const std::size_t n = sq.g.objects.size();
  auto P = build_universal("P", n);
  auto chk = check_representation(P, sq.g.to_assignment(f.source_ptr()));
  if (!chk.ok) throw InvalidInput("square: G is not a representation of P(n): " + chk.message);
  if (sq.s_b.size() != n) throw InvalidInput("square: H needs one arrow per object");
  Assignment h;
  h.target = f.target_ptr();
  h.vertices[names::range_vertex] = sq.r_b;
  for (std::size_t i = 0; i < n; ++i) {
    h.vertices[names::o(i + 1)] = f.object(sq.g.objects[i]);
    h.arrows[names::s(i + 1)] = sq.s_b[i];
  }
  auto hchk = check_representation(build_universal("R", n), h);
  if (!hchk.ok) throw InvalidInput("square: H is not a representation of R(n): " + hchk.message);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(f.apply(sq.g.objects[j], sq.g.objects[i], sq.g.p[i][j]) == sq.s_b[i].adjoint() * sq.s_b[j]))
        throw InvalidInput("non-commuting square: F(G(p_" + std::to_string(i + 1) + std::to_string(j + 1) +
                           ")) != H(s_i)* H(s_j)");
}

/** Lift L : R(n) -> A with L R_n = G and F L = H, searched in declaration order. */
inline LiftResult rlp_lift(const StarFunctor& f, const RangeSquare& sq) {
  check_range_square(f, sq);
  const std::size_t n = sq.g.objects.size();
  ProjObject range{sq.g.objects, sq.g.block_matrix(f.source())};
  auto res = detail::lift_search(f, sq.g.objects, sq.g.p, range, sq.r_b, sq.s_b);
  if (res.explicit_witness) {
    Assignment l;
    l.target = f.source_ptr();
    l.vertices[names::range_vertex] = *res.object;
    for (std::size_t i = 0; i < n; ++i) {
      l.vertices[names::o(i + 1)] = sq.g.objects[i];
      l.arrows[names::s(i + 1)] = res.arrows[i];
    }
    auto chk = check_representation(build_universal("R", n), l);
    if (!chk.ok) throw std::logic_error("rlp_lift: constructed lift violates R(n): " + chk.message);
  }
  return res;
}

inline void check_sum_square(const StarFunctor& f, const SumSquare& sq) {
  const std::size_t n = sq.objects.size();
  if (sq.v_b.size() != n) throw InvalidInput("square: H needs one arrow per object");
  Assignment h;
  h.target = f.target_ptr();
  h.vertices[names::sum_vertex] = sq.s_b;
  for (std::size_t i = 0; i < n; ++i) {
    h.vertices[names::o(i + 1)] = f.object(sq.objects[i]);
    h.arrows[names::v(i + 1)] = sq.v_b[i];
  }
  auto chk = check_representation(build_universal("S", n), h);
  if (!chk.ok) throw InvalidInput("square: H is not a representation of S(n): " + chk.message);
}

/** Direct search for a lift against S_n. */
inline LiftResult rlp_lift_sum(const StarFunctor& f, const SumSquare& sq) {
  check_sum_square(f, sq);
  const auto& A = f.source();
  const std::size_t n = sq.objects.size();
  std::vector<std::vector<Matrix>> gram(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gram[i].push_back(i == j ? A.unit(sq.objects[i]) : Matrix(A.dim(sq.objects[i]), A.dim(sq.objects[j])));
  LazySaturation sat(f.source_ptr());
  ProjObject total = sat.word_object(sq.objects);
  auto res = detail::lift_search(f, sq.objects, gram, total, sq.s_b, sq.v_b);
  if (res.explicit_witness) {
    Assignment l;
    l.target = f.source_ptr();
    l.vertices[names::sum_vertex] = *res.object;
    for (std::size_t i = 0; i < n; ++i) {
      l.vertices[names::o(i + 1)] = sq.objects[i];
      l.arrows[names::v(i + 1)] = res.arrows[i];
    }
    auto chk = check_representation(build_universal("S", n), l);
    if (!chk.ok) throw std::logic_error("rlp_lift_sum: constructed lift violates S(n): " + chk.message);
  }
  return res;
}

/** The R_n square attached to an S_n square: p_ij = delta_ij, s_i = H(v_i). */
inline RangeSquare range_square_of(const StarFunctor& f, const SumSquare& sq) {
  RangeSquare r;
  r.g.objects = sq.objects;
  const auto& A = f.source();
  const std::size_t n = sq.objects.size();
  r.g.p.assign(n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r.g.p[i].push_back(i == j ? A.unit(sq.objects[i]) : Matrix(A.dim(sq.objects[i]), A.dim(sq.objects[j])));
  r.r_b = sq.s_b;
  r.s_b = sq.v_b;
  return r;
}

/** S_n lift derived from an R_n lift of the attached square. */
inline LiftResult rlp_lift_sum_via_range(const StarFunctor& f, const SumSquare& sq) {
  check_sum_square(f, sq);
  return rlp_lift(f, range_square_of(f, sq));
}

// ---------------------------------------------------------------------------
// Fibrancy probes

struct ProbeReport {
  bool zero_object = false;
  std::optional<std::string> zero_witness;
  struct PairProbe {
    std::string x, y;
    std::optional<std::string> witness;
  };
  struct SplitProbe {
    std::string x;
    std::vector<std::size_t> cls;
    std::optional<std::string> witness;
  };
  std::vector<PairProbe> sums;
  std::vector<SplitProbe> splittings;

  bool all_pass() const {
    if (!zero_object) return false;
    for (const auto& s : sums)
      if (!s.witness) return false;
    for (const auto& s : splittings)
      if (!s.witness) return false;
    return true;
  }
};

/**
 * Per-instance probes of a finite category: a zero object, a direct sum for
 * every unordered pair, and a range object for every projection class.
 */
inline ProbeReport fibrancy_probe(const CategoryPtr& a) {
  ProbeReport rep;
  Decomposition d = decompose(a);
  const auto& A = *a;
  auto find_class = [&](const std::vector<std::size_t>& cls) -> std::optional<std::string> {
    for (std::size_t x = 0; x < A.size(); ++x)
      if (d.form.mult[x] == cls) return A.object(x).name;
    return std::nullopt;
  };
  std::vector<std::size_t> zero(d.k(), 0);
  rep.zero_witness = find_class(zero);
  rep.zero_object = rep.zero_witness.has_value();
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = x; y < A.size(); ++y) {
      std::vector<std::size_t> cls(d.k());
      for (std::size_t i = 0; i < d.k(); ++i) cls[i] = d.form.mult[x][i] + d.form.mult[y][i];
      rep.sums.push_back({A.object(x).name, A.object(y).name, find_class(cls)});
    }
  for (std::size_t x = 0; x < A.size(); ++x) {
    std::vector<std::size_t> cls(d.k(), 0);
    const auto& m = d.form.mult[x];
    for (;;) {
      rep.splittings.push_back({A.object(x).name, cls, find_class(cls)});
      std::size_t i = 0;
      while (i < d.k() && cls[i] == m[i]) cls[i++] = 0;
      if (i == d.k()) break;
      ++cls[i];
    }
  }
  return rep;
}

/** Exact probes of a saturation on sample objects: the verdict here is a real proof per sample. */
struct SaturationProbeReport {
  bool zero_object = false;
  std::size_t sums_checked = 0;
  std::size_t splittings_checked = 0;
  bool iota_fully_faithful = false;
  std::vector<std::string> failures;
  bool all_pass() const { return zero_object && iota_fully_faithful && failures.empty(); }
};

inline SaturationProbeReport probe_saturation(const LazySaturation& sat, const std::vector<ProjObject>& samples,
                                              Rng& rng, std::size_t projections_per_object = 3) {
  SaturationProbeReport rep;
  const auto& A = sat.base();
  ProjObject z = sat.zero_object();
  rep.zero_object = sat.hom(z, z)->dim() == 0;
  for (const auto& s : samples) {
    if (sat.hom(z, s)->dim() != 0 || sat.hom(s, z)->dim() != 0) rep.zero_object = false;
  }
  rep.iota_fully_faithful = true;
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = 0; y < A.size(); ++y)
      if (!(*sat.hom(sat.iota(x), sat.iota(y)) == A.hom(x, y))) rep.iota_fully_faithful = false;
  for (std::size_t a = 0; a < samples.size(); ++a)
    for (std::size_t b = a; b < samples.size(); ++b) {
      auto s = sat.canonical_sum({samples[a], samples[b]});
      const ProjObject* parts[2] = {&samples[a], &samples[b]};
      Matrix total(s.sum.proj.rows(), s.sum.proj.cols());
      for (int i = 0; i < 2; ++i) {
        if (!sat.contains_arrow(*parts[i], s.sum, s.isometries[i])) rep.failures.push_back("sum isometry not an arrow");
        total += s.isometries[i] * s.isometries[i].adjoint();
        for (int j = 0; j < 2; ++j) {
          Matrix g = s.isometries[i].adjoint() * s.isometries[j];
          Matrix expect = i == j ? parts[i]->proj : Matrix(parts[i]->proj.rows(), parts[j]->proj.rows());
          if (!(g == expect)) rep.failures.push_back("sum isometries not orthonormal");
        }
      }
      if (!(total == s.sum.proj)) rep.failures.push_back("sum isometries do not add up to the identity");
      ++rep.sums_checked;
    }
  for (const auto& s : samples) {
    auto end = sat.hom(s, s);
    std::vector<Matrix> qs{s.proj, Matrix(s.proj.rows(), s.proj.cols())};
    for (std::size_t k = 0; k < projections_per_object && !end->empty(); ++k) {
      // Range projection of a random idempotent of End(s): conjugate a projection by an invertible element.
      Matrix x(s.proj.rows(), s.proj.cols());
      for (const auto& b : end->basis()) x += random_scalar(rng, 2) * b;
      Matrix h = x + x.adjoint();
      Matrix base = kernel_projection(h * h, s.proj);
      if (base.is_zero() || base == s.proj) base = s.proj;
      Matrix y(s.proj.rows(), s.proj.cols());
      for (const auto& b : end->basis()) y += random_scalar(rng, 2) * b;
      auto yi = corner_inverse(y, s.proj);
      Matrix e = yi ? Matrix(y * base * (*yi)) : base;
      qs.push_back(range_projection(e));
    }
    for (const auto& q : qs) {
      auto r = sat.canonical_range(s, q);
      if (!sat.contains_arrow(r.range, s, r.isometry)) rep.failures.push_back("range isometry not an arrow");
      if (!(r.isometry.adjoint() * r.isometry == r.range.proj)) rep.failures.push_back("range isometry not isometric");
      if (!(r.isometry * r.isometry.adjoint() == q)) rep.failures.push_back("range isometry has the wrong range");
      ++rep.splittings_checked;
    }
  }
  return rep;
}

}  // namespace morita
