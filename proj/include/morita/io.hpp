#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "morita/errors.hpp"
#include "morita/homotopy.hpp"
#include "morita/ktheory.hpp"
#include "morita/presentations.hpp"
#include "morita/scalar.hpp"
#include "morita/semisimple.hpp"
#include "morita/starcat.hpp"

namespace morita::io {

using Json = nlohmann::ordered_json;

/** Schema violation at a JSON pointer. */
inline ParseError schema_error(const std::string& pointer, const std::string& rule) {
  return ParseError((pointer.empty() ? std::string("/") : pointer) + ": " + rule);
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

namespace detail {

inline const Json& field(const Json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) throw schema_error(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw schema_error(at, "missing field \"" + key + "\"");
  return *it;
}

inline std::string string_of(const Json& j, const std::string& at) {
  if (!j.is_string()) throw schema_error(at, "expected a string");
  return j.get<std::string>();
}

inline std::size_t nat_of(const Json& j, const std::string& at) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw schema_error(at, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline long int_of(const Json& j, const std::string& at) {
  if (!j.is_number_integer()) throw schema_error(at, "expected an integer");
  return j.get<long>();
}

inline const Json& array_of(const Json& j, const std::string& at) {
  if (!j.is_array()) throw schema_error(at, "expected an array");
  return j;
}

inline std::string check_kind(const Json& j, const std::string& expected) {
  const auto& k = field(j, "kind", "");
  std::string kind = string_of(k, "/kind");
  if (!expected.empty() && kind != expected)
    throw schema_error("/kind", "expected \"" + expected + "\", found \"" + kind + "\"");
  return kind;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scalars and matrices

inline Json to_json(const Scalar& s) { return s.to_string(); }

inline Scalar scalar_from_json(const Json& j, const std::string& at = "") {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) throw schema_error(at, "scalar must be a string \"a/b+c/d*i\" or an integer");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const Error& e) {
    throw schema_error(at, e.what());
  }
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

/** Matrix of the given shape; an empty array is accepted for any shape with a zero dimension. */
inline Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& at = "") {
  detail::array_of(j, at);
  if (rows == 0 || cols == 0) {
    if (!j.empty() && j.size() != rows)
      throw schema_error(at, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    for (std::size_t r = 0; r < j.size(); ++r)
      if (!j[r].is_array() || !j[r].empty()) throw schema_error(at, "expected empty rows");
    return Matrix(rows, cols);
  }
  if (j.size() != rows)
    throw schema_error(at, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::string rat = at + "/" + std::to_string(r);
    detail::array_of(j[r], rat);
    if (j[r].size() != cols)
      throw schema_error(rat, "expected " + std::to_string(cols) + " columns, found " + std::to_string(j[r].size()));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j[r][c], rat + "/" + std::to_string(c));
  }
  return m;
}

/** Matrix whose shape is read from the document itself. */
inline Matrix matrix_from_json(const Json& j, const std::string& at = "") {
  detail::array_of(j, at);
  std::size_t rows = j.size();
  std::size_t cols = rows ? detail::array_of(j[0], at + "/0").size() : 0;
  return matrix_from_json(j, rows, cols, at);
}

// ---------------------------------------------------------------------------
// Concrete categories

inline Json to_json(const ConcreteCategory& c) {
  Json j;
  j["kind"] = "concrete";
  Json objs = Json::array();
  for (const auto& o : c.objects()) {
    Json oj;
    oj["name"] = o.name;
    oj["dim"] = o.dim;
    if (!(o.unit == Matrix::identity(o.dim))) oj["unit"] = to_json(o.unit);
    objs.push_back(std::move(oj));
  }
  j["objects"] = std::move(objs);
  Json homs = Json::object();
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y) {
      const auto& h = c.hom(x, y);
      if (h.empty()) continue;
      Json basis = Json::array();
      for (const auto& b : h.basis()) basis.push_back(to_json(b));
      homs[c.object(x).name + "->" + c.object(y).name] = std::move(basis);
    }
  j["homs"] = std::move(homs);
  return j;
}

/**
 * Reads a concrete category. Hom spaces are the spans of the listed matrices;
 * End(x) always contains the unit. No closure is taken: validate_category
 * reports a document whose spans are not closed.
 */
inline ConcreteCategory category_from_json(const Json& j) {
  detail::check_kind(j, "concrete");
  ConcreteCategory c;
  const auto& objs = detail::array_of(detail::field(j, "objects", ""), "/objects");
  for (std::size_t k = 0; k < objs.size(); ++k) {
    std::string at = "/objects/" + std::to_string(k);
    std::string name = detail::string_of(detail::field(objs[k], "name", at), at + "/name");
    if (name.empty() || name.find("->") != std::string::npos)
      throw schema_error(at + "/name", "object names must be non-empty and must not contain \"->\"");
    std::size_t dim = detail::nat_of(detail::field(objs[k], "dim", at), at + "/dim");
    std::optional<Matrix> unit;
    if (objs[k].contains("unit")) unit = matrix_from_json(objs[k]["unit"], dim, dim, at + "/unit");
    if (c.find(name)) throw schema_error(at + "/name", "duplicate object name \"" + name + "\"");
    c.add_object(name, dim, unit);
  }
  if (j.contains("homs")) {
    const auto& homs = j["homs"];
    if (!homs.is_object()) throw schema_error("/homs", "expected an object keyed by \"x->y\"");
    for (auto it = homs.begin(); it != homs.end(); ++it) {
      std::string at = "/homs/" + it.key();
      auto arrow = it.key().find("->");
      if (arrow == std::string::npos) throw schema_error(at, "key must have the form \"x->y\"");
      auto x = c.find(it.key().substr(0, arrow));
      auto y = c.find(it.key().substr(arrow + 2));
      if (!x || !y) throw schema_error(at, "unknown object in key");
      detail::array_of(it.value(), at);
      for (std::size_t k = 0; k < it.value().size(); ++k)
        c.add_arrow(*x, *y, matrix_from_json(it.value()[k], c.dim(*y), c.dim(*x), at + "/" + std::to_string(k)));
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Semisimple forms

inline Json to_json(const SemisimpleForm& f) {
  Json j;
  j["kind"] = "semisimple";
  j["blocks"] = f.blocks;
  Json objs = Json::array();
  for (std::size_t x = 0; x < f.objects.size(); ++x) {
    Json o;
    o["name"] = f.objects[x];
    o["mult"] = f.mult[x];
    objs.push_back(std::move(o));
  }
  j["objects"] = std::move(objs);
  return j;
}

inline SemisimpleForm form_from_json(const Json& j) {
  detail::check_kind(j, "semisimple");
  SemisimpleForm f;
  const auto& blocks = detail::array_of(detail::field(j, "blocks", ""), "/blocks");
  for (std::size_t k = 0; k < blocks.size(); ++k) f.blocks.push_back(detail::string_of(blocks[k], "/blocks/" + std::to_string(k)));
  const auto& objs = detail::array_of(detail::field(j, "objects", ""), "/objects");
  for (std::size_t x = 0; x < objs.size(); ++x) {
    std::string at = "/objects/" + std::to_string(x);
    f.objects.push_back(detail::string_of(detail::field(objs[x], "name", at), at + "/name"));
    const auto& m = detail::array_of(detail::field(objs[x], "mult", at), at + "/mult");
    std::vector<std::size_t> row;
    for (std::size_t i = 0; i < m.size(); ++i) row.push_back(detail::nat_of(m[i], at + "/mult/" + std::to_string(i)));
    f.mult.push_back(std::move(row));
  }
  try {
    f.check();
  } catch (const InvalidInput& e) {
    throw schema_error("/objects", e.what());
  }
  return f;
}

/** A category document of either kind; semisimple forms are realized canonically. */
inline ConcreteCategory any_category_from_json(const Json& j) {
  std::string kind = detail::check_kind(j, "");
  if (kind == "concrete") return category_from_json(j);
  if (kind == "semisimple") return realize(form_from_json(j));
  throw schema_error("/kind", "expected \"concrete\" or \"semisimple\", found \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// Homotopy morphisms

inline Json to_json(const HoMorphism& f) {
  Json j;
  j["kind"] = "homorphism";
  j["source"] = to_json(f.source);
  j["target"] = to_json(f.target);
  j["mult"] = f.mult;
  return j;
}

inline HoMorphism homorphism_from_json(const Json& j) {
  detail::check_kind(j, "homorphism");
  HoMorphism f;
  f.source = form_from_json(detail::field(j, "source", ""));
  f.target = form_from_json(detail::field(j, "target", ""));
  const auto& m = detail::array_of(detail::field(j, "mult", ""), "/mult");
  for (std::size_t r = 0; r < m.size(); ++r) {
    std::string at = "/mult/" + std::to_string(r);
    detail::array_of(m[r], at);
    std::vector<std::size_t> row;
    for (std::size_t c = 0; c < m[r].size(); ++c) row.push_back(detail::nat_of(m[r][c], at + "/" + std::to_string(c)));
    f.mult.push_back(std::move(row));
  }
  try {
    f.check();
  } catch (const ShapeError& e) {
    throw schema_error("/mult", e.what());
  }
  return f;
}

inline Json to_json(const GcMorphism& f) {
  Json j;
  j["kind"] = "gcmorphism";
  j["source"] = to_json(f.source);
  j["target"] = to_json(f.target);
  j["mult"] = f.mult;
  return j;
}

inline Json to_json(const K0Group& g) {
  Json j;
  j["rank"] = g.rank;
  j["generators"] = g.generators;
  Json objs = Json::array();
  for (std::size_t x = 0; x < g.objects.size(); ++x) {
    Json o;
    o["name"] = g.objects[x];
    o["class"] = g.classes[x];
    objs.push_back(std::move(o));
  }
  j["objects"] = std::move(objs);
  return j;
}

inline K0Group k0group_from_json(const Json& j) {
  K0Group g;
  g.rank = detail::nat_of(detail::field(j, "rank", ""), "/rank");
  const auto& gens = detail::array_of(detail::field(j, "generators", ""), "/generators");
  for (std::size_t k = 0; k < gens.size(); ++k) g.generators.push_back(detail::string_of(gens[k], "/generators"));
  const auto& objs = detail::array_of(detail::field(j, "objects", ""), "/objects");
  for (std::size_t x = 0; x < objs.size(); ++x) {
    std::string at = "/objects/" + std::to_string(x);
    g.objects.push_back(detail::string_of(detail::field(objs[x], "name", at), at + "/name"));
    IntVector cls;
    for (const auto& v : detail::array_of(detail::field(objs[x], "class", at), at + "/class"))
      cls.push_back(detail::int_of(v, at + "/class"));
    g.classes.push_back(std::move(cls));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Saturation objects

inline Json to_json(const ProjObject& p, const ConcreteCategory& base) {
  Json j;
  Json word = Json::array();
  for (auto x : p.word) word.push_back(base.object(x).name);
  j["word"] = std::move(word);
  j["proj"] = to_json(p.proj);
  return j;
}

inline ProjObject projobject_from_json(const Json& j, const ConcreteCategory& base, const std::string& at = "") {
  ProjObject p;
  const auto& word = detail::array_of(detail::field(j, "word", at), at + "/word");
  std::size_t dim = 0;
  for (std::size_t k = 0; k < word.size(); ++k) {
    std::string name = detail::string_of(word[k], at + "/word/" + std::to_string(k));
    auto x = base.find(name);
    if (!x) throw schema_error(at + "/word/" + std::to_string(k), "unknown object \"" + name + "\"");
    p.word.push_back(*x);
    dim += base.dim(*x);
  }
  p.proj = matrix_from_json(detail::field(j, "proj", at), dim, dim, at + "/proj");
  return p;
}

// ---------------------------------------------------------------------------
// Functors

/** {"kind":"functor","source":cat,"target":cat,"objects":{x:y},"arrows":{"x->y":[[a, F(a)], ...]}} */
inline Json to_json(const StarFunctor& f) {
  Json j;
  j["kind"] = "functor";
  j["source"] = to_json(f.source());
  j["target"] = to_json(f.target());
  Json objs = Json::object();
  for (std::size_t x = 0; x < f.source().size(); ++x)
    objs[f.source().object(x).name] = f.target().object(f.object(x)).name;
  j["objects"] = std::move(objs);
  Json arrows = Json::object();
  const auto& A = f.source();
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = 0; y < A.size(); ++y) {
      auto basis = A.hom(x, y).basis();
      if (basis.empty()) continue;
      Json pairs = Json::array();
      for (std::size_t k = 0; k < basis.size(); ++k)
        pairs.push_back(Json::array({to_json(basis[k]), to_json(f.basis_images(x, y)[k])}));
      arrows[A.object(x).name + "->" + A.object(y).name] = std::move(pairs);
    }
  j["arrows"] = std::move(arrows);
  return j;
}

/**
 * Reads a functor given on spanning sets. A hom that is omitted must be the
 * span of the unit (its image is then the target unit). The listed pairs must
 * be consistent with linearity.
 */
inline StarFunctor functor_from_json(const Json& j) {
  detail::check_kind(j, "functor");
  auto src = share(any_category_from_json(detail::field(j, "source", "")));
  auto tgt = share(any_category_from_json(detail::field(j, "target", "")));
  const auto& objs = detail::field(j, "objects", "");
  if (!objs.is_object()) throw schema_error("/objects", "expected an object mapping names to names");
  std::vector<std::size_t> map(src->size());
  for (std::size_t x = 0; x < src->size(); ++x) {
    const std::string& name = src->object(x).name;
    if (!objs.contains(name)) throw schema_error("/objects", "object \"" + name + "\" is not mapped");
    std::string img = detail::string_of(objs[name], "/objects/" + name);
    auto y = tgt->find(img);
    if (!y) throw schema_error("/objects/" + name, "unknown target object \"" + img + "\"");
    map[x] = *y;
  }
  StarFunctor f(src, tgt, map);
  Json arrows = j.contains("arrows") ? j["arrows"] : Json::object();
  if (!arrows.is_object()) throw schema_error("/arrows", "expected an object keyed by \"x->y\"");
  for (std::size_t x = 0; x < src->size(); ++x)
    for (std::size_t y = 0; y < src->size(); ++y) {
      const auto& hom = src->hom(x, y);
      if (hom.empty()) continue;
      std::string key = src->object(x).name + "->" + src->object(y).name;
      std::string at = "/arrows/" + key;
      std::vector<Matrix> from, to;
      if (arrows.contains(key)) {
        const auto& pairs = detail::array_of(arrows[key], at);
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          std::string pat = at + "/" + std::to_string(k);
          if (!pairs[k].is_array() || pairs[k].size() != 2) throw schema_error(pat, "expected a pair [arrow, image]");
          from.push_back(matrix_from_json(pairs[k][0], src->dim(y), src->dim(x), pat + "/0"));
          to.push_back(matrix_from_json(pairs[k][1], tgt->dim(map[y]), tgt->dim(map[x]), pat + "/1"));
        }
      } else if (x == y && hom.dim() == 1 && hom.contains(src->unit(x))) {
        from.push_back(src->unit(x));
        to.push_back(tgt->unit(map[x]));
      } else {
        throw schema_error("/arrows", "hom " + key + " is not mapped");
      }
      std::vector<Matrix> imgs;
      for (const auto& b : hom.basis()) {
        auto c = span_membership(b, from);
        if (!c) throw schema_error(at, "the listed arrows do not span the hom space");
        Matrix img(tgt->dim(map[y]), tgt->dim(map[x]));
        for (std::size_t k = 0; k < c->size(); ++k) img += (*c)[k] * to[k];
        imgs.push_back(std::move(img));
      }
      f.set_basis_images(x, y, std::move(imgs));
      for (std::size_t k = 0; k < from.size(); ++k)
        if (!hom.contains(from[k]) || !(f.apply(x, y, from[k]) == to[k]))
          throw schema_error(at + "/" + std::to_string(k), "pair is not consistent with a linear map on " + key);
    }
  return f;
}

// ---------------------------------------------------------------------------
// Presentations

inline Json to_json(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Gen:
      return Json::array({"gen", t.name});
    case Term::Kind::Adj:
      return Json::array({"adj", to_json(t.args[0])});
    case Term::Kind::Comp:
    case Term::Kind::Sum: {
      Json j = Json::array({t.kind == Term::Kind::Comp ? "comp" : "sum"});
      for (const auto& a : t.args) j.push_back(to_json(a));
      return j;
    }
    case Term::Kind::Scalar:
      return Json::array({"scalar", t.coef.to_string(), to_json(t.args[0])});
    case Term::Kind::Id:
      return Json::array({"id", t.name});
    case Term::Kind::Zero:
      return Json::array({"zero", t.src, t.tgt});
  }
  return Json();
}

inline Term term_from_json(const Json& j, const std::string& at) {
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw schema_error(at, "term must be a prefix array [\"op\", ...]");
  std::string op = j[0].get<std::string>();
  auto arg = [&](std::size_t k) { return term_from_json(j[k], at + "/" + std::to_string(k)); };
  auto need = [&](std::size_t n) {
    if (j.size() != n) throw schema_error(at, "\"" + op + "\" takes " + std::to_string(n - 1) + " argument(s)");
  };
  if (op == "gen") {
    need(2);
    return Term::gen(detail::string_of(j[1], at + "/1"));
  }
  if (op == "adj") {
    need(2);
    return Term::adj(arg(1));
  }
  if (op == "comp" || op == "sum") {
    if (j.size() < 2) throw schema_error(at, "\"" + op + "\" needs at least one argument");
    std::vector<Term> args;
    for (std::size_t k = 1; k < j.size(); ++k) args.push_back(arg(k));
    return op == "comp" ? Term::comp(std::move(args)) : Term::sum(std::move(args));
  }
  if (op == "scalar") {
    need(3);
    return Term::scalar(scalar_from_json(j[1], at + "/1"), arg(2));
  }
  if (op == "id") {
    need(2);
    return Term::id(detail::string_of(j[1], at + "/1"));
  }
  if (op == "zero") {
    need(3);
    return Term::zero(detail::string_of(j[1], at + "/1"), detail::string_of(j[2], at + "/2"));
  }
  throw schema_error(at, "unknown term operator \"" + op + "\"");
}

inline Json to_json(const Presentation& p) {
  Json j;
  j["kind"] = "presentation";
  j["name"] = p.name;
  j["objects"] = p.vertices;
  Json arrows = Json::array();
  for (const auto& a : p.arrows) arrows.push_back({{"name", a.name}, {"src", a.src}, {"tgt", a.tgt}});
  j["arrows"] = std::move(arrows);
  Json rels = Json::array();
  for (const auto& r : p.relations) rels.push_back(Json::array({"eq", to_json(r.lhs), to_json(r.rhs)}));
  j["relations"] = std::move(rels);
  return j;
}

inline Presentation presentation_from_json(const Json& j) {
  detail::check_kind(j, "presentation");
  Presentation p;
  if (j.contains("name")) p.name = detail::string_of(j["name"], "/name");
  const auto& objs = detail::array_of(detail::field(j, "objects", ""), "/objects");
  for (std::size_t k = 0; k < objs.size(); ++k) p.vertices.push_back(detail::string_of(objs[k], "/objects/" + std::to_string(k)));
  const auto& arrows = detail::array_of(detail::field(j, "arrows", ""), "/arrows");
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    std::string at = "/arrows/" + std::to_string(k);
    p.arrows.push_back({detail::string_of(detail::field(arrows[k], "name", at), at + "/name"),
                        detail::string_of(detail::field(arrows[k], "src", at), at + "/src"),
                        detail::string_of(detail::field(arrows[k], "tgt", at), at + "/tgt")});
  }
  const auto& rels = detail::array_of(detail::field(j, "relations", ""), "/relations");
  for (std::size_t k = 0; k < rels.size(); ++k) {
    std::string at = "/relations/" + std::to_string(k);
    const auto& r = rels[k];
    if (!r.is_array() || r.size() != 3 || r[0] != "eq") throw schema_error(at, "relation must be [\"eq\", lhs, rhs]");
    p.relations.push_back({term_from_json(r[1], at + "/1"), term_from_json(r[2], at + "/2")});
  }
  try {
    p.validate();
  } catch (const InvalidInput& e) {
    throw schema_error("/relations", e.what());
  }
  return p;
}

// ---------------------------------------------------------------------------
// Lifting squares. Object names refer to the source (G) and target (H) of F.

inline Json to_json(const RangeSquare& sq, const StarFunctor& f) {
  Json j;
  j["kind"] = "square";
  j["n"] = sq.g.objects.size();
  Json g;
  Json names = Json::array();
  for (auto x : sq.g.objects) names.push_back(f.source().object(x).name);
  g["objects"] = std::move(names);
  Json p = Json::array();
  for (const auto& row : sq.g.p) {
    Json r = Json::array();
    for (const auto& m : row) r.push_back(to_json(m));
    p.push_back(std::move(r));
  }
  g["p"] = std::move(p);
  j["G"] = std::move(g);
  Json h;
  h["r"] = f.target().object(sq.r_b).name;
  Json s = Json::array();
  for (const auto& m : sq.s_b) s.push_back(to_json(m));
  h["s"] = std::move(s);
  j["H"] = std::move(h);
  return j;
}

inline Json to_json(const SumSquare& sq, const StarFunctor& f) {
  Json j;
  j["kind"] = "sum-square";
  j["n"] = sq.objects.size();
  Json names = Json::array();
  for (auto x : sq.objects) names.push_back(f.source().object(x).name);
  j["G"] = {{"objects", names}};
  Json v = Json::array();
  for (const auto& m : sq.v_b) v.push_back(to_json(m));
  j["H"] = {{"s", f.target().object(sq.s_b).name}, {"v", v}};
  return j;
}

namespace detail {

inline std::vector<std::size_t> square_objects(const Json& j, const ConcreteCategory& a, std::size_t n) {
  const auto& objs = array_of(field(field(j, "G", ""), "objects", "/G"), "/G/objects");
  if (objs.size() != n) throw schema_error("/G/objects", "expected " + std::to_string(n) + " objects");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::string name = string_of(objs[k], "/G/objects/" + std::to_string(k));
    auto x = a.find(name);
    if (!x) throw schema_error("/G/objects/" + std::to_string(k), "unknown object \"" + name + "\"");
    out.push_back(*x);
  }
  return out;
}

inline std::size_t target_object(const Json& j, const std::string& key, const ConcreteCategory& b) {
  std::string name = string_of(field(field(j, "H", ""), key, "/H"), "/H/" + key);
  auto y = b.find(name);
  if (!y) throw schema_error("/H/" + key, "unknown object \"" + name + "\"");
  return *y;
}

}  // namespace detail

inline RangeSquare range_square_from_json(const Json& j, const StarFunctor& f) {
  detail::check_kind(j, "square");
  const auto& A = f.source();
  const auto& B = f.target();
  std::size_t n = detail::nat_of(detail::field(j, "n", ""), "/n");
  RangeSquare sq;
  sq.g.objects = detail::square_objects(j, A, n);
  const auto& p = detail::array_of(detail::field(j["G"], "p", "/G"), "/G/p");
  if (p.size() != n) throw schema_error("/G/p", "expected an n x n array of matrices");
  sq.g.p.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    std::string at = "/G/p/" + std::to_string(i);
    if (!p[i].is_array() || p[i].size() != n) throw schema_error(at, "expected n matrices");
    for (std::size_t k = 0; k < n; ++k)
      sq.g.p[i].push_back(matrix_from_json(p[i][k], A.dim(sq.g.objects[i]), A.dim(sq.g.objects[k]),
                                           at + "/" + std::to_string(k)));
  }
  sq.r_b = detail::target_object(j, "r", B);
  const auto& s = detail::array_of(detail::field(j["H"], "s", "/H"), "/H/s");
  if (s.size() != n) throw schema_error("/H/s", "expected n matrices");
  for (std::size_t i = 0; i < n; ++i)
    sq.s_b.push_back(matrix_from_json(s[i], B.dim(sq.r_b), B.dim(f.object(sq.g.objects[i])), "/H/s/" + std::to_string(i)));
  return sq;
}

inline SumSquare sum_square_from_json(const Json& j, const StarFunctor& f) {
  detail::check_kind(j, "sum-square");
  const auto& B = f.target();
  std::size_t n = detail::nat_of(detail::field(j, "n", ""), "/n");
  SumSquare sq;
  sq.objects = detail::square_objects(j, f.source(), n);
  sq.s_b = detail::target_object(j, "s", B);
  const auto& v = detail::array_of(detail::field(j["H"], "v", "/H"), "/H/v");
  if (v.size() != n) throw schema_error("/H/v", "expected n matrices");
  for (std::size_t i = 0; i < n; ++i)
    sq.v_b.push_back(matrix_from_json(v[i], B.dim(sq.s_b), B.dim(f.object(sq.objects[i])), "/H/v/" + std::to_string(i)));
  return sq;
}

/** {"kind":"projection-matrix","objects":[x_1..x_n],"p":[[p_ij]]}: an assignment P(n) -> A. */
inline Json to_json(const ProjectionMatrixData& g, const ConcreteCategory& a) {
  Json j;
  j["kind"] = "projection-matrix";
  Json names = Json::array();
  for (auto x : g.objects) names.push_back(a.object(x).name);
  j["objects"] = std::move(names);
  Json p = Json::array();
  for (const auto& row : g.p) {
    Json r = Json::array();
    for (const auto& m : row) r.push_back(to_json(m));
    p.push_back(std::move(r));
  }
  j["p"] = std::move(p);
  return j;
}

inline ProjectionMatrixData projection_matrix_from_json(const Json& j, const ConcreteCategory& a) {
  detail::check_kind(j, "projection-matrix");
  ProjectionMatrixData g;
  const auto& objs = detail::array_of(detail::field(j, "objects", ""), "/objects");
  for (std::size_t k = 0; k < objs.size(); ++k) {
    std::string name = detail::string_of(objs[k], "/objects/" + std::to_string(k));
    auto x = a.find(name);
    if (!x) throw schema_error("/objects/" + std::to_string(k), "unknown object \"" + name + "\"");
    g.objects.push_back(*x);
  }
  const std::size_t n = g.objects.size();
  const auto& p = detail::array_of(detail::field(j, "p", ""), "/p");
  if (p.size() != n) throw schema_error("/p", "expected an n x n array of matrices");
  g.p.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    std::string at = "/p/" + std::to_string(i);
    if (!p[i].is_array() || p[i].size() != n) throw schema_error(at, "expected n matrices");
    for (std::size_t k = 0; k < n; ++k)
      g.p[i].push_back(matrix_from_json(p[i][k], a.dim(g.objects[i]), a.dim(g.objects[k]), at + "/" + std::to_string(k)));
  }
  return g;
}

}  // namespace morita::io
