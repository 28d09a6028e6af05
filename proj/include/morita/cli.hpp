#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morita/completion.hpp"
#include "morita/errors.hpp"
#include "morita/homotopy.hpp"
#include "morita/io.hpp"
#include "morita/ktheory.hpp"
#include "morita/presentations.hpp"
#include "morita/random.hpp"
#include "morita/semisimple.hpp"
#include "morita/starcat.hpp"

namespace morita::cli {

enum ExitCode : int { kYes = 0, kNo = 1, kInvalid = 2, kNotSplit = 3 };

using io::Json;

struct Options {
  bool json = false;
  std::uint64_t seed = 1;
  std::optional<std::size_t> bound;
};

/** Report of one command: a JSON document and its human rendering. */
struct Report {
  int code = kYes;
  Json json = Json::object();
  std::string text;
};

namespace detail {

inline CategoryPtr load_category(const std::string& path) { return share(io::any_category_from_json(io::read_file(path))); }

inline std::string vec_string(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

inline std::string vec_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

inline std::string matrix_string(const NatMatrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.size(); ++r) s += (r ? "," : "") + vec_string(m[r]);
  return s + "]";
}

inline std::string form_text(const SemisimpleForm& f) {
  std::ostringstream os;
  os << "blocks: " << f.k();
  if (f.k()) {
    os << " (";
    for (std::size_t i = 0; i < f.k(); ++i) os << (i ? " " : "") << f.blocks[i];
    os << ")";
  }
  os << "\n";
  for (std::size_t x = 0; x < f.objects.size(); ++x) os << "  " << f.objects[x] << " " << vec_string(f.mult[x]) << "\n";
  return os.str();
}

inline Report cmd_validate(const std::string& path) {
  Report r;
  Json doc = io::read_file(path);
  std::string kind = io::detail::check_kind(doc, "");
  r.json["kind"] = kind;
  ValidationReport v;
  if (kind == "concrete") {
    v = validate_category(io::category_from_json(doc));
  } else if (kind == "semisimple") {
    io::form_from_json(doc);
  } else if (kind == "functor") {
    auto f = io::functor_from_json(doc);
    v = validate_category(f.source());
    if (v.ok) v = validate_category(f.target());
    if (v.ok) v = validate_functor(f);
  } else if (kind == "presentation") {
    io::presentation_from_json(doc);
  } else if (kind == "homorphism") {
    io::homorphism_from_json(doc);
  } else {
    throw io::schema_error("/kind", "cannot validate documents of kind \"" + kind + "\"");
  }
  r.json["valid"] = v.ok;
  r.json["violations"] = v.violations;
  if (v.ok) {
    r.text = "valid " + kind + "\n";
  } else {
    r.code = kInvalid;
    r.text = "invalid " + kind + "\n";
    for (const auto& s : v.violations) r.text += "  " + s + "\n";
  }
  return r;
}

inline Report cmd_decompose(const std::string& path) {
  Report r;
  auto a = load_category(path);
  auto v = validate_category(*a);
  if (!v.ok) throw InvalidInput("invalid category: " + v.violations.front());
  auto d = decompose(a);
  r.json = io::to_json(d.form);
  r.text = form_text(d.form);
  return r;
}

inline Report cmd_saturate(const std::string& path, bool probe, const Options& opt) {
  Report r;
  auto a = load_category(path);
  auto v = validate_category(*a);
  if (!v.ok) throw InvalidInput("invalid category: " + v.violations.front());
  auto sat = saturation(a);
  std::size_t len = opt.bound.value_or(2);
  auto hull = additive_hull(a, len);
  r.json["base_objects"] = a->size();
  r.json["word_length"] = len;
  r.json["hull_objects"] = hull.objects.size();
  r.json["iota_fully_faithful"] = is_fully_faithful(hull.sigma);
  std::ostringstream os;
  os << "saturation of " << a->size() << " objects; additive hull to word length " << len << " has "
     << hull.objects.size() << " objects (including the empty word)\n";
  if (probe) {
    Rng rng(opt.seed);
    std::vector<ProjObject> samples;
    for (const auto& w : words_up_to(a->size(), len)) samples.push_back(sat->word_object(w));
    auto rep = probe_saturation(*sat, samples, rng);
    r.json["probe"] = {{"zero_object", rep.zero_object},
                       {"sums_checked", rep.sums_checked},
                       {"splittings_checked", rep.splittings_checked},
                       {"iota_fully_faithful", rep.iota_fully_faithful},
                       {"failures", rep.failures},
                       {"pass", rep.all_pass()}};
    os << "probe: zero object " << (rep.zero_object ? "yes" : "no") << ", " << rep.sums_checked << " sums, "
       << rep.splittings_checked << " splittings, iota fully faithful " << (rep.iota_fully_faithful ? "yes" : "no")
       << "\n"
       << (rep.all_pass() ? "all probes pass\n" : "probe failures\n");
    for (const auto& f : rep.failures) os << "  " << f << "\n";
    if (!rep.all_pass()) r.code = kNo;
  }
  r.text = os.str();
  return r;
}

inline Report cmd_morita(const std::string& pa, const std::string& pb) {
  Report r;
  auto a = load_category(pa);
  auto b = load_category(pb);
  auto da = decompose(a);
  auto db = decompose(b);
  auto cmp = compare_blocks(da.form, db.form);
  r.json["equivalent"] = cmp.equivalent;
  r.json["blocks"] = {cmp.k_a, cmp.k_b};
  if (!cmp.equivalent) {
    r.code = kNo;
    r.json["reason"] = cmp.reason;
    r.text = "not Morita equivalent: " + cmp.reason + "\n";
    return r;
  }
  // Witness: the block bijection in normal form, with its canonical representative certified.
  HoMorphism w = identity_morphism(da.form);
  w.target = db.form;
  auto ra = share(realize(da.form));
  auto sb = saturation(share(realize(db.form)));
  auto rep = representative(w, ra, sb);
  auto cert = is_morita_equivalence(rep, canonical_decomposition(db.form, sb->base_ptr()));
  if (!cert.equivalent) throw std::logic_error("morita: witness failed its certificate: " + cert.reason);
  r.json["witness"] = io::to_json(w);
  r.json["witness_certified"] = true;
  r.text = "Morita equivalent: block count " + std::to_string(cmp.k_a) + " = " + std::to_string(cmp.k_b) +
           "\nwitness: block matrix " + matrix_string(w.mult) + " (representative is fully faithful and reaches every block)\n";
  return r;
}

inline Report cmd_hom(const std::string& pa, const std::string& pb) {
  Report r;
  auto da = decompose(load_category(pa));
  auto db = decompose(load_category(pb));
  auto m = hom_monoid(da.form, db.form);
  r.json["shape"] = {m.k_target, m.k_source};
  r.json["rank"] = m.rank();
  r.json["generators"] = m.generators;
  std::ostringstream os;
  os << "Hom(A,B) = N^(" << m.k_target << "x" << m.k_source << "), free commutative monoid of rank " << m.rank() << "\n";
  for (const auto& g : m.generators) os << "  " << g << "\n";
  r.text = os.str();
  return r;
}

inline Report cmd_compose(const std::string& pf, const std::string& pg) {
  Report r;
  auto f = io::homorphism_from_json(io::read_file(pf));
  auto g = io::homorphism_from_json(io::read_file(pg));
  auto h = ho_compose(g, f);
  r.json = io::to_json(h);
  r.text = "g.f = " + matrix_string(h.mult) + "\n";
  return r;
}

inline Report cmd_picard(const std::string& pa, bool verify, const Options& opt) {
  Report r;
  auto d = decompose(load_category(pa));
  auto g = aut_group(d.form);
  r.json["group"] = g.name();
  r.json["order"] = g.order;
  r.json["generators"] = g.generators;
  std::string text = g.name() + " (order " + std::to_string(g.order) + ")";
  if (verify) {
    std::size_t bound = opt.bound.value_or(default_picard_bound(g.k));
    auto v = verify_aut_group(g, bound);
    r.json["verification"] = {{"bound", bound},
                              {"examined", v.examined},
                              {"invertible", v.invertible},
                              {"all_permutations", v.all_permutations},
                              {"matches", v.matches}};
    if (v.matches) {
      text += ", verified by enumeration";
    } else {
      text += ", enumeration disagrees (" + std::to_string(v.invertible) + " invertible matrices)";
      r.code = kNo;
    }
  }
  r.text = text + "\n";
  return r;
}

inline Report cmd_k0(const std::string& pa) {
  Report r;
  auto d = decompose(load_category(pa));
  auto g = k0(d.form);
  r.json = io::to_json(g);
  std::ostringstream os;
  os << "K0 = Z^" << g.rank << "\n";
  for (std::size_t x = 0; x < g.objects.size(); ++x) os << "  [" << g.objects[x] << "] = " << vec_string(g.classes[x]) << "\n";
  r.text = os.str();
  return r;
}

inline Report cmd_tensor(const std::string& pa, const std::string& pb) {
  Report r;
  auto t = tensor(decompose(load_category(pa)).form, decompose(load_category(pb)).form);
  r.json = io::to_json(t);
  r.text = form_text(t);
  return r;
}

inline Report cmd_k0_ring(const std::string& pa) {
  Report r;
  auto ring = k0_ring(decompose(load_category(pa)).form);
  r.json["rank"] = ring.rank;
  r.json["unit"] = ring.unit;
  r.json["structure"] = ring.structure;
  std::ostringstream os;
  os << "K0 ring on Z^" << ring.rank << ", unit " << vec_string(ring.unit) << "\n";
  for (std::size_t i = 0; i < ring.rank; ++i)
    for (std::size_t j = 0; j < ring.rank; ++j) {
      IntVector a(ring.rank, 0), b(ring.rank, 0);
      a[i] = b[j] = 1;
      os << "  e" << i + 1 << "*e" << j + 1 << " = " << vec_string(ring.multiply(a, b)) << "\n";
    }
  r.text = os.str();
  return r;
}

inline Report cmd_universal(const std::string& kind, std::size_t n) {
  Report r;
  auto p = build_universal(kind, n);
  r.json = io::to_json(p);
  r.text = r.json.dump(2) + "\n";
  return r;
}

inline Report cmd_pushout(const std::string& pa, const std::string& interval, const std::string& rn_file) {
  Report r;
  auto a = load_category(pa);
  auto v = validate_category(*a);
  if (!v.ok) throw InvalidInput("invalid category: " + v.violations.front());
  if (interval.empty() == rn_file.empty()) throw InvalidInput("pushout: give exactly one of --interval or --rn");
  std::ostringstream os;
  if (!interval.empty()) {
    auto po = pushout_interval(a, a->index(interval));
    r.json["category"] = io::to_json(*po.category);
    r.json["new_object"] = po.category->object(po.x1).name;
    r.json["inclusion_fully_faithful"] = is_fully_faithful(po.inclusion);
    os << "added " << po.category->object(po.x1).name << ", a unitary copy of " << interval << "\n";
    for (std::size_t x = 0; x < po.category->size(); ++x)
      os << "  dim hom(" << po.category->object(x).name << ", " << po.category->object(po.x1).name
         << ") = " << po.category->hom(x, po.x1).dim() << "\n";
  } else {
    auto g = io::projection_matrix_from_json(io::read_file(rn_file), *a);
    auto po = pushout_Rn(a, g);
    auto cert = is_morita_equivalence(po.inclusion);
    r.json["category"] = io::to_json(*po.category);
    r.json["range_object"] = po.category->object(po.r).name;
    r.json["inclusion_morita"] = cert.equivalent;
    os << "added range object " << po.category->object(po.r).name << " of dim End = "
       << po.category->hom(po.r, po.r).dim() << "; inclusion is "
       << (cert.equivalent ? "a Morita equivalence" : "not a Morita equivalence") << "\n";
  }
  r.text = os.str();
  return r;
}

inline Report cmd_fibrancy(const std::string& pa) {
  Report r;
  auto a = load_category(pa);
  auto rep = fibrancy_probe(a);
  std::ostringstream os;
  os << "zero object: " << (rep.zero_object ? *rep.zero_witness : std::string("absent")) << "\n";
  Json sums = Json::array(), splits = Json::array();
  for (const auto& s : rep.sums) {
    sums.push_back({{"x", s.x}, {"y", s.y}, {"witness", s.witness ? Json(*s.witness) : Json(nullptr)}});
    os << "sum " << s.x << "+" << s.y << ": " << (s.witness ? *s.witness : std::string("absent")) << "\n";
  }
  for (const auto& s : rep.splittings) {
    splits.push_back({{"x", s.x}, {"class", s.cls}, {"witness", s.witness ? Json(*s.witness) : Json(nullptr)}});
    os << "range of class " << vec_string(s.cls) << " in End(" << s.x
       << "): " << (s.witness ? *s.witness : std::string("absent")) << "\n";
  }
  r.json["zero_object"] = rep.zero_witness ? Json(*rep.zero_witness) : Json(nullptr);
  r.json["sums"] = std::move(sums);
  r.json["splittings"] = std::move(splits);
  r.json["all_pass"] = rep.all_pass();
  os << (rep.all_pass() ? "all probes pass\n" : "some probes fail\n");
  if (!rep.all_pass()) r.code = kNo;
  r.text = os.str();
  return r;
}

inline Report cmd_lift(const std::string& pf, const std::string& psq) {
  Report r;
  auto f = io::functor_from_json(io::read_file(pf));
  auto vf = validate_functor(f);
  if (!vf.ok) throw InvalidInput("invalid functor: " + vf.violations.front());
  Json sq = io::read_file(psq);
  std::string kind = io::detail::check_kind(sq, "");
  LiftResult res;
  if (kind == "square") {
    res = rlp_lift(f, io::range_square_from_json(sq, f));
  } else if (kind == "sum-square") {
    res = rlp_lift_sum(f, io::sum_square_from_json(sq, f));
  } else {
    throw io::schema_error("/kind", "expected \"square\" or \"sum-square\"");
  }
  r.json["lift"] = res.found;
  r.json["explicit_witness"] = res.explicit_witness;
  r.json["reason"] = res.reason;
  if (res.object) r.json["object"] = f.source().object(*res.object).name;
  if (res.explicit_witness) {
    Json arrows = Json::array();
    for (const auto& m : res.arrows) arrows.push_back(io::to_json(m));
    r.json["arrows"] = std::move(arrows);
  }
  r.text = res.found ? "lift found at " + f.source().object(*res.object).name + ": " + res.reason + "\n"
                     : "no lift: " + res.reason + "\n";
  if (!res.found) r.code = kNo;
  return r;
}

}  // namespace detail

/** Runs one command line; args excludes the program name. */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Morita theory of finite-dimensional *-categories over Q(i)", "morita"};
  app.require_subcommand(1);
  Options opt;
  std::size_t bound = 0;
  app.add_flag("--json", opt.json, "emit JSON");
  app.add_option("--seed", opt.seed, "seed for randomized probes");
  auto* bound_opt = app.add_option("--bound", bound, "truncation or enumeration bound");

  std::string a, b, interval, rn, kind;
  std::size_t n = 0;
  bool probe = false, verify = false;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* validate = sub("validate", "check a document");
  validate->add_option("file", a)->required();
  auto* decompose_c = sub("decompose", "semisimple normal form");
  decompose_c->add_option("file", a)->required();
  auto* saturate = sub("saturate", "saturation summary");
  saturate->add_option("file", a)->required();
  saturate->add_flag("--probe", probe, "run exact saturation probes");
  auto* morita_c = sub("morita", "decide Morita equivalence");
  morita_c->add_option("A", a)->required();
  morita_c->add_option("B", b)->required();
  auto* hom = sub("hom", "shape of Hom(A,B) in the homotopy category");
  hom->add_option("A", a)->required();
  hom->add_option("B", b)->required();
  auto* compose_c = sub("compose", "compose HoMorphisms g.f");
  compose_c->add_option("f", a)->required();
  compose_c->add_option("g", b)->required();
  auto* picard = sub("picard", "Picard group");
  picard->add_option("A", a)->required();
  picard->add_flag("--verify", verify, "re-derive by enumeration");
  auto* k0_c = sub("k0", "Grothendieck group");
  k0_c->add_option("A", a)->required();
  auto* tensor_c = sub("tensor", "tensor product of forms");
  tensor_c->add_option("A", a)->required();
  tensor_c->add_option("B", b)->required();
  auto* ring = sub("k0-ring", "ring structure on K0 of F^X");
  ring->add_option("A", a)->required();
  auto* universal = sub("universal", "universal presentation");
  universal->add_option("--kind", kind, "F, S, P, R, SP, SR, I or 0")->required();
  universal->add_option("--n", n, "size");
  auto* pushout = sub("pushout", "pushout along the interval or R_n");
  pushout->add_option("A", a)->required();
  pushout->add_option("--interval", interval, "object x0");
  pushout->add_option("--rn", rn, "projection-matrix file");
  auto* fib = sub("fibrancy-probe", "fibrancy probes of a finite category");
  fib->add_option("file", a)->required();
  auto* lift = sub("lift-check", "lifting against R_n or S_n");
  lift->add_option("F", a)->required();
  lift->add_option("square", b)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kYes;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  if (bound_opt->count()) opt.bound = bound;

  try {
    Report r;
    if (*validate) r = detail::cmd_validate(a);
    else if (*decompose_c) r = detail::cmd_decompose(a);
    else if (*saturate) r = detail::cmd_saturate(a, probe, opt);
    else if (*morita_c) r = detail::cmd_morita(a, b);
    else if (*hom) r = detail::cmd_hom(a, b);
    else if (*compose_c) r = detail::cmd_compose(a, b);
    else if (*picard) r = detail::cmd_picard(a, verify, opt);
    else if (*k0_c) r = detail::cmd_k0(a);
    else if (*tensor_c) r = detail::cmd_tensor(a, b);
    else if (*ring) r = detail::cmd_k0_ring(a);
    else if (*universal) r = detail::cmd_universal(kind, n);
    else if (*pushout) r = detail::cmd_pushout(a, interval, rn);
    else if (*fib) r = detail::cmd_fibrancy(a);
    else if (*lift) r = detail::cmd_lift(a, b);
    if (opt.json) {
      r.json["exit_code"] = r.code;
      out << r.json.dump(2) << "\n";
    } else {
      out << r.text;
    }
    return r.code;
  } catch (const NotSplitOverBaseField& e) {
    err << e.what() << "\n";
    if (opt.json) out << Json{{"error", "NotSplitOverBaseField"}, {"polynomial", e.polynomial()}, {"exit_code", 3}}.dump(2) << "\n";
    return kNotSplit;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    if (opt.json) out << Json{{"error", e.what()}, {"exit_code", 2}}.dump(2) << "\n";
    return kInvalid;
  }
}

}  // namespace morita::cli
