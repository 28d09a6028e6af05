#include <gtest/gtest.h>

#include "morita/io.hpp"
#include "morita/random.hpp"

using namespace morita;

namespace {

std::string sample(const std::string& name) { return std::string(MORITA_SAMPLES) + "/" + name; }

std::string parse_message(const std::string& text) {
  try {
    io::any_category_from_json(io::parse_text(text));
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, ScalarsRoundTrip) {
  for (const char* s : {"0", "3/4", "-i", "1/2+5/3*i", "-7-2*i"}) {
    auto v = Scalar::parse(s);
    EXPECT_EQ(io::scalar_from_json(io::to_json(v)), v) << s;
  }
  EXPECT_EQ(io::scalar_from_json(io::Json(5)), Scalar(5));
  EXPECT_THROW(io::scalar_from_json(io::Json("2/4")), ParseError);
}

TEST(Io, NonReducedFractionsNameTheRule) {
  auto msg = parse_message(R"({"kind":"concrete","objects":[{"name":"x","dim":1}],"homs":{"x->x":[[["2/4"]]]}})");
  EXPECT_NE(msg.find("not in lowest terms"), std::string::npos) << msg;
  EXPECT_NE(msg.find("/homs/x->x/0"), std::string::npos) << msg;
}

TEST(Io, CategoriesRoundTrip) {
  Rng rng(71);
  auto g = generate_category(rng, random_form(rng, 2, 2, 2));
  auto j = io::to_json(*g.category);
  EXPECT_EQ(io::to_json(io::category_from_json(j)), j);
  for (const char* name : {"F.json", "M2_with_line.json", "sqrt2.json", "zero.json"}) {
    auto doc = io::read_file(sample(name));
    EXPECT_EQ(io::to_json(io::category_from_json(doc)), io::to_json(io::category_from_json(io::to_json(io::category_from_json(doc))))) << name;
  }
}

TEST(Io, ShapeAndNameErrors) {
  EXPECT_NE(parse_message(R"({"kind":"concrete","objects":[{"name":"x","dim":2}],"homs":{"x->x":[[["1"]]]}})"), "");
  EXPECT_NE(parse_message(R"({"kind":"concrete","objects":[{"name":"a->b","dim":1}]})").find("/objects/0/name"),
            std::string::npos);
  EXPECT_NE(parse_message(R"({"kind":"concrete","objects":[{"name":"x","dim":1}],"homs":{"x->z":[]}})"), "");
  EXPECT_NE(parse_message(R"({"kind":"mystery"})").find("/kind"), std::string::npos);
  EXPECT_THROW(io::parse_text("{not json"), ParseError);
}

TEST(Io, FormsRoundTripAndRejectPhantoms) {
  auto f = io::form_from_json(io::read_file(sample("form_M2_M3.json")));
  EXPECT_EQ(f.mult, (std::vector<std::vector<std::size_t>>{{2, 3}}));
  EXPECT_EQ(io::form_from_json(io::to_json(f)).mult, f.mult);
  try {
    io::any_category_from_json(io::read_file(sample("phantom.json")));
    FAIL() << "phantom block accepted";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("no phantom blocks"), std::string::npos) << e.what();
  }
}

TEST(Io, HoMorphismsAndK0RoundTrip) {
  auto f = io::homorphism_from_json(io::read_file(sample("triple.json")));
  EXPECT_EQ(f.mult, (NatMatrix{{3}}));
  EXPECT_EQ(io::homorphism_from_json(io::to_json(f)), f);
  SemisimpleForm form{{"b1", "b2"}, {"x", "y"}, {{2, 3}, {0, 1}}};
  auto g = k0(form);
  auto back = io::k0group_from_json(io::to_json(g));
  EXPECT_EQ(back.rank, g.rank);
  EXPECT_EQ(back.generators, g.generators);
  EXPECT_EQ(back.objects, g.objects);
  EXPECT_EQ(back.classes, g.classes);
}

TEST(Io, PresentationsRoundTrip) {
  for (const char* kind : {"F", "S", "P", "R", "SP", "SR", "I", "0"}) {
    auto p = build_universal(kind, 2);
    auto j = io::to_json(p);
    EXPECT_EQ(io::to_json(io::presentation_from_json(j)), j) << kind;
  }
}

TEST(Io, FunctorsSquaresAndProjectionsRoundTrip) {
  auto f = io::functor_from_json(io::read_file(sample("id_M2_with_line.json")));
  auto fj = io::to_json(f);
  EXPECT_EQ(io::to_json(io::functor_from_json(fj)), fj);
  auto sq = io::range_square_from_json(io::read_file(sample("square_range.json")), f);
  auto sj = io::to_json(sq, f);
  EXPECT_EQ(io::to_json(io::range_square_from_json(sj, f), f), sj);
  auto m2 = matrix_algebra(2);
  auto g = io::projection_matrix_from_json(io::read_file(sample("p_diag.json")), m2);
  auto gj = io::to_json(g, m2);
  EXPECT_EQ(io::to_json(io::projection_matrix_from_json(gj, m2), m2), gj);
  EXPECT_EQ(g.p[0][0], (Matrix{{1, 0}, {0, 0}}));
}
