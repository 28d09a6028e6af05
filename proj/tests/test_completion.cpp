#include <gtest/gtest.h>

#include "morita/completion.hpp"
#include "morita/random.hpp"

using namespace morita;

TEST(Saturation, WordHomsAreMatrixBlocks) {
  auto f = share(matrix_algebra(1));
  LazySaturation sat(f);
  auto w2 = sat.word_object({0, 0});
  auto w3 = sat.word_object({0, 0, 0});
  EXPECT_EQ(sat.hom(w2, w3)->dim(), 6u);
  EXPECT_EQ(sat.hom(w2, sat.zero_object())->dim(), 0u);
  EXPECT_EQ(sat.word_dim({0, 0, 0}), 3u);
}

TEST(Saturation, IotaIsFullyFaithful) {
  Rng rng(5);
  auto g = generate_category(rng, random_form(rng, 2, 2, 2));
  LazySaturation sat(g.category);
  for (std::size_t x = 0; x < g.category->size(); ++x)
    for (std::size_t y = 0; y < g.category->size(); ++y)
      EXPECT_EQ(*sat.hom(sat.iota(x), sat.iota(y)), g.category->hom(x, y));
}

TEST(Saturation, CanonicalSumIsometries) {
  auto m2 = share(matrix_algebra(2));
  LazySaturation sat(m2);
  ProjObject half{{0}, Matrix{{1, 0}, {0, 0}}};
  auto s = sat.canonical_sum({sat.iota(0), half});
  ASSERT_EQ(s.isometries.size(), 2u);
  EXPECT_EQ(s.isometries[0].adjoint() * s.isometries[0], sat.iota(0).proj);
  EXPECT_EQ(s.isometries[1].adjoint() * s.isometries[1], half.proj);
  EXPECT_TRUE((s.isometries[0].adjoint() * s.isometries[1]).is_zero());
  EXPECT_EQ(s.isometries[0] * s.isometries[0].adjoint() + s.isometries[1] * s.isometries[1].adjoint(), s.sum.proj);
  EXPECT_TRUE(sat.is_object(s.sum));
}

TEST(Saturation, RangeRequiresAProjectionInEnd) {
  auto d2 = share(discrete_category(2));
  LazySaturation sat(d2);
  auto w = sat.word_object({0, 1});
  EXPECT_THROW(sat.canonical_range(w, Matrix{{1, 1}, {0, 0}}), InvalidInput);
  // Mixing two different objects is not an arrow of the discrete category.
  Matrix mix{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};
  EXPECT_THROW(sat.canonical_range(w, mix), InvalidInput);
  auto r = sat.canonical_range(w, Matrix{{0, 0}, {0, 1}});
  EXPECT_EQ(r.isometry * r.isometry.adjoint(), (Matrix{{0, 0}, {0, 1}}));
}

TEST(Saturation, IsObjectRejectsNonProjections) {
  auto m2 = share(matrix_algebra(2));
  LazySaturation sat(m2);
  std::string why;
  EXPECT_FALSE(sat.is_object({{0}, Matrix{{1, 1}, {0, 0}}}, &why));
  EXPECT_FALSE(why.empty());
  EXPECT_TRUE(sat.is_object({{0}, Matrix{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}}}));
}

TEST(Saturation, WordsUpTo) {
  EXPECT_EQ(words_up_to(2, 2).size(), 7u);
  EXPECT_EQ(words_up_to(1, 3).size(), 4u);
}

TEST(Extension, ExtendingIotaActsAsIdentity) {
  Rng rng(9);
  auto g = generate_category(rng, random_form(rng, 2, 2, 2));
  auto sat = saturation(g.category);
  auto ext = extend_along_iota(iota_functor(g.category, sat));
  Word w{0, 0};
  ProjObject o{w, sat->word_unit(w)};
  EXPECT_EQ(ext.object(o), o);
  for (const auto& m : sat->hom(o, o)->basis()) EXPECT_EQ(ext.arrow(w, w, m), m);
}

TEST(SatFunctor, PointwiseSumDoublesWords) {
  auto m2 = share(matrix_algebra(2));
  auto iota = iota_functor(m2);
  auto twice = pointwise_sum(iota, iota);
  EXPECT_EQ(twice.object(0).word, (Word{0, 0}));
  EXPECT_TRUE(validate_sat_functor(twice).ok);
  auto comp = compose(iota_functor(m2, twice.target_ptr()), twice);
  EXPECT_EQ(comp.object(0).word.size(), 2u);
}

TEST(AdditiveHull, ContainsWordsAsObjects) {
  auto f = share(matrix_algebra(1));
  auto h = additive_hull(f, 2);
  EXPECT_EQ(h.category->size(), 3u);
  EXPECT_EQ(h.category->hom(2, 2).dim(), 4u);
  EXPECT_TRUE(validate_functor(h.sigma).ok);
}
