#include <gtest/gtest.h>

#include "morita/ktheory.hpp"
#include "morita/random.hpp"

using namespace morita;

TEST(K0, FormClasses) {
  SemisimpleForm f{{"b1", "b2"}, {"x", "y"}, {{2, 3}, {0, 1}}};
  auto g = k0(f);
  EXPECT_EQ(g.rank, 2u);
  EXPECT_EQ(g.classes, (std::vector<IntVector>{{2, 3}, {0, 1}}));
  EXPECT_EQ(g.generators, f.blocks);
}

TEST(K0, GroupCompletionIsAdditive) {
  SemisimpleForm a{{"b1", "b2"}, {"x"}, {{1, 1}}};
  HoMorphism f = identity_morphism(a);
  f.mult[0][1] = 2;
  auto gf = group_complete(f);
  EXPECT_TRUE(gc_is_zero(gc_add(gf, gc_negate(gf))));
  EXPECT_EQ(gc_compose(gf, gf).mult, (IntMatrix{{1, 4}, {0, 1}}));
  EXPECT_EQ(k0_apply(gf, {1, -1}), (IntVector{-1, -1}));
  EXPECT_THROW(k0_apply(gf, {1}), ShapeError);
}

TEST(K0, MapOfARepresentativeMatchesItsClass) {
  Rng rng(61);
  auto a = random_form(rng, 2, 2, 2), b = random_form(rng, 2, 2, 2);
  auto ra = share(realize(a)), rb = share(realize(b));
  HoMorphism f = zero_morphism(a, b);
  for (auto& r : f.mult)
    for (auto& v : r) v = static_cast<std::size_t>(uniform_int(rng, 0, 2));
  auto rep = representative(f, ra, saturation(rb));
  auto m = k0_map(rep, canonical_decomposition(a, ra), canonical_decomposition(b, rb));
  EXPECT_EQ(m, group_complete(f));
}

TEST(K0, TensorOfMatrixAlgebras) {
  SemisimpleForm m2{{"b1"}, {"x"}, {{2}}}, m3{{"c1"}, {"y"}, {{3}}};
  auto t = tensor(m2, m3);
  EXPECT_EQ(t.blocks, (std::vector<std::string>{"b1*c1"}));
  EXPECT_EQ(t.objects, (std::vector<std::string>{"x*y"}));
  EXPECT_EQ(t.mult, (std::vector<std::vector<std::size_t>>{{6}}));
  EXPECT_EQ(k0_pairing({1, 2}, {3, 4, 5}), (IntVector{3, 4, 5, 6, 8, 10}));
}

TEST(K0, TensorClassesAreOuterProducts) {
  SemisimpleForm a{{"b1", "b2"}, {"x"}, {{1, 2}}}, b{{"c1", "c2"}, {"y", "z"}, {{1, 0}, {3, 1}}};
  auto t = tensor(a, b);
  ASSERT_EQ(t.mult.size(), 2u);
  EXPECT_EQ(t.mult[1], (std::vector<std::size_t>{3, 1, 6, 2}));
}

TEST(K0Ring, PointwiseOnDiagonalAlgebras) {
  SemisimpleForm f{{"b1", "b2"}, {"x"}, {{1, 1}}};
  auto r = k0_ring(f);
  EXPECT_EQ(r.unit, (IntVector{1, 1}));
  EXPECT_EQ(r.multiply({2, -3}, {5, 7}), (IntVector{10, -21}));
  auto d3 = k0_ring(SemisimpleForm{{"b1", "b2", "b3"}, {"p", "q", "r"}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
  EXPECT_EQ(d3.multiply({1, 2, 3}, {2, 0, 1}), (IntVector{2, 0, 3}));
}

TEST(K0Ring, RejectsNonCommutativeForms) {
  EXPECT_THROW(k0_ring(SemisimpleForm{{"b1"}, {"x"}, {{2}}}), InvalidInput);
}
