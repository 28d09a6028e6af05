#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "morita/io.hpp"
#include "morita/random.hpp"
#include "morita/semisimple.hpp"

using namespace morita;

namespace {

// Forms agree up to a permutation of blocks.
bool same_up_to_blocks(const SemisimpleForm& a, const SemisimpleForm& b) {
  if (a.k() != b.k() || a.mult.size() != b.mult.size()) return false;
  auto columns = [](const SemisimpleForm& f) {
    std::vector<std::vector<std::size_t>> cols(f.k());
    for (std::size_t i = 0; i < f.k(); ++i)
      for (const auto& r : f.mult) cols[i].push_back(r[i]);
    std::sort(cols.begin(), cols.end());
    return cols;
  };
  return columns(a) == columns(b);
}

}  // namespace

TEST(Semisimple, RecoversGeneratedForms) {
  Rng rng(31);
  for (int t = 0; t < 12; ++t) {
    auto form = random_form(rng, 3, 2, 2);
    auto g = generate_category(rng, form);
    auto d = decompose(g.category);
    EXPECT_TRUE(same_up_to_blocks(d.form, form)) << "seed step " << t;
    for (std::size_t i = 0; i < d.k(); ++i)
      for (std::size_t x = 0; x < g.category->size(); ++x) {
        const Matrix& z = d.central[i][x];
        EXPECT_TRUE(z.is_projection());
        EXPECT_EQ(rank(z), d.form.mult[x][i] * d.copies[i]);
      }
  }
}

TEST(Semisimple, RealizeHasBlockMajorLayout) {
  SemisimpleForm f{{"b1", "b2"}, {"x", "y"}, {{2, 1}, {0, 3}}};
  auto c = realize(f);
  EXPECT_EQ(c.dim(0), 3u);
  EXPECT_EQ(c.dim(1), 3u);
  EXPECT_EQ(realization_offset(f, 0, 1), 2u);
  EXPECT_EQ(c.hom(0, 1).dim(), 3u);  // only block b2 links x and y
  EXPECT_EQ(c.hom(0, 0).dim(), 5u);
  EXPECT_TRUE(validate_category(c).ok);
}

TEST(Semisimple, PhantomBlocksAreRejected) {
  SemisimpleForm f{{"b1", "b2"}, {"x"}, {{1, 0}}};
  EXPECT_THROW(f.check(), InvalidInput);
}

TEST(Semisimple, Sqrt2IsNotSplit) {
  auto a = share(io::category_from_json(io::read_file(std::string(MORITA_SAMPLES) + "/sqrt2.json")));
  try {
    decompose(a);
    FAIL() << "expected NotSplitOverBaseField";
  } catch (const NotSplitOverBaseField& e) {
    EXPECT_EQ(e.polynomial(), "t^2 - 2");
  }
}

TEST(Semisimple, CompareBlocks) {
  SemisimpleForm m2{{"b1"}, {"x"}, {{2}}};
  SemisimpleForm f2{{"b1", "b2"}, {"x"}, {{1, 1}}};
  SemisimpleForm m7{{"b1"}, {"x"}, {{7}}};
  EXPECT_TRUE(compare_blocks(m2, m7).equivalent);
  auto c = compare_blocks(m2, f2);
  EXPECT_FALSE(c.equivalent);
  EXPECT_EQ(c.reason, "block count 1 ≠ 2");
}

TEST(Semisimple, MoritaDecisionNeedsEveryBlock) {
  SemisimpleForm f{{"b1", "b2"}, {"x", "y"}, {{1, 0}, {1, 1}}};
  auto c = share(realize(f));
  auto x_only = share(full_subcategory(*c, {0}));
  auto y_only = share(full_subcategory(*c, {1}));
  auto cx = is_morita_equivalence(inclusion_functor(x_only, c, {0}));
  EXPECT_FALSE(cx.equivalent);
  EXPECT_TRUE(cx.fully_faithful);
  EXPECT_TRUE(is_morita_equivalence(inclusion_functor(y_only, c, {1})).equivalent);
}

TEST(Semisimple, MatrixUnitsGiveAnEquivalenceOntoTheRealization) {
  Rng rng(37);
  for (int t = 0; t < 4; ++t) {
    auto g = generate_category(rng, random_form(rng, 2, 2, 2));
    auto d = decompose(g.category);
    auto mu = matrix_units(d);
    auto real = share(realize(d.form));
    auto f = to_realization(d, mu, real);
    EXPECT_TRUE(validate_functor(f).ok);
    EXPECT_TRUE(is_morita_equivalence(f).equivalent);
  }
}

TEST(Semisimple, ObjectClassOfProjections) {
  SemisimpleForm f{{"b1", "b2"}, {"x"}, {{2, 1}}};
  auto c = share(realize(f));
  auto d = decompose(c);
  Matrix p(3, 3);
  p(0, 0) = 1;
  auto cls = object_class(d, ProjObject{{0}, p});
  EXPECT_EQ(std::accumulate(cls.begin(), cls.end(), std::size_t{0}), 1u);
  auto whole = object_class(d, ProjObject{{0, 0}, Matrix::identity(6)});
  auto single = object_class(d, 0);
  for (std::size_t i = 0; i < d.k(); ++i) EXPECT_EQ(whole[i], 2 * single[i]);
}
