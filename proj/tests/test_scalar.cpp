#include <gtest/gtest.h>

#include "morita/random.hpp"
#include "morita/scalar.hpp"

using namespace morita;

TEST(Scalar, ParseAndPrintRoundTrip) {
  for (const char* s : {"0", "3", "-7/2", "1/2+3/4*i", "-1/3-2*i", "5*i", "-2/5*i"}) {
    auto q = Scalar::parse(s);
    EXPECT_EQ(Scalar::parse(q.to_string()), q) << s;
  }
  EXPECT_EQ(Scalar::parse("i"), Scalar::i());
  EXPECT_EQ(Scalar::parse("-i"), -Scalar::i());
  EXPECT_EQ(Scalar::parse("1+i"), Scalar(1) + Scalar::i());
}

TEST(Scalar, RejectsMalformedText) {
  for (const char* s : {"", "2/4", "1/-2", "abc", "1/0", "3*j", "1++2*i"})
    EXPECT_THROW(Scalar::parse(s), ParseError) << s;
}

TEST(Scalar, FieldIdentities) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    Scalar a = random_scalar(rng, 5), b = random_scalar(rng, 5);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_EQ((a * a.conj()).re(), a.norm());
    if (!b.is_zero()) EXPECT_EQ(a * b / b, a);
    EXPECT_EQ(a - a, Scalar(0));
  }
  EXPECT_EQ(Scalar::i() * Scalar::i(), Scalar(-1));
}

TEST(Matrix, AdjointReversesProducts) {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    Matrix a = random_matrix(rng, 3, 4), b = random_matrix(rng, 4, 2);
    EXPECT_EQ((a * b).adjoint(), b.adjoint() * a.adjoint());
    EXPECT_EQ(a.adjoint().adjoint(), a);
  }
}

TEST(Matrix, BlocksAndKronecker) {
  Matrix a{{1, 2}, {3, 4}};
  Matrix b = Matrix::identity(3);
  Matrix k = a.kron(b);
  EXPECT_EQ(k.rows(), 6u);
  EXPECT_EQ(k(3, 0), Scalar(3));
  EXPECT_EQ(k(3, 1), Scalar(0));
  std::vector<Matrix> parts{a, b};
  Matrix d = Matrix::block_diagonal(parts);
  EXPECT_EQ(d.block(2, 2, 3, 3), b);
  EXPECT_TRUE(d.block(0, 2, 2, 3).is_zero());
  EXPECT_THROW(a.block(1, 1, 2, 2), ShapeError);
  EXPECT_THROW(a * b, ShapeError);
}

TEST(Matrix, RankAndInverse) {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    Matrix m = random_matrix(rng, 4, 4, 3);
    auto inv = inverse(m);
    if (inv) {
      EXPECT_EQ(*inv * m, Matrix::identity(4));
      EXPECT_EQ(rank(m), 4u);
    } else {
      EXPECT_LT(rank(m), 4u);
    }
  }
  Matrix singular{{1, 2}, {2, 4}};
  EXPECT_FALSE(inverse(singular));
  EXPECT_EQ(rank(singular), 1u);
}

TEST(Matrix, RangeProjectionEdgeCases) {
  EXPECT_TRUE(range_projection(Matrix(3, 3)).is_zero());
  EXPECT_EQ(range_projection(Matrix::identity(3)), Matrix::identity(3));
  Matrix e{{1, 1}, {0, 0}};
  Matrix p = range_projection(e);
  EXPECT_TRUE(p.is_projection());
  EXPECT_EQ(p, (Matrix{{1, 0}, {0, 0}}));
  EXPECT_THROW(range_projection(Matrix(2, 3)), ShapeError);
}

TEST(Subspace, CoordinatesRoundTrip) {
  Rng rng(17);
  std::vector<Matrix> gens;
  for (int k = 0; k < 3; ++k) gens.push_back(random_matrix(rng, 2, 2));
  gens.push_back(gens[0] + gens[1]);
  auto s = Subspace::span(2, 2, gens);
  EXPECT_EQ(s.dim(), 3u);
  EXPECT_FALSE(s.contains(Matrix::identity(2)) && s.dim() < 3u);
  Matrix m = Scalar(2) * gens[0] - gens[2];
  auto c = s.coordinates(m);
  ASSERT_TRUE(c);
  EXPECT_EQ(s.combine(*c), m);
  auto w = span_membership(m, gens);
  ASSERT_TRUE(w);
  Matrix back(2, 2);
  for (std::size_t k = 0; k < gens.size(); ++k) back += (*w)[k] * gens[k];
  EXPECT_EQ(back, m);
}
