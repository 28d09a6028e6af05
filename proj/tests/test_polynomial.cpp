#include <gtest/gtest.h>

#include "morita/polynomial.hpp"

using namespace morita;

namespace {

Polynomial from_roots(const std::vector<Rational>& roots) {
  Polynomial p(std::vector<Rational>{1});
  for (const auto& r : roots) {
    std::vector<Rational> c(p.coeffs().size() + 1);
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
      c[k + 1] += p.coeffs()[k];
      c[k] -= r * p.coeffs()[k];
    }
    p = Polynomial(std::move(c));
  }
  return p;
}

}  // namespace

TEST(Polynomial, Printing) {
  EXPECT_EQ(Polynomial({-2, 0, 1}).to_string(), "t^2 - 2");
  EXPECT_EQ(Polynomial({Rational(1, 2), -1}).to_string(), "-t + 1/2");
  EXPECT_EQ(Polynomial().to_string(), "0");
}

TEST(Polynomial, RationalRootsSkipIrrationalFactors) {
  // (t - 1/2)(t + 3)(t^2 - 2)
  Polynomial p = from_roots({Rational(1, 2), -3});
  std::vector<Rational> c(p.coeffs().size() + 2);
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    c[k + 2] += p.coeffs()[k];
    c[k] -= 2 * p.coeffs()[k];
  }
  auto roots = rational_roots(Polynomial(c));
  EXPECT_EQ(roots, (std::vector<Rational>{-3, Rational(1, 2)}));
}

TEST(Polynomial, RationalRootsWithHugeCoefficients) {
  Rational big(mpz_class("123456789012345678901234567"), mpz_class("7919"));
  Rational tiny(mpz_class("-3"), mpz_class("1000000000000000000000037"));
  auto roots = rational_roots(from_roots({big, tiny, 0, 1}));
  EXPECT_EQ(roots, (std::vector<Rational>{tiny, 0, 1, big}));
}

TEST(Polynomial, RepeatedRootsReportedOnce) {
  EXPECT_EQ(rational_roots(from_roots({1, 1, Rational(2, 3)})), (std::vector<Rational>{Rational(2, 3), 1}));
}

TEST(Polynomial, RemainderAndGcd) {
  Polynomial a = from_roots({1, 2, 3}), b = from_roots({2, 5});
  EXPECT_EQ(gcd(a, b), from_roots({2}));
  EXPECT_TRUE(remainder(a, from_roots({3})).is_zero());
  EXPECT_EQ(a.divide_linear(1), from_roots({2, 3}));
  EXPECT_THROW(a.divide_linear(4), std::logic_error);
}

TEST(Polynomial, MinimalPolynomialOfHermitianElements) {
  Matrix h{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}};
  EXPECT_EQ(minimal_polynomial_hermitian(h, Matrix::identity(3)), from_roots({1, 2}));
  Matrix s{{1, 1}, {1, -1}};
  auto sp = spectrum(s, Matrix::identity(2));
  EXPECT_EQ(sp.minimal.to_string(), "t^2 - 2");
  EXPECT_TRUE(sp.roots.empty());
  EXPECT_EQ(sp.rest.degree(), 2);
}

TEST(Polynomial, KernelAndEigenProjections) {
  Matrix h{{2, 0}, {0, 0}};
  EXPECT_EQ(kernel_projection(h, Matrix::identity(2)), (Matrix{{0, 0}, {0, 1}}));
  Matrix g{{1, Scalar::i()}, {-Scalar::i(), 1}};  // eigenvalues 0 and 2
  Matrix e = eigenprojection(g, Matrix::identity(2), 2);
  EXPECT_TRUE(e.is_projection());
  EXPECT_EQ(g * e, Scalar(2) * e);
  EXPECT_EQ(rank(e), 1u);
}
