#include "nullcone/linalg.hpp"
#include "nullcone/rational.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <limits>

using nullcone::Matrix;
using nullcone::Rational;

TEST(Rational, LowestTermsPositiveDenominator) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(0, -7).str(), "0");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-3"), Rational(-3));
}

TEST(Rational, RejectsMalformedLiterals) {
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("a/2"), std::invalid_argument);
}

TEST(Rational, PromotesPastSixtyFourBitsAndDemotesBack) {
  Rational big = Rational(std::numeric_limits<std::int64_t>::max()) * Rational(4);
  EXPECT_TRUE(big.is_big());
  EXPECT_EQ(big.str(), "36893488147419103228");
  Rational back = big / Rational(4);
  EXPECT_FALSE(back.is_big());
  EXPECT_EQ(back, Rational(std::numeric_limits<std::int64_t>::max()));
  Rational p = Rational(3).pow(50);
  EXPECT_EQ(p.str(), "717897987691852588770249");
  EXPECT_EQ(p / Rational(3).pow(49), Rational(3));
}

TEST(Rational, OrderingAndArithmetic) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) * Rational(2, 3), Rational(1, 3));
  EXPECT_EQ(Rational(2, 3).pow(-2), Rational(9, 4));
  EXPECT_THROW(Rational(0).reciprocal(), std::domain_error);
  EXPECT_EQ(Rational::parse("99999999999999999999999/3") > Rational(1), true);
}

TEST(Linalg, RankAndDeterminant) {
  Matrix m(3, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
  m(2, 0) = 0; m(2, 1) = 1; m(2, 2) = 1;
  EXPECT_EQ(nullcone::rank(m), 2u);
  EXPECT_EQ(nullcone::determinant(m), Rational(0));
  m(1, 2) = 7;
  // Expansion along the second row: -2*(2-3) + 4*(1-0) - 7*(1-0) = -1.
  EXPECT_EQ(nullcone::determinant(m), Rational(-1));
}

TEST(Linalg, SubspaceMembership) {
  auto s = nullcone::Subspace::coordinate(4, {2, 4});
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_TRUE(s.contains(nullcone::Vector{0, 3, 0, -1}));
  EXPECT_FALSE(s.contains(nullcone::Vector{1, 0, 0, 0}));
  nullcone::EchelonBuilder eb(4);
  EXPECT_TRUE(eb.insert({0, 1, 0, 1}));
  EXPECT_TRUE(eb.insert({0, 1, 0, -1}));
  EXPECT_FALSE(eb.insert({0, 5, 0, 2}));
  EXPECT_EQ(eb.subspace(), s);
}
