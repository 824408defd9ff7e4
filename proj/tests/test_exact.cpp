#include "oracles.hpp"
#include "rfkit/exact.hpp"
#include "rfkit/interval.hpp"

#include <gtest/gtest.h>

using namespace rfkit;

TEST(Rat, LowestTermsWithPositiveDenominator) {
  Rat r(BigInt(6), BigInt(-4));
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rat(4).str(), "4");
  EXPECT_THROW(Rat(BigInt(1), BigInt(0)), DomainError);
  EXPECT_THROW(Rat(1) / Rat(0), DomainError);
}

TEST(Rat, Parse) {
  EXPECT_EQ(Rat::parse("7/2"), Rat(7, 2));
  EXPECT_EQ(Rat::parse(" -1.25 "), Rat(-5, 4));
  EXPECT_EQ(Rat::parse("363/32"), Rat(363, 32));
  EXPECT_EQ(Rat::parse("12"), Rat(12));
  EXPECT_THROW(Rat::parse("1/0"), DomainError);
  EXPECT_THROW(Rat::parse("abc"), DomainError);
  EXPECT_THROW(Rat::parse(""), DomainError);
}

TEST(Rat, FloorCeilFrac) {
  EXPECT_EQ(Rat(-7, 2).floor(), -4);
  EXPECT_EQ(Rat(-7, 2).ceil(), -3);
  EXPECT_EQ(Rat(7, 2).frac(), Rat(1, 2));
  EXPECT_EQ(exact_sqrt(Rat(121, 64)), Rat(11, 8));
  EXPECT_FALSE(exact_sqrt(Rat(2)).has_value());
}

TEST(Quad, MakeCollapsesPerfectSquares) {
  Quad two = Quad::make(0, 1, 4);
  EXPECT_TRUE(two.is_rational());
  EXPECT_EQ(two, Quad(2));
  EXPECT_EQ(two.discriminant(), Rat(0));
  EXPECT_EQ(Quad::make(1, -1, Rat(1, 2)).sign(), 1);
  // 9 > 8
  EXPECT_EQ(Quad::make(3, -2, 2).sign(), 1);
  EXPECT_THROW(Quad::make(0, 1, -1), InvalidDiscriminant);
}

TEST(Quad, Sign) {
  EXPECT_EQ(quad_sign(Quad::make(0, 0, 2)), 0);
  EXPECT_EQ(quad_sign(Quad::make(-1, 1, Rat(1, 2))), -1);
  EXPECT_EQ(quad_sign(Quad::make(0, 3, 5)), 1);
  EXPECT_EQ(quad_sign(Quad::make(-3, 2, 2)), -1);
}

TEST(Quad, Compare) {
  EXPECT_EQ(quad_cmp(Quad(Rat(3, 2)), Quad::sqrt_of(2)), 1);
  EXPECT_EQ(quad_cmp(Quad::sqrt_of(2), Quad::sqrt_of(2)), 0);
  EXPECT_EQ(quad_cmp(Quad::make(1, 1, Rat(121, 64)), Quad(Rat(19, 8))), 0);
  EXPECT_THROW(quad_cmp(Quad::sqrt_of(2), Quad::sqrt_of(3)), IncompatibleField);
  // sqrt(8) = 2 sqrt(2) lives in the same field
  EXPECT_EQ(quad_cmp(Quad::sqrt_of(8), Quad::make(0, 2, 2)), 0);
}

TEST(Quad, CompareAgreesWithHighPrecision) {
  oracle::Random rng(11);
  int decided = 0;
  for (int i = 0; i < 1000; ++i) {
    Rat disc = rng.rational(1, 40, 12);
    Quad x = Quad::make(rng.rational(-20, 20, 16), rng.rational(-10, 10, 16), disc);
    Quad y = Quad::make(rng.rational(-20, 20, 16), rng.rational(-10, 10, 16), disc);
    auto gap = oracle::eval(x) - oracle::eval(y);
    if (abs(gap) <= 1e-9) continue;
    ++decided;
    EXPECT_EQ(quad_cmp(x, y), gap > 0 ? 1 : -1) << x << " vs " << y;
  }
  EXPECT_GT(decided, 900);
}

TEST(Quad, RationalRoundTripAndRingLaws) {
  oracle::Random rng(12);
  for (int i = 0; i < 300; ++i) {
    Rat q = rng.rational(-50, 50, 30);
    Quad z = Quad::make(q, 0, rng.rational(0, 9, 5));
    EXPECT_TRUE(z.is_rational());
    EXPECT_EQ(z.rat_part(), q);

    Rat disc = rng.rational(1, 30, 7);
    Quad x = Quad::make(rng.rational(-9, 9, 9), rng.rational(-9, 9, 9), disc);
    Quad y = Quad::make(rng.rational(-9, 9, 9), rng.rational(-9, 9, 9), disc);
    EXPECT_EQ((x + y) - y, x);
    EXPECT_GE((x * x).sign(), 0);
    if (y.sign() != 0) EXPECT_EQ((x / y) * y, x);
  }
}

TEST(Interval, EnclosesExactRationals) {
  oracle::Random rng(13);
  for (int i = 0; i < 200; ++i) {
    Rat r = rng.rational(-1000, 1000, 997);
    Interval iv = Interval::of(r);
    EXPECT_LE(Rat::from_double(iv.lo), r);
    EXPECT_GE(Rat::from_double(iv.hi), r);
  }
}

TEST(Interval, QuadEnclosure) {
  oracle::Random rng(14);
  for (int i = 0; i < 200; ++i) {
    Quad q = Quad::make(rng.rational(-9, 9, 9), rng.rational(-9, 9, 9), rng.rational(1, 30, 7));
    Interval iv = to_interval(q);
    auto v = oracle::eval(q);
    EXPECT_LE(oracle::Float(iv.lo), v);
    EXPECT_GE(oracle::Float(iv.hi), v);
  }
  EXPECT_THROW(Interval::of(1) / (Interval{-1, 1}), DomainError);
}
