#include "oracles.hpp"
#include "rfkit/weights.hpp"

#include <gtest/gtest.h>

using namespace rfkit;

namespace {
std::vector<Rat> rats(std::initializer_list<Rat> xs) { return xs; }
}  // namespace

TEST(WeightExpansion, IntegerInput) {
  WeightExpansion w = weight_expansion(2);
  ASSERT_EQ(w.blocks.size(), 1u);
  EXPECT_EQ(w.blocks[0].weight, Rat(1));
  EXPECT_EQ(w.flat_length, 2);
  EXPECT_EQ(w.denominator, 1);
}

TEST(WeightExpansion, SevenHalves) {
  WeightExpansion w = weight_expansion(Rat(7, 2));
  EXPECT_EQ(w.flat(), rats({1, 1, 1, Rat(1, 2), Rat(1, 2)}));
  EXPECT_EQ(w.block_lengths(), (std::vector<std::int64_t>{3, 2}));
  EXPECT_EQ(w.sum_squares(), Rat(7, 2));
}

TEST(WeightExpansion, EightAndOneThirtySixth) {
  WeightExpansion w = weight_expansion(Rat(8) + Rat(1, 36));
  ASSERT_EQ(w.blocks.size(), 2u);
  EXPECT_EQ(w.blocks[0].weight, Rat(1));
  EXPECT_EQ(w.blocks[0].multiplicity, 8);
  EXPECT_EQ(w.blocks[1].weight, Rat(1, 36));
  EXPECT_EQ(w.blocks[1].multiplicity, 36);
  EXPECT_EQ(w.flat_length, 44);
}

TEST(WeightExpansion, ContinuedFractionBlocks) {
  // 25/7 = [3; 1, 1, 3]
  WeightExpansion w = weight_expansion(Rat(25, 7));
  EXPECT_EQ(w.block_lengths(), (std::vector<std::int64_t>{3, 1, 1, 3}));
  EXPECT_EQ(w.blocks[1].weight, Rat(4, 7));
  EXPECT_EQ(w.blocks[2].weight, Rat(3, 7));
  EXPECT_EQ(w.blocks[3].weight, Rat(1, 7));
}

TEST(WeightExpansion, RejectsBelowOne) {
  EXPECT_THROW(weight_expansion(Rat(1, 2)), DomainError);
  EXPECT_THROW(weight_expansion(0), DomainError);
}

TEST(WeightExpansion, IdentitiesOnRandomRationals) {
  oracle::Random rng(21);
  for (int i = 0; i < 500; ++i) {
    Rat a = rng.rational(1, 100, 50);
    if (a < Rat(1)) a = Rat(1);
    WeightExpansion w = weight_expansion(a);
    Rat q(w.denominator);
    EXPECT_EQ(w.sum_squares(), a) << a;
    EXPECT_EQ(w.sum(), a + Rat(1) - Rat(1) / q) << a;
    EXPECT_EQ(w.blocks.front().weight, Rat(1));
    EXPECT_EQ(Rat(w.blocks.front().multiplicity), Rat(a.floor()));
    std::int64_t total = 0;
    for (std::size_t k = 0; k < w.blocks.size(); ++k) {
      total += w.blocks[k].multiplicity;
      EXPECT_GT(w.blocks[k].multiplicity, 0);
      if (k) EXPECT_LT(w.blocks[k].weight, w.blocks[k - 1].weight);
    }
    EXPECT_EQ(total, w.flat_length);
    EXPECT_EQ(w.blocks.back().weight, Rat(1) / q);
  }
}

TEST(WeightPair, Examples) {
  EXPECT_EQ(weight_pair(1, 3), rats({1, 1, 1}));
  EXPECT_EQ(weight_pair(Rat(1, 2), Rat(1, 3)), rats({Rat(1, 3), Rat(1, 6), Rat(1, 6)}));
  EXPECT_EQ(weight_pair(Rat(7, 2), 1), weight_expansion(Rat(7, 2)).flat());
  EXPECT_THROW(weight_pair(0, 1), DomainError);
  EXPECT_THROW(weight_pair(1, -2), DomainError);
}

TEST(WeightPair, SumOfSquaresIsArea) {
  oracle::Random rng(22);
  for (int i = 0; i < 100; ++i) {
    Rat x = rng.rational(1, 20, 9), y = rng.rational(1, 20, 9);
    Rat s;
    for (const auto& v : weight_pair(x, y)) s += v * v;
    EXPECT_EQ(s, x * y);
  }
}

TEST(YInterval, EnclosesHighPrecisionValue) {
  // y(8) at b = 1 is exactly 1: 2 * 2 / sqrt(2) * sqrt(8) = 8.
  Interval y8 = y_interval(8, 1);
  EXPECT_TRUE(y8.contains(1.0));
  EXPECT_LE(y8.width(), 1e-12);

  oracle::Random rng(23);
  for (int i = 0; i < 200; ++i) {
    Rat a = rng.rational(1, 40, 32), b = rng.rational(1, 6, 8);
    if (a < Rat(1)) a = Rat(1);
    if (b < Rat(1)) b = Rat(1);
    Interval y = y_interval(a, b);
    using boost::multiprecision::sqrt;
    oracle::Float exact = oracle::eval(a) + 1 - 2 * (oracle::eval(b) + 1) / sqrt(2 * oracle::eval(b)) * sqrt(oracle::eval(a));
    EXPECT_LE(oracle::Float(y.lo), exact);
    EXPECT_GE(oracle::Float(y.hi), exact);
    EXPECT_LE(y.width(), 1e-12 * std::max(1.0, std::abs(y.mid())));
  }
  EXPECT_THROW(y_interval(Rat(1, 2), 1), DomainError);
}
