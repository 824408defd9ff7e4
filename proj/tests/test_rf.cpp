#include "oracles.hpp"
#include "rfkit/rf.hpp"

#include <gtest/gtest.h>

using namespace rfkit;

namespace {

// floor(b) + ceil(sqrt(2b) + {b}) - 1 at 50 digits.
std::int64_t n_b_float(const Rat& b) {
  oracle::Float fb = oracle::eval(b);
  oracle::Float fl = boost::multiprecision::floor(fb);
  oracle::Float t = boost::multiprecision::sqrt(2 * fb) + (fb - fl);
  return static_cast<std::int64_t>(fl + boost::multiprecision::ceil(t) - 1);
}

}  // namespace

TEST(NB, Examples) {
  EXPECT_EQ(n_b(Rat(2)), 3);
  EXPECT_EQ(n_b(Rat(5, 2)), 4);
  EXPECT_EQ(n_b(Rat(3)), 5);
  EXPECT_EQ(n_b(Rat(7, 2)), 6);
  EXPECT_EQ(n_b(Rat(4)), 6);
  // sqrt(2b) + {b} an integer: b = 8 gives sqrt(16) = 4
  EXPECT_EQ(n_b(Rat(8)), 8 + 4 - 1);
  EXPECT_EQ(n_b(Rat(9, 2)), 4 + 4 - 1);
  EXPECT_THROW(n_b(Rat(1, 2)), DomainError);
}

TEST(NB, MatchesFloatingOracle) {
  oracle::Random rng(61);
  for (int i = 0; i < 300; ++i) {
    Rat b = rng.rational(1, 40, 16);
    if (b < Rat(1)) continue;
    EXPECT_EQ(n_b(b), n_b_float(b)) << b;
  }
}

TEST(Families, ShapesAndImages) {
  for (std::int64_t n = 1; n <= 12; ++n) {
    YClass e = e_class(n);
    EXPECT_EQ(e.m.size(), static_cast<std::size_t>(2 * n + 1));
    IntVector expect{n, {n - 1, 0}};
    expect.tail.insert(expect.tail.end(), static_cast<std::size_t>(2 * n), 1);
    EXPECT_EQ(psi(e), expect);
    EXPECT_TRUE(satisfies_diophantine(e));
    EXPECT_TRUE(satisfies_diophantine(r_class(n)));
  }
  EXPECT_EQ(r_class(5).str(), "66,55;31,30x7");
  EXPECT_THROW(e_class(0), DomainError);
}

TEST(RfValue, Examples) {
  EXPECT_EQ(rf_value(Rat(3)).value, Rat(363, 32));
  EXPECT_EQ(rf_value(Rat(3)).n, 5);
  EXPECT_EQ(rf_value(Rat(5, 2)).value, Rat(1620, 169));
  EXPECT_FALSE(rf_value(Rat(3)).flag);
  RfValue two = rf_value(Rat(2));
  EXPECT_EQ(two.value, Rat(196, 25));
  ASSERT_TRUE(two.flag);
  EXPECT_THROW(rf_value(Rat(3, 2)), DomainError);
}

TEST(RfValue, LiesInItsIntervalAndMeetsTheVolume) {
  oracle::Random rng(62);
  int tested = 0;
  while (tested < 50) {
    Rat b = rng.rational(2, 12, 8);
    if (b <= Rat(2)) continue;
    ++tested;
    RfValue v = rf_value(b);
    EXPECT_GE(v.value, Rat(2 * v.n + 1)) << b;
    Rat two_b = Rat(2) * b;
    EXPECT_GE(Quad::make(two_b + Rat(1) - v.value, Rat(2), two_b).sign(), 0) << b;
    EXPECT_LE(oracle::eval(v.value), oracle::eval(Quad::make(two_b + Rat(1), Rat(2), two_b)));
    Rat u = mu(e_class(v.n), b, v.value);
    EXPECT_EQ(square(u), v.value / two_b) << b;
  }
}

TEST(RfBeta, Examples) {
  RfBeta r = rf_beta(5);
  EXPECT_EQ(r.beta, Rat(6, 5));
  EXPECT_EQ(r.mu, Rat(241, 132));
  EXPECT_EQ(r.rf, Rat(58081, 7260));
  EXPECT_EQ(r.literal_value, Rat(241, 55));
  EXPECT_EQ(r.cls, r_class(5));
  EXPECT_THROW(rf_beta(4), DomainError);
}

TEST(RfBeta, MuIsTheValueOfRnAtLargeA) {
  for (std::int64_t n = 5; n <= 30; ++n) {
    RfBeta r = rf_beta(n);
    EXPECT_EQ(mu(r.cls, r.beta, Rat(8)), r.mu) << n;
    EXPECT_EQ(mu(r.cls, r.beta, r.rf), r.mu) << n;
    EXPECT_EQ(square(r.mu), r.rf / (Rat(2) * r.beta)) << n;
  }
}

TEST(RfBeta, ApproachesEightFromAbove) {
  Rat prev_gap;
  for (std::int64_t n = 5; n <= 200; ++n) {
    RfBeta r = rf_beta(n);
    Rat gap = r.rf - Rat(8);
    EXPECT_GT(gap.sign(), 0) << n;
    if (n > 5) {
      EXPECT_LT(gap, prev_gap) << n;
      EXPECT_LT(r.rf, rf_beta(n - 1).rf) << n;
    }
    if (n >= 20) EXPECT_GT(r.rf, Rat(79, 10));
    prev_gap = gap;
  }
  EXPECT_LT(rf_beta(1000).rf - Rat(8), Rat(1, 1000));
}

TEST(UpperBound, EnclosesTheExactValue) {
  for (Rat b : {Rat(2), Rat(3), Rat(7, 2), Rat(12)}) {
    Interval u = rf_upper_bound(b);
    oracle::Float x = oracle::eval(Quad::make(Rat(2) * b + Rat(1), Rat(2), Rat(2) * b));
    EXPECT_LE(oracle::Float(u.lo), x);
    EXPECT_GE(oracle::Float(u.hi), x);
  }
}

TEST(Samples, StayInsideTheirIntervals) {
  Rat rf = rf_value(Rat(3)).value;
  Interval up = rf_upper_bound(Rat(3));
  auto right = right_samples(rf, up, 5);
  ASSERT_EQ(right.size(), 5u);
  for (const auto& a : right) {
    EXPECT_GT(a, rf);
    EXPECT_GT(Quad::make(Rat(7) - a, Rat(2), Rat(6)).sign(), 0);
  }
  for (const auto& a : left_samples(Rat(11), rf, 4)) {
    EXPECT_GT(a, Rat(11));
    EXPECT_LT(a, rf);
  }
}

TEST(VerifyRf, PassesForReferenceValues) {
  for (Rat b : {Rat(3), Rat(7, 2), Rat(4), Rat(5, 2)}) {
    RfReport r = verify_rf(b);
    ASSERT_EQ(r.checks.size(), 5u);
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << b << " " << c.name << ": " << c.witness;
    EXPECT_EQ(r.obstructing_class, e_class(n_b(b)));
  }
  EXPECT_THROW(verify_rf(Rat(2)), DomainError);
}

TEST(VerifyRf, ReportsFailuresWithoutThrowing) {
  RfReport r = verify_rf(Rat(3), 2, 2, 1);
  EXPECT_FALSE(r.all_passed());
  bool found = false;
  for (const auto& c : r.checks) {
    if (c.name == "certified-right-of-rf") {
      found = true;
      EXPECT_FALSE(c.passed);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Discontinuity, Table) {
  DiscontinuityTable t = discontinuity_demo({5, 6, 7, 10});
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.rows[0].margin, Rat(1, 17424));
  EXPECT_EQ(t.rows[1].margin, Rat(1, 33124));
  for (const auto& r : t.rows) {
    EXPECT_TRUE(r.obstructive) << r.n;
    EXPECT_GT(r.margin.sign(), 0);
    EXPECT_EQ(r.mu, r.rf.mu);
  }
  EXPECT_TRUE(t.rf1_equality);
  EXPECT_EQ(t.rf1_mu, Rat(15, 8));
}
