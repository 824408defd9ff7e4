#include "oracles.hpp"
#include "rfkit/cremona.hpp"
#include "rfkit/ech.hpp"
#include "rfkit/rf.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace rfkit;

namespace {

// c_k of E(x, y) from the lattice-point count N(t) = #{(m, n) : x m + y n <= t}.
Rat ellipsoid_cap_by_count(const Rat& x, const Rat& y, std::int64_t k) {
  std::set<Rat> values;
  for (std::int64_t m = 0; m <= k; ++m) {
    for (std::int64_t n = 0; n <= k; ++n) values.insert(x * Rat(m) + y * Rat(n));
  }
  for (const auto& t : values) {
    std::int64_t count = 0;
    for (std::int64_t n = 0; y * Rat(n) <= t; ++n) count += ((t - y * Rat(n)) / x).floor().convert_to<std::int64_t>() + 1;
    if (count >= k + 1) return t;
  }
  return Rat(-1);
}

Rat polydisc_cap_brute(const Rat& x, const Rat& y, std::int64_t k) {
  std::optional<Rat> best;
  for (std::int64_t m = 0; m <= k; ++m) {
    for (std::int64_t n = 0; n <= k; ++n) {
      if ((m + 1) * (n + 1) < k + 1) continue;
      Rat v = x * Rat(m) + y * Rat(n);
      if (!best || v < *best) best = v;
    }
  }
  return *best;
}

}  // namespace

TEST(EllipsoidCaps, Examples) {
  EXPECT_EQ(ellipsoid_caps(1, 1, 5).values, (std::vector<Rat>{0, 1, 1, 2, 2, 2}));
  EXPECT_EQ(ellipsoid_caps(1, 11, 11).values[11], Rat(11));
  EXPECT_EQ(ellipsoid_caps(1, 6, 11).values[11], Rat(8));
  EXPECT_THROW(ellipsoid_caps(0, 1, 3), DomainError);
  EXPECT_THROW(ellipsoid_caps(1, 1, -1), DomainError);
}

TEST(EllipsoidCaps, MatchesLatticeCount) {
  oracle::Random rng(41);
  for (int i = 0; i < 40; ++i) {
    Rat x = rng.rational(1, 6, 7), y = rng.rational(1, 9, 5);
    if (x.sign() <= 0) x = Rat(1, 3);
    if (y.sign() <= 0) y = Rat(2, 5);
    auto seq = ellipsoid_caps(x, y, 30).values;
    for (std::int64_t k = 0; k <= 30; k += 3) EXPECT_EQ(seq[static_cast<std::size_t>(k)], ellipsoid_cap_by_count(x, y, k));
  }
}

TEST(EllipsoidCaps, MergeMatchesTable) {
  oracle::Random rng(42);
  for (int i = 0; i < 50; ++i) {
    Rat x = rng.rational(1, 12, 13), y = rng.rational(1, 12, 13);
    if (x.sign() <= 0 || y.sign() <= 0) continue;
    auto n = rng.integer(0, 150);
    EXPECT_EQ(ellipsoid_caps(x, y, n).values, ellipsoid_caps_by_table(x, y, n).values);
  }
  // denominators too large for the 64-bit path
  Rat big(BigInt("1000000000000000000001"), BigInt("1000000000000000000000"));
  EXPECT_EQ(ellipsoid_caps(big, Rat(3, 2), 60).values, ellipsoid_caps_by_table(big, Rat(3, 2), 60).values);
}

TEST(EllipsoidCaps, ScalingSymmetryMonotonicity) {
  oracle::Random rng(43);
  for (int i = 0; i < 100; ++i) {
    Rat x = rng.rational(1, 10, 9), y = rng.rational(1, 10, 9), t = rng.rational(1, 5, 7);
    if (x.sign() <= 0 || y.sign() <= 0 || t.sign() <= 0) continue;
    auto base = ellipsoid_caps(x, y, 60).values;
    auto scaled = ellipsoid_caps(t * x, t * y, 60).values;
    auto swapped = ellipsoid_caps(y, x, 60).values;
    EXPECT_EQ(base[0], Rat(0));
    for (std::size_t k = 0; k < base.size(); ++k) {
      EXPECT_EQ(scaled[k], t * base[k]);
      EXPECT_EQ(swapped[k], base[k]);
      if (k) EXPECT_LE(base[k - 1], base[k]);
    }
  }
}

TEST(EllipsoidCaps, TriangularCountForTheBall) {
  auto seq = ellipsoid_caps(1, 1, 600).values;
  for (std::int64_t t = 0; t <= 30; ++t) {
    auto count = std::count_if(seq.begin(), seq.end(), [&](const Rat& v) { return v <= Rat(t); });
    EXPECT_EQ(count, (t + 1) * (t + 2) / 2) << t;
  }
}

TEST(PolydiscCaps, Examples) {
  EXPECT_EQ(polydisc_caps(1, 1, 2).values[2], Rat(2));
  EXPECT_EQ(polydisc_caps(1, 2, 3).values[3], Rat(3));
  EXPECT_EQ(polydisc_caps(Rat(11, 8), Rat(33, 8), 11).values[11], Rat(11));
}

TEST(PolydiscCaps, MatchBruteForce) {
  oracle::Random rng(44);
  for (int i = 0; i < 30; ++i) {
    Rat x = rng.rational(1, 5, 8), y = rng.rational(1, 5, 8);
    if (x.sign() <= 0 || y.sign() <= 0) continue;
    auto seq = polydisc_caps(x, y, 40).values;
    for (std::int64_t k = 0; k <= 40; ++k) EXPECT_EQ(seq[static_cast<std::size_t>(k)], polydisc_cap_brute(x, y, k));
    for (std::size_t k = 1; k < seq.size(); ++k) EXPECT_LE(seq[k - 1], seq[k]);
  }
}

TEST(CbLower, Examples) {
  auto at11 = cb_lower(11, 3, 50);
  EXPECT_EQ(at11.value, Rat(11, 8));
  EXPECT_EQ(at11.argmax_k, 11);
  EXPECT_GE(cb_lower(7, 3, 50).value, Rat(7, 6));
  EXPECT_EQ(cb_lower(1, 1, 1).value, Rat(1));
  EXPECT_EQ(cb_lower(5, 2).kmax, 20 * 5 * 2);
  EXPECT_THROW(cb_lower(Rat(1, 2), 1, 5), DomainError);
}

TEST(CbLower, AtLeastOneAndMonotoneInK) {
  oracle::Random rng(45);
  for (int i = 0; i < 40; ++i) {
    Rat a = rng.rational(1, 15, 6), b = rng.rational(1, 4, 4);
    if (a < Rat(1) || b < Rat(1)) continue;
    auto small = cb_lower(a, b, 30), large = cb_lower(a, b, 120);
    EXPECT_GE(small.value, Rat(1));
    EXPECT_LE(small.value, large.value);
  }
}

TEST(CbLower, FormsAgreeForIntegerB) {
  for (std::int64_t b = 1; b <= 8; ++b) {
    EXPECT_EQ(ellipsoid_caps(1, Rat(2 * b), 300).values, polydisc_caps(1, Rat(b), 300).values) << b;
    for (Rat a : {Rat(2 * n_b(b) + 1), Rat(29, 3), Rat(7)}) {
      EXPECT_EQ(cb_lower(a, b, 200, CbForm::polydisc).value, cb_lower(a, b, 200, CbForm::ellipsoid).value);
    }
  }
}

TEST(CbLower, FormsDifferForHalfIntegerB) {
  // The polydisc form sees the E_{n_b} obstruction at a = 2 n_b + 1.
  EXPECT_EQ(cb_lower(9, Rat(5, 2), 200).value, Rat(18, 13));
  EXPECT_EQ(cb_lower(9, Rat(5, 2), 200, CbForm::ellipsoid).value, Rat(27, 20));
  EXPECT_EQ(cb_lower(13, Rat(7, 2), 200).value, Rat(26, 19));
  EXPECT_EQ(cb_lower(13, Rat(7, 2), 200, CbForm::ellipsoid).value, Rat(65, 48));
  // At b = 7/2, a = 12 the packing reduction certifies c_b(a) = sqrt(12/7),
  // so only the polydisc form stays below it.
  ASSERT_TRUE(reduce_packing(Rat(7, 2), 12).certified());
  EXPECT_LE(square(cb_lower(12, Rat(7, 2)).value), Rat(12, 7));
  EXPECT_GT(square(cb_lower(12, Rat(7, 2), std::nullopt, CbForm::ellipsoid).value), Rat(12, 7));
}

TEST(EmbedsByEch, Examples) {
  EXPECT_TRUE(embeds_by_ech(1, 1, 1, 50).embeds);
  auto no = embeds_by_ech(4, 1, 1, 50);
  EXPECT_FALSE(no.embeds);
  EXPECT_EQ(no.first_violation, 2);
  Rat lambda(11, 8);
  EXPECT_TRUE(embeds_by_ech(11, lambda, Rat(2) * lambda * Rat(3), 200).embeds);
}
