// The rigid-flexible value RF(b): the index n_b, the class families E_n and
// R_n, closed forms, and sampled end-to-end verification.
#pragma once

#include "rfkit/classes.hpp"
#include "rfkit/cremona.hpp"
#include "rfkit/ech.hpp"
#include "rfkit/exact.hpp"
#include "rfkit/interval.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rfkit {

/// floor(b) + ceil(sqrt(2b) + {b}) - 1, with the ceiling decided exactly.
inline std::int64_t n_b(const Rat& b) {
  if (b < Rat{1}) throw DomainError("n_b needs b >= 1");
  Rat f = b.frac();
  Rat two_b = Rat{2} * b;
  // smallest t with t >= f and (t - f)^2 >= 2b
  BigInt t = isqrt(two_b.floor()) + f.ceil();
  while (t > 0 && Rat(t - 1) >= f && square(Rat(t - 1) - f) >= two_b) --t;
  while (Rat(t) < f || square(Rat(t) - f) < two_b) ++t;
  return (b.floor() + t - 1).convert_to<std::int64_t>();
}

/// (n, 1; 1 x (2n+1)).
inline YClass e_class(std::int64_t n) {
  if (n < 1) throw DomainError("E_n needs n >= 1");
  return {n, 1, std::vector<std::int64_t>(static_cast<std::size_t>(2 * n + 1), 1)};
}

/// ((2n+1)(n+1), (2n+1)n; n^2+n+1, (n^2+n) x 7).
inline YClass r_class(std::int64_t n) {
  if (n < 1) throw DomainError("R_n needs n >= 1");
  YClass c{(2 * n + 1) * (n + 1), (2 * n + 1) * n, {n * n + n + 1}};
  c.m.insert(c.m.end(), 7, n * n + n);
  return c;
}

struct RfValue {
  Rat value;
  std::int64_t n = 0;
  std::optional<std::string> flag;
};

/// 2b ((2n_b + 1) / (b + n_b))^2 for b >= 2. At b = 2 the formula gives
/// 196/25 while the known value is 289/36; the result is flagged.
inline RfValue rf_value(const Rat& b) {
  if (b < Rat{2}) throw DomainError("RF formula holds for b >= 2; use rf_beta for b = (n+1)/n");
  RfValue out;
  out.n = n_b(b);
  Rat ratio = Rat(2 * out.n + 1) / (b + Rat(out.n));
  out.value = Rat{2} * b * square(ratio);
  if (b == Rat{2}) {
    out.flag = "b = 2: formula value 196/25 disagrees with 289/36 from the class (6,3;3,2x7); "
               "8 1/32 and 8 1/36 are both quoted in the literature";
  }
  return out;
}

/// (sqrt(2b) + 1)^2, the upper end of the interval containing RF(b).
inline Interval rf_upper_bound(const Rat& b) {
  Interval r = sqrt(Interval::of(Rat{2} * b)) + Interval::point(1.0);
  return r * r;
}

struct RfBeta {
  std::int64_t n = 0;
  Rat beta;           // (n+1)/n
  Rat mu;             // (8n^2+8n+1) / (2(2n+1)(n+1)), the value of mu(R_n) for a >= 8
  Rat rf;             // 2 beta mu^2, where mu(R_n) meets the volume constraint
  Rat literal_value;  // 2 beta mu, the unsquared form
  YClass cls;
};

inline RfBeta rf_beta(std::int64_t n) {
  if (n < 5) throw DomainError("rf_beta needs n >= 5");
  RfBeta out;
  out.n = n;
  out.beta = Rat(n + 1, n);
  out.mu = Rat(8 * n * n + 8 * n + 1, 2 * (2 * n + 1) * (n + 1));
  out.rf = Rat{2} * out.beta * square(out.mu);
  out.literal_value = Rat{2} * out.beta * out.mu;
  out.cls = r_class(n);
  return out;
}

struct Check {
  std::string name;
  bool passed = false;
  std::string witness;
};

struct RfReport {
  Rat b;
  std::int64_t n = 0;
  Rat rf;
  YClass obstructing_class;
  Interval upper_bound;
  std::vector<Check> checks;
  std::optional<std::string> flag;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return !checks.empty();
  }
};

/// Rational sample points strictly inside (RF, (sqrt(2b)+1)^2): the upper end
/// is first rounded down to a multiple of 1/64 below its enclosure.
inline std::vector<Rat> right_samples(const Rat& rf, const Interval& upper, std::int64_t count) {
  Rat top(BigInt(static_cast<std::int64_t>(std::floor(upper.lo * 64.0))), BigInt(64));
  while (Interval::of(top).hi >= upper.lo) top -= Rat(1, 64);
  std::vector<Rat> out;
  if (top <= rf) return out;
  for (std::int64_t k = 1; k <= count; ++k) out.push_back(rf + Rat(k) * (top - rf) / Rat(count + 1));
  return out;
}

inline std::vector<Rat> left_samples(const Rat& from, const Rat& rf, std::int64_t count) {
  std::vector<Rat> out;
  for (std::int64_t k = 1; k <= count; ++k) out.push_back(from + Rat(k) * (rf - from) / Rat(count + 1));
  return out;
}

/// Runs the five checks that pin down RF(b) for b > 2 at sample points.
/// Failures are recorded in the report, not thrown.
inline RfReport verify_rf(const Rat& b, std::int64_t samples_left = 4, std::int64_t samples_right = 4,
                          std::optional<std::int64_t> max_steps = std::nullopt) {
  if (b <= Rat{2}) throw DomainError("verify_rf needs b > 2");
  if (samples_left < 0 || samples_right < 0) throw DomainError("sample counts must be nonnegative");
  RfReport rep;
  rep.b = b;
  RfValue v = rf_value(b);
  rep.n = v.n;
  rep.rf = v.value;
  rep.flag = v.flag;
  rep.obstructing_class = e_class(v.n);
  rep.upper_bound = rf_upper_bound(b);
  const std::int64_t k = 2 * v.n + 1;

  {
    Rat lambda = Rat(k) / (Rat(v.n) + b);
    Rat ce = ellipsoid_caps(Rat{1}, Rat(k), k).values.back();
    Rat cp = polydisc_caps(lambda, lambda * b, k).values.back();
    rep.checks.push_back({"ech-equality", ce == Rat(k) && cp == Rat(k),
                          "c_" + std::to_string(k) + "(E(1," + std::to_string(k) + ")) = " + ce.str() + ", c_" +
                              std::to_string(k) + "(P(" + lambda.str() + "," + (lambda * b).str() + ")) = " + cp.str()});
  }
  {
    Rat u = mu(rep.obstructing_class, b, rep.rf);
    Rat vol_sq = rep.rf / (Rat{2} * b);
    rep.checks.push_back({"mu-equals-volume-at-rf", u.sign() > 0 && square(u) == vol_sq,
                          "mu = " + u.str() + ", volume^2 = " + vol_sq.str()});
  }
  {
    bool ok = true;
    std::string bad;
    auto pts = left_samples(Rat(k), rep.rf, samples_left);
    for (const auto& a : pts) {
      if (!is_obstructive_at(rep.obstructing_class, b, a)) {
        ok = false;
        bad = a.str();
        break;
      }
    }
    rep.checks.push_back({"obstructed-left-of-rf", ok,
                          ok ? std::to_string(pts.size()) + " samples in (" + std::to_string(k) + ", RF)"
                             : "not obstructive at a = " + bad});
  }
  {
    std::vector<Rat> pts{rep.rf};
    for (auto& a : right_samples(rep.rf, rep.upper_bound, samples_right)) pts.push_back(std::move(a));
    bool ok = true;
    std::string bad;
    std::int64_t moves = 0;
    for (const auto& a : pts) {
      Certificate c = reduce_packing(b, a, max_steps);
      moves = std::max(moves, c.moves);
      if (!c.certified()) {
        ok = false;
        bad = a.str() + " (" + to_string(c.verdict) + ")";
        break;
      }
    }
    rep.checks.push_back({"certified-right-of-rf", ok,
                          ok ? std::to_string(pts.size()) + " points certified, at most " + std::to_string(moves) +
                                   " moves"
                             : "reduction failed at a = " + bad});
  }
  {
    // RF <= 2b + 1 + 2 sqrt(2b), decided exactly in Q(sqrt(2b)).
    Rat two_b = Rat{2} * b;
    Quad gap = Quad::make(two_b + Rat{1} - rep.rf, Rat{2}, two_b);
    bool exact_ok = gap.sign() >= 0;
    bool interval_ok = Interval::of(rep.rf).hi <= rep.upper_bound.lo;
    rep.checks.push_back({"rf-below-upper-bound", exact_ok && interval_ok,
                          "RF = " + rep.rf.str() + ", (sqrt(2b)+1)^2 in " + rep.upper_bound.str()});
  }
  return rep;
}

struct DiscontinuityRow {
  std::int64_t n = 0;
  Rat beta;
  YClass cls;
  Rat mu;
  Rat margin;  // mu^2 - 8 / (2 beta)
  bool obstructive = false;
  RfBeta rf;
};

struct DiscontinuityTable {
  std::vector<DiscontinuityRow> rows;
  YClass rf1_class;
  Rat rf1;
  Rat rf1_mu;
  bool rf1_equality = false;
};

/// R_n at a = 8, b = (n+1)/n for each n, plus the b = 1 value 7 1/32.
inline DiscontinuityTable discontinuity_demo(const std::vector<std::int64_t>& ns) {
  DiscontinuityTable t;
  for (auto n : ns) {
    DiscontinuityRow r;
    r.n = n;
    r.rf = rf_beta(n);
    r.beta = r.rf.beta;
    r.cls = r.rf.cls;
    r.mu = mu(r.cls, r.beta, Rat{8});
    r.margin = square(r.mu) - Rat{8} / (Rat{2} * r.beta);
    r.obstructive = is_obstructive_at(r.cls, r.beta, Rat{8});
    t.rows.push_back(std::move(r));
  }
  t.rf1_class = YClass::parse("4,4;3,2x6");
  t.rf1 = Rat(225, 32);
  t.rf1_mu = mu(t.rf1_class, Rat{1}, t.rf1);
  t.rf1_equality = t.rf1_mu.sign() > 0 && square(t.rf1_mu) == t.rf1 / Rat{2};
  return t;
}

}  // namespace rfkit
