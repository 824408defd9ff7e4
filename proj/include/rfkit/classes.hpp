// Classes (d, e; m) in the blow-up of S^2 x S^2: Diophantine tests, the
// change of basis to CP^2 blow-ups, the obstruction function, error vectors,
// and an exhaustive search for obstructive exceptional classes.
#pragma once

#include "rfkit/cremona.hpp"
#include "rfkit/exact.hpp"
#include "rfkit/interval.hpp"
#include "rfkit/weights.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace rfkit {

struct YClass {
  std::int64_t d = 0;
  std::int64_t e = 0;
  std::vector<std::int64_t> m;  // nonincreasing

  friend bool operator==(const YClass&, const YClass&) = default;
  friend bool operator<(const YClass& x, const YClass& y) {
    return std::tie(x.d, x.e, x.m) < std::tie(y.d, y.e, y.m);
  }

  /// "d,e;m1,m2x7,..." with runs written as value x count.
  std::string str() const {
    std::ostringstream os;
    os << d << ',' << e << ';';
    for (std::size_t i = 0; i < m.size();) {
      std::size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      if (i) os << ',';
      os << m[i];
      if (j - i > 1) os << 'x' << (j - i);
      i = j;
    }
    return os.str();
  }

  /// Inverse of str(); also accepts "*" or "^" for the repeat marker.
  static YClass parse(std::string_view text) {
    std::string t;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    }
    auto fail = [&] { return DomainError("cannot parse class \"" + std::string(text) + "\""); };
    auto semi = t.find(';');
    auto comma = t.find(',');
    if (semi == std::string::npos || comma == std::string::npos || comma > semi) throw fail();
    auto to_int = [&](const std::string& s) -> std::int64_t {
      if (s.empty()) throw fail();
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(s, &used);
      } catch (const std::exception&) {
        throw fail();
      }
      if (used != s.size()) throw fail();
      return v;
    };
    YClass c;
    c.d = to_int(t.substr(0, comma));
    c.e = to_int(t.substr(comma + 1, semi - comma - 1));
    std::string rest = t.substr(semi + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      auto next = rest.find(',', pos);
      std::string item = rest.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      auto mark = item.find_first_of("x*^");
      std::int64_t value = to_int(item.substr(0, mark));
      std::int64_t count = mark == std::string::npos ? 1 : to_int(item.substr(mark + 1));
      if (count < 1) throw fail();
      c.m.insert(c.m.end(), static_cast<std::size_t>(count), value);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return c;
  }
};

/// sum m = 2(d+e) - 1 and sum m^2 = 2de + 1.
inline bool satisfies_diophantine(const YClass& c) {
  BigInt s = 0, q = 0;
  for (auto v : c.m) {
    s += v;
    q += BigInt(v) * v;
  }
  return s == BigInt(2) * (BigInt(c.d) + c.e) - 1 && q == BigInt(2) * c.d * c.e + 1;
}

/// (d, e; m1, m2, ...) -> (d+e-m1; d-m1, e-m1, m2, ...).
inline IntVector psi(const YClass& c) {
  std::vector<std::int64_t> m = c.m.empty() ? std::vector<std::int64_t>{0} : c.m;
  IntVector v{c.d + c.e - m[0], {c.d - m[0], c.e - m[0]}};
  v.tail.insert(v.tail.end(), m.begin() + 1, m.end());
  return v;
}

inline bool is_exceptional(const YClass& c) {
  if (!satisfies_diophantine(c)) return false;
  return reduce_exceptional(psi(c)).reduces;
}

/// <m, w(a)> with the shorter vector zero-padded.
inline Rat weight_pairing(const std::vector<std::int64_t>& m, const WeightExpansion& w) {
  Rat p;
  std::size_t i = 0;
  for (const auto& blk : w.blocks) {
    std::int64_t run = 0;
    for (std::int64_t k = 0; k < blk.multiplicity && i < m.size(); ++k, ++i) run += m[i];
    p += blk.weight * Rat(run);
    if (i >= m.size()) break;
  }
  return p;
}

/// <m, w(a)> / (d + b e).
inline Rat mu(const YClass& c, const Rat& b, const Rat& a) {
  Rat denom = Rat(c.d) + b * Rat(c.e);
  if (denom.sign() <= 0) throw DomainError("obstruction function needs d + b e > 0");
  return weight_pairing(c.m, weight_expansion(a)) / denom;
}

/// sqrt(a / 2b).
inline Quad volume_constraint(const Rat& a, const Rat& b) {
  if (a.sign() <= 0 || b.sign() <= 0) throw DomainError("volume constraint needs a, b > 0");
  return Quad::sqrt_of(a / (Rat{2} * b));
}

/// mu > sqrt(a / 2b), decided by comparing mu^2 with a / 2b.
inline bool is_obstructive_at(const YClass& c, const Rat& b, const Rat& a) {
  Rat u = mu(c, b, a);
  return u.sign() > 0 && square(u) > a / (Rat{2} * b);
}

struct ErrorProfile {
  std::vector<Quad> epsilon;  // m - (d+be)/sqrt(2ab) w, discriminant 2ab
  Quad sigma;                 // entries after the leading block of ones
  Quad sigma_prime;           // same, dropping the last block
  Quad norm_sq;               // ||epsilon||^2
  Quad pairing;               // <epsilon, w(a)>
  Interval v_M;
  Interval delta;             // y(a) - 1/q
  Rat h;                      // d - b e
};

inline ErrorProfile error_profile(const YClass& c, const Rat& b, const Rat& a) {
  WeightExpansion w = weight_expansion(a);
  std::vector<Rat> flat = w.flat();
  Rat de = Rat(c.d) + b * Rat(c.e);
  if (de.sign() <= 0) throw DomainError("error profile needs d + b e > 0");
  Rat disc = Rat{2} * a * b;
  Quad scale = Quad::make(Rat{}, de / disc, disc);  // (d+be)/sqrt(2ab)

  ErrorProfile out;
  out.h = Rat(c.d) - b * Rat(c.e);
  std::size_t len = std::max(flat.size(), c.m.size());
  out.epsilon.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    Rat mi = i < c.m.size() ? Rat(c.m[i]) : Rat{};
    Rat wi = i < flat.size() ? flat[i] : Rat{};
    out.epsilon.push_back(Quad(mi) - scale * Quad(wi));
  }
  const auto l0 = static_cast<std::size_t>(w.blocks.front().multiplicity);
  const auto M = static_cast<std::size_t>(w.flat_length);
  const auto last = static_cast<std::size_t>(w.blocks.back().multiplicity);
  for (std::size_t i = l0; i < M; ++i) {
    out.sigma = out.sigma + out.epsilon[i];
    if (i < M - last) out.sigma_prime = out.sigma_prime + out.epsilon[i];
  }

  BigInt q2 = 0;
  for (auto v : c.m) q2 += BigInt(v) * v;
  Rat p = weight_pairing(c.m, w);
  out.norm_sq = Quad::make(Rat(q2) + square(de) / (Rat{2} * b), -Rat{2} * p * de / disc, disc);
  out.pairing = Quad::make(p, -de / (Rat{2} * b), disc);

  Interval sb = sqrt(Interval::of(Rat{2} * b));
  out.v_M = Interval::of(de) * sb / (Interval::of(Rat(w.denominator) * (b + Rat{1})) * sqrt(Interval::of(a)));
  out.delta = y_interval(a, b) - Interval::of(Rat(BigInt(1), w.denominator));
  return out;
}

/// Raised when y(a) - 1/q is not provably positive.
class BoundUnavailable : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Cap on sigma / v_M by the range of v_M; the largest applicable cap when
/// the enclosure straddles a boundary. Zero when v_M < 1/3 (no class exists).
inline Rat sigma_ratio_cap(const Interval& v_M) {
  Rat cap;
  const double third = 1.0 / 3.0, half = 0.5, two_thirds = 2.0 / 3.0;
  auto hits = [&](double lo, double hi) { return v_M.hi >= detail::down(lo) && v_M.lo <= detail::up(hi); };
  if (hits(third, half)) cap = std::max(cap, Rat(3, 2));
  if (hits(half, two_thirds)) cap = std::max(cap, Rat(14, 9));
  if (v_M.hi >= detail::down(two_thirds)) cap = std::max(cap, Rat(3, 2));
  return cap;
}

/// Largest e allowed by 2be + h <= sqrt(2ba)/delta * (sqrt(sigma q) - (1 - h(1 - 1/b))),
/// delta = y(a) - 1/q, evaluated with outward rounding. May be negative.
inline std::int64_t e_upper_bound(const Rat& a, const Rat& b, std::int64_t q, const Rat& h, const Rat& sigma_cap) {
  if (q < 1) throw DomainError("denominator must be positive");
  if (sigma_cap.sign() < 0) throw DomainError("sigma cap must be nonnegative");
  Interval delta = y_interval(a, b) - Interval::of(Rat(1, q));
  if (!delta.strictly_positive()) throw BoundUnavailable("y(a) - 1/q is not provably positive");
  Interval inner = sqrt(Interval::of(sigma_cap * Rat(q))) - Interval::of(Rat{1} - h * (Rat{1} - Rat{1} / b));
  Interval bound = sqrt(Interval::of(Rat{2} * b * a)) / delta * inner;
  Interval e = (bound - Interval::of(h)) / Interval::of(Rat{2} * b);
  return static_cast<std::int64_t>(std::floor(e.hi));
}

enum class LengthPolicy { exact, at_most };

struct EnumerateOptions {
  LengthPolicy length = LengthPolicy::at_most;
  unsigned threads = 1;
  std::optional<std::int64_t> e_cap;
};

namespace detail {

// Block condition: inside each run of equal weights the entries
// are all equal, or one leading entry is one larger, or one trailing entry
// one smaller; at most one run of length >= 2 is not constant.
inline bool block_shape_ok(const std::vector<std::int64_t>& m, const WeightExpansion& w) {
  std::size_t i = 0;
  int irregular = 0;
  for (const auto& blk : w.blocks) {
    auto len = static_cast<std::size_t>(blk.multiplicity);
    if (i >= m.size()) break;
    auto at = [&](std::size_t k) { return k < m.size() ? m[k] : 0; };
    bool all_equal = true;
    for (std::size_t k = i; k < i + len; ++k) all_equal &= at(k) == at(i);
    if (!all_equal) {
      bool lead = at(i) == at(i + 1) + 1;
      for (std::size_t k = i + 1; k < i + len; ++k) lead &= at(k) == at(i + 1);
      bool trail = at(i + len - 1) + 1 == at(i);
      for (std::size_t k = i; k + 1 < i + len; ++k) trail &= at(k) == at(i);
      if (!lead && !trail) return false;
      if (len >= 2 && ++irregular > 1) return false;
    }
    i += len;
  }
  return true;
}

struct PairSearch {
  std::int64_t d, e;
  Rat b, a;
  const WeightExpansion* w;
  const std::vector<Interval>* w_iv;
  LengthPolicy policy;
  std::vector<YClass>* out;

  std::int64_t M = 0;
  Interval scale;   // (d+be)/sqrt(2ab)
  double budget = 0;  // upper end of 1 - h^2/2b
  Rat budget_exact;
  std::vector<std::int64_t> m;

  // Can r entries in [lo, cap] have sum s and square sum q?
  static bool feasible(std::int64_t r, std::int64_t lo, std::int64_t cap, std::int64_t s, std::int64_t q) {
    if (r == 0) return s == 0 && q == 0;
    if (cap < lo || s < lo * r || s > cap * r) return false;
    __int128 base = s / r, extra = s % r;
    __int128 min_sq = base * base * r + extra * (2 * base + 1);
    if (q < min_sq) return false;
    if (cap == lo) return q == static_cast<__int128>(lo) * lo * r;
    __int128 over = s - lo * r, step = cap - lo;
    __int128 full = over / step, left = over % step;
    __int128 max_sq = full * cap * cap;
    __int128 rest = r - full;
    if (rest > 0) {
      max_sq += (lo + left) * (lo + left);
      max_sq += (rest - 1) * lo * lo;
    }
    return q <= max_sq;
  }

  void run() {
    M = w->flat_length;
    Rat de = Rat(d) + b * Rat(e);
    scale = Interval::of(de) / sqrt(Interval::of(Rat{2} * a * b));
    Rat h = Rat(d) - b * Rat(e);
    budget_exact = Rat{1} - square(h) / (Rat{2} * b);
    budget = Interval::of(budget_exact).hi;
    std::int64_t s = 2 * (d + e) - 1, q = 2 * d * e + 1;
    std::int64_t lo = policy == LengthPolicy::exact ? 1 : 0;
    if (!feasible(M, lo, s, s, q)) return;
    m.assign(static_cast<std::size_t>(M), 0);
    dfs(0, s, s, q, 0.0);
  }

  void dfs(std::int64_t pos, std::int64_t cap, std::int64_t s, std::int64_t q, double acc_lo) {
    if (pos == M) {
      if (s == 0 && q == 0) leaf();
      return;
    }
    const std::int64_t lo = policy == LengthPolicy::exact ? 1 : 0;
    Interval center = scale * (*w_iv)[static_cast<std::size_t>(pos)];
    double slack = std::sqrt(std::max(0.0, budget - acc_lo)) + 1.0;
    auto top = std::min<std::int64_t>(cap, static_cast<std::int64_t>(std::floor(center.hi + slack)));
    auto bottom = std::max<std::int64_t>(lo, static_cast<std::int64_t>(std::ceil(center.lo - slack)));
    for (std::int64_t v = top; v >= bottom; --v) {
      Interval diff = Interval::point(static_cast<double>(v)) - center;
      Interval sq = diff * diff;
      double next_acc = detail::down(acc_lo + std::max(0.0, sq.lo));
      if (next_acc > budget) continue;
      std::int64_t s2 = s - v, q2 = q - v * v;
      if (s2 < 0 || q2 < 0) continue;
      if (!feasible(M - pos - 1, lo, v, s2, q2)) continue;
      m[static_cast<std::size_t>(pos)] = v;
      dfs(pos + 1, v, s2, q2, next_acc);
    }
  }

  void leaf() {
    YClass c{d, e, m};
    while (!c.m.empty() && c.m.back() == 0) c.m.pop_back();
    if (!block_shape_ok(c.m, *w)) return;
    ErrorProfile ep = error_profile(c, b, a);
    if ((ep.norm_sq - Quad(budget_exact)).sign() >= 0) return;
    if (!reduce_exceptional(psi(c)).reduces) return;
    if (!is_obstructive_at(c, b, a)) return;
    out->push_back(std::move(c));
  }
};

}  // namespace detail

/// (d, e) with 0 <= d <= d_max, e >= 0, d + be > 0 and (d - be)^2 < 2b.
inline std::vector<std::pair<std::int64_t, std::int64_t>> candidate_pairs(const Rat& b, std::int64_t d_max,
                                                                         std::optional<std::int64_t> e_cap) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  Rat two_b = Rat{2} * b;
  for (std::int64_t d = 0; d <= d_max; ++d) {
    BigInt e_lo = ((Rat(d) - two_b) / b).ceil();
    BigInt e_hi = ((Rat(d) + two_b) / b).floor();
    std::int64_t from = std::max<std::int64_t>(0, e_lo.convert_to<std::int64_t>());
    std::int64_t to = e_hi.convert_to<std::int64_t>();
    if (e_cap) to = std::min(to, *e_cap);
    for (std::int64_t e = from; e <= to; ++e) {
      Rat h = Rat(d) - b * Rat(e);
      if (square(h) >= two_b) continue;
      if ((Rat(d) + b * Rat(e)).sign() <= 0) continue;
      out.emplace_back(d, e);
    }
  }
  return out;
}

/// Every exceptional class with d <= d_max obstructive at a, passing the
/// necessary conditions |h| < sqrt(2b), ||eps||^2 < 1 - h^2/2b and the block
/// shape test. Tail length is exactly l(a) (all entries positive) or at most
/// l(a). Sorted by (d, e, m); independent of the thread count.
inline std::vector<YClass> enumerate_obstructive(const Rat& b, const Rat& a, std::int64_t d_max,
                                                 const EnumerateOptions& opt = {}) {
  if (a < Rat{1} || b < Rat{1}) throw DomainError("enumeration needs a >= 1 and b >= 1");
  if (d_max < 1) throw DomainError("d_max must be at least 1");
  WeightExpansion w = weight_expansion(a);
  std::vector<Interval> w_iv;
  for (const auto& x : w.flat()) w_iv.push_back(Interval::of(x));
  auto pairs = candidate_pairs(b, d_max, opt.e_cap);

  unsigned threads = std::max(1u, opt.threads);
  std::vector<std::vector<YClass>> found(threads);
  std::atomic<std::size_t> next{0};
  auto worker = [&](unsigned t) {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      detail::PairSearch ps{pairs[i].first, pairs[i].second, b, a, &w, &w_iv, opt.length, &found[t]};
      ps.run();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  std::vector<YClass> all;
  for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace rfkit
