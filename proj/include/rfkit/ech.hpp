// ECH capacities of ellipsoids and polydiscs, and the capacity-ratio lower
// bound for the embedding function c_b(a).
#pragma once

#include "rfkit/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <tuple>
#include <vector>

namespace rfkit {

enum class Shape { ellipsoid, polydisc };

inline const char* to_string(Shape s) { return s == Shape::ellipsoid ? "E" : "P"; }

struct CapacitySeq {
  Shape shape = Shape::ellipsoid;
  Rat x;
  Rat y;
  std::vector<Rat> values;  // c_0 .. c_N
};

namespace detail {

inline void require_positive(const Rat& x, const Rat& y, std::int64_t n) {
  if (x.sign() <= 0 || y.sign() <= 0) throw DomainError("capacities need positive parameters");
  if (n < 0) throw DomainError("capacity count must be nonnegative");
}

// x, y as X/L, Y/L with X, Y, L integers. Returns nullopt when
// max(X, Y) * (n + 1) would not fit comfortably in 64 bits.
struct IntegerScaling {
  std::int64_t x = 0;
  std::int64_t y = 0;
  BigInt scale;
};

inline std::optional<IntegerScaling> integer_scaling(const Rat& x, const Rat& y, std::int64_t n) {
  BigInt l = boost::multiprecision::lcm(x.den(), y.den());
  BigInt bx = x.num() * (l / x.den());
  BigInt by = y.num() * (l / y.den());
  const BigInt limit = BigInt(1) << 60;
  BigInt reach = (bx > by ? bx : by) * BigInt(n + 2);
  if (reach >= limit) return std::nullopt;
  return IntegerScaling{bx.convert_to<std::int64_t>(), by.convert_to<std::int64_t>(), l};
}

// First n+1 values of {x m + y k} (with multiplicity) by a k-way merge over
// the progressions indexed by k.
template <class T>
std::vector<T> merge_progressions(const T& x, const T& y, std::int64_t n) {
  using Entry = std::tuple<T, std::int64_t, std::int64_t>;  // value, k, m
  auto cmp = [](const Entry& p, const Entry& q) {
    return std::tie(std::get<0>(p), std::get<1>(p)) > std::tie(std::get<0>(q), std::get<1>(q));
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  T yk{};
  for (std::int64_t k = 0; k <= n; ++k) {
    heap.emplace(yk, k, 0);
    yk = yk + y;
  }
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  while (static_cast<std::int64_t>(out.size()) <= n) {
    auto [v, k, m] = heap.top();
    heap.pop();
    out.push_back(v);
    heap.emplace(v + x, k, m + 1);
  }
  return out;
}

}  // namespace detail

/// c_0..c_N of E(x, y): the sorted multiset {x m + y n : m, n >= 0}.
/// Exact k-way merge; integer arithmetic after clearing denominators when it fits.
inline CapacitySeq ellipsoid_caps(const Rat& x, const Rat& y, std::int64_t n) {
  detail::require_positive(x, y, n);
  CapacitySeq seq{Shape::ellipsoid, x, y, {}};
  if (auto s = detail::integer_scaling(x, y, n)) {
    Rat inv(BigInt(1), s->scale);
    for (auto v : detail::merge_progressions<std::int64_t>(s->x, s->y, n)) seq.values.push_back(Rat(v) * inv);
  } else {
    seq.values = detail::merge_progressions<Rat>(x, y, n);
  }
  return seq;
}

/// Same values as ellipsoid_caps via the (N+1)^2 two-index table and a full
/// sort. Kept as an independent reference.
inline CapacitySeq ellipsoid_caps_by_table(const Rat& x, const Rat& y, std::int64_t n) {
  detail::require_positive(x, y, n);
  std::vector<Rat> all;
  all.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (std::int64_t m = 0; m <= n; ++m) {
    for (std::int64_t k = 0; k <= n; ++k) all.push_back(x * Rat(m) + y * Rat(k));
  }
  std::sort(all.begin(), all.end());
  all.resize(static_cast<std::size_t>(n + 1));
  return {Shape::ellipsoid, x, y, std::move(all)};
}

/// c_k(P(x, y)) = min{x m + y n : (m+1)(n+1) >= k+1}, k = 0..N.
inline CapacitySeq polydisc_caps(const Rat& x, const Rat& y, std::int64_t n) {
  detail::require_positive(x, y, n);
  CapacitySeq seq{Shape::polydisc, x, y, {}};
  seq.values.reserve(static_cast<std::size_t>(n + 1));
  for (std::int64_t k = 0; k <= n; ++k) {
    std::optional<Rat> best;
    for (std::int64_t m = 0; m <= k; ++m) {
      std::int64_t need = (k + 1 + m) / (m + 1) - 1;  // least j with (m+1)(j+1) >= k+1
      Rat v = x * Rat(m) + y * Rat(need);
      if (!best || v < *best) best = std::move(v);
    }
    seq.values.push_back(*best);
  }
  return seq;
}

inline CapacitySeq capacities(Shape s, const Rat& x, const Rat& y, std::int64_t n) {
  return s == Shape::ellipsoid ? ellipsoid_caps(x, y, n) : polydisc_caps(x, y, n);
}

struct CbLower {
  Rat value;
  std::int64_t argmax_k = 1;
  std::int64_t kmax = 1;
};

/// Heuristic default for the number of ratios; any K gives a valid lower bound.
inline std::int64_t default_cb_kmax(const Rat& a, const Rat& b) {
  BigInt k = BigInt(20) * a.ceil() * b.ceil();
  return k.convert_to<std::int64_t>();
}

/// Which target the capacity ratios are taken against. `polydisc` uses
/// c_k(P(1, b)) and is a lower bound for c_b(a) for every b. `ellipsoid` uses
/// c_k(E(1, 2b)); the two sequences coincide for integer b but not in
/// general, and for non-integer b the ellipsoid form can exceed c_b(a)
/// (b = 7/2, a = 12 embeds at the volume sqrt(12/7), yet the ratio at
/// k = 12 is 4/3).
enum class CbForm { polydisc, ellipsoid };

inline const char* to_string(CbForm f) { return f == CbForm::polydisc ? "P" : "E"; }

/// max over 1 <= k <= K of c_k(E(1, a)) / c_k(target); the smallest
/// maximizing k is reported.
inline CbLower cb_lower(const Rat& a, const Rat& b, std::optional<std::int64_t> kmax = std::nullopt,
                        CbForm form = CbForm::polydisc) {
  if (a < Rat{1} || b < Rat{1}) throw DomainError("cb_lower needs a >= 1 and b >= 1");
  std::int64_t k_top = kmax.value_or(default_cb_kmax(a, b));
  if (k_top < 1) throw DomainError("cb_lower needs K >= 1");
  auto num = ellipsoid_caps(Rat{1}, a, k_top).values;
  auto den = form == CbForm::polydisc ? polydisc_caps(Rat{1}, b, k_top).values
                                      : ellipsoid_caps(Rat{1}, Rat{2} * b, k_top).values;
  CbLower out{num[1] / den[1], 1, k_top};
  for (std::int64_t k = 2; k <= k_top; ++k) {
    Rat r = num[static_cast<std::size_t>(k)] / den[static_cast<std::size_t>(k)];
    if (r > out.value) {
      out.value = std::move(r);
      out.argmax_k = k;
    }
  }
  return out;
}

struct EchEmbedding {
  bool embeds = true;                         // up to the checked K
  std::optional<std::int64_t> first_violation;
  std::int64_t kmax = 0;
};

/// Checks c_k(E(1, a)) <= c_k(E(target_a, target_b)) for k <= K.
inline EchEmbedding embeds_by_ech(const Rat& a, const Rat& target_a, const Rat& target_b, std::int64_t kmax) {
  auto src = ellipsoid_caps(Rat{1}, a, kmax).values;
  auto dst = ellipsoid_caps(target_a, target_b, kmax).values;
  EchEmbedding out{true, std::nullopt, kmax};
  for (std::int64_t k = 0; k <= kmax; ++k) {
    if (src[static_cast<std::size_t>(k)] > dst[static_cast<std::size_t>(k)]) {
      out.embeds = false;
      out.first_violation = k;
      break;
    }
  }
  return out;
}

}  // namespace rfkit
