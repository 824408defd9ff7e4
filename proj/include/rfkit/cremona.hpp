// Cremona transformations on vectors (d; m_1, ..., m_n), the exceptional
// class reduction test, and the packing reduction that certifies embeddings.
#pragma once

#include "rfkit/exact.hpp"
#include "rfkit/weights.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rfkit {

/// (head; tail) in the blow-up basis of CP^2.
template <class T>
struct XVector {
  T head{};
  std::vector<T> tail;

  friend bool operator==(const XVector& x, const XVector& y) {
    return x.head == y.head && x.tail == y.tail;
  }
};

using IntVector = XVector<std::int64_t>;
using QuadVector = XVector<Quad>;

/// d - m1 - m2 - m3, zero-padding short tails. Meaningful on ordered vectors.
template <class T>
T defect(const XVector<T>& v) {
  T d = v.head;
  for (std::size_t i = 0; i < 3 && i < v.tail.size(); ++i) d = d - v.tail[i];
  return d;
}

/// Adds the defect to d, m1, m2, m3. Acts on the first three tail entries as
/// stored; callers order first when the move should be the reducing one.
template <class T>
XVector<T> cremona_move(XVector<T> v) {
  if (v.tail.size() < 3) v.tail.resize(3, T{});
  T delta = defect(v);
  v.head = v.head + delta;
  for (std::size_t i = 0; i < 3; ++i) v.tail[i] = v.tail[i] + delta;
  return v;
}

/// Tail sorted nonincreasing (stable); head untouched.
template <class T>
XVector<T> order(XVector<T> v) {
  std::stable_sort(v.tail.begin(), v.tail.end(), [](const T& x, const T& y) { return x > y; });
  return v;
}

template <class T>
bool is_ordered(const XVector<T>& v) {
  return std::is_sorted(v.tail.begin(), v.tail.end(), [](const T& x, const T& y) { return x > y; });
}

struct ChernSelfInt {
  std::int64_t chern = 0;              // 3d - sum m_i
  std::int64_t self_intersection = 0;  // d^2 - sum m_i^2

  friend bool operator==(const ChernSelfInt&, const ChernSelfInt&) = default;
};

namespace detail {
inline std::int64_t checked(const BigInt& x) {
  if (x > BigInt(std::numeric_limits<std::int64_t>::max()) || x < BigInt(std::numeric_limits<std::int64_t>::min())) {
    throw std::overflow_error("integer invariant exceeds 64 bits");
  }
  return x.convert_to<std::int64_t>();
}
}  // namespace detail

inline ChernSelfInt chern_selfint(const IntVector& v) {
  BigInt d(v.head);
  BigInt c = 3 * d;
  BigInt s = d * d;
  for (auto m : v.tail) {
    c -= m;
    s -= BigInt(m) * m;
  }
  return {detail::checked(c), detail::checked(s)};
}

/// Rational-valued overload; every entry must be an integer.
inline ChernSelfInt chern_selfint(const XVector<Rat>& v) {
  auto to_int = [](const Rat& r) {
    if (!r.is_integer()) throw DomainError("chern_selfint needs integer entries, got " + r.str());
    return detail::checked(r.num());
  };
  IntVector iv{to_int(v.head), {}};
  for (const auto& m : v.tail) iv.tail.push_back(to_int(m));
  return chern_selfint(iv);
}

/// (0; -1, 0, ..., 0) up to the position of the -1 and trailing zeros.
inline bool is_base_exceptional(const IntVector& v) {
  if (v.head != 0) return false;
  int minus_ones = 0;
  for (auto m : v.tail) {
    if (m == -1) {
      ++minus_ones;
    } else if (m != 0) {
      return false;
    }
  }
  return minus_ones == 1;
}

struct ExceptionalReduction {
  bool reduces = false;
  std::int64_t moves = 0;
  IntVector terminal;
  std::string diagnostic;
};

/// Greedy reduction: order, then Cremona while the defect is negative (each
/// such move strictly lowers d). Succeeds iff it lands on (0; -1, 0, ...).
inline ExceptionalReduction reduce_exceptional(IntVector v) {
  ExceptionalReduction out;
  if (chern_selfint(v) != ChernSelfInt{1, -1}) {
    out.terminal = std::move(v);
    out.diagnostic = "Diophantine invariants differ from (1, -1)";
    return out;
  }
  const auto cap = static_cast<std::int64_t>(10 * v.tail.size() + 100);
  while (true) {
    v = order(std::move(v));
    if (is_base_exceptional(v)) {
      out.reduces = true;
      break;
    }
    if (v.head <= 0) {
      out.diagnostic = "head reached " + std::to_string(v.head) + " without the base class";
      break;
    }
    if (defect(v) >= 0) {
      out.diagnostic = "nonnegative defect at head " + std::to_string(v.head);
      break;
    }
    if (out.moves >= cap) {
      out.diagnostic = "move cap " + std::to_string(cap) + " reached";
      break;
    }
    v = cremona_move(std::move(v));
    ++out.moves;
  }
  out.terminal = std::move(v);
  return out;
}

/// Every length of a Cremona path from `v` to the base class in which each
/// move (on any three tail entries) strictly lowers a nonnegative head.
/// Unlike reduce_exceptional's greedy count this does not depend on the
/// choice of path. Exhaustive; fine for classes with d in the hundreds.
inline std::set<std::int64_t> reduction_path_lengths(const IntVector& start) {
  using Key = std::vector<std::int64_t>;
  std::map<Key, std::set<std::int64_t>> memo;
  auto key_of = [](const IntVector& v) {
    Key k{v.head};
    k.insert(k.end(), v.tail.begin(), v.tail.end());
    std::sort(k.begin() + 1, k.end(), std::greater<>());
    return k;
  };
  std::function<const std::set<std::int64_t>&(const Key&)> lengths = [&](const Key& k) -> const std::set<std::int64_t>& {
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    std::set<std::int64_t> out;
    IntVector v{k[0], Key(k.begin() + 1, k.end())};
    if (is_base_exceptional(v)) {
      out.insert(0);
      return memo.emplace(k, std::move(out)).first->second;
    }
    const std::size_t n = v.tail.size();
    std::set<std::array<std::int64_t, 3>> tried;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t l = j + 1; l < n; ++l) {
          if (!tried.insert({v.tail[i], v.tail[j], v.tail[l]}).second) continue;
          std::int64_t delta = v.head - v.tail[i] - v.tail[j] - v.tail[l];
          if (delta >= 0 || v.head + delta < 0) continue;
          IntVector w = v;
          w.head += delta;
          w.tail[i] += delta;
          w.tail[j] += delta;
          w.tail[l] += delta;
          for (auto len : lengths(key_of(w))) out.insert(len + 1);
        }
      }
    }
    return memo.emplace(k, std::move(out)).first->second;
  };
  IntVector padded = start;
  if (padded.tail.size() < 3) padded.tail.resize(3, 0);
  return lengths(key_of(padded));
}

enum class Action { order, cremona };

enum class Verdict { certified, inconclusive_negative_entry, inconclusive_iteration_limit };

inline const char* to_string(Action a) { return a == Action::order ? "order" : "cremona"; }

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified:
      return "Certified";
    case Verdict::inconclusive_negative_entry:
      return "Inconclusive-negative-entry";
    case Verdict::inconclusive_iteration_limit:
      return "Inconclusive-iteration-limit";
  }
  return "?";
}

struct CertificateStep {
  Action action = Action::order;
  QuadVector vector;  // state after the action
  Quad defect;        // d - m1 - m2 - m3 of `vector`
};

struct Certificate {
  Rat a;
  Rat b;
  Rat discriminant;  // a / (2b); lambda = sqrt of it
  QuadVector start;
  std::vector<CertificateStep> steps;
  Verdict verdict = Verdict::inconclusive_iteration_limit;
  std::int64_t moves = 0;
  std::int64_t max_steps = 0;

  bool certified() const { return verdict == Verdict::certified; }
};

/// ((b+1) lambda; b lambda, lambda, W(1, a)) with lambda = sqrt(a / 2b).
inline QuadVector packing_start_vector(const Rat& b, const Rat& a) {
  if (a < Rat{1} || b < Rat{1}) throw DomainError("reduce_packing needs a >= 1 and b >= 1");
  Rat disc = a / (Rat{2} * b);
  QuadVector v;
  v.head = Quad::make(Rat{}, b + Rat{1}, disc);
  v.tail.push_back(Quad::make(Rat{}, b, disc));
  v.tail.push_back(Quad::make(Rat{}, Rat{1}, disc));
  for (auto& w : weight_expansion(a).flat()) v.tail.emplace_back(std::move(w));
  return v;
}

inline std::int64_t default_packing_steps(const Rat& a) { return 10 * weight_expansion(a).flat_length + 100; }

/// Runs {order; stop if an entry is negative or the defect is >= 0; move}.
/// A Certified verdict proves E(1, a) embeds in P(lambda, lambda b) at the
/// volume constraint.
inline Certificate reduce_packing(const Rat& b, const Rat& a, std::optional<std::int64_t> max_steps = std::nullopt) {
  Certificate cert;
  cert.a = a;
  cert.b = b;
  cert.discriminant = a / (Rat{2} * b);
  cert.start = packing_start_vector(b, a);
  cert.max_steps = max_steps.value_or(default_packing_steps(a));

  QuadVector v = cert.start;
  while (true) {
    v = order(std::move(v));
    Quad dft = defect(v);
    cert.steps.push_back({Action::order, v, dft});
    bool negative = v.head.sign() < 0 ||
                    std::any_of(v.tail.begin(), v.tail.end(), [](const Quad& x) { return x.sign() < 0; });
    if (negative) {
      cert.verdict = Verdict::inconclusive_negative_entry;
      break;
    }
    if (dft.sign() >= 0) {
      cert.verdict = Verdict::certified;
      break;
    }
    if (cert.moves >= cert.max_steps) {
      cert.verdict = Verdict::inconclusive_iteration_limit;
      break;
    }
    v = cremona_move(std::move(v));
    ++cert.moves;
    cert.steps.push_back({Action::cremona, v, defect(v)});
  }
  return cert;
}

/// Re-applies the recorded actions from the start vector and checks every
/// snapshot matches bit-exactly.
inline bool replay(const Certificate& cert) {
  QuadVector v = cert.start;
  for (const auto& step : cert.steps) {
    v = step.action == Action::order ? order(std::move(v)) : cremona_move(std::move(v));
    if (!v.head.same_repr(step.vector.head) || v.tail.size() != step.vector.tail.size()) return false;
    for (std::size_t i = 0; i < v.tail.size(); ++i) {
      if (!v.tail[i].same_repr(step.vector.tail[i])) return false;
    }
    if (!defect(v).same_repr(step.defect)) return false;
  }
  return true;
}

}  // namespace rfkit
