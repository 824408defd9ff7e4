// Weight expansions of rationals a >= 1: the continued-fraction block
// decomposition of a 1 x a rectangle into squares.
#pragma once

#include "rfkit/exact.hpp"
#include "rfkit/interval.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rfkit {

struct WeightBlock {
  Rat weight;
  std::int64_t multiplicity = 0;
};

struct WeightExpansion {
  Rat input;
  std::vector<WeightBlock> blocks;  // strictly decreasing weights
  std::int64_t flat_length = 0;     // M = l(a)
  BigInt denominator{1};            // q, with a = p/q in lowest terms

  std::vector<std::int64_t> block_lengths() const {
    std::vector<std::int64_t> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) out.push_back(b.multiplicity);
    return out;
  }

  std::vector<Rat> flat() const {
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(flat_length));
    for (const auto& b : blocks) {
      for (std::int64_t i = 0; i < b.multiplicity; ++i) out.push_back(b.weight);
    }
    return out;
  }

  Rat sum() const {
    Rat s;
    for (const auto& b : blocks) s += b.weight * Rat(b.multiplicity);
    return s;
  }

  Rat sum_squares() const {
    Rat s;
    for (const auto& b : blocks) s += square(b.weight) * Rat(b.multiplicity);
    return s;
  }
};

/// Refuses expansions whose flat form would not fit in memory.
inline constexpr std::int64_t kMaxFlatLength = std::int64_t{1} << 24;

namespace detail {
// Blocks of the rectangle long x short: floor(long/short) squares of side
// `short`, then recurse on (short, remainder).
inline WeightExpansion rectangle_blocks(Rat longer, Rat shorter) {
  WeightExpansion w;
  while (!shorter.is_zero()) {
    BigInt k = (longer / shorter).floor();
    if (k > kMaxFlatLength || w.flat_length + k.convert_to<std::int64_t>() > kMaxFlatLength) {
      throw DomainError("weight expansion longer than " + std::to_string(kMaxFlatLength));
    }
    auto mult = k.convert_to<std::int64_t>();
    w.blocks.push_back({shorter, mult});
    w.flat_length += mult;
    Rat rem = longer - shorter * Rat(k);
    longer = shorter;
    shorter = rem;
  }
  return w;
}
}  // namespace detail

inline WeightExpansion weight_expansion(const Rat& a) {
  if (a < Rat{1}) throw DomainError("weight expansion needs a >= 1, got " + a.str());
  WeightExpansion w = detail::rectangle_blocks(a, Rat{1});
  w.input = a;
  w.denominator = a.den();
  return w;
}

/// W(x, y) = min(x, y) * w(max/min), flattened.
inline std::vector<Rat> weight_pair(const Rat& x, const Rat& y) {
  if (x.sign() <= 0 || y.sign() <= 0) throw DomainError("weight_pair needs positive arguments");
  const Rat& lo = x < y ? x : y;
  const Rat& hi = x < y ? y : x;
  std::vector<Rat> out = weight_expansion(hi / lo).flat();
  for (auto& v : out) v *= lo;
  return out;
}

/// Enclosure of y(a) = a + 1 - 2 (b+1)/sqrt(2b) * sqrt(a).
inline Interval y_interval(const Rat& a, const Rat& b) {
  if (a < Rat{1} || b < Rat{1}) throw DomainError("y(a) needs a >= 1 and b >= 1");
  Interval ia = Interval::of(a);
  Interval coef = Interval::of(Rat{2} * (b + Rat{1})) / sqrt(Interval::of(Rat{2} * b));
  return Interval::of(a + Rat{1}) - coef * sqrt(ia);
}

}  // namespace rfkit
