// Outward-rounded double intervals for quantities mixing unrelated square
// roots (y(a), v_M, the F-bound), where exact Quad arithmetic does not apply.
#pragma once

#include "rfkit/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace rfkit {

namespace detail {
inline double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
}  // namespace detail

/// Closed interval [lo, hi]. Every operation rounds one ulp outward, which
/// encloses the true result because IEEE +,-,*,/,sqrt are correctly rounded.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double x) { return {x, x}; }

  /// Tightest double enclosure of an exact rational.
  static Interval of(const Rat& x) {
    double approx = x.to_double();
    double lo = approx, hi = approx;
    while (Rat::from_double(lo) > x) lo = detail::down(lo);
    while (Rat::from_double(hi) < x) hi = detail::up(hi);
    return {lo, hi};
  }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return contains(0.0); }
  bool strictly_positive() const { return lo > 0.0; }
  bool strictly_negative() const { return hi < 0.0; }
  double width() const { return hi - lo; }
  double mid() const { return lo + (hi - lo) / 2; }

  Interval operator-() const { return {-hi, -lo}; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {detail::down(a.lo + b.lo), detail::up(a.hi + b.hi)};
  }
  friend Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }
  friend Interval operator*(const Interval& a, const Interval& b) {
    double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {detail::down(*std::min_element(p, p + 4)), detail::up(*std::max_element(p, p + 4))};
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
    double q[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return {detail::down(*std::min_element(q, q + 4)), detail::up(*std::max_element(q, q + 4))};
  }

  std::string str() const {
    std::ostringstream os;
    os.precision(17);
    os << "[" << lo << ", " << hi << "]";
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Interval& i) { return os << i.str(); }
};

inline Interval sqrt(const Interval& x) {
  if (x.hi < 0.0) throw DomainError("sqrt of a negative interval");
  double lo = x.lo <= 0.0 ? 0.0 : std::max(0.0, detail::down(std::sqrt(x.lo)));
  return {lo, detail::up(std::sqrt(x.hi))};
}

inline Interval to_interval(const Quad& q) {
  Interval r = Interval::of(q.rat_part());
  if (q.is_rational()) return r;
  return r + Interval::of(q.root_coef()) * sqrt(Interval::of(q.discriminant()));
}

}  // namespace rfkit
