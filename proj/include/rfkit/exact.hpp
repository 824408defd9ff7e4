// Exact scalars: arbitrary-precision rationals and the real quadratic
// extension Q(sqrt D) used for reduction vectors and error terms.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace rfkit {

using BigInt = boost::multiprecision::cpp_int;

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Negative discriminant passed to Quad construction.
class InvalidDiscriminant : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Two irrational Quad values living in different quadratic fields.
class IncompatibleField : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Floor of the square root of a nonnegative integer.
inline BigInt isqrt(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

inline std::optional<BigInt> exact_isqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = isqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

/// Rational number in lowest terms with positive denominator.
class Rat {
 public:
  Rat() = default;
  template <std::integral I>
  Rat(I n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(const BigInt& n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(const BigInt& n, const BigInt& d) {
    if (d == 0) throw DomainError("zero denominator");
    v_ = d < 0 ? boost::multiprecision::cpp_rational(-n, -d) : boost::multiprecision::cpp_rational(n, d);
  }

  /// Exact value of a finite double.
  static Rat from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite double");
    if (x == 0.0) return Rat{};
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
    auto m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    BigInt num(m);
    BigInt den(1);
    if (exp > 0) {
      num <<= exp;
    } else {
      den <<= -exp;
    }
    return Rat(num, den);
  }

  /// Accepts "p", "p/q", and plain decimals such as "-1.25".
  static Rat parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    };
    trim(s);
    if (s.empty()) throw DomainError("empty rational literal");
    auto parse_int = [&](std::string t) -> BigInt {
      trim(t);
      if (t.empty()) throw DomainError("malformed rational literal '" + s + "'");
      std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
      if (start == t.size()) throw DomainError("malformed rational literal '" + s + "'");
      for (std::size_t i = start; i < t.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
          throw DomainError("malformed rational literal '" + s + "'");
        }
      }
      if (t[0] == '+') t.erase(t.begin());
      return BigInt(t);
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
      BigInt d = parse_int(s.substr(slash + 1));
      if (d == 0) throw DomainError("zero denominator in '" + s + "'");
      return Rat(parse_int(s.substr(0, slash)), d);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string whole = s.substr(0, dot);
      std::string fracpart = s.substr(dot + 1);
      bool neg = !whole.empty() && whole[0] == '-';
      if (whole.empty() || whole == "-" || whole == "+") whole += "0";
      if (fracpart.empty()) fracpart = "0";
      BigInt w = parse_int(whole);
      BigInt f = parse_int(fracpart);
      if (fracpart[0] == '-' || fracpart[0] == '+') throw DomainError("malformed rational literal '" + s + "'");
      BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fracpart.size()));
      BigInt mag = (w < 0 ? BigInt(-w) : w) * scale + f;
      return Rat(neg ? BigInt(-mag) : mag, scale);
    }
    return Rat(parse_int(s));
  }

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }

  int sign() const { return v_.sign(); }
  bool is_zero() const { return v_.sign() == 0; }
  bool is_integer() const { return den() == 1; }

  BigInt floor() const {
    BigInt n = num(), d = den();
    BigInt q = n / d;  // truncates toward zero
    if (n < 0 && q * d != n) q -= 1;
    return q;
  }
  BigInt ceil() const {
    BigInt f = floor();
    return (Rat(f) == *this) ? f : BigInt(f + 1);
  }
  /// Fractional part {x} = x - floor(x), in [0, 1).
  Rat frac() const { return *this - Rat(floor()); }
  Rat abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const { return v_.convert_to<double>(); }

  /// "p/q", or "p" when q == 1.
  std::string str() const {
    if (is_integer()) return num().str();
    return num().str() + "/" + den().str();
  }

  Rat operator-() const {
    Rat r;
    r.v_ = -v_;
    return r;
  }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  boost::multiprecision::cpp_rational v_;
};

/// sqrt(x) when x is the square of a rational.
inline std::optional<Rat> exact_sqrt(const Rat& x) {
  if (x.sign() < 0) return std::nullopt;
  auto n = exact_isqrt(x.num());
  if (!n) return std::nullopt;
  auto d = exact_isqrt(x.den());
  if (!d) return std::nullopt;
  return Rat(*n, *d);
}

inline Rat square(const Rat& x) { return x * x; }

/// rat + coef * sqrt(disc), disc >= 0. Values whose discriminant is a
/// rational square are stored in rational form (coef = disc = 0).
class Quad {
 public:
  Quad() = default;
  Quad(const Rat& r) : rat_(r) {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Quad(I r) : rat_(r) {}  // NOLINT(google-explicit-constructor)

  static Quad make(const Rat& rat, const Rat& coef, const Rat& disc) {
    if (disc.sign() < 0) throw InvalidDiscriminant("negative discriminant " + disc.str());
    Quad q;
    q.rat_ = rat;
    if (coef.is_zero() || disc.is_zero()) return q;
    if (auto s = exact_sqrt(disc)) {
      q.rat_ += coef * *s;
      return q;
    }
    q.coef_ = coef;
    q.disc_ = disc;
    return q;
  }

  /// sqrt(x) as a Quad with discriminant x.
  static Quad sqrt_of(const Rat& x) { return make(Rat{}, Rat{1}, x); }

  const Rat& rat_part() const { return rat_; }
  const Rat& root_coef() const { return coef_; }
  const Rat& discriminant() const { return disc_; }
  bool is_rational() const { return coef_.is_zero(); }

  int sign() const {
    int sa = rat_.sign();
    int sb = coef_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare rat^2 with coef^2 * disc
    auto lhs = square(rat_);
    auto rhs = square(coef_) * disc_;
    if (lhs > rhs) return sa;
    if (lhs < rhs) return sb;
    return 0;
  }

  Quad operator-() const {
    Quad q = *this;
    q.rat_ = -q.rat_;
    q.coef_ = -q.coef_;
    return q;
  }

  friend Quad operator+(const Quad& x, const Quad& y) {
    auto p = align(x, y);
    return make(p.xr + p.yr, p.xc + p.yc, p.disc);
  }
  friend Quad operator-(const Quad& x, const Quad& y) { return x + (-y); }
  friend Quad operator*(const Quad& x, const Quad& y) {
    auto p = align(x, y);
    return make(p.xr * p.yr + p.xc * p.yc * p.disc, p.xr * p.yc + p.xc * p.yr, p.disc);
  }
  friend Quad operator/(const Quad& x, const Quad& y) {
    if (y.sign() == 0) throw DomainError("division by zero");
    if (y.is_rational()) {
      return make(x.rat_ / y.rat_, x.coef_ / y.rat_, x.disc_);
    }
    // multiply through by the conjugate of y
    Quad conj = make(y.rat_, -y.coef_, y.disc_);
    Rat norm = square(y.rat_) - square(y.coef_) * y.disc_;
    Quad n = x * conj;
    return make(n.rat_ / norm, n.coef_ / norm, n.disc_);
  }
  Quad& operator+=(const Quad& o) { return *this = *this + o; }
  Quad& operator-=(const Quad& o) { return *this = *this - o; }
  Quad& operator*=(const Quad& o) { return *this = *this * o; }

  friend bool operator==(const Quad& x, const Quad& y) { return (x - y).sign() == 0; }
  friend std::strong_ordering operator<=>(const Quad& x, const Quad& y) {
    int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Structural identity (same stored representation), as opposed to ==.
  bool same_repr(const Quad& o) const { return rat_ == o.rat_ && coef_ == o.coef_ && disc_ == o.disc_; }

  std::string str() const {
    if (is_rational()) return rat_.str();
    std::string out;
    if (!rat_.is_zero()) out = rat_.str() + (coef_.sign() > 0 ? " + " : " - ");
    else if (coef_.sign() < 0) out = "-";
    Rat c = coef_.abs();
    if (c != Rat{1}) out += c.str() + "*";
    out += "sqrt(" + disc_.str() + ")";
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Quad& q) { return os << q.str(); }

 private:
  struct Aligned {
    Rat xr, xc, yr, yc, disc;
  };

  // Express both operands over one discriminant. sqrt(D2) = r*sqrt(D1) when
  // D2/D1 is a rational square r^2.
  static Aligned align(const Quad& x, const Quad& y) {
    if (y.is_rational()) return {x.rat_, x.coef_, y.rat_, Rat{}, x.disc_};
    if (x.is_rational()) return {x.rat_, Rat{}, y.rat_, y.coef_, y.disc_};
    if (x.disc_ == y.disc_) return {x.rat_, x.coef_, y.rat_, y.coef_, x.disc_};
    if (auto r = exact_sqrt(y.disc_ / x.disc_)) return {x.rat_, x.coef_, y.rat_, y.coef_ * *r, x.disc_};
    throw IncompatibleField("incompatible discriminants " + x.disc_.str() + " and " + y.disc_.str());
  }

  Rat rat_;
  Rat coef_;
  Rat disc_;
};

inline int quad_sign(const Quad& x) { return x.sign(); }

/// -1, 0, +1 as x <, ==, > y; throws IncompatibleField.
inline int quad_cmp(const Quad& x, const Quad& y) { return (x - y).sign(); }

}  // namespace rfkit
