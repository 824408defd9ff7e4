// Decimal rendering derived from exact values, and JSON encodings of the
// library's result types.
#pragma once

#include "rfkit/classes.hpp"
#include "rfkit/cremona.hpp"
#include "rfkit/ech.hpp"
#include "rfkit/exact.hpp"
#include "rfkit/interval.hpp"
#include "rfkit/rf.hpp"
#include "rfkit/weights.hpp"

#include <json.hpp>

#include <cmath>
#include <string>

namespace rfkit {

using Json = nlohmann::ordered_json;

namespace detail {
inline Rat pow10(std::int64_t k) {
  BigInt p = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(k < 0 ? -k : k));
  return k < 0 ? Rat(BigInt(1), p) : Rat(p);
}

// floor(x) for a Quad, starting from a floating estimate and settled by
// exact sign tests.
inline BigInt quad_floor(const Quad& x) {
  Interval iv = to_interval(x);
  BigInt n(static_cast<long long>(std::floor(iv.lo)));
  while ((x - Quad(Rat(n))).sign() < 0) --n;
  while ((x - Quad(Rat(n + 1))).sign() >= 0) ++n;
  return n;
}
}  // namespace detail

/// `digits` significant digits, rounded half up from the exact value.
/// Fixed notation for moderate magnitudes, otherwise d.ddd...e+XX.
inline std::string decimal(const Quad& x, int digits = 12) {
  int s = x.sign();
  if (s == 0) return "0";
  Quad ax = s < 0 ? -x : x;
  double approx = to_interval(ax).mid();
  auto k = static_cast<std::int64_t>(std::floor(std::log10(approx)));
  while ((ax - Quad(detail::pow10(k))).sign() < 0) --k;
  while ((ax - Quad(detail::pow10(k + 1))).sign() >= 0) ++k;
  // ax in [10^k, 10^(k+1)); scale to [10^(digits-1), 10^digits).
  Quad scaled = ax * Quad(detail::pow10(digits - 1 - k));
  BigInt n = detail::quad_floor(scaled + Quad(Rat(1, 2)));
  BigInt top = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
  if (n == top) {
    n /= 10;
    ++k;
  }
  std::string ds = n.str();
  std::string out = s < 0 ? "-" : "";
  if (k >= -6 && k < digits) {
    if (k >= 0) {
      out += ds.substr(0, static_cast<std::size_t>(k + 1));
      if (static_cast<std::size_t>(k + 1) < ds.size()) out += "." + ds.substr(static_cast<std::size_t>(k + 1));
    } else {
      out += "0." + std::string(static_cast<std::size_t>(-k - 1), '0') + ds;
    }
  } else {
    out += ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += (k < 0 ? "e-" : "e+") + std::to_string(k < 0 ? -k : k);
  }
  return out;
}

inline std::string decimal(const Rat& x, int digits = 12) { return decimal(Quad(x), digits); }

inline Json to_json(const Rat& r) { return r.str(); }

inline Json to_json(const Quad& q) {
  return Json{{"rat", q.rat_part().str()}, {"coef", q.root_coef().str()}, {"disc", q.discriminant().str()}};
}

inline Json to_json(const Interval& i) { return Json{{"lo", i.lo}, {"hi", i.hi}}; }

inline Json to_json(const YClass& c) {
  return Json{{"d", c.d}, {"e", c.e}, {"m", c.m}, {"class", c.str()}};
}

inline Json to_json(const IntVector& v) { return Json{{"head", v.head}, {"tail", v.tail}}; }

inline Json to_json(const QuadVector& v) {
  Json tail = Json::array();
  for (const auto& x : v.tail) tail.push_back(to_json(x));
  return Json{{"head", to_json(v.head)}, {"tail", tail}};
}

inline Json to_json(const WeightExpansion& w) {
  Json blocks = Json::array();
  for (const auto& b : w.blocks) blocks.push_back({{"weight", b.weight.str()}, {"multiplicity", b.multiplicity}});
  return Json{{"a", w.input.str()},
              {"blocks", blocks},
              {"length", w.flat_length},
              {"denominator", w.denominator.str()},
              {"sum", w.sum().str()},
              {"sum_squares", w.sum_squares().str()}};
}

inline Json to_json(const Certificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    steps.push_back({{"action", to_string(s.action)}, {"vector", to_json(s.vector)}, {"defect", to_json(s.defect)}});
  }
  return Json{{"a", c.a.str()},       {"b", c.b.str()},
              {"lambda", to_json(Quad::sqrt_of(c.discriminant))},
              {"verdict", to_string(c.verdict)},
              {"moves", c.moves},     {"max_steps", c.max_steps},
              {"start", to_json(c.start)}, {"steps", steps}};
}

inline Json to_json(const CapacitySeq& s) {
  Json vals = Json::array();
  for (const auto& v : s.values) vals.push_back(v.str());
  return Json{{"shape", to_string(s.shape)}, {"x", s.x.str()}, {"y", s.y.str()}, {"values", vals}};
}

inline Json to_json(const ErrorProfile& p) {
  Json eps = Json::array();
  for (const auto& x : p.epsilon) eps.push_back(to_json(x));
  return Json{{"h", p.h.str()},
              {"epsilon", eps},
              {"sigma", to_json(p.sigma)},
              {"sigma_prime", to_json(p.sigma_prime)},
              {"norm_sq", to_json(p.norm_sq)},
              {"pairing", to_json(p.pairing)},
              {"v_M", to_json(p.v_M)},
              {"delta", to_json(p.delta)}};
}

inline Json to_json(const RfReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
  Json out{{"b", r.b.str()},
           {"n_b", r.n},
           {"rf", r.rf.str()},
           {"rf_decimal", decimal(r.rf)},
           {"class", to_json(r.obstructing_class)},
           {"upper_bound", to_json(r.upper_bound)},
           {"checks", checks},
           {"all_passed", r.all_passed()}};
  if (r.flag) out["flag"] = *r.flag;
  return out;
}

inline Json to_json(const RfBeta& r) {
  return Json{{"n", r.n},
              {"beta", r.beta.str()},
              {"class", to_json(r.cls)},
              {"mu", r.mu.str()},
              {"rf", r.rf.str()},
              {"rf_decimal", decimal(r.rf)},
              {"unsquared_value", r.literal_value.str()}};
}

}  // namespace rfkit
