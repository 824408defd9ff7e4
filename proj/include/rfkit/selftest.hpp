// Built-in table of reference values, recomputed on demand.
#pragma once

#include "rfkit/classes.hpp"
#include "rfkit/ech.hpp"
#include "rfkit/rf.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rfkit {

struct GoldenEntry {
  std::string name;
  std::string source;  // "published": quoted in the literature; "computed": frozen from an independent calculation
  std::string expected;
  std::function<std::string()> compute;
};

struct GoldenResult {
  std::string name;
  std::string source;
  std::string expected;
  std::string actual;
  bool passed = false;
};

namespace detail {
inline std::string mu_at_equality(const char* cls, const Rat& b, const Rat& a) {
  Rat u = mu(YClass::parse(cls), b, a);
  return u.str() + (square(u) == a / (Rat{2} * b) ? " = volume" : " != volume");
}

inline std::string ech_equality_witness(const Rat& b) {
  std::int64_t n = n_b(b), k = 2 * n + 1;
  Rat lambda = Rat(k) / (Rat(n) + b);
  Rat ce = ellipsoid_caps(Rat{1}, Rat(k), k).values.back();
  Rat cp = polydisc_caps(lambda, lambda * b, k).values.back();
  return "c_" + std::to_string(k) + ": " + ce.str() + " = " + cp.str();
}
}  // namespace detail

inline std::vector<GoldenEntry> golden_table() {
  std::vector<GoldenEntry> t;
  t.push_back({"rf1-class", "published", "15/8 = volume",
               [] { return detail::mu_at_equality("4,4;3,2x6", Rat{1}, Rat(225, 32)); }});
  t.push_back({"rf2-class", "published", "17/12 = volume",
               [] { return detail::mu_at_equality("6,3;3,2x7", Rat{2}, Rat(289, 36)); }});
  t.push_back({"rf2-quoted-values", "published", "289/36 matches; 257/32 flagged", [] {
                 auto c = YClass::parse("6,3;3,2x7");
                 auto hit = [&](const Rat& a) { return square(mu(c, Rat{2}, a)) == a / Rat{4}; };
                 std::string s = hit(Rat(289, 36)) ? "289/36 matches" : "289/36 fails";
                 return s + (hit(Rat(257, 32)) ? "; 257/32 matches" : "; 257/32 flagged");
               }});
  t.push_back({"rf2-formula", "computed", "196/25 flagged", [] {
                 RfValue v = rf_value(Rat{2});
                 return v.value.str() + (v.flag ? " flagged" : "");
               }});
  t.push_back({"rf3-value", "computed", "363/32", [] { return rf_value(Rat{3}).value.str(); }});
  t.push_back({"rf3-lambda", "computed", "11/8",
               [] { return Quad::sqrt_of(rf_value(Rat{3}).value / Rat{6}).str(); }});
  t.push_back({"rf3-checks", "computed", "5/5", [] {
                 RfReport r = verify_rf(Rat{3});
                 std::size_t ok = 0;
                 for (const auto& c : r.checks) ok += c.passed;
                 return std::to_string(ok) + "/" + std::to_string(r.checks.size());
               }});
  t.push_back({"capacities-b=5/2", "published", "c_9: 9 = 9", [] { return detail::ech_equality_witness(Rat(5, 2)); }});
  t.push_back({"capacities-b=3", "published", "c_11: 11 = 11", [] { return detail::ech_equality_witness(Rat{3}); }});
  t.push_back({"capacities-b=7/2", "published", "c_13: 13 = 13", [] { return detail::ech_equality_witness(Rat(7, 2)); }});
  t.push_back({"capacities-b=4", "published", "c_13: 13 = 13", [] { return detail::ech_equality_witness(Rat{4}); }});
  t.push_back({"r2-reduction-path-11", "published", "11", [] {
                 auto lengths = reduction_path_lengths(psi(r_class(2)));
                 return lengths.count(11) ? std::string("11") : "none of length 11";
               }});
  t.push_back({"r5-at-a=8", "computed", "241/132 obstructive", [] {
                 auto c = r_class(5);
                 return mu(c, Rat(6, 5), Rat{8}).str() + (is_obstructive_at(c, Rat(6, 5), Rat{8}) ? " obstructive" : " not obstructive");
               }});
  t.push_back({"rf-beta-5", "computed", "58081/7260", [] { return rf_beta(5).rf.str(); }});
  return t;
}

/// Recomputes every entry. `corrupt` names an entry whose expected value is
/// altered first, to exercise the failure path.
inline std::vector<GoldenResult> run_selftest(const std::optional<std::string>& corrupt = std::nullopt) {
  std::vector<GoldenResult> out;
  for (auto& g : golden_table()) {
    if (corrupt && *corrupt == g.name) g.expected += " (corrupted)";
    GoldenResult r{g.name, g.source, g.expected, {}, false};
    try {
      r.actual = g.compute();
    } catch (const std::exception& ex) {
      r.actual = std::string("error: ") + ex.what();
    }
    r.passed = r.actual == r.expected;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace rfkit
