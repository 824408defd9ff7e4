// Grid scans of the embedding function over a range of a at fixed b.
#pragma once

#include "rfkit/classes.hpp"
#include "rfkit/cremona.hpp"
#include "rfkit/ech.hpp"
#include "rfkit/rf.hpp"
#include "rfkit/serialize.hpp"

#include <atomic>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace rfkit {

struct ScanRow {
  Rat a;
  Rat b;
  Quad volume;
  CbLower cb;
  std::optional<Rat> mu_best;
  std::optional<YClass> best_class;
  Verdict verdict = Verdict::inconclusive_iteration_limit;

  bool certified() const { return verdict == Verdict::certified; }
};

/// Where the candidate classes for mu_best come from.
struct ClassSource {
  enum class Kind { families, enumerate, list, none } kind = Kind::families;
  std::int64_t d_max = 20;        // for enumerate
  std::vector<YClass> classes;    // for list
};

/// E_n for n up to n_b(b) + 3 and R_n for n = 2..30.
inline std::vector<YClass> family_classes(const Rat& b) {
  std::vector<YClass> out;
  std::int64_t top = n_b(b) + 3;
  for (std::int64_t n = 1; n <= top; ++n) out.push_back(e_class(n));
  for (std::int64_t n = 2; n <= 30; ++n) out.push_back(r_class(n));
  return out;
}

struct ScanOptions {
  ClassSource source;
  std::optional<std::int64_t> kmax;       // cb_lower K
  std::optional<std::int64_t> max_steps;  // reduce_packing cap
  unsigned threads = 1;
};

/// a_from + k (a_to - a_from) / steps for k = 0..steps.
inline std::vector<Rat> scan_grid(const Rat& a_from, const Rat& a_to, std::int64_t steps) {
  if (a_from < Rat{1} || !(a_from < a_to) || steps < 1) throw DomainError("scan needs 1 <= a_from < a_to and steps >= 1");
  std::vector<Rat> out;
  for (std::int64_t k = 0; k <= steps; ++k) out.push_back(a_from + Rat(k) * (a_to - a_from) / Rat(steps));
  return out;
}

inline ScanRow scan_point(const Rat& b, const Rat& a, const ScanOptions& opt, const std::vector<YClass>& fixed) {
  ScanRow row;
  row.a = a;
  row.b = b;
  row.volume = volume_constraint(a, b);
  row.cb = cb_lower(a, b, opt.kmax);
  std::vector<YClass> found;
  const std::vector<YClass>* classes = &fixed;
  if (opt.source.kind == ClassSource::Kind::enumerate) {
    found = enumerate_obstructive(b, a, opt.source.d_max);
    classes = &found;
  }
  for (const auto& c : *classes) {
    if ((Rat(c.d) + b * Rat(c.e)).sign() <= 0) continue;
    Rat u = mu(c, b, a);
    if (!row.mu_best || u > *row.mu_best) {
      row.mu_best = u;
      row.best_class = c;
    }
  }
  row.verdict = reduce_packing(b, a, opt.max_steps).verdict;
  return row;
}

/// One row per grid point, computed in parallel and returned in grid order.
inline std::vector<ScanRow> scan(const Rat& b, const Rat& a_from, const Rat& a_to, std::int64_t steps,
                                 const ScanOptions& opt = {}) {
  if (b < Rat{1}) throw DomainError("scan needs b >= 1");
  auto grid = scan_grid(a_from, a_to, steps);
  std::vector<YClass> fixed;
  if (opt.source.kind == ClassSource::Kind::families) fixed = family_classes(b);
  if (opt.source.kind == ClassSource::Kind::list) fixed = opt.source.classes;

  std::vector<std::optional<ScanRow>> rows(grid.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(grid.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        rows[i] = scan_point(b, grid[i], opt, fixed);
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
  };
  unsigned threads = std::max(1u, opt.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<ScanRow> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i]) throw DomainError("scan failed at a = " + grid[i].str() + ": " + errors[i]);
    out.push_back(std::move(*rows[i]));
  }
  return out;
}

inline const char* scan_csv_header() {
  return "a,b,volume,cb_lower,mu_best,class,certified,a_dec,b_dec,cb_lower_dec,mu_best_dec";
}

inline std::string scan_csv_line(const ScanRow& r) {
  std::ostringstream os;
  os << r.a << ',' << r.b << ',' << decimal(r.volume) << ',' << r.cb.value << ','
     << (r.mu_best ? r.mu_best->str() : "") << ",\"" << (r.best_class ? r.best_class->str() : "") << "\","
     << (r.certified() ? "true" : "false") << ',' << decimal(r.a) << ',' << decimal(r.b) << ','
     << decimal(r.cb.value) << ',' << (r.mu_best ? decimal(*r.mu_best) : "");
  return os.str();
}

inline Json to_json(const ScanRow& r) {
  Json j{{"a", r.a.str()},
         {"a_dec", decimal(r.a)},
         {"b", r.b.str()},
         {"b_dec", decimal(r.b)},
         {"volume", to_json(r.volume)},
         {"volume_dec", decimal(r.volume)},
         {"cb_lower", r.cb.value.str()},
         {"cb_lower_dec", decimal(r.cb.value)},
         {"cb_argmax_k", r.cb.argmax_k},
         {"mu_best", r.mu_best ? Json(r.mu_best->str()) : Json(nullptr)},
         {"mu_best_dec", r.mu_best ? Json(decimal(*r.mu_best)) : Json(nullptr)},
         {"class", r.best_class ? Json(r.best_class->str()) : Json(nullptr)},
         {"certified", r.certified()},
         {"verdict", to_string(r.verdict)}};
  return j;
}

}  // namespace rfkit
