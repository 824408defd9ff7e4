// rfkit command-line front end.
#include "rfkit/rfkit.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace rfkit;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInconclusive = 2;
constexpr int kSelftestFailed = 3;

enum class Format { text, json, csv };

struct Globals {
  bool json = false;
  bool csv = false;
  unsigned threads = 0;
  std::optional<std::int64_t> max_steps;

  Format format() const { return json ? Format::json : csv ? Format::csv : Format::text; }
};

unsigned default_threads() {
  if (const char* env = std::getenv("RFKIT_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

// ---- weights ----------------------------------------------------------------

struct WeightsArgs {
  std::string a, x, y;
};

int run_weights(const Globals& g, const WeightsArgs& args) {
  if (!args.x.empty() || !args.y.empty()) {
    if (args.x.empty() || args.y.empty()) throw DomainError("--x and --y go together");
    auto flat = weight_pair(Rat::parse(args.x), Rat::parse(args.y));
    if (g.format() == Format::json) {
      Json vals = Json::array();
      for (const auto& v : flat) vals.push_back(v.str());
      print_json({{"x", args.x}, {"y", args.y}, {"weights", vals}});
    } else if (g.format() == Format::csv) {
      std::cout << "index,weight,weight_dec\n";
      for (std::size_t i = 0; i < flat.size(); ++i) std::cout << i + 1 << ',' << flat[i] << ',' << decimal(flat[i]) << '\n';
    } else {
      for (std::size_t i = 0; i < flat.size(); ++i) std::cout << (i ? ", " : "") << flat[i];
      std::cout << '\n';
    }
    return kOk;
  }
  if (args.a.empty()) throw DomainError("weights needs --a, or --x and --y");
  WeightExpansion w = weight_expansion(Rat::parse(args.a));
  switch (g.format()) {
    case Format::json:
      print_json(to_json(w));
      break;
    case Format::csv:
      std::cout << "weight,multiplicity,weight_dec\n";
      for (const auto& b : w.blocks) std::cout << b.weight << ',' << b.multiplicity << ',' << decimal(b.weight) << '\n';
      break;
    case Format::text:
      std::cout << "a = " << w.input << "\nblocks: ";
      for (std::size_t i = 0; i < w.blocks.size(); ++i) {
        std::cout << (i ? ", " : "") << w.blocks[i].weight << " x " << w.blocks[i].multiplicity;
      }
      std::cout << "\nlength M = " << w.flat_length << "\ndenominator q = " << w.denominator
                << "\nsum = " << w.sum() << "\nsum of squares = " << w.sum_squares() << '\n';
      break;
  }
  return kOk;
}

// ---- reduce -----------------------------------------------------------------

struct ReduceArgs {
  std::string a, b, cls;
  bool paths = false;
  bool trace = false;
};

int run_reduce(const Globals& g, const ReduceArgs& args) {
  if (!args.cls.empty()) {
    YClass c = YClass::parse(args.cls);
    IntVector v = psi(c);
    ExceptionalReduction r = reduce_exceptional(v);
    std::optional<std::set<std::int64_t>> lengths;
    if (args.paths) lengths = reduction_path_lengths(v);
    if (g.format() == Format::json) {
      Json j{{"class", to_json(c)},
             {"psi", to_json(v)},
             {"diophantine", satisfies_diophantine(c)},
             {"reduces", r.reduces},
             {"moves", r.moves},
             {"terminal", to_json(r.terminal)}};
      if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
      if (lengths) j["path_lengths"] = std::vector<std::int64_t>(lengths->begin(), lengths->end());
      print_json(j);
    } else {
      std::cout << "class " << c.str() << "\npsi: (" << v.head << ';';
      for (std::size_t i = 0; i < v.tail.size(); ++i) std::cout << (i ? "," : "") << v.tail[i];
      std::cout << ")\ndiophantine: " << (satisfies_diophantine(c) ? "yes" : "no")
                << "\nreduces: " << (r.reduces ? "yes" : "no") << " after " << r.moves << " moves\n";
      if (!r.diagnostic.empty()) std::cout << "stopped: " << r.diagnostic << '\n';
      if (lengths) {
        std::cout << "path lengths:";
        for (auto l : *lengths) std::cout << ' ' << l;
        std::cout << '\n';
      }
    }
    return kOk;
  }
  if (args.a.empty() || args.b.empty()) throw DomainError("reduce needs --a and --b, or --class");
  Certificate cert = reduce_packing(Rat::parse(args.b), Rat::parse(args.a), g.max_steps);
  switch (g.format()) {
    case Format::json:
      print_json(to_json(cert));
      break;
    case Format::csv:
      std::cout << "step,action,defect,defect_dec,head\n";
      for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const auto& s = cert.steps[i];
        std::cout << i << ',' << to_string(s.action) << ',' << csv_quote(s.defect.str()) << ',' << decimal(s.defect)
                  << ',' << csv_quote(s.vector.head.str()) << '\n';
      }
      break;
    case Format::text:
      std::cout << "E(1, " << cert.a << ") into P(lambda, lambda " << cert.b << "), lambda = "
                << Quad::sqrt_of(cert.discriminant) << '\n';
      for (const auto& s : cert.steps) {
        if (args.trace) {
          std::cout << "  " << to_string(s.action) << ": (" << s.vector.head << ';';
          for (std::size_t i = 0; i < s.vector.tail.size(); ++i) std::cout << (i ? ", " : "") << s.vector.tail[i];
          std::cout << "), defect " << s.defect << " (" << decimal(s.defect) << ")\n";
          continue;
        }
        if (s.action == Action::cremona) continue;
        std::cout << "  head " << s.vector.head << ", defect " << s.defect << " (" << decimal(s.defect) << ")\n";
      }
      std::cout << to_string(cert.verdict) << " after " << cert.moves << " moves (cap " << cert.max_steps << ")\n";
      break;
  }
  return cert.certified() ? kOk : kInconclusive;
}

// ---- ech / cb ---------------------------------------------------------------

struct EchArgs {
  std::string shape = "E", x, y;
  std::int64_t n = 20;
};

int run_ech(const Globals& g, const EchArgs& args) {
  Shape s;
  if (args.shape == "E" || args.shape == "e") {
    s = Shape::ellipsoid;
  } else if (args.shape == "P" || args.shape == "p") {
    s = Shape::polydisc;
  } else {
    throw DomainError("--shape must be E or P");
  }
  CapacitySeq seq = capacities(s, Rat::parse(args.x), Rat::parse(args.y), args.n);
  switch (g.format()) {
    case Format::json:
      print_json(to_json(seq));
      break;
    case Format::csv:
      std::cout << "k,capacity,capacity_dec\n";
      for (std::size_t k = 0; k < seq.values.size(); ++k) std::cout << k << ',' << seq.values[k] << ',' << decimal(seq.values[k]) << '\n';
      break;
    case Format::text:
      for (std::size_t k = 0; k < seq.values.size(); ++k) std::cout << "c_" << k << " = " << seq.values[k] << '\n';
      break;
  }
  return kOk;
}

struct CbArgs {
  std::string a, b, form = "P";
  std::optional<std::int64_t> kmax;
};

int run_cb(const Globals& g, const CbArgs& args) {
  Rat a = Rat::parse(args.a), b = Rat::parse(args.b);
  CbForm form;
  if (args.form == "P" || args.form == "p") {
    form = CbForm::polydisc;
  } else if (args.form == "E" || args.form == "e") {
    form = CbForm::ellipsoid;
  } else {
    throw DomainError("--form must be P or E");
  }
  CbLower c = cb_lower(a, b, args.kmax, form);
  Quad vol = volume_constraint(a, b);
  switch (g.format()) {
    case Format::json:
      print_json({{"a", a.str()},
                  {"b", b.str()},
                  {"cb_lower", c.value.str()},
                  {"cb_lower_dec", decimal(c.value)},
                  {"argmax_k", c.argmax_k},
                  {"kmax", c.kmax},
                  {"form", to_string(form)},
                  {"volume", to_json(vol)},
                  {"volume_dec", decimal(vol)}});
      break;
    case Format::csv:
      std::cout << "a,b,cb_lower,argmax_k,kmax,cb_lower_dec,volume_dec\n"
                << a << ',' << b << ',' << c.value << ',' << c.argmax_k << ',' << c.kmax << ',' << decimal(c.value)
                << ',' << decimal(vol) << '\n';
      break;
    case Format::text:
      std::cout << (form == CbForm::polydisc ? "c_b(a) >= " : "max_k c_k(E(1,a)) / c_k(E(1,2b)) = ") << c.value << " (" << decimal(c.value) << "), attained at k = " << c.argmax_k
                << " of K = " << c.kmax << "\nvolume constraint " << vol << " (" << decimal(vol) << ")\n";
      break;
  }
  return kOk;
}

// ---- mu / enumerate -----------------------------------------------------------

struct MuArgs {
  std::string cls, a, b;
};

int run_mu(const Globals& g, const MuArgs& args) {
  YClass c = YClass::parse(args.cls);
  Rat a = Rat::parse(args.a), b = Rat::parse(args.b);
  Rat u = mu(c, b, a);
  Quad vol = volume_constraint(a, b);
  bool obstructive = is_obstructive_at(c, b, a);
  bool exceptional = is_exceptional(c);
  ErrorProfile ep = error_profile(c, b, a);
  switch (g.format()) {
    case Format::json:
      print_json({{"class", to_json(c)},
                  {"a", a.str()},
                  {"b", b.str()},
                  {"mu", u.str()},
                  {"mu_dec", decimal(u)},
                  {"volume", to_json(vol)},
                  {"volume_dec", decimal(vol)},
                  {"obstructive", obstructive},
                  {"exceptional", exceptional},
                  {"error_profile", to_json(ep)}});
      break;
    case Format::csv:
      std::cout << "class,a,b,mu,mu_dec,volume_dec,obstructive,exceptional\n"
                << csv_quote(c.str()) << ',' << a << ',' << b << ',' << u << ',' << decimal(u) << ',' << decimal(vol)
                << ',' << obstructive << ',' << exceptional << '\n';
      break;
    case Format::text:
      std::cout << "mu = " << u << " (" << decimal(u) << ")\nvolume = " << vol << " (" << decimal(vol) << ")\n"
                << "obstructive: " << (obstructive ? "yes" : "no") << "\nexceptional: " << (exceptional ? "yes" : "no")
                << "\nh = " << ep.h << "\n|eps|^2 = " << ep.norm_sq << " (" << decimal(ep.norm_sq) << ")\n";
      break;
  }
  return kOk;
}

struct EnumerateArgs {
  std::string a, b, length = "atmost";
  std::int64_t d_max = 0;
  std::optional<std::int64_t> e_max;
};

int run_enumerate(const Globals& g, const EnumerateArgs& args) {
  Rat a = Rat::parse(args.a), b = Rat::parse(args.b);
  EnumerateOptions opt;
  if (args.length == "exact") {
    opt.length = LengthPolicy::exact;
  } else if (args.length == "atmost") {
    opt.length = LengthPolicy::at_most;
  } else {
    throw DomainError("--length must be exact or atmost");
  }
  opt.threads = g.threads;
  opt.e_cap = args.e_max;
  auto found = enumerate_obstructive(b, a, args.d_max, opt);
  switch (g.format()) {
    case Format::json: {
      Json arr = Json::array();
      for (const auto& c : found) {
        Json j = to_json(c);
        j["mu"] = mu(c, b, a).str();
        arr.push_back(j);
      }
      print_json({{"a", a.str()}, {"b", b.str()}, {"d_max", args.d_max}, {"length", args.length}, {"classes", arr}});
      break;
    }
    case Format::csv:
      std::cout << "d,e,class,mu,mu_dec\n";
      for (const auto& c : found) {
        Rat u = mu(c, b, a);
        std::cout << c.d << ',' << c.e << ',' << csv_quote(c.str()) << ',' << u << ',' << decimal(u) << '\n';
      }
      break;
    case Format::text:
      std::cout << found.size() << " obstructive class" << (found.size() == 1 ? "" : "es") << " with d <= "
                << args.d_max << '\n';
      for (const auto& c : found) std::cout << "  (" << c.str() << ")  mu = " << mu(c, b, a) << '\n';
      break;
  }
  return kOk;
}

// ---- rf family --------------------------------------------------------------

struct RfArgs {
  std::string b;
  std::int64_t left = 4, right = 4;
};

int run_rf(const Globals& g, const RfArgs& args) {
  Rat b = Rat::parse(args.b);
  if (b == Rat{2}) {
    RfValue v = rf_value(b);
    if (g.format() == Format::json) {
      print_json({{"b", b.str()}, {"n_b", v.n}, {"rf", v.value.str()}, {"flag", *v.flag}});
    } else {
      std::cout << "RF(2) formula value " << v.value << " (flagged)\n" << *v.flag << '\n';
    }
    return kOk;
  }
  RfReport r = verify_rf(b, args.left, args.right, g.max_steps);
  switch (g.format()) {
    case Format::json:
      print_json(to_json(r));
      break;
    case Format::csv:
      std::cout << "check,passed,witness\n";
      for (const auto& c : r.checks) std::cout << c.name << ',' << c.passed << ',' << csv_quote(c.witness) << '\n';
      break;
    case Format::text:
      std::cout << "b = " << r.b << ", n_b = " << r.n << ", RF = " << r.rf << " (" << decimal(r.rf) << ")\n"
                << "class (" << r.obstructing_class.str() << ")\n";
      for (const auto& c : r.checks) std::cout << (c.passed ? "  [pass] " : "  [FAIL] ") << c.name << ": " << c.witness << '\n';
      break;
  }
  return r.all_passed() ? kOk : kInconclusive;
}

int run_rf_beta(const Globals& g, std::int64_t n) {
  RfBeta r = rf_beta(n);
  switch (g.format()) {
    case Format::json:
      print_json(to_json(r));
      break;
    case Format::csv:
      std::cout << "n,beta,mu,rf,rf_dec,unsquared\n"
                << n << ',' << r.beta << ',' << r.mu << ',' << r.rf << ',' << decimal(r.rf) << ',' << r.literal_value << '\n';
      break;
    case Format::text:
      std::cout << "beta = " << r.beta << ", class (" << r.cls.str() << ")\nmu = " << r.mu << "\nRF = " << r.rf << " ("
                << decimal(r.rf) << ")\nunsquared form 2 beta mu = " << r.literal_value << '\n';
      break;
  }
  return kOk;
}

int run_discontinuity(const Globals& g, std::int64_t from, std::int64_t to) {
  if (from > to) throw DomainError("--n-from must not exceed --n-to");
  std::vector<std::int64_t> ns;
  for (auto n = from; n <= to; ++n) ns.push_back(n);
  DiscontinuityTable t = discontinuity_demo(ns);
  switch (g.format()) {
    case Format::json: {
      Json rows = Json::array();
      for (const auto& r : t.rows) {
        rows.push_back({{"n", r.n},
                        {"beta", r.beta.str()},
                        {"class", r.cls.str()},
                        {"mu", r.mu.str()},
                        {"margin", r.margin.str()},
                        {"obstructive_at_8", r.obstructive},
                        {"rf", r.rf.rf.str()},
                        {"rf_dec", decimal(r.rf.rf)}});
      }
      print_json({{"rows", rows},
                  {"b=1", {{"class", t.rf1_class.str()}, {"rf", t.rf1.str()}, {"mu", t.rf1_mu.str()}, {"equality", t.rf1_equality}}}});
      break;
    }
    case Format::csv:
      std::cout << "n,beta,mu,margin,obstructive_at_8,rf,rf_dec\n";
      for (const auto& r : t.rows) {
        std::cout << r.n << ',' << r.beta << ',' << r.mu << ',' << r.margin << ',' << r.obstructive << ',' << r.rf.rf
                  << ',' << decimal(r.rf.rf) << '\n';
      }
      break;
    case Format::text:
      for (const auto& r : t.rows) {
        std::cout << "n = " << r.n << ": R_n obstructive at a = 8: " << (r.obstructive ? "yes" : "no")
                  << ", margin " << r.margin << ", RF = " << decimal(r.rf.rf) << '\n';
      }
      std::cout << "b = 1: class (" << t.rf1_class.str() << ") has mu = " << t.rf1_mu << " at a = " << t.rf1
                << (t.rf1_equality ? ", equal to the volume constraint" : ", NOT equal to the volume constraint") << '\n';
      break;
  }
  bool ok = t.rf1_equality && std::all_of(t.rows.begin(), t.rows.end(), [](const auto& r) { return r.obstructive; });
  return ok ? kOk : kInconclusive;
}

// ---- scan -------------------------------------------------------------------

struct ScanArgs {
  std::string b, a_from, a_to, classes = "families";
  std::int64_t steps = 10;
  std::int64_t d_max = 20;
  std::optional<std::int64_t> kmax;
};

int run_scan(const Globals& g, const ScanArgs& args) {
  ScanOptions opt;
  opt.threads = g.threads;
  opt.max_steps = g.max_steps;
  opt.kmax = args.kmax;
  if (args.classes == "families") {
    opt.source.kind = ClassSource::Kind::families;
  } else if (args.classes == "enumerate") {
    opt.source.kind = ClassSource::Kind::enumerate;
    opt.source.d_max = args.d_max;
  } else if (args.classes == "none") {
    opt.source.kind = ClassSource::Kind::none;
  } else {
    // "d,e;m|d,e;m|..."
    opt.source.kind = ClassSource::Kind::list;
    std::stringstream ss(args.classes);
    std::string item;
    while (std::getline(ss, item, '|')) opt.source.classes.push_back(YClass::parse(item));
  }
  auto rows = scan(Rat::parse(args.b), Rat::parse(args.a_from), Rat::parse(args.a_to), args.steps, opt);
  if (g.format() == Format::json) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    print_json(arr);
  } else {
    std::cout << scan_csv_header() << '\n';
    for (const auto& r : rows) std::cout << scan_csv_line(r) << '\n';
  }
  return kOk;
}

// ---- selftest ---------------------------------------------------------------

int run_selftest(const Globals& g, bool list, const std::optional<std::string>& corrupt) {
  if (list) {
    auto table = golden_table();
    if (g.format() == Format::json) {
      Json arr = Json::array();
      for (const auto& e : table) arr.push_back({{"name", e.name}, {"source", e.source}, {"expected", e.expected}});
      print_json(arr);
    } else {
      for (const auto& e : table) std::cout << std::left << std::setw(24) << e.name << std::setw(11) << e.source << e.expected << '\n';
    }
    return kOk;
  }
  auto results = rfkit::run_selftest(corrupt);
  bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  if (g.format() == Format::json) {
    Json arr = Json::array();
    for (const auto& r : results) {
      arr.push_back({{"name", r.name}, {"source", r.source}, {"expected", r.expected}, {"actual", r.actual}, {"passed", r.passed}});
    }
    print_json({{"passed", ok}, {"results", arr}});
  } else {
    for (const auto& r : results) {
      std::cout << (r.passed ? "[pass] " : "[FAIL] ") << std::left << std::setw(24) << r.name << r.actual;
      if (!r.passed) std::cout << "  (expected " << r.expected << ")";
      std::cout << '\n';
    }
    std::cout << (ok ? "selftest passed\n" : "selftest FAILED\n");
  }
  return ok ? kOk : kSelftestFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for embeddings of ellipsoids E(1,a) into polydiscs P(lambda, lambda b)"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "rfkit 1.0.0");

  Globals g;
  g.threads = default_threads();
  app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--csv", g.csv, "CSV output");
  app.add_option("--threads", g.threads, "worker threads (default: RFKIT_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-steps", g.max_steps, "Cremona move cap for packing reductions (default 10 M + 100)");

  WeightsArgs wa;
  auto* weights = app.add_subcommand("weights", "weight expansion w(a), or W(x, y)");
  weights->add_option("--a", wa.a, "rational a >= 1");
  weights->add_option("--x", wa.x, "first argument of W(x, y)");
  weights->add_option("--y", wa.y, "second argument of W(x, y)");

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "packing reduction certificate, or exceptional class reduction");
  reduce->add_option("--a", ra.a, "rational a >= 1");
  reduce->add_option("--b", ra.b, "rational b >= 1");
  reduce->add_option("--class", ra.cls, "class \"d,e;m1,m2x7,...\" to reduce after the change of basis");
  reduce->add_flag("--trace", ra.trace, "print every step with its full vector");
  reduce->add_flag("--paths", ra.paths, "with --class: list the lengths of all head-decreasing reductions");

  EchArgs ea;
  auto* ech = app.add_subcommand("ech", "ECH capacities c_0..c_N");
  ech->add_option("--shape", ea.shape, "E (ellipsoid) or P (polydisc)");
  ech->add_option("--x", ea.x, "first parameter")->required();
  ech->add_option("--y", ea.y, "second parameter")->required();
  ech->add_option("--n", ea.n, "largest index N")->check(CLI::NonNegativeNumber);

  CbArgs ca;
  auto* cb = app.add_subcommand("cb", "capacity-ratio lower bound for c_b(a)");
  cb->add_option("--a", ca.a)->required();
  cb->add_option("--b", ca.b)->required();
  cb->add_option("--kmax", ca.kmax, "number of ratios (default 20 ceil(a) ceil(b))")->check(CLI::PositiveNumber);
  cb->add_option("--form", ca.form, "P: ratios against P(1, b) (default); E: against E(1, 2b)");

  MuArgs ma;
  auto* mu_cmd = app.add_subcommand("mu", "obstruction function of a class");
  mu_cmd->add_option("--class", ma.cls, "\"d,e;m1,m2x7,...\"")->required();
  mu_cmd->add_option("--a", ma.a)->required();
  mu_cmd->add_option("--b", ma.b)->required();

  EnumerateArgs na;
  auto* enumerate = app.add_subcommand("enumerate", "search for obstructive exceptional classes");
  enumerate->add_option("--a", na.a)->required();
  enumerate->add_option("--b", na.b)->required();
  enumerate->add_option("--dmax", na.d_max, "largest d")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--length", na.length, "exact: tail length l(a); atmost: up to l(a)");
  enumerate->add_option("--emax", na.e_max, "optional cap on e");

  RfArgs fa;
  auto* rf = app.add_subcommand("rf", "RF(b) for b > 2 with its verification checks");
  rf->add_option("--b", fa.b)->required();
  rf->add_option("--samples-left", fa.left, "obstruction samples in (2 n_b + 1, RF)")->check(CLI::NonNegativeNumber);
  rf->add_option("--samples-right", fa.right, "certification samples above RF")->check(CLI::NonNegativeNumber);

  std::int64_t beta_n = 5;
  auto* rf_beta_cmd = app.add_subcommand("rf-beta", "RF at b = (n+1)/n from the class R_n");
  rf_beta_cmd->add_option("--n", beta_n)->required();

  std::int64_t n_from = 5, n_to = 10;
  auto* disc = app.add_subcommand("discontinuity", "R_n at a = 8 for a range of n, and the b = 1 value");
  disc->add_option("--n-from", n_from);
  disc->add_option("--n-to", n_to);

  ScanArgs sa;
  auto* scan_cmd = app.add_subcommand("scan", "grid scan over a at fixed b");
  scan_cmd->add_option("--b", sa.b)->required();
  scan_cmd->add_option("--a-from", sa.a_from)->required();
  scan_cmd->add_option("--a-to", sa.a_to)->required();
  scan_cmd->add_option("--steps", sa.steps, "grid intervals");
  scan_cmd->add_option("--classes", sa.classes, "families | enumerate | none | \"d,e;m|d,e;m|...\"");
  scan_cmd->add_option("--dmax", sa.d_max, "d bound for --classes enumerate");
  scan_cmd->add_option("--kmax", sa.kmax, "number of capacity ratios");

  bool list = false;
  std::optional<std::string> corrupt;
  auto* selftest = app.add_subcommand("selftest", "recompute the built-in reference values");
  selftest->add_flag("--list", list, "print the reference table without running it");
  selftest->add_option("--corrupt", corrupt, "alter one expected value (exercises the failure path)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (g.json && g.csv) {
    std::cerr << "--json and --csv are exclusive\n";
    return kUsage;
  }

  try {
    if (*weights) return run_weights(g, wa);
    if (*reduce) return run_reduce(g, ra);
    if (*ech) return run_ech(g, ea);
    if (*cb) return run_cb(g, ca);
    if (*mu_cmd) return run_mu(g, ma);
    if (*enumerate) return run_enumerate(g, na);
    if (*rf) return run_rf(g, fa);
    if (*rf_beta_cmd) return run_rf_beta(g, beta_n);
    if (*disc) return run_discontinuity(g, n_from, n_to);
    if (*scan_cmd) return run_scan(g, sa);
    if (*selftest) return run_selftest(g, list, corrupt);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
