#pragma once

// Command-line front end shared by the isog4 tool and its tests.
//
//   classify --a <int> --b <int> [--json]
//   count <n1|n2|scan> --height <spec> [--method naive|fast] [--threads N] [--json]
//   table <n1|n2> [--max-height <spec>] [--threads N]
//   constants [--tol <real>] [--json]

#include <isog4/census.hpp>
#include <isog4/constants.hpp>
#include <isog4/curves.hpp>
#include <isog4/error.hpp>
#include <isog4/height_spec.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace isog4 {

namespace cli {

using json = nlohmann::ordered_json;

/// Rounds half away from zero to one decimal place.
inline std::string format_delta(double x) {
  const double r = std::round(x * 10) / 10;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", r == 0 ? 0.0 : r);
  return buf;
}

inline std::string format_estimate(const Estimate& e) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.15f +- %.1e", e.value, e.error);
  return buf;
}

// X^(1/k) for the delta columns; exact when X is a perfect k-th power.
inline long double real_root(const BigInt& X, unsigned k) {
  const BigInt r = integer_nth_root<BigInt>(X, k);
  if (boost::multiprecision::pow(r, k) == X) return r.convert_to<long double>();
  return std::pow(X.convert_to<long double>(), 1.0L / k);
}

inline long double delta_n1(std::uint64_t n1, const BigInt& X, const ConstantsReport& c) {
  return static_cast<long double>(n1) - c.c11.value * real_root(X, 3) - c.c12.value * real_root(X, 6);
}

inline long double delta_n2(std::uint64_t n2, const BigInt& X, const ConstantsReport& c) {
  return static_cast<long double>(n2) - c.c21.value * real_root(X, 6);
}

inline std::string power_label(unsigned e) { return "10^" + std::to_string(e); }

inline json estimate_json(const Estimate& e) { return json{{"value", e.value}, {"error", e.error}}; }

inline void report_error(const Error& e, bool as_json, std::ostream& out, std::ostream& err) {
  if (as_json) {
    out << json{{"error", {{"kind", error_kind_name(e.kind())}, {"message", e.what()}}}}.dump(2) << "\n";
  } else {
    err << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
  }
}

struct ClassifyArgs {
  std::string a;
  std::string b;
  bool json = false;
};

inline int cmd_classify(const ClassifyArgs& args, std::ostream& out) {
  const BigInt A = parse_integer(args.a);
  const BigInt B = parse_integer(args.b);
  if (is_singular(A, B)) throw Error(ErrorKind::singular, "4A^3 + 27B^2 = 0 for (" + args.a + ", " + args.b + ")");
  if (!is_minimal(A, B)) throw Error(ErrorKind::non_minimal, "some prime l has l^4 | A and l^6 | B");
  const MinimalCurve c{A, B};
  const auto cls = classify_pairs(c);
  const auto triple = cls.count == 2 ? recover_triple(c) : std::nullopt;
  if (args.json) {
    json j{{"A", A.str()}, {"B", B.str()}, {"height", height(c).str()}, {"minimal", true}, {"singular", false},
           {"count", cls.count}};
    json roots = json::array();
    for (const auto& r : cls.roots) roots.push_back(r.str());
    j["roots"] = roots;
    json ws = json::array();
    for (const auto& w : cls.witnesses) {
      ws.push_back({{"b0", w.b0.str()}, {"a", w.a.str()}, {"gamma", w.gamma.str()}, {"delta", w.delta.str()}});
    }
    j["witnesses"] = ws;
    if (triple) {
      j["triple"] = {{"r", triple->r}, {"v", triple->v}, {"w", triple->w}, {"case", case_name(triple->case_tag())}};
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "curve   y^2 = x^3 + (" << A << ")x + (" << B << ")\n";
  out << "height  " << height(c) << "\n";
  out << "pairs   " << cls.count << "\n";
  for (const auto& w : cls.witnesses) {
    out << "  b0 = " << w.b0 << ", a = " << w.a << "  (y^2 = x(x^2 + " << w.gamma << "x + " << w.delta << "^2))\n";
  }
  if (triple) {
    out << "triple  (r, v, w) = (" << triple->r << ", " << triple->v << ", " << triple->w << "), case ("
        << case_name(triple->case_tag()) << ")\n";
  }
  return 0;
}

struct CountArgs {
  std::string kind;
  std::string height;
  std::string method = "fast";
  unsigned threads = 0;
  bool json = false;
};

inline int cmd_count(const CountArgs& args, std::ostream& out) {
  const HeightSpec h = parse_height(args.height);
  const HeightBound X(h.parsed);
  const unsigned threads = resolve_threads(args.threads);
  json j{{"X", h.parsed.str()}};
  std::string text;
  if (args.kind == "n1") {
    const CensusResult r = args.method == "naive" ? count_n1_naive(X) : count_n1_fast(X, threads);
    j["n1"] = std::to_string(r.n1);
    j["n2"] = std::to_string(r.n2);
    j["lattice_count"] = std::to_string(r.lattice_count);
    j["method"] = method_name(r.method);
    j["elapsed_ms"] = r.elapsed_ms;
    text = "N1(" + h.raw + ") = " + std::to_string(r.n1) + "  (lattice " + std::to_string(r.lattice_count) + ", N2 " +
           std::to_string(r.n2) + ", " + std::string(method_name(r.method)) + ")";
  } else if (args.kind == "n2") {
    const CensusResult r = count_n2(X, threads);
    j["n2"] = std::to_string(r.n2);
    j["lattice_count"] = std::to_string(r.lattice_count);
    j["method"] = method_name(r.method);
    j["elapsed_ms"] = r.elapsed_ms;
    text = "N2(" + h.raw + ") = " + std::to_string(r.n2);
  } else {
    const FullScanResult r = count_full_scan(X, threads);
    j["n1"] = std::to_string(r.n1());
    j["n2"] = std::to_string(r.n2);
    j["curves"] = std::to_string(r.curves);
    j["no_pair"] = std::to_string(r.n0);
    j["exactly_one"] = std::to_string(r.exactly_one);
    j["more_than_two"] = std::to_string(r.more_than_two);
    j["method"] = method_name(CensusMethod::full_scan);
    j["elapsed_ms"] = r.elapsed_ms;
    text = "curves " + std::to_string(r.curves) + ": no pair " + std::to_string(r.n0) + ", one " +
           std::to_string(r.exactly_one) + ", two " + std::to_string(r.n2) + "; N1 = " + std::to_string(r.n1());
  }
  if (args.json) {
    out << j.dump(2) << "\n";
  } else {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f", j["elapsed_ms"].get<double>());
    out << text << "  [" << ms << " ms]\n";
  }
  return 0;
}

struct TableArgs {
  std::string kind;
  std::optional<std::string> max_height;
  unsigned threads = 0;
};

inline int cmd_table(const TableArgs& args, std::ostream& out) {
  std::optional<BigInt> cap;
  if (args.max_height) cap = parse_height(*args.max_height).parsed;
  const ConstantsReport c = assemble_constants();
  const unsigned threads = resolve_threads(args.threads);
  const bool n1 = args.kind == "n1";
  const unsigned first = n1 ? 18 : 30;
  const unsigned last = n1 ? 30 : 60;
  const unsigned step = n1 ? 3 : 6;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %14s   %s\n", "X", n1 ? "N1(X)" : "N2(X)",
                n1 ? "N1(X) - c11 X^(1/3) - c12 X^(1/6)" : "N2(X) - c21 X^(1/6)");
  out << line;
  for (unsigned e = first; e <= last; e += step) {
    const BigInt x = boost::multiprecision::pow(BigInt(10), e);
    if (cap && x > *cap) break;
    const HeightBound X(x);
    std::uint64_t n = 0;
    long double d = 0;
    if (n1) {
      n = count_n1_fast(X, threads).n1;
      d = delta_n1(n, x, c);
    } else {
      n = count_n2(X, threads).n2;
      d = delta_n2(n, x, c);
    }
    std::snprintf(line, sizeof line, "%-8s %14llu   %s\n", power_label(e).c_str(), static_cast<unsigned long long>(n),
                  format_delta(static_cast<double>(d)).c_str());
    out << line;
  }
  return 0;
}

struct ConstantsArgs {
  double tol = kDefaultConstantsTol;
  bool json = false;
};

inline int cmd_constants(const ConstantsArgs& args, std::ostream& out) {
  const ConstantsReport r = assemble_constants(args.tol);
  const std::pair<const char*, const Estimate*> rows[] = {
      {"zeta2", &r.zeta2}, {"zeta4", &r.zeta4}, {"alpha1", &r.alpha1}, {"alpha2", &r.alpha2},
      {"alpha3", &r.alpha3}, {"alpha4", &r.alpha4}, {"beta", &r.beta},   {"i1", &r.i1},
      {"i2", &r.i2},         {"i3", &r.i3},       {"i4", &r.i4},         {"s0_prime", &r.s0_prime},
      {"s1_prime", &r.s1_prime}, {"s0", &r.s0},   {"c11", &r.c11},       {"c12", &r.c12},
      {"c21", &r.c21}};
  const Estimate beta_id = r.beta_identity();
  const Estimate s0_id = r.s0_identity();
  if (args.json) {
    json j{{"tol", r.tol}};
    for (const auto& [name, e] : rows) j[name] = estimate_json(*e);
    j["identities"] = {
        {"2beta-alpha3-alpha4", {{"value", beta_id.value}, {"error", beta_id.error}, {"holds", r.beta_identity_holds()}}},
        {"s0-16s0'/(15zeta4)", {{"value", s0_id.value}, {"error", s0_id.error}, {"holds", r.s0_identity_holds()}}}};
    out << j.dump(2) << "\n";
    return 0;
  }
  char line[160];
  for (const auto& [name, e] : rows) {
    std::snprintf(line, sizeof line, "%-10s %s\n", name, format_estimate(*e).c_str());
    out << line;
  }
  std::snprintf(line, sizeof line, "2beta - (alpha3 + alpha4) = %.2e  (bound %.1e, %s)\n", beta_id.value, beta_id.error,
                r.beta_identity_holds() ? "ok" : "FAILED");
  out << line;
  std::snprintf(line, sizeof line, "s0 - 16 s0'/(15 zeta4)    = %.2e  (bound %.1e, %s)\n", s0_id.value, s0_id.error,
                r.s0_identity_holds() ? "ok" : "FAILED");
  out << line;
  return 0;
}

}  // namespace cli

/// Runs the tool on argv-style arguments (args[0] is the program name).
/// Returns 0 on success, 1 on a structured error and 2 on a usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elliptic curves with Galois-stable cyclic subgroups of order 4"};
  app.require_subcommand(1);

  cli::ClassifyArgs classify;
  auto* sc = app.add_subcommand("classify", "pairs of Galois-stable cyclic order-4 subgroups of y^2 = x^3 + Ax + B");
  sc->add_option("--a", classify.a, "coefficient A")->required();
  sc->add_option("--b", classify.b, "coefficient B")->required();
  sc->add_flag("--json", classify.json, "machine-readable output");

  cli::CountArgs count;
  auto* cc = app.add_subcommand("count", "exact N1(X), N2(X) or a full classification scan");
  cc->add_option("kind", count.kind, "n1, n2 or scan")->required()->check(CLI::IsMember({"n1", "n2", "scan"}));
  cc->add_option("--height", count.height, "height bound X (e.g. 10^30, 1e18, 4096)")->required();
  cc->add_option("--method", count.method, "n1 method")->check(CLI::IsMember({"naive", "fast"}));
  cc->add_option("--threads", count.threads, "worker threads, 0 = auto");
  cc->add_flag("--json", count.json, "machine-readable output");

  cli::TableArgs table;
  auto* tc = app.add_subcommand("table", "N1 or N2 table with delta column");
  tc->add_option("kind", table.kind, "n1 or n2")->required()->check(CLI::IsMember({"n1", "n2"}));
  tc->add_option("--max-height", table.max_height, "skip rows with X above this bound");
  tc->add_option("--threads", table.threads, "worker threads, 0 = auto");

  cli::ConstantsArgs constants;
  auto* kc = app.add_subcommand("constants", "asymptotic constants with error bounds");
  kc->add_option("--tol", constants.tol, "absolute tolerance")->check(CLI::PositiveNumber);
  kc->add_flag("--json", constants.json, "machine-readable output");

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  bool as_json = false;
  try {
    if (sc->parsed()) {
      as_json = classify.json;
      return cli::cmd_classify(classify, out);
    }
    if (cc->parsed()) {
      as_json = count.json;
      return cli::cmd_count(count, out);
    }
    if (tc->parsed()) return cli::cmd_table(table, out);
    as_json = constants.json;
    return cli::cmd_constants(constants, out);
  } catch (const Error& e) {
    cli::report_error(e, as_json, out, err);
    return 1;
  }
}

}  // namespace isog4
