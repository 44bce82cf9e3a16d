// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <isog4/census.hpp>
#include <isog4/cli.hpp>
#include <isog4/constants.hpp>
#include <isog4/curves.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace isog4;

namespace {

BigInt pow10(unsigned e) { return boost::multiprecision::pow(BigInt(10), e); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back((ok ? "ok   " : "MISS ") + what);
  }
  void info(const std::string& what) { notes.push_back("info " + what); }
};

std::string fmt(const char* f, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Counts shared by several criteria.
std::map<unsigned, std::uint64_t> n1_rows;
std::map<unsigned, std::uint64_t> n2_rows;

Outcome table_n2() {
  Outcome o;
  const std::map<unsigned, std::uint64_t> required{{30, 3544}, {36, 35486}, {42, 355140}};
  const std::map<unsigned, std::uint64_t> stretch{{48, 3551596}, {54, 35515580}, {60, 355154548}};
  for (const auto* rows : {&required, &stretch}) {
    for (const auto& [e, expected] : *rows) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::uint64_t n = count_n2(HeightBound(pow10(e)), 0).n2;
      const double s = seconds_since(t0);
      n2_rows[e] = n;
      const std::string line = "N2(10^" + std::to_string(e) + ") = " + std::to_string(n) + " (expected " +
                               std::to_string(expected) + ")" + fmt(" in %.2fs", s);
      if (rows == &required) {
        o.check(n == expected && s <= 60, line);
      } else {
        o.check(n == expected && s <= 3600, "stretch " + line);
      }
    }
  }
  return o;
}

Outcome table_n1() {
  Outcome o;
  const std::map<unsigned, std::uint64_t> required{{18, 956574}, {21, 9571217}, {24, 95731445}};
  const std::map<unsigned, std::uint64_t> stretch{{27, 957372610}, {30, 9573916722ULL}};
  for (const auto* rows : {&required, &stretch}) {
    for (const auto& [e, expected] : *rows) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::uint64_t n = count_n1_fast(HeightBound(pow10(e)), 0).n1;
      const double s = seconds_since(t0);
      n1_rows[e] = n;
      const std::string line = "N1(10^" + std::to_string(e) + ") = " + std::to_string(n) + " (expected " +
                               std::to_string(expected) + ")" + fmt(" in %.2fs", s);
      if (rows == &required) {
        o.check(n == expected && s <= 60, line);
      } else {
        o.check(n == expected && s <= 1800, "stretch " + line);
      }
    }
  }
  return o;
}

Outcome deltas(const ConstantsReport& c) {
  Outcome o;
  const std::string d1 = cli::format_delta(static_cast<double>(cli::delta_n1(n1_rows.at(18), pow10(18), c)));
  const std::string d2 = cli::format_delta(static_cast<double>(cli::delta_n2(n2_rows.at(36), pow10(36), c)));
  o.check(d1 == "44.9", "N1 delta at 10^18 = " + d1 + " (expected 44.9)");
  o.check(d2 == "-29.4", "N2 delta at 10^36 = " + d2 + " (expected -29.4)");
  return o;
}

Outcome constants(ConstantsReport& out) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  out = assemble_constants();
  const double s = seconds_since(t0);
  auto near = [&](const char* name, const Estimate& e, double printed, double tol) {
    const double diff = std::abs(e.value - printed);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s = %.16f (+- %.1e), printed %.15f, |diff| = %.2e, tol %.0e", name, e.value, e.error,
                  printed, diff, tol);
    o.check(diff <= tol, buf);
  };
  near("c11", out.c11, 0.957400377047, 1e-9);
  near("c12", out.c12, -0.871250852030, 1e-9);
  near("c21", out.c21, 0.035515447977, 1e-9);
  near("alpha3", out.alpha3, 0.691002044642207, 1e-12);
  near("beta", out.beta, 0.406683250144951, 1e-12);
  const Estimate id = out.beta_identity();
  o.check(std::abs(id.value) < 1e-10, fmt("|2beta - alpha3 - alpha4| = %.2e < 1e-10", std::abs(id.value)));
  o.check(s <= 10, fmt("runtime %.2fs <= 10s", s));
  return o;
}

Outcome oracles() {
  Outcome o;
  std::mt19937_64 rng(20240518);
  std::uniform_int_distribution<long> d(1, 10000000000L);
  int mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const HeightBound X(d(rng));
    const auto fast = count_n1_fast(X, 0);
    const auto naive = count_n1_naive(X);
    mismatches += fast.n1 != naive.n1 || fast.n2 != naive.n2;
  }
  o.check(mismatches == 0, "fast vs naive N1 on 50 random X <= 10^10: " + std::to_string(mismatches) + " mismatches");
  for (const BigInt& x : {pow10(6), BigInt(2 * pow10(10))}) {
    const HeightBound X(x);
    const auto scan = count_full_scan(X, 0);
    const auto fast = count_n1_fast(X, 0);
    o.check(scan.n1() == fast.n1 && scan.n2 == fast.n2 && scan.more_than_two == 0,
            "full scan at X = " + x.str() + ": (N1, N2) = (" + std::to_string(scan.n1()) + ", " +
                std::to_string(scan.n2) + ") vs lattice/triples (" + std::to_string(fast.n1) + ", " +
                std::to_string(fast.n2) + ")");
  }
  return o;
}

Outcome identities(const std::vector<TwoPairTriple>& triples) {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(0, 10000);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const BigInt v = d(rng), w = d(rng);
    const BigInt q8 = p8(v, w), q12 = p12(v, w);
    const BigInt v4 = v * v * v * v, w4 = w * w * w * w;
    const BigInt diff = v4 - w4;
    bad += q8 * q8 * q8 - q12 * q12 != 108 * v4 * w4 * diff * diff * diff * diff;
  }
  o.check(bad == 0, "p8^3 - p12^2 = 108 v^4 w^4 (v^4 - w^4)^4 on 10^4 random pairs: " + std::to_string(bad) + " failures");
  bad = 0;
  int done = 0;
  std::uniform_int_distribution<long> e(1, 10000);
  while (done < 1000) {
    const long v = e(rng), w = e(rng);
    if (std::gcd(v, w) != 1) continue;
    ++done;
    const BigInt q8 = p8<BigInt>(v, w), q12 = p12<BigInt>(v, w);
    if ((v * w) % 2 == 0) {
      bad += gcd(q8, q12) != 1;
    } else {
      bad += q8 % 64 != 16 || ((q12 % 256) + 256) % 256 != 192 || gcd(BigInt(q8 / 16), BigInt(q12 / 64)) != 1;
    }
  }
  o.check(bad == 0, "divisibility and gcd facts on 10^3 coprime pairs: " + std::to_string(bad) + " failures");
  bad = 0;
  for (const auto& t : triples) {
    const MinimalCurve c = param_AB(t);
    const BigInt a = abs(c.A);
    bad += 4 * a * a * a < 27 * c.B * c.B;
  }
  o.check(bad == 0, "4|A|^3 >= 27B^2 for all " + std::to_string(triples.size()) + " triples of height <= 10^24: " +
                        std::to_string(bad) + " failures");
  return o;
}

Outcome bijection(const std::vector<TwoPairTriple>& triples) {
  Outcome o;
  std::set<std::pair<BigInt, BigInt>> images;
  int not_minimal = 0, singular = 0, wrong_count = 0, not_inverted = 0;
  for (const auto& t : triples) {
    const MinimalCurve c = param_AB(t);
    images.insert({c.A, c.B});
    not_minimal += !is_minimal(c.A, c.B);
    singular += is_singular(c.A, c.B);
    wrong_count += classify_pairs(c).count != 2;
    not_inverted += recover_triple(c) != std::optional<TwoPairTriple>(t);
  }
  o.info(std::to_string(triples.size()) + " triples, N2(10^24) = " + std::to_string(count_n2(HeightBound(pow10(24))).n2));
  o.check(images.size() == triples.size(), "injective: " + std::to_string(images.size()) + " distinct images");
  o.check(not_minimal == 0 && singular == 0,
          "minimal and nonsingular: " + std::to_string(not_minimal + singular) + " failures");
  o.check(wrong_count == 0, "exactly two pairs: " + std::to_string(wrong_count) + " failures");
  o.check(not_inverted == 0, "recover_triple inverts param_AB: " + std::to_string(not_inverted) + " failures");
  return o;
}

Outcome envelope(const ConstantsReport& c) {
  Outcome o;
  for (const auto& [e, n] : n1_rows) {
    const double dev = std::abs(static_cast<double>(cli::delta_n1(n, pow10(e), c)));
    const double bound = std::pow(10.0, 0.13 * e);
    o.check(dev <= bound, "|N1 - main terms| at 10^" + std::to_string(e) + " = " + fmt("%.1f", dev) + " <= X^0.13 = " +
                              fmt("%.1f", bound));
  }
  for (const auto& [e, n] : n2_rows) {
    const double dev = std::abs(static_cast<double>(cli::delta_n2(n, pow10(e), c)));
    const double bound = std::pow(10.0, e / 12.0);
    o.check(dev <= bound, "|N2 - c21 X^(1/6)| at 10^" + std::to_string(e) + " = " + fmt("%.1f", dev) +
                              " <= X^(1/12) = " + fmt("%.1f", bound));
  }
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, Outcome>> results;
  ConstantsReport c;
  const auto triples = enumerate_triples(HeightBound(pow10(24)));

  results.emplace_back("N2 table rows 10^30, 10^36, 10^42 exact", table_n2());
  results.emplace_back("N1 table rows 10^18, 10^21, 10^24 exact", table_n1());
  Outcome k = constants(c);
  results.emplace_back("delta columns 44.9 and -29.4", deltas(c));
  results.emplace_back("constants c11, c12, c21, alpha3, beta and 2beta = alpha3 + alpha4", k);
  results.emplace_back("oracle equivalence (naive, full scan)", oracles());
  results.emplace_back("algebraic identities", identities(triples));
  results.emplace_back("bijection of triples and two-pair curves", bijection(triples));
  results.emplace_back("error envelopes on every table row", envelope(c));

  int failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [name, o] = results[i];
    std::printf("%s [%zu] %s\n", o.pass ? "PASS" : "FAIL", i + 1, name.c_str());
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
