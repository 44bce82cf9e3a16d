#include <isog4/census.hpp>
#include <isog4/constants.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace isog4;

namespace {

BigInt pow10(unsigned e) { return boost::multiprecision::pow(BigInt(10), e); }

// Lattice tally by the direct flags, over a box wide enough for R1(X).
std::uint64_t lattice_by_flags(const HeightBound& X, i64 box) {
  std::uint64_t n = 0;
  for (i64 a = 0; a <= 2 * box; ++a) {
    for (i64 b = -box; b <= box; ++b) {
      const auto p = r1_membership(X, a, b);
      n += p.in_region && !p.singular && !p.square_excluded;
    }
  }
  return n;
}

}  // namespace

TEST(Membership, Examples) {
  const HeightBound X(4096);
  const auto p = r1_membership(X, 3, 2);
  EXPECT_TRUE(p.in_region);
  EXPECT_TRUE(p.singular);
  EXPECT_TRUE(r1_membership(X, 0, 1).singular);
  EXPECT_FALSE(r1_membership(X, 4, 2).in_region);
  EXPECT_TRUE(r1_membership(X, 4, 0).square_excluded);
  EXPECT_FALSE(r1_membership(X, 6, 0).square_excluded);
  EXPECT_TRUE(r1_membership(X, 4, 8).square_excluded);
}

TEST(Membership, SingularMatchesDiscriminant) {
  for (i64 a = 0; a <= 60; ++a) {
    for (i64 b = -60; b <= 60; ++b) {
      const i64 A = a * a - 3 * b * b;
      const i64 B = 2 * b * b * b - a * a * b;
      EXPECT_EQ(r1_membership(HeightBound(1), a, b).singular, is_singular(A, B)) << a << " " << b;
    }
  }
}

TEST(NaiveN1, Examples) {
  EXPECT_EQ(count_n1_naive(HeightBound(1)).n1, 0u);
  EXPECT_EQ(count_n1_naive(HeightBound(4096)).n1, 11u);
  EXPECT_EQ(count_n1_naive(HeightBound(pow10(6))).n1, count_full_scan(HeightBound(pow10(6))).n1());
  EXPECT_THROW(count_n1_naive(HeightBound(BigInt(pow10(12) + 1))), Error);
}

TEST(FastN1, MatchesNaiveAtFixedPoints) {
  for (long x : {1L, 1000L, 4096L, 1000000L, 1000000000L}) {
    const HeightBound X(x);
    const auto fast = count_n1_fast(X);
    const auto naive = count_n1_naive(X);
    EXPECT_EQ(fast.n1, naive.n1) << x;
    EXPECT_EQ(fast.lattice_count, naive.lattice_count) << x;
    EXPECT_EQ(fast.n1, fast.lattice_count - fast.n2);
  }
}

TEST(FastN1, MatchesFlagEnumeration) {
  // Independent of the naive counter's box: count with a generous box.
  for (long x : {500L, 77777L, 123456789L}) {
    const HeightBound X(x);
    const i64 box = static_cast<i64>(std::pow(static_cast<double>(x), 1.0 / 6)) + 5;
    EXPECT_EQ(count_n1_fast(X).lattice_count, lattice_by_flags(X, box)) << x;
  }
}

TEST(FastN1, MatchesNaiveRandom) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> d(1, 10000000000L);
  for (int i = 0; i < 10; ++i) {
    const HeightBound X(d(rng));
    EXPECT_EQ(count_n1_fast(X).n1, count_n1_naive(X).n1);
  }
}

TEST(FastN1, ThreadCountIndependent) {
  const HeightBound X(pow10(21));
  const auto one = count_n1_fast(X, 1);
  for (unsigned t : {2u, 3u, 7u}) {
    const auto many = count_n1_fast(X, t);
    EXPECT_EQ(one.n1, many.n1);
    EXPECT_EQ(one.n2, many.n2);
  }
}

TEST(FastN1, Table) {
  EXPECT_EQ(count_n1_fast(HeightBound(pow10(18))).n1, 956574u);
  EXPECT_EQ(count_n1_fast(HeightBound(pow10(24))).n1, 95731445u);
}

TEST(FastN1, Monotone) {
  std::uint64_t prev1 = 0, prev2 = 0;
  for (unsigned e = 0; e <= 24; ++e) {
    const auto r = count_n1_fast(HeightBound(pow10(e)));
    EXPECT_GE(r.n1, prev1);
    EXPECT_GE(r.n2, prev2);
    prev1 = r.n1;
    prev2 = r.n2;
  }
}

TEST(N2, Examples) {
  EXPECT_EQ(count_n2(HeightBound(pow10(10))).n2, 0u);
  EXPECT_EQ(count_n2(HeightBound(BigInt(12018741227LL))).n2, 0u);
  EXPECT_EQ(count_n2(HeightBound(BigInt(12018741228LL))).n2, 2u);
  EXPECT_EQ(count_n2(HeightBound(pow10(30))).n2, 3544u);
}

TEST(N2, MatchesTripleEnumeration) {
  for (unsigned e : {12u, 15u, 18u, 21u, 24u, 27u}) {
    const HeightBound X(pow10(e));
    EXPECT_EQ(count_n2(X).n2, enumerate_triples(X).size()) << e;
  }
}

TEST(FullScan, Examples) {
  const auto small = count_full_scan(HeightBound(108));
  EXPECT_GE(small.exactly_one, 1u);
  EXPECT_EQ(small.curves, small.n0 + small.exactly_one + small.n2 + small.more_than_two);
  const auto m = count_full_scan(HeightBound(pow10(6)));
  EXPECT_EQ(m.n2, 0u);
  EXPECT_EQ(m.more_than_two, 0u);
  EXPECT_EQ(m.n1(), count_n1_fast(HeightBound(pow10(6))).n1);
  EXPECT_THROW(count_full_scan(HeightBound(BigInt(pow10(11) + 1))), Error);
}

TEST(FullScan, MatchesBruteForceTally) {
  // Trial roots and a direct square test for every (A, B) in the box.
  for (long x : {108L, 5000L, 300000L}) {
    const HeightBound X(x);
    std::uint64_t curves = 0, tally[3] = {0, 0, 0};
    for (i64 A = -200; A <= 200; ++A) {
      for (i64 B = -200; B <= 200; ++B) {
        if (!X.admits(A, B) || is_singular(A, B)) continue;
        bool minimal = true;
        for (i64 l = 2; l <= 4; ++l) minimal = minimal && !(A % (l * l * l * l) == 0 && B % (l * l * l * l * l * l) == 0);
        if (!minimal) continue;
        ++curves;
        int pairs = 0;
        for (i64 b = -20; b <= 20; ++b) {
          if (b * b * b + A * b + B != 0) continue;
          const i64 s = 3 * b * b + A;
          for (i64 a = 1; a * a <= s; ++a) pairs += a * a == s;
        }
        ++tally[pairs];
      }
    }
    const auto scan = count_full_scan(X);
    EXPECT_EQ(scan.curves, curves) << x;
    EXPECT_EQ(scan.n0, tally[0]) << x;
    EXPECT_EQ(scan.exactly_one, tally[1]) << x;
    EXPECT_EQ(scan.n2, tally[2]) << x;
  }
}

TEST(FullScan, MatchesLatticeAt1e8) {
  const HeightBound X(pow10(8));
  const auto scan = count_full_scan(X);
  const auto fast = count_n1_fast(X);
  EXPECT_EQ(scan.n1(), fast.n1);
  EXPECT_EQ(scan.n2, fast.n2);
  EXPECT_EQ(scan.more_than_two, 0u);
}

TEST(FullScan, PrefilterIsExact) {
  // The modular prefilter may only drop cubics without an integer root.
  const detail::CubicRootSieve sieve;
  for (i64 A = -300; A <= 300; ++A) {
    for (i64 B = -300; B <= 300; ++B) {
      if (!sieve.may_have_root(A, B)) ASSERT_TRUE(integer_roots_cubic(A, B).empty()) << A << " " << B;
    }
  }
}

TEST(R2Lattice, Examples) {
  EXPECT_EQ(count_r2_lattice(16, {1, 1}, true), 1u);
  EXPECT_EQ(count_r2_lattice(15, {1, 1}, true), 0u);
}

TEST(R2Lattice, AreaLaw) {
  // Lattice points per parity class approach beta z^(1/4) / 4.
  const double beta = compute_beta().value;
  const i128 z = static_cast<i128>(1e16);
  const double expected = beta * std::pow(1e16, 0.25) / 4;
  for (Parity p : {Parity{0, 1}, Parity{1, 0}, Parity{1, 1}}) {
    const double n = static_cast<double>(count_r2_lattice(z, p, false));
    EXPECT_LT(std::abs(n - expected) / expected, 0.03) << p.v << p.w << " " << n << " vs " << expected;
  }
}

TEST(R1Area, ApproachesTwiceI4) {
  const double i4 = compute_i_integrals().i4.value;
  const auto X = HeightBound(pow10(18));
  const double n = static_cast<double>(count_r1_points(X, true));
  EXPECT_LT(std::abs(n / 1e6 - 2 * i4) / (2 * i4), 0.05);
}

TEST(Envelope, TableRows) {
  const ConstantsReport c = assemble_constants(1e-10);
  for (unsigned e : {18u, 21u, 24u}) {
    const double x = std::pow(10.0, e);
    const double n1 = static_cast<double>(count_n1_fast(HeightBound(pow10(e))).n1);
    EXPECT_LE(std::abs(n1 - c.c11.value * std::cbrt(x) - c.c12.value * std::pow(x, 1.0 / 6)), std::pow(x, 0.13));
  }
  for (unsigned e : {30u, 36u, 42u}) {
    const double x = std::pow(10.0, e);
    const double n2 = static_cast<double>(count_n2(HeightBound(pow10(e))).n2);
    EXPECT_LE(std::abs(n2 - c.c21.value * std::pow(x, 1.0 / 6)), std::pow(x, 1.0 / 12));
  }
}
