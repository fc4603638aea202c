#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "plateball/errors.hpp"
#include "plateball/root_localization.hpp"

using namespace plateball;
constexpr double pi = std::numbers::pi;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return g;
}

}  // namespace

TEST(BracketP1, Examples) {
  const Bracket b = bracket_p1(ModulusM(0.2));
  EXPECT_NEAR(b.lo, 0.2 * oracle::d(oracle::rho()), 1e-12);
  EXPECT_NEAR(b.hi, 0.3 * pi, 1e-12);
  for (double m : {1.0 / 3.0, 2.0}) {
    const Bracket e = bracket_p1(ModulusM(m));
    const double want = m < 1 ? pi / 2 : 2 * pi;
    EXPECT_LE(e.lo, want);
    EXPECT_GE(e.hi, want);
  }
}

TEST(BracketP2, Examples) {
  const Bracket a = bracket_p2(ModulusM(0.3));
  EXPECT_NEAR(a.lo, 1.71, 1e-12);
  EXPECT_NEAR(a.hi, 0.6 * pi, 1e-12);
  const Bracket b = bracket_p2(ModulusM(0.5));
  EXPECT_NEAR(b.lo, pi - std::asin(1.0 / 3.0), 1e-12);
  EXPECT_NEAR(b.hi, pi + 1.0, 1e-12);
  const Bracket c = bracket_p2(ModulusM(2.0));
  EXPECT_LE(c.lo, 2 * pi);
  EXPECT_GE(c.hi, 2 * pi);
}

TEST(Brackets, CertifyOnLogGrid) {
  for (const auto& [lo, hi] : {std::pair{0.02, 0.98}, std::pair{1.02, 50.0}}) {
    for (double m : log_grid(lo, hi, 500)) {
      const ModulusM mm(m);
      EXPECT_TRUE(certifies(objective_g1(mm), bracket_p1(mm))) << m;
      EXPECT_TRUE(certifies(objective_g2(mm), bracket_p2(mm))) << m;
    }
  }
}

TEST(RefineRoot, Examples) {
  const ModulusM third(1.0 / 3.0);
  EXPECT_NEAR(refine_root(objective_g1(third), bracket_p1(third), 1e-12).value, pi / 2, 1e-12);
  Bracket b;
  b.lo = 3.0;
  b.hi = 3.3;
  EXPECT_NEAR(refine_root(objective_gtilde(SParam(3.0)), b, 1e-12).value, pi, 1e-12);
  const ModulusM two(2.0);
  EXPECT_NEAR(refine_root(objective_g2(two), bracket_p2(two), 1e-12).value, 2 * pi, 1e-12);
}

TEST(Roots, ExamplesAndExactValues) {
  EXPECT_NEAR(p1(ModulusM(0.5)).value, pi, 1e-10);
  EXPECT_NEAR(p2(ModulusM(1.5)).value, 3 * pi, 1e-10);
  for (int s = 2; s <= 10; ++s) EXPECT_NEAR(x1(SParam(s)).value, pi, 1e-10) << s;
  for (int k = 1; k <= 4; ++k) EXPECT_NEAR(x2(SParam(2 * k + 1)).value, pi, 1e-10) << k;
  const RootResult r = p1(ModulusM(0.45));
  EXPECT_GE(r.value, r.bracket.lo);
  EXPECT_LE(r.value, r.bracket.hi);
}

TEST(Roots, MatchQuadOracleAtGenericPoints) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.03, 0.97);
  for (int i = 0; i < 40; ++i) {
    const double m = u(rng);
    const double mm = i % 2 ? 1.0 / m : m;
    const RootResult a = p1(ModulusM(mm)), b = p2(ModulusM(mm));
    EXPECT_NEAR(a.value, oracle::d(oracle::p1(mm)), 1e-9 * std::max(1.0, a.value)) << mm;
    EXPECT_NEAR(b.value, oracle::d(oracle::p2(mm)), 1e-9 * std::max(1.0, b.value)) << mm;
    EXPECT_TRUE(a.changed_sign);
    EXPECT_TRUE(b.changed_sign);
  }
  std::uniform_real_distribution<double> us(1.2, 25.0);
  for (int i = 0; i < 40; ++i) {
    const double s = us(rng);
    EXPECT_NEAR(x1(SParam(s)).value, oracle::d(oracle::x1(s)), 1e-9) << s;
    EXPECT_NEAR(x2(SParam(s)).value, oracle::d(oracle::x2(s)), 1e-9) << s;
  }
}

TEST(Roots, VerifyWithOracleOption) {
  RootOptions opt;
  opt.verify_with_oracle = true;
  for (double m : {0.05, 0.45, 0.6, 0.9, 1.4, 7.0}) {
    EXPECT_NO_THROW(p1(ModulusM(m), opt)) << m;
    EXPECT_NO_THROW(p2(ModulusM(m), opt)) << m;
  }
}

TEST(Roots, MonotoneP1) {
  double prev = 0.0;
  for (double m : log_grid(0.02, 0.98, 300)) {
    const double v = p1(ModulusM(m)).value;
    EXPECT_GE(v, prev - 1e-12) << m;
    prev = v;
  }
  prev = 1e300;
  for (double m : log_grid(1.02, 50.0, 300)) {
    const double v = p1(ModulusM(m)).value;
    EXPECT_LE(v, prev + 1e-12) << m;
    prev = v;
  }
}

TEST(Roots, FunctionalEquation) {
  for (double m : log_grid(0.02, 0.98, 100)) {
    EXPECT_NEAR(p1(ModulusM(m)).value, m * p1(ModulusM(1 / m)).value, 1e-9) << m;
    EXPECT_NEAR(p2(ModulusM(m)).value, m * p2(ModulusM(1 / m)).value, 1e-9) << m;
  }
}

TEST(Lemma1, HalfIntervals) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 1; k <= 4; ++k) {
    for (int i = 0; i < 50; ++i) {
      const double lo = 2 * k + 1e-6 + u(rng) * (1 - 2e-6), hi = lo + 1.0;
      const double a = x1(SParam(lo)).value, b = x1(SParam(hi)).value;
      EXPECT_GE(a, pi - std::asin(1 / lo));
      EXPECT_LT(a, pi);
      EXPECT_GT(b, pi);
      EXPECT_LE(b, pi + std::asin(1 / hi));
      EXPECT_LE(std::abs(a - pi), eval_a(lo) + 1e-12);
      EXPECT_LE(std::abs(b - pi), eval_a(hi) + 1e-12);
    }
  }
}

TEST(Offsets, H1H2Examples) {
  // Midpoint of (1/3, 1/2): the three branches evaluated independently.
  const oracle::q m = 5.0Q / 12, s = (1 + m) / (1 - m);
  const oracle::q b1 = s / 2 - 1, b2 = cbrtq(3 - s), b3 = s / oracle::pi() * asinq(1 / s);
  EXPECT_NEAR(eval_h1(ModulusM(5.0 / 12.0)), oracle::d(fminq(b1, fminq(b2, b3))), 1e-15);
  // Limits at the left endpoints (2k-1)/(2k+1).
  for (int k = 1; k <= 4; ++k) {
    const double m0 = (2.0 * k - 1) / (2.0 * k + 1);
    if (k > 1) EXPECT_LT(eval_h1(ModulusM(m0 * (1 + 1e-12))), 1e-9) << k;
  }
  for (double mm = 0.34; mm < 0.999; mm += 0.0011) {
    const double s = (1 + mm) / (1 - mm);
    if (s - 2 * std::floor(s / 2) <= 1.0) {
      const double v = eval_h1(ModulusM(mm));
      EXPECT_GE(v, 0.0);
      EXPECT_LT(v, 0.3264);
    } else {
      const double v = eval_h2(ModulusM(mm));
      EXPECT_GE(v, 0.0);
      EXPECT_LT(v, 0.3264);
    }
  }
  EXPECT_THROW(eval_h1(ModulusM(0.2)), DomainError);
}

TEST(Offsets, AExamples) {
  EXPECT_NEAR(eval_a(4.0), 0.0, 1e-15);
  EXPECT_NEAR(eval_a(4.5), std::min(pi * 0.25 / 4.5, std::asin(1 / 4.5)), 1e-15);
  EXPECT_LT(eval_a(1e6 + 0.5), 1e-5);
  EXPECT_THROW(eval_a(1.5), DomainError);
}

TEST(XRootsOfH, Examples) {
  EXPECT_NEAR(x_roots_of_h(SParam(5.0)).first, pi, 1e-12);
  const double a = x_roots_of_h(SParam(3.5)).first;
  EXPECT_GE(a, pi - std::asin(2.0 / 7.0));
  EXPECT_LT(a, pi);
  const double b = x_roots_of_h(SParam(4.5)).first;
  EXPECT_GT(b, pi);
  EXPECT_LE(b, pi + std::asin(2.0 / 9.0));
  for (double s : {3.2, 4.7, 6.1, 9.9}) {
    const auto [r1, r2] = x_roots_of_h(SParam(s));
    const oracle::q sq = s;
    EXPECT_LT(std::abs(oracle::d(oracle::h(r1, sq))), 1e-10);
    EXPECT_LT(std::abs(oracle::d(oracle::h(r2, sq))), 1e-10);
    EXPECT_LT(r1, r2);
  }
}

TEST(OracleMinRoot, Examples) {
  const RootResult r = oracle_min_root(objective_g1(ModulusM(0.2)), 1e-9, 3 * pi * 0.2 / 2 + 0.1, 1e-4);
  EXPECT_NEAR(r.value, p1(ModulusM(0.2)).value, 1e-9);
  EXPECT_THROW(objective_g2(ModulusM(1.0)), DomainError);
  const RootResult x = oracle_min_root(objective_gtilde(SParam(2.5)), 1e-9, 3 * pi / 2, 1e-4);
  EXPECT_GE(x.value, pi - std::asin(0.4));
  EXPECT_LT(x.value, pi);
  EXPECT_THROW(oracle_min_root(objective_gtilde(SParam(2.5)), 1e-9, 1.0, 1e-4), RootError);
}

TEST(OracleStep, Formula) {
  EXPECT_DOUBLE_EQ(oracle_step(0.5, 100.0), pi * 0.5 / 64);
  EXPECT_DOUBLE_EQ(oracle_step(0.5, 0.1), 1e-3);
  EXPECT_DOUBLE_EQ(oracle_step(2.0, 1e-9), pi / 2048);
}

TEST(Errors, Domain) {
  EXPECT_THROW(p1(ModulusM(1.0 + 1e-7)), DomainError);
  EXPECT_THROW(x_roots_of_h(SParam(2.5)), DomainError);
  EXPECT_THROW(eval_h2(ModulusM(1.5)), DomainError);
}
