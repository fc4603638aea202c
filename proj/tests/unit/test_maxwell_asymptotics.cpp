#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "plateball/errors.hpp"
#include "plateball/maxwell_asymptotics.hpp"

using namespace plateball;
constexpr double pi = std::numbers::pi;

TEST(MaxwellTimes, Examples) {
  EXPECT_NEAR(maxwell_times(ModulusM(1.0 / 3.0)).t1, 3 * pi, 1e-9);
  EXPECT_NEAR(maxwell_times(ModulusM(2.0)).t1, 2 * pi, 1e-9);
  EXPECT_NEAR(maxwell_times(ModulusM(0.5)).t1, 4 * pi, 1e-9);
}

TEST(MaxwellTimes, DivergeNearOne) {
  for (int d : {2, 3}) {
    const double e = std::pow(10.0, -d);
    for (double m : {1 - e, 1 + e}) {
      const MaxwellTimes t = maxwell_times(ModulusM(m));
      EXPECT_GT(t.t1, std::pow(10.0, d - 1)) << m;
      EXPECT_GT(t.t2, std::pow(10.0, d - 1)) << m;
    }
  }
}

TEST(ExactPoints, Tables) {
  const auto a = exact_points_p1(5);
  bool saw = false;
  for (const auto& e : a) {
    EXPECT_NEAR(e.p, pi * e.m / std::abs(1 - e.m), 1e-12);
    if (std::abs(e.m - 0.6) < 1e-15) {
      saw = true;
      EXPECT_NEAR(e.p, 1.5 * pi, 1e-12);
    }
  }
  EXPECT_TRUE(saw);
  const auto b = exact_points_p2(5);
  saw = false;
  for (const auto& e : b) {
    if (std::abs(e.m - 2.0 / 3.0) < 1e-15) {
      saw = true;
      EXPECT_NEAR(e.p, 2 * pi, 1e-12);
    }
  }
  EXPECT_TRUE(saw);
  EXPECT_EQ(b.size(), 10u);
}

TEST(Crossings, EnclosuresAndResiduals) {
  const auto cps = find_crossings(5);
  int nontrivial = 0;
  for (const auto& c : cps) {
    EXPECT_LT(c.residual, 1e-8) << c.k << " " << c.m_bar;
    if (c.trivial) {
      const double want = c.above_one ? pi * (c.k + 1) : pi * c.k;
      EXPECT_NEAR(c.p_at_crossing, want, 1e-9);
      continue;
    }
    ++nontrivial;
    EXPECT_GT(c.m_bar, c.lo);
    EXPECT_LT(c.m_bar, c.hi);
    // Independent check: both 128-bit roots agree at the full-precision m_bar.
    const oracle::q mq = oracle::q(c.m_bar) + c.m_bar_tail;
    const double d = oracle::d(oracle::p1(mq) - oracle::p2(mq));
    EXPECT_LT(std::abs(d), 1e-8) << c.k << " " << c.above_one;
  }
  EXPECT_EQ(nontrivial, 10);
}

TEST(Crossings, Examples) {
  const auto cps = find_crossings(1);
  bool below_trivial = false, below_nontrivial = false, above_trivial = false;
  for (const auto& c : cps) {
    if (c.trivial && !c.above_one) {
      below_trivial = true;
      EXPECT_DOUBLE_EQ(c.m_bar, 0.5);
      EXPECT_NEAR(c.p_at_crossing, pi, 1e-12);
    } else if (!c.trivial && !c.above_one) {
      below_nontrivial = true;
      EXPECT_GT(c.m_bar, 0.6 - 2.0 / 95.0);
      EXPECT_LT(c.m_bar, 0.6);
    } else if (c.trivial) {
      above_trivial = true;
      EXPECT_DOUBLE_EQ(c.m_bar, 2.0);
      EXPECT_NEAR(c.p_at_crossing, 2 * pi, 1e-12);
    }
  }
  EXPECT_TRUE(below_trivial && below_nontrivial && above_trivial);
  EXPECT_EQ(crossing_enclosure_below(1).first, 0.6 - 2.0 / 95.0);
}

TEST(HyperbolaMeeting, BelowCrossing) {
  for (int k = 1; k <= 4; ++k) {
    const HyperbolaMeeting hm = find_p2_hyperbola_meeting(k);
    const auto [lo, hi] = crossing_enclosure_below(k);
    EXPECT_GT(hm.m_star, lo);
    EXPECT_LT(hm.m_star, hi);
    const oracle::q s = hm.s_star;
    EXPECT_LT(std::abs(oracle::d(oracle::g2t(oracle::pi(), s))), 1e-9);
  }
}

TEST(Derivatives, P1Sign) {
  for (double m = 1.063; m < 2.0; m += 0.05) {
    EXPECT_LT(p1_derivative(ModulusM(m)), 0.0) << m;
  }
  EXPECT_THROW(p1_derivative(ModulusM(0.5)), DegenerateDerivative);
}

TEST(Derivatives, P1MatchesDifference) {
  const double h = 1e-6, m = 0.4;
  const double fd = oracle::d((oracle::p1(m + h) - oracle::p1(m - h)) / (2 * h));
  EXPECT_NEAR(p1_derivative(ModulusM(m)), fd, 1e-5 * std::abs(fd));
}

TEST(Derivatives, X2AtOdd) {
  EXPECT_DOUBLE_EQ(x2_derivative_at_odd(1), -pi / 6);
  EXPECT_DOUBLE_EQ(x2_derivative_at_odd(2), -pi / 10);
  for (int k = 1; k <= 4; ++k) {
    const double num = x2_derivative_numeric(SParam(2 * k + 1));
    EXPECT_NEAR(num / x2_derivative_at_odd(k), 1.0, 1e-4) << k;
  }
}

TEST(Derivatives, AcuteAngleAtTrivialCrossing) {
  // One-sided slopes at m = k/(k+1): p1 steepens as h shrinks, p2 settles.
  for (int k = 1; k <= 3; ++k) {
    const oracle::q m0 = oracle::q(k) / (k + 1);
    auto slope1 = [&](oracle::q h) { return oracle::d((oracle::p1(m0 + h) - oracle::p1(m0)) / h); };
    auto slope2 = [&](oracle::q h) { return oracle::d((oracle::p2(m0 + h) - oracle::p2(m0)) / h); };
    const double a = slope1(1e-4Q), b = slope1(1e-6Q);
    EXPECT_GT(std::abs(b), 10 * std::abs(a)) << k;
    const double c = slope2(1e-4Q), d = slope2(1e-6Q);
    EXPECT_GT(d, 0.0);
    EXPECT_NEAR(c / d, 1.0, 0.05) << k;
  }
}

TEST(VerticalTangent, AtReciprocalPoints) {
  for (int k = 1; k <= 4; ++k) {
    const VerticalTangent vt = vertical_tangent_check(ModulusM((k + 1.0) / k));
    EXPECT_NEAR(vt.p, pi * (k + 1), 1e-5);
    EXPECT_NEAR(vt.dg_dm, -pi * k, 1e-5 * k);
    EXPECT_TRUE(vt.confirmed) << k;
  }
}
