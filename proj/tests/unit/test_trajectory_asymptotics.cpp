#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "plateball/root_localization.hpp"
#include "plateball/trajectory.hpp"

using namespace plateball;
constexpr double pi = std::numbers::pi;

namespace {

PendulumInit init_of(double theta0, double d0, double m, double alpha = 0.0) {
  PendulumInit in;
  in.theta0 = theta0;
  in.d0 = d0;
  in.m = m;
  in.alpha = alpha;
  return in;
}

}  // namespace

TEST(Elastica, Examples) {
  const PendulumInit a = init_of(0.3, -0.2, 0.7);
  EXPECT_EQ(leading_elastica(0.0, a), Eigen::Vector2d(0, 0));
  const Eigen::Vector2d b = leading_elastica(2 * pi, a);
  EXPECT_NEAR(b.x(), 2 * pi / 0.7, 1e-14);
  EXPECT_NEAR(b.y(), 0.0, 1e-14);
  const Eigen::Vector2d c = leading_elastica(pi / 2, init_of(0.01, 0.0, 0.5));
  EXPECT_NEAR(c.x(), pi, 1e-15);
  EXPECT_NEAR(c.y(), 0.02, 1e-15);
}

TEST(Quaternion, Examples) {
  const PendulumInit a = init_of(0.05, 0.02, 0.7);
  EXPECT_TRUE(leading_quaternion(0.0, a).isApprox(Eigen::Vector4d(1, 0, 0, 0)));
  for (double s : {0.3, 1.0, 4.4}) {
    const Eigen::Vector4d q = leading_quaternion(s, a);
    EXPECT_NEAR(q[0] * q[0] + q[2] * q[2], 1.0, 1e-15);
  }
  const Eigen::Vector4d q = leading_quaternion(1.0, a);
  const oracle::State ref = oracle::leading(1.0Q, 0.05Q, 0.02Q, 0.7Q);
  EXPECT_NEAR(q[1], oracle::d(ref.q1), 1e-14);
  EXPECT_NEAR(q[3], oracle::d(ref.q3), 1e-14);
}

TEST(Quaternion, SeriesNearOneIsContinuous) {
  // The 1/(m^2-1) coefficients have a removable singularity at m = 1.
  for (double s : {0.5, 2.0, 7.0}) {
    const PendulumInit near = init_of(0.04, -0.03, 1.0 + 5e-5);
    const Eigen::Vector4d q = leading_quaternion(s, near);
    const oracle::State ref = oracle::leading(s, 0.04Q, -0.03Q, 1.0Q + 5e-5Q);
    EXPECT_NEAR(q[1], oracle::d(ref.q1), 1e-12) << s;
    EXPECT_NEAR(q[3], oracle::d(ref.q3), 1e-12) << s;
    const Eigen::Vector4d at_one = leading_quaternion(s, init_of(0.04, -0.03, 1.0));
    EXPECT_TRUE(std::isfinite(at_one[1]) && std::isfinite(at_one[3]));
    EXPECT_NEAR(at_one[1], q[1], 1e-3);
  }
}

TEST(Rotation, Examples) {
  LeadingState st;
  st.position = {1.0, 0.0};
  st.quaternion = {0.5, 0.3, -0.2, 0.1};
  const LeadingState same = rotate_frame(0.0, st);
  EXPECT_EQ(same.position, st.position);
  EXPECT_EQ(same.quaternion, st.quaternion);
  const LeadingState r = rotate_frame(pi / 2, st);
  EXPECT_NEAR(r.position.x(), 0.0, 1e-16);
  EXPECT_NEAR(r.position.y(), -1.0, 1e-16);
  EXPECT_EQ(r.quaternion[0], 0.5);
  EXPECT_EQ(r.quaternion[3], 0.1);
  EXPECT_NEAR(second_condition(r), second_condition(st), 1e-15);
}

TEST(Factorization, MatchesOracleExpansions) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> up(0.05, 15.0), um(0.05, 4.0), ua(-0.1, 0.1);
  for (int i = 0; i < 1000; ++i) {
    const double p = up(rng), m = um(rng), th = ua(rng), d0 = ua(rng);
    if (std::abs(m - 1.0) < 1e-2) continue;
    const PendulumInit in = init_of(th, d0, m);
    const oracle::State st = oracle::leading(2 * oracle::q(p), th, d0, m);
    const double q3 = oracle::d(st.q3);
    const double xq = oracle::d(st.x * st.q1 + st.y * st.q2);
    const double sc3 = std::abs(th) + std::abs(d0), scx = sc3 * (1 + p) / m;
    EXPECT_NEAR(maxwell1_leading(p, in), q3, 1e-11 * sc3 / std::abs(m * m - 1)) << p << " " << m;
    EXPECT_NEAR(maxwell2_leading(p, in), xq, 1e-11 * scx / std::abs(m * m - 1)) << p << " " << m;
  }
}

TEST(Factorization, VanishAtRootsAndCenteredInits) {
  for (double m : {0.3, 0.7, 1.8}) {
    const double r1 = p1(ModulusM(m)).value, r2 = p2(ModulusM(m)).value;
    EXPECT_NEAR(maxwell1_leading(r1, init_of(0.05, 0.03, m)), 0.0, 1e-12);
    EXPECT_NEAR(maxwell2_leading(r2, init_of(0.05, 0.03, m)), 0.0, 1e-11);
    const double p = 1.234;
    // d0 cos p = theta0 sin p, and d0 sin p + theta0 cos p = 0.
    EXPECT_NEAR(maxwell1_leading(p, init_of(0.04 * std::cos(p), 0.04 * std::sin(p), m)), 0.0, 1e-15);
    EXPECT_NEAR(maxwell2_leading(p, init_of(0.04 * std::sin(p), -0.04 * std::cos(p), m)), 0.0, 1e-15);
  }
}

TEST(Factorization, FirstZeroOfQ3IsTwiceP1) {
  for (double m : {0.25, 0.45, 0.78, 2.5}) {
    const PendulumInit in = init_of(0.0, 0.05, m);
    const oracle::q mq = m;
    // q3 at s = 2p with theta0 = 0 is d0 cos p g1/(m^2-1); first zero of g1 past 0.
    const double r = oracle::d(oracle::first_root(
        [&](oracle::q p) { return oracle::leading(2 * p, 0.0Q, 0.05Q, mq).q3 / cosq(p); }, 1e-3Q * fminq(mq, 1),
        oracle::d(oracle::p1(mq)) + 1e-3Q, 20000));
    EXPECT_NEAR(r, p1(ModulusM(m)).value, 1e-9) << m;
    EXPECT_NEAR(maxwell1_leading(r, in), 0.0, 1e-12);
  }
}

TEST(Rotation, InvariantSecondCondition) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> us(0.0, 20.0), ua(-pi, pi), ut(-0.1, 0.1), um(0.1, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const PendulumInit in = init_of(ut(rng), ut(rng), um(rng));
    const LeadingState st = leading_state(us(rng), in);
    const double a = ua(rng);
    const double before = second_condition(st), after = second_condition(rotate_frame(a, st));
    EXPECT_NEAR(after, before, 1e-14 * std::max(1.0, st.position.norm()));
  }
}

TEST(Sampling, GridAndRegime) {
  PendulumInit in = init_of(0.02, 0.01, 0.6, 0.3);
  const auto pts = sample_trajectory(in, 0.0, 5.0, 11);
  ASSERT_EQ(pts.size(), 11u);
  EXPECT_DOUBLE_EQ(pts[5].s, 2.5);
  EXPECT_DOUBLE_EQ(pts.back().s, 5.0);
  in.rho0 = 0.05;
  EXPECT_TRUE(in.within_asymptotic_regime());
  in.rho0 = 0.2;
  EXPECT_FALSE(in.within_asymptotic_regime());
  EXPECT_ANY_THROW(sample_trajectory(in, 1.0, 0.0, 3));
}
