#include "plateball/trajectory.hpp"

#include <Eigen/Geometry>
#include <cmath>

#include "plateball/errors.hpp"
#include "plateball/special_functions.hpp"
#include "plateball/taylor_jet.hpp"

namespace plateball {

namespace {

// Numerators of q1bar and q3bar (before dividing by 2(m^2-1)); both vanish at m = 1.
template <typename M>
void quaternion_numerators(double s, const M& m, double theta0, double d0, M& n1, M& n3) {
  const M half = s / (2.0 * m);
  const M c = math::cos(half);
  const M sn = math::sin(half);
  const double ss = std::sin(s), cs = std::cos(s);
  n1 = (m * c * ss - (1.0 + cs) * sn) * theta0 + (m * c * (1.0 - cs) - sn * ss) * d0;
  n3 = (c * (cs - 1.0) + m * sn * ss) * theta0 + (c * ss - m * sn * (1.0 + cs)) * d0;
}

// Expand around m = 1 in e = m - 1: N(e)/(2 e (2 + e)) with N(0) = 0.
std::pair<double, double> series_coefficients(double s, double m, double theta0, double d0) {
  using Jet5 = TaylorJet<double, 5>;
  using Jet4 = TaylorJet<double, 4>;
  const Jet5 mj = Jet5::variable(1.0);
  Jet5 n1, n3;
  quaternion_numerators(s, mj, theta0, d0, n1, n3);
  const Jet4 denom = 2.0 * (Jet4::variable(2.0));
  const double e = m - 1.0;
  return {(n1.divided_by_variable() / denom)(e), (n3.divided_by_variable() / denom)(e)};
}

}  // namespace

Eigen::Vector2d leading_elastica(double s, const PendulumInit& init) {
  const double m = init.m;
  return {s / m, (init.theta0 * std::sin(s) + init.d0 * (1.0 - std::cos(s))) / m};
}

Eigen::Vector4d leading_quaternion(double s, const PendulumInit& init) {
  const double m = init.m;
  if (!(m > 0.0)) throw DomainError("m must be > 0");
  const double half = s / (2.0 * m);
  double q1, q3;
  if (std::abs(m - 1.0) < kSeriesThreshold) {
    std::tie(q1, q3) = series_coefficients(s, m, init.theta0, init.d0);
  } else {
    double n1, n3;
    quaternion_numerators(s, m, init.theta0, init.d0, n1, n3);
    const double denom = 2.0 * (m * m - 1.0);
    q1 = n1 / denom;
    q3 = n3 / denom;
  }
  return {std::cos(half), q1, -std::sin(half), q3};
}

LeadingState leading_state(double s, const PendulumInit& init) {
  LeadingState st;
  st.s = s;
  st.position = leading_elastica(s, init);
  st.quaternion = leading_quaternion(s, init);
  return st;
}

LeadingState rotate_frame(double alpha, const LeadingState& state) {
  // A(alpha) = [cos a, sin a; -sin a, cos a], a rotation by -alpha.
  const Eigen::Matrix2d a = Eigen::Rotation2Dd(-alpha).toRotationMatrix();
  LeadingState out = state;
  out.position = a * state.position;
  out.quaternion.segment<2>(1) = a * state.quaternion.segment<2>(1);
  return out;
}

double maxwell1_leading(double p, const PendulumInit& init) {
  const ModulusM m(init.m);
  const double mv = m.value();
  return (init.d0 * std::cos(p) - init.theta0 * std::sin(p)) * fn::g1(p, mv) / (mv * mv - 1.0);
}

double maxwell2_leading(double p, const PendulumInit& init) {
  const ModulusM m(init.m);
  const double mv = m.value();
  // Direct expansion of xbar q1bar + ybar q2bar at s = 2p gives twice the
  // commonly quoted factored form; the factor is kept so the identity is exact.
  return 2.0 * (init.d0 * std::sin(p) + init.theta0 * std::cos(p)) * fn::g2(p, mv) / (mv * (mv * mv - 1.0));
}

double second_condition(const LeadingState& state) {
  return state.position.dot(state.quaternion.segment<2>(1));
}

std::vector<LeadingState> sample_trajectory(const PendulumInit& init, double s_from, double s_to, int count) {
  if (count < 1) throw DomainError("count must be >= 1");
  if (!(s_from >= 0.0) || !(s_to >= s_from)) throw DomainError("need 0 <= s_from <= s_to");
  std::vector<LeadingState> out;
  out.reserve(static_cast<std::size_t>(count));
  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(count, s_from, s_to);
  for (Eigen::Index i = 0; i < grid.size(); ++i) out.push_back(rotate_frame(init.alpha, leading_state(grid[i], init)));
  return out;
}

}  // namespace plateball
