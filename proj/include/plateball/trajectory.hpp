#pragma once
// Leading-order (small amplitude) extremal: sinusoidal elastica in the plane
// and the quaternion of the rolling sphere, in the frame rotated by alpha.

#include <Eigen/Core>
#include <vector>

#include "plateball/parameters.hpp"

namespace plateball {

struct PendulumInit {
  double theta0 = 0.0;
  double d0 = 0.0;    // c0 / m
  double rho0 = 0.0;  // amplitude, stored as given
  double alpha = 0.0;
  double m = 0.5;

  double c0() const noexcept { return m * d0; }
  // The expansion drops O(rho0^2); beyond this it is only qualitative.
  bool within_asymptotic_regime() const noexcept { return rho0 <= 0.1; }
};

struct LeadingState {
  double s = 0.0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();                // (x, y)
  Eigen::Vector4d quaternion = Eigen::Vector4d(1.0, 0.0, 0.0, 0.0);  // (q0, q1, q2, q3)
};

Eigen::Vector2d leading_elastica(double s, const PendulumInit& init);
// For |m-1| < 1e-4 the 1/(m^2-1) coefficients come from a Taylor jet in m-1.
Eigen::Vector4d leading_quaternion(double s, const PendulumInit& init);
// Unrotated state (xbar, ybar, qbar).
LeadingState leading_state(double s, const PendulumInit& init);
// (x,y) = A(alpha)(xbar,ybar), (q1,q2) = A(alpha)(q1bar,q2bar); q0, q3 unchanged.
LeadingState rotate_frame(double alpha, const LeadingState& state);

// Leading term of q3 at s = 2p in factored form.
double maxwell1_leading(double p, const PendulumInit& init);
// Leading term of x q1 + y q2 at s = 2p in factored form.
double maxwell2_leading(double p, const PendulumInit& init);
// x q1 + y q2 of a state.
double second_condition(const LeadingState& state);

// count states evenly spaced on [s_from, s_to], rotated by init.alpha.
std::vector<LeadingState> sample_trajectory(const PendulumInit& init, double s_from, double s_to, int count);

}  // namespace plateball
