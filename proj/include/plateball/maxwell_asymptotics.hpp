#pragma once
// Maxwell-time curves t1 = 2 p1/m and t2 = 2 p2/m, their exact values, crossing
// points and derivative behaviour.

#include <string>
#include <utility>
#include <vector>

#include "plateball/parameters.hpp"
#include "plateball/root_localization.hpp"

namespace plateball {

struct MaxwellTimes {
  double m = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
};

MaxwellTimes maxwell_times(ModulusM m, const RootOptions& opt = {});

// A parameter where a root equals a closed form.
struct ExactPoint {
  int k = 0;
  double m = 0.0;
  double p = 0.0;
  std::string clause;
};

// p1 = pi m/|1-m| at m = k/(k+2) and (k+2)/k.
std::vector<ExactPoint> exact_points_p1(int k_max);
// p2 = pi m/|1-m| at m = k/(k+1) and (k+1)/k.
std::vector<ExactPoint> exact_points_p2(int k_max);

struct CrossingPoint {
  int k = 0;
  bool above_one = false;   // m > 1 branch
  bool trivial = false;     // m = k/(k+1) or (k+1)/k
  double lo = 0.0;          // enclosure
  double hi = 0.0;
  double m_bar = 0.0;
  // Low-order part: m_bar + m_bar_tail is the 128-bit crossing.  p2 has a
  // vertical tangent there, so |p1 - p2| at the rounded m_bar is only ~1e-5.
  double m_bar_tail = 0.0;
  double p_at_crossing = 0.0;
  // |p1 - p2| at m_bar, from 128-bit refinement.
  double residual = 0.0;
  // |p1 - p2| at m_bar with binary64 root finding, for comparison.
  double residual_binary64 = 0.0;
};

// Enclosure of the nontrivial crossing for index k, m < 1 side.
std::pair<double, double> crossing_enclosure_below(int k);
// Enclosure for m > 1 with the constant printed in the theorem.
std::pair<double, double> crossing_enclosure_above(int k);

// Trivial and nontrivial crossings on both sides of 1, ordered by k then m.
std::vector<CrossingPoint> find_crossings(int k_max);

// Where p2 meets the hyperbola inside the same enclosure (g2tilde(pi, s) = 0).
struct HyperbolaMeeting {
  int k = 0;
  double s_star = 0.0;
  double m_star = 0.0;
};
HyperbolaMeeting find_p2_hyperbola_meeting(int k);

// dp1/dm = -g1_m / g1_p at p1(m); DegenerateDerivative at k/(k+1), (k+1)/k.
double p1_derivative(ModulusM m);

struct VerticalTangent {
  double p = 0.0;
  double dg_dp = 0.0;
  double dg_dm = 0.0;
  bool confirmed = false;  // |dg/dp| < 1e-8 and dg/dm != 0
};
VerticalTangent vertical_tangent_check(ModulusM m_star);

// Reference value -pi/(4k+2).
double x2_derivative_at_odd(int k);
// Central difference of x2 with step h (default 1e-5 max(1,s)).
double x2_derivative_numeric(SParam s, double h = 0.0);

}  // namespace plateball
