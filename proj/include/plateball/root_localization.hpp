#pragma once
// Certified brackets and refined minimal positive roots p1, p2 (in the (p,m)
// chart) and x1, x2 (in the (x,s) chart), plus an independent scan oracle.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plateball/parameters.hpp"
#include "plateball/special_functions.hpp"

namespace plateball {

using Objective = std::function<Sample(double)>;

Objective objective_g1(ModulusM m);
Objective objective_g2(ModulusM m);
Objective objective_gtilde(SParam s);
Objective objective_g2tilde(SParam s);
Objective objective_h(SParam s);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  std::string clause;
  // Closed-form root when the parameter sits on a special value.
  std::optional<double> exact;
};

struct RootResult {
  double value = 0.0;
  double residual = 0.0;
  Bracket bracket;
  int iterations = 0;
  bool changed_sign = false;
};

// A two-sided estimate of a root at one parameter value, tagged with the
// clause(s) that state it.
struct BoundCertificate {
  double parameter = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::string clause;
  std::optional<double> exact;
  // Whether each side is a strict inequality.
  bool strict_lower = true;
  bool strict_upper = true;
};

// Distance from z to the nearest integer.
double distance_to_integer(double z);
// Offsets h1, h2 of the other-side estimates around the hyperbola; m in (1/3,1).
double eval_h1(ModulusM m);
double eval_h2(ModulusM m);
// Offset a(s) of the sharpened x1 estimate, s >= 2.
double eval_a(double s);

// Every applicable estimate at this parameter, tightest first.
std::vector<BoundCertificate> p1_certificates(ModulusM m);
std::vector<BoundCertificate> p2_certificates(ModulusM m);
std::vector<BoundCertificate> x1_certificates(SParam s);
std::vector<BoundCertificate> x2_certificates(SParam s);

// The first certificate in the chain whose endpoints bracket a sign change.
Bracket bracket_p1(ModulusM m);
Bracket bracket_p2(ModulusM m);
Bracket bracket_x1(SParam s);
Bracket bracket_x2(SParam s);

// Endpoint signs opposite, or an endpoint indistinguishable from a root.
bool certifies(const Objective& f, const Bracket& b);

// Bisection to absolute width tol; a bracket carrying an exact root returns it.
RootResult refine_root(const Objective& f, const Bracket& b, double tol = kRootTolerance);

struct RootOptions {
  double tol = kRootTolerance;
  // Cross-check against oracle_min_root and throw OracleMismatch beyond 1e-9.
  bool verify_with_oracle = false;
};

RootResult p1(ModulusM m, const RootOptions& opt = {});
RootResult p2(ModulusM m, const RootOptions& opt = {});
RootResult x1(SParam s, const RootOptions& opt = {});
RootResult x2(SParam s, const RootOptions& opt = {});

// First and second positive roots of h(., s), s >= 3.
std::pair<double, double> x_roots_of_h(SParam s);

// Scan [pmin, pmax] with the given step for the first sign change (or a touch
// of zero between same-sign samples) and refine it by bisection.
RootResult oracle_min_root(const Objective& f, double pmin, double pmax, double step, double tol = kRootTolerance);

// Scan step for the oracle: min(pi*min(m,1)/64, width/100), floored at pi*min(m,1)/2048.
double oracle_step(double m, double bracket_width);

// Oracle root for p1/p2 scanning from 1e-9 past the certified upper bound.
RootResult oracle_p1(ModulusM m);
RootResult oracle_p2(ModulusM m);

}  // namespace plateball
