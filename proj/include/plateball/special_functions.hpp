#pragma once
// Evaluators of the transcendental functions behind the two Maxwell conditions.
//
// The fn:: templates are the raw formulas, generic over the scalar type so that
// the same code serves binary64 evaluation and 128-bit refinement.  The eval_*
// functions are the checked binary64 entry points.

#include "plateball/parameters.hpp"
#include "plateball/scalar_math.hpp"

namespace plateball {

namespace fn {

// g1(p,m) = cos(p/m) sin p - m cos p sin(p/m)
template <typename S>
S g1(S p, S m) {
  const S q = p / m;
  return math::cos(q) * math::sin(p) - m * math::cos(p) * math::sin(q);
}

// g2(p,m) = m p cos(p/m) sin p - (p cos p + (m^2-1) sin p) sin(p/m)
template <typename S>
S g2(S p, S m) {
  const S q = p / m;
  const S sp = math::sin(p);
  return m * p * math::cos(q) * sp - (p * math::cos(p) + (m * m - S(1)) * sp) * math::sin(q);
}

// gtilde(x,s) = s sin x - sin(sx)
template <typename S>
S gtilde(S x, S s) {
  return s * math::sin(x) - math::sin(s * x);
}

// g2tilde(x,s) = 4s(cos x - cos sx) - x(s^2-1)(s sin x + sin sx)
template <typename S>
S g2tilde(S x, S s) {
  const S sx = s * x;
  return S(4) * s * (math::cos(x) - math::cos(sx)) -
         x * (s * s - S(1)) * (s * math::sin(x) + math::sin(sx));
}

// h(x,s) = s sin x + sin(sx); its zeros are the poles of J.
template <typename S>
S h(S x, S s) {
  return s * math::sin(x) + math::sin(s * x);
}

template <typename S>
S gtilde_dx(S x, S s) {
  return s * (math::cos(x) - math::cos(s * x));
}

template <typename S>
S gtilde_ds(S x, S s) {
  return math::sin(x) - x * math::cos(s * x);
}

template <typename S>
S g2tilde_dx(S x, S s) {
  const S sx = s * x, s2 = s * s;
  const S sn = math::sin(x), cs = math::cos(x);
  const S snx = math::sin(sx), csx = math::cos(sx);
  return snx - s * ((s2 - S(1)) * x * cs + (s2 - S(1)) * x * csx + (s2 + S(3)) * sn - S(3) * s * snx);
}

template <typename S>
S g2tilde_ds(S x, S s) {
  const S sx = s * x, s2 = s * s;
  const S sn = math::sin(x);
  return S(4) * math::cos(x) + (-(s2 - S(1)) * x * x - S(4)) * math::cos(sx) +
         x * (-S(3) * sn * s2 + S(2) * math::sin(sx) * s + sn);
}

// dg1/dp = ((m^2-1)/m) sin p sin(p/m)
template <typename S>
S g1_dp(S p, S m) {
  return (m * m - S(1)) / m * math::sin(p) * math::sin(p / m);
}

// dg1/dm = (m p cos p cos(p/m) + (p sin p - m^2 cos p) sin(p/m)) / m^2
template <typename S>
S g1_dm(S p, S m) {
  const S q = p / m, cp = math::cos(p);
  return (m * p * cp * math::cos(q) + (p * math::sin(p) - m * m * cp) * math::sin(q)) / (m * m);
}

}  // namespace fn

double eval_g1(double p, ModulusM m);
double eval_g2(double p, ModulusM m);
double eval_gtilde(double x, SParam s);
double eval_g2tilde(double x, SParam s);
double eval_h(double x, SParam s);
// x cot x; PoleError where sin x vanishes, series near 0.
double eval_f(double x);
// (1 - x cot x)/x^2; PoleError at multiples of pi, series near 0.
double eval_G(double x);
// g2tilde / (-(s^2-1) h); AsymptoteError at zeros of h other than x = 0.
double eval_J(double x, SParam s);
// Closed form of dJ/dx = gtilde^2 / h^2.
double eval_J_dx(double x, SParam s);

// Root of tan x = x in (pi, 3pi/2).
double const_rho();
// Root of G(x) = 1/3 in (pi, 2pi).
double const_rho2();
// The lower constant printed in the p2 estimate for m < 1/2 (slightly below rho2).
inline constexpr double kPrintedP2LowerConstant = 5.7;

// Value plus a bound on its rounding error, so sign decisions can say "unknown".
struct Sample {
  double value;
  double noise;
  // -1, 0 or +1; 0 when |value| is within the noise.
  int sign() const noexcept { return value > noise ? 1 : (value < -noise ? -1 : 0); }
};

Sample sample_g1(double p, double m);
Sample sample_g2(double p, double m);
Sample sample_gtilde(double x, double s);
Sample sample_g2tilde(double x, double s);
Sample sample_h(double x, double s);

}  // namespace plateball
