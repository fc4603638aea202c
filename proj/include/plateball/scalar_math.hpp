#pragma once
// Elementary functions reachable as math::f(x) for every scalar type the
// evaluators are instantiated with: double, long double, __float128
// (std::abs already covers __float128 in GNU mode).

#include <cmath>
#include <numbers>
#include <quadmath.h>

namespace plateball {

using quad = __float128;

namespace math {

using std::abs;
using std::asin;
using std::atan;
using std::cbrt;
using std::cos;
using std::floor;
using std::round;
using std::sin;
using std::sqrt;
using std::tan;

inline quad sin(quad x) { return sinq(x); }
inline quad cos(quad x) { return cosq(x); }
inline quad tan(quad x) { return tanq(x); }
inline quad asin(quad x) { return asinq(x); }
inline quad atan(quad x) { return atanq(x); }
inline quad sqrt(quad x) { return sqrtq(x); }
inline quad cbrt(quad x) { return cbrtq(x); }
inline quad floor(quad x) { return floorq(x); }
inline quad round(quad x) { return roundq(x); }

template <typename Scalar>
inline Scalar pi() {
  if constexpr (std::is_same_v<Scalar, quad>) {
    return acosq(quad(-1));
  } else {
    return std::numbers::pi_v<Scalar>;
  }
}

}  // namespace math
}  // namespace plateball
