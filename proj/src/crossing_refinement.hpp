#pragma once
// 128-bit refinement of the nontrivial p1/p2 crossing.  The crossing sits where
// p2 has a vertical tangent, so binary64 evaluation of p2 there is only good to
// about the cube root of the rounding level; the 128-bit pass recovers it.

#include "plateball/errors.hpp"
#include "plateball/scalar_math.hpp"

namespace plateball::detail {

// Bisection in 128-bit arithmetic down to adjacent representable values.
template <typename F>
quad bisect_quad(F f, quad lo, quad hi) {
  quad flo = f(lo);
  const quad fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) throw NoSignChange("128-bit bracket has no sign change");
  for (int i = 0; i < 200; ++i) {
    const quad mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    const quad fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2;
}

struct QuadCrossing {
  quad x = 0;   // common root of gtilde and g2tilde
  quad s = 0;
  quad m = 0;   // (s-1)/(s+1)
  quad p = 0;   // x (s-1)/2
  int newton_steps = 0;
};

// Newton on (gtilde, g2tilde) = (0, 0) from a binary64 start.
QuadCrossing refine_crossing(double x0, double s0);

// Minimal root of g1 / g2 at parameter m inside [lo, hi], by 128-bit bisection.
quad quad_root_g1(quad m, double lo, double hi);
quad quad_root_g2(quad m, double lo, double hi);

}  // namespace plateball::detail
