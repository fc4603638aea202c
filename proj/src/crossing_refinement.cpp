#include "crossing_refinement.hpp"

#include "plateball/errors.hpp"
#include "plateball/special_functions.hpp"

namespace plateball::detail {

QuadCrossing refine_crossing(double x0, double s0) {
  quad x = x0, s = s0;
  int steps = 0;
  for (; steps < 60; ++steps) {
    const quad f1 = fn::gtilde(x, s), f2 = fn::g2tilde(x, s);
    const quad a = fn::gtilde_dx(x, s), b = fn::gtilde_ds(x, s);
    const quad c = fn::g2tilde_dx(x, s), d = fn::g2tilde_ds(x, s);
    const quad det = a * d - b * c;
    if (det == 0) throw EnclosureFailure("singular Jacobian while refining a crossing");
    const quad dx = (f1 * d - b * f2) / det;
    const quad ds = (a * f2 - c * f1) / det;
    x -= dx;
    s -= ds;
    if (math::abs(dx) < quad(1e-31) && math::abs(ds) < quad(1e-31)) break;
  }
  QuadCrossing r;
  r.x = x;
  r.s = s;
  r.m = (s - 1) / (s + 1);
  r.p = x * (s - 1) / 2;
  r.newton_steps = steps;
  return r;
}

quad quad_root_g1(quad m, double lo, double hi) {
  return bisect_quad([m](quad p) { return fn::g1(p, m); }, quad(lo), quad(hi));
}

quad quad_root_g2(quad m, double lo, double hi) {
  return bisect_quad([m](quad p) { return fn::g2(p, m); }, quad(lo), quad(hi));
}

}  // namespace plateball::detail
