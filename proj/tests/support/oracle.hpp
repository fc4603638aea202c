#pragma once
// Test-side reference implementation in 128-bit floating point.  Written from
// the defining formulas directly; it shares no code with the library.

#include <quadmath.h>

#include <functional>
#include <stdexcept>

namespace oracle {

using q = __float128;

inline q pi() { return M_PIq; }

inline q g1(q p, q m) { return cosq(p / m) * sinq(p) - m * cosq(p) * sinq(p / m); }
inline q g2(q p, q m) {
  return m * p * cosq(p / m) * sinq(p) - (p * cosq(p) + (m * m - 1) * sinq(p)) * sinq(p / m);
}
inline q gt(q x, q s) { return s * sinq(x) - sinq(s * x); }
inline q g2t(q x, q s) {
  return 4 * s * (cosq(x) - cosq(s * x)) - x * (s * s - 1) * (s * sinq(x) + sinq(s * x));
}
inline q h(q x, q s) { return s * sinq(x) + sinq(s * x); }
inline q J(q x, q s) { return g2t(x, s) / (-(s * s - 1) * h(x, s)); }

inline q bisect(const std::function<q(q)>& f, q lo, q hi) {
  q flo = f(lo);
  if (flo == 0) return lo;
  if (f(hi) == 0) return hi;
  if ((flo > 0) == (f(hi) > 0)) throw std::runtime_error("oracle bisect: no sign change");
  for (int i = 0; i < 240; ++i) {
    const q mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    const q fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

// First sign change of f on (lo, hi] scanned with n equal steps, refined.
inline q first_root(const std::function<q(q)>& f, q lo, q hi, int n) {
  q a = lo;
  q fa = f(a);
  for (int i = 1; i <= n; ++i) {
    const q b = lo + (hi - lo) * i / n;
    const q fb = f(b);
    if (fb == 0) return b;
    if ((fa > 0) != (fb > 0) && fa != 0) return bisect(f, a, b);
    a = b;
    fa = fb;
  }
  throw std::runtime_error("oracle first_root: none found");
}

// Minimal positive roots.  The scan starts just above 0, where g1 ~ p^3 and
// g2 ~ p^5 keep one sign, and runs to a generous bound past the root.
inline q p1(q m) {
  const q mm = m < 1 ? m : q(1);
  const q hi = 2 * pi() * (m < 1 ? m / (1 - m) + m : m / (m - 1) + 1);
  return first_root([m](q p) { return g1(p, m); }, mm * 1e-3Q, hi, 20000);
}
inline q p2(q m) {
  const q mm = m < 1 ? m : q(1);
  const q hi = 2 * pi() * (m < 1 ? m / (1 - m) + m : m / (m - 1) + 1);
  return first_root([m](q p) { return g2(p, m); }, mm * 1e-3Q, hi, 20000);
}
inline q x1(q s) {
  return first_root([s](q x) { return gt(x, s); }, 1e-4Q, 2 * pi(), 20000);
}
inline q x2(q s) {
  return first_root([s](q x) { return g2t(x, s); }, 1e-3Q, 2 * pi(), 20000);
}

inline q rho() {
  return bisect([](q x) { return sinq(x) - x * cosq(x); }, pi() + 1e-6Q, 3 * pi() / 2 - 1e-6Q);
}
inline q rho2() {
  // G(x) = 1/3  <=>  3 sin x - 3x cos x - x^2 sin x = 0
  return bisect([](q x) { return 3 * sinq(x) - 3 * x * cosq(x) - x * x * sinq(x); }, pi() + 1e-6Q, 2 * pi() - 1e-6Q);
}

// Leading-order state written from the expansions.
struct State {
  q x, y, q0, q1, q2, q3;
};
inline State leading(q s, q theta0, q d0, q m) {
  const q c = cosq(s / (2 * m)), sn = sinq(s / (2 * m));
  const q w = 1 / (2 * (m * m - 1));
  State st;
  st.x = s / m;
  st.y = (theta0 * sinq(s) + d0 * (1 - cosq(s))) / m;
  st.q0 = c;
  st.q2 = -sn;
  st.q1 = w * (m * c * sinq(s) - (1 + cosq(s)) * sn) * theta0 + w * (m * (1 - cosq(s)) * c - sinq(s) * sn) * d0;
  st.q3 = w * ((-1 + cosq(s)) * c + m * sinq(s) * sn) * theta0 + w * (sinq(s) * c - m * (1 + cosq(s)) * sn) * d0;
  return st;
}

inline double d(q v) { return static_cast<double>(v); }

}  // namespace oracle
