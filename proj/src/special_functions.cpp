#include "plateball/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "plateball/errors.hpp"

namespace plateball {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string num(double v) { return std::to_string(v); }

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be finite and >= 0, got " + num(x));
}

// Bisection that keeps halving until the midpoint stops moving.
template <typename F>
double bisect_to_limit(F f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ModulusM::ModulusM(double m, double band) : m_(m) {
  if (!std::isfinite(m) || !(m > 0.0)) throw DomainError("m must be finite and > 0, got " + num(m));
  if (std::abs(m - 1.0) <= band) throw DomainError("m = " + num(m) + " lies in the excluded band around 1");
}

ModulusM ModulusM::reciprocal() const { return ModulusM(1.0 / m_, 0.0); }

SParam::SParam(double s) : s_(s) {
  if (!std::isfinite(s) || !(s > 1.0)) throw DomainError("s must be finite and > 1, got " + num(s));
}

SParam m_to_s(ModulusM m) {
  if (!m.below_one()) throw DomainError("m_to_s needs m in (0,1)");
  const double v = m.value();
  return SParam((1.0 + v) / (1.0 - v));
}

ModulusM s_to_m(SParam s) {
  const double v = s.value();
  return ModulusM((v - 1.0) / (v + 1.0), 0.0);
}

double p_to_x(double p, ModulusM m) {
  require_nonnegative(p, "p");
  if (!m.below_one()) throw DomainError("p_to_x needs m in (0,1)");
  return p * (1.0 - m.value()) / m.value();
}

double x_to_p(double x, SParam s) {
  require_nonnegative(x, "x");
  return x * (s.value() - 1.0) / 2.0;
}

std::optional<int> snapped_integer(double s) {
  const double r = std::round(s);
  if (std::abs(s - r) <= kIntegerSnap * std::max(1.0, std::abs(s))) return static_cast<int>(r);
  return std::nullopt;
}

double eval_g1(double p, ModulusM m) {
  require_nonnegative(p, "p");
  return fn::g1(p, m.value());
}

double eval_g2(double p, ModulusM m) {
  require_nonnegative(p, "p");
  return fn::g2(p, m.value());
}

double eval_gtilde(double x, SParam s) {
  require_nonnegative(x, "x");
  return fn::gtilde(x, s.value());
}

double eval_g2tilde(double x, SParam s) {
  require_nonnegative(x, "x");
  return fn::g2tilde(x, s.value());
}

double eval_h(double x, SParam s) {
  require_nonnegative(x, "x");
  return fn::h(x, s.value());
}

double eval_f(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("f needs x > 0, got " + num(x));
  if (x < kSeriesThreshold) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 - x2 * x2 / 45.0;
  }
  const double sn = std::sin(x);
  if (std::abs(sn) < kPoleThreshold) throw PoleError("x cot x has a pole at x = " + num(x));
  return x * std::cos(x) / sn;
}

double eval_G(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("G needs x > 0, got " + num(x));
  // The direct quotient loses digits to cancellation for small x, so the series
  // covers x < 0.1; its first omitted term is below 3e-16 there.
  if (x < 0.1) {
    const double x2 = x * x;
    return 1.0 / 3.0 + x2 * (1.0 / 45.0 + x2 * (2.0 / 945.0 + x2 * (1.0 / 4725.0 + x2 * (2.0 / 93555.0))));
  }
  const double sn = std::sin(x);
  if (std::abs(sn) < kPoleThreshold) throw PoleError("G has a pole at x = " + num(x));
  return (1.0 - x * std::cos(x) / sn) / (x * x);
}

double eval_J(double x, SParam s) {
  require_nonnegative(x, "x");
  const double sv = s.value();
  const double s21 = sv * sv - 1.0;
  // Near 0 numerator and denominator both vanish; J ~ (s^2-1)^2 x^5 / 720.
  if (x * sv < kSeriesThreshold) {
    const double x2 = x * x;
    return s21 * s21 * x2 * x2 * x / 720.0;
  }
  const double hv = fn::h(x, sv);
  if (std::abs(hv) < kPoleThreshold) throw AsymptoteError("J has a vertical asymptote at x = " + num(x));
  return fn::g2tilde(x, sv) / (-s21 * hv);
}

double eval_J_dx(double x, SParam s) {
  require_nonnegative(x, "x");
  const double sv = s.value();
  if (x * sv < kSeriesThreshold) {
    const double s21 = sv * sv - 1.0;
    const double x2 = x * x;
    return 5.0 * s21 * s21 * x2 * x2 / 720.0;
  }
  const double hv = fn::h(x, sv);
  if (std::abs(hv) < kPoleThreshold) throw AsymptoteError("J has a vertical asymptote at x = " + num(x));
  const double r = fn::gtilde(x, sv) / hv;
  return r * r;
}

double const_rho() {
  // tan x = x written without the pole: sin x - x cos x = 0.
  static const double rho = bisect_to_limit([](double x) { return std::sin(x) - x * std::cos(x); }, kPi, 1.5 * kPi);
  return rho;
}

double const_rho2() {
  // G(x) = 1/3 multiplied through by x^2 sin x (sin x < 0 on the interval).
  static const double rho2 = bisect_to_limit(
      [](double x) { return std::sin(x) - x * std::cos(x) - x * x * std::sin(x) / 3.0; }, kPi + 1e-9, 2.0 * kPi - 1e-9);
  return rho2;
}

// Noise bounds: a few ulps of the magnitudes involved plus the argument error
// from forming p/m or s*x, which shifts sin/cos by up to eps times the argument.
Sample sample_g1(double p, double m) {
  const double q = p / m;
  const double a = std::cos(q) * std::sin(p);
  const double b = m * std::cos(p) * std::sin(q);
  return {a - b, 4.0 * kEps * ((1.0 + m) * (q + 2.0) + std::abs(a) + std::abs(b))};
}

Sample sample_g2(double p, double m) {
  const double value = fn::g2(p, m);
  const double q = p / m;
  return {value, 4.0 * kEps * (m * p + p + std::abs(m * m - 1.0) + 1.0) * (q + 3.0)};
}

namespace {

// Low part of pi, so x - j pi can be formed without losing the small offset.
constexpr double kPiLo = 1.2246467991473532e-16;

// For integer n and x = j pi + t with |n t| < 1/2, n sin t - sin(n t) cancels to
// O(t^3) and is summed as a series instead.  Returns false outside that case.
bool gtilde_near_multiple(double x, double n, Sample& out) {
  const double j = std::nearbyint(x / kPi);
  const double t = std::fma(-j, kPi, x) - j * kPiLo;
  if (!(std::abs(n * t) < 0.5) || j == 0.0) return false;
  // sin x = (-1)^j sin t and sin(n x) = (-1)^(n j) sin(n t).
  const bool odd_j = std::fmod(j, 2.0) != 0.0;
  const bool cancels = std::fmod((n - 1.0) * j, 2.0) == 0.0;
  if (!cancels) return false;
  // n sin t - sin(n t) = sum_{k>=1} (-1)^(k+1) t^(2k+1) (n^(2k+1) - n) / (2k+1)!
  double sum = 0.0, deriv = 0.0, tp = t, np = n, fact = 1.0;
  for (int k = 1; k <= 12; ++k) {
    tp *= t * t;
    np *= n * n;
    fact *= (2.0 * k) * (2.0 * k + 1.0);
    const double term = (k % 2 ? 1.0 : -1.0) * tp * (np - n) / fact;
    sum += term;
    deriv += (2.0 * k + 1.0) * term;
    if (std::abs(term) <= kEps * std::abs(sum) * 1e-3) break;
  }
  deriv = t != 0.0 ? deriv / t : 0.0;
  // The root itself is rarely representable: allow one ulp of x on top of rounding.
  const double ulp = std::nextafter(x, 2.0 * x + 1.0) - x;
  out = {odd_j ? -sum : sum, 8.0 * kEps * std::abs(sum) + std::abs(deriv) * ulp};
  return true;
}

}  // namespace

Sample sample_gtilde(double x, double s) {
  Sample near;
  if (s == std::floor(s) && s >= 2.0 && gtilde_near_multiple(x, s, near)) return near;
  return {fn::gtilde(x, s), 4.0 * kEps * (s * (x + 2.0) + 2.0)};
}

Sample sample_g2tilde(double x, double s) {
  return {fn::g2tilde(x, s), 4.0 * kEps * (4.0 * s + x * (s * s - 1.0) * (s + 1.0)) * (s * x + 4.0)};
}

Sample sample_h(double x, double s) {
  return {fn::h(x, s), 4.0 * kEps * (s * (x + 2.0) + 2.0)};
}

}  // namespace plateball
