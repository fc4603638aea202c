#include "plateball/maxwell_asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "crossing_refinement.hpp"
#include "plateball/errors.hpp"

namespace plateball {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCrossingTolM = 1e-10;

double p_gap(double m) { return p1(ModulusM(m)).value - p2(ModulusM(m)).value; }

// Bracket endpoints from the binary64 chain, widened slightly so a 1e-16 shift
// in m cannot move the root outside.
std::pair<double, double> widened(const Bracket& b) {
  const double pad = 1e-9 * (b.hi - b.lo);
  return {b.lo - pad, b.hi + pad};
}

double abs_quad(quad v) { return static_cast<double>(math::abs(v)); }

}  // namespace

MaxwellTimes maxwell_times(ModulusM m, const RootOptions& opt) {
  MaxwellTimes t;
  t.m = m.value();
  t.t1 = 2.0 * p1(m, opt).value / m.value();
  t.t2 = 2.0 * p2(m, opt).value / m.value();
  return t;
}

std::vector<ExactPoint> exact_points_p1(int k_max) {
  std::vector<ExactPoint> out;
  for (int k = 1; k <= k_max; ++k) {
    const double kk = k;
    out.push_back({k, kk / (kk + 2.0), kPi * kk / 2.0, "T1.a"});
    out.push_back({k, (kk + 2.0) / kk, kPi * (kk + 2.0) / 2.0, "T1.a"});
  }
  return out;
}

std::vector<ExactPoint> exact_points_p2(int k_max) {
  std::vector<ExactPoint> out;
  for (int k = 1; k <= k_max; ++k) {
    const double kk = k;
    out.push_back({k, kk / (kk + 1.0), kPi * kk, "T2.a"});
    out.push_back({k, (kk + 1.0) / kk, kPi * (kk + 1.0), "T2.a"});
  }
  return out;
}

std::pair<double, double> crossing_enclosure_below(int k) {
  const double kk = k;
  const double hi = (1.0 + 2.0 * kk) / (3.0 + 2.0 * kk);
  return {hi - 2.0 / (15.0 + 40.0 * kk + 32.0 * kk * kk + 8.0 * kk * kk * kk), hi};
}

std::pair<double, double> crossing_enclosure_above(int k) {
  const double kk = k;
  const double lo = (3.0 + 2.0 * kk) / (1.0 + 2.0 * kk);
  return {lo, lo + 2.0 / (1.0 + 8.0 * kk * (1.0 + kk * kk))};
}

namespace {

CrossingPoint trivial_crossing(int k, bool above) {
  const double kk = k;
  CrossingPoint c;
  c.k = k;
  c.above_one = above;
  c.trivial = true;
  c.m_bar = above ? (kk + 1.0) / kk : kk / (kk + 1.0);
  c.lo = c.hi = c.m_bar;
  const double a = p1(ModulusM(c.m_bar)).value;
  const double b = p2(ModulusM(c.m_bar)).value;
  c.p_at_crossing = a;
  c.residual = std::abs(a - b);
  c.residual_binary64 = c.residual;
  return c;
}

// Binary64 sign search on p1 - p2, then 128-bit Newton on the (x,s) system.
detail::QuadCrossing locate_below(int k) {
  auto [lo, hi] = crossing_enclosure_below(k);
  double dlo = p_gap(lo), dhi = p_gap(hi);
  if (!(dlo > 0.0 && dhi < 0.0))
    throw EnclosureFailure("p1 - p2 does not change sign on the enclosure for k = " + std::to_string(k));
  while (hi - lo > kCrossingTolM) {
    const double mid = 0.5 * (lo + hi);
    if (p_gap(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  const double m0 = 0.5 * (lo + hi);
  const double s0 = (1.0 + m0) / (1.0 - m0);
  const double x0 = x1(SParam(s0)).value;
  return detail::refine_crossing(x0, s0);
}

}  // namespace

std::vector<CrossingPoint> find_crossings(int k_max) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  std::vector<CrossingPoint> out;
  for (int k = 1; k <= k_max; ++k) {
    out.push_back(trivial_crossing(k, false));

    const detail::QuadCrossing q = locate_below(k);
    const auto enc = crossing_enclosure_below(k);
    const double mb = static_cast<double>(q.m);
    if (!(enc.first < mb && mb < enc.second))
      throw EnclosureFailure("refined crossing left the enclosure for k = " + std::to_string(k));
    {
      const ModulusM m(mb);
      const auto b1 = widened(bracket_p1(m)), b2 = widened(bracket_p2(m));
      const quad a = detail::quad_root_g1(q.m, b1.first, b1.second);
      const quad b = detail::quad_root_g2(q.m, b2.first, b2.second);
      CrossingPoint c;
      c.k = k;
      c.lo = enc.first;
      c.hi = enc.second;
      c.m_bar = mb;
      c.m_bar_tail = static_cast<double>(q.m - quad(mb));
      c.p_at_crossing = static_cast<double>(q.p);
      c.residual = abs_quad(a - b);
      c.residual_binary64 = std::abs(p_gap(mb));
      out.push_back(c);
    }
    {
      // Mirror image: m -> 1/m, p -> p/m.
      const quad mq = 1 / q.m;
      const double ma = static_cast<double>(mq);
      const auto enc_above = crossing_enclosure_above(k);
      if (!(enc_above.first < ma && ma < enc_above.second))
        throw EnclosureFailure("mirrored crossing left the enclosure for k = " + std::to_string(k));
      const ModulusM m(ma);
      const auto b1 = widened(bracket_p1(m)), b2 = widened(bracket_p2(m));
      const quad a = detail::quad_root_g1(mq, b1.first, b1.second);
      const quad b = detail::quad_root_g2(mq, b2.first, b2.second);
      CrossingPoint c;
      c.k = k;
      c.above_one = true;
      c.lo = enc_above.first;
      c.hi = enc_above.second;
      c.m_bar = ma;
      c.m_bar_tail = static_cast<double>(mq - quad(ma));
      c.p_at_crossing = static_cast<double>(q.p / q.m);
      c.residual = abs_quad(a - b);
      c.residual_binary64 = std::abs(p_gap(ma));
      out.push_back(c);
    }
    out.push_back(trivial_crossing(k, true));
  }
  return out;
}

HyperbolaMeeting find_p2_hyperbola_meeting(int k) {
  if (k < 1) throw DomainError("k must be >= 1");
  const double kk = k;
  // p2 = pi m/(1-m) exactly when x = pi solves g2tilde.
  auto f = [](double s) { return fn::g2tilde(kPi, s); };
  double lo = 2.0 * kk + 2.0 - 1.0 / (2.0 * kk + 2.0), hi = 2.0 * kk + 2.0;
  if (!(f(lo) > 0.0 && f(hi) < 0.0)) throw EnclosureFailure("g2tilde(pi, s) keeps its sign on the enclosure");
  while (hi - lo > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  const double s = 0.5 * (lo + hi);
  return {k, s, (s - 1.0) / (s + 1.0)};
}

namespace {
bool is_vertical_tangent_parameter(double m) {
  const double mm = m < 1.0 ? m : 1.0 / m;
  auto n = snapped_integer((1.0 + mm) / (1.0 - mm));
  return n && *n % 2 == 1;
}
}  // namespace

double p1_derivative(ModulusM m) {
  if (is_vertical_tangent_parameter(m.value()))
    throw DegenerateDerivative("p1 has a vertical tangent at m = " + std::to_string(m.value()));
  const double p = p1(m).value;
  const double gp = fn::g1_dp(p, m.value());
  if (std::abs(gp) < 1e-8) throw DegenerateDerivative("dg1/dp vanishes at p1(m)");
  return -fn::g1_dm(p, m.value()) / gp;
}

VerticalTangent vertical_tangent_check(ModulusM m_star) {
  VerticalTangent v;
  v.p = p1(m_star).value;
  v.dg_dp = fn::g1_dp(v.p, m_star.value());
  v.dg_dm = fn::g1_dm(v.p, m_star.value());
  v.confirmed = std::abs(v.dg_dp) < 1e-8 && std::abs(v.dg_dm) > 1e-8;
  return v;
}

double x2_derivative_at_odd(int k) {
  if (k < 1) throw DomainError("k must be >= 1");
  return -kPi / (4.0 * k + 2.0);
}

double x2_derivative_numeric(SParam s, double h) {
  const double sv = s.value();
  if (h <= 0.0) h = 1e-5 * std::max(1.0, sv);
  return (x2(SParam(sv + h)).value - x2(SParam(sv - h)).value) / (2.0 * h);
}

}  // namespace plateball
