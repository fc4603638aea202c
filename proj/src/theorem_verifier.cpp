#include "plateball/theorem_verifier.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "crossing_refinement.hpp"
#include "plateball/errors.hpp"
#include "plateball/maxwell_asymptotics.hpp"
#include "plateball/root_localization.hpp"
#include "plateball/special_functions.hpp"

namespace plateball {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxWitnesses = 5;

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// ---------------------------------------------------------------------------
// Bounds exactly as stated, in the m chart.  Deliberately not shared with the
// bracket chains of the root finder.

double hyperbola(double m) { return kPi * m / std::abs(1.0 - m); }

// s for m < 1, and the s of 1/m for m > 1.
double s_of(double m) { return m < 1.0 ? (1.0 + m) / (1.0 - m) : (m + 1.0) / (m - 1.0); }

double h1_stated(double s, int k) {
  return std::min({s / 2.0 - k, std::cbrt(2.0 * k + 1.0 - s), s / kPi * std::asin(1.0 / s)});
}

double h2_stated(double s, int k) {
  return std::min({std::cbrt(s - 2.0 * k - 1.0), k + 1.0 - s / 2.0, s / kPi * std::asin(1.0 / s)});
}

double dist_int(double z) { return std::abs(z - std::round(z)); }

double a_stated(double s) {
  const double r = dist_int(s / 2.0);
  const double as = std::asin(1.0 / s);
  if (r < 7.0 / 16.0) return std::min(kPi / s * r, as);
  return std::min(kPi / s * std::cbrt(1.0 - 2.0 * r), as);
}

// Left end of the enclosure of the p2 / hyperbola meeting, m < 1.
double enclosure_lo(int k) {
  const double kk = k;
  return (1.0 + 2.0 * kk) / (3.0 + 2.0 * kk) - 2.0 / (15.0 + 40.0 * kk + 32.0 * kk * kk + 8.0 * kk * kk * kk);
}
double enclosure_hi(int k) { return (1.0 + 2.0 * k) / (3.0 + 2.0 * k); }
// m > 1 side with the constant as printed.
double enclosure_above_lo(int k) { return (3.0 + 2.0 * k) / (1.0 + 2.0 * k); }
double enclosure_above_hi(int k) {
  const double kk = k;
  return enclosure_above_lo(k) + 2.0 / (1.0 + 8.0 * kk * (1.0 + kk * kk));
}

// ---------------------------------------------------------------------------

struct RootPoint {
  double param = 0.0;
  double value = std::numeric_limits<double>::quiet_NaN();
  bool changed_sign = false;
  std::string error;
  bool ok() const { return error.empty(); }
};

unsigned worker_count(const VerificationGrid& g) {
  if (g.threads > 0) return g.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Contiguous shards evaluated concurrently; result order follows the input.
template <typename F>
std::vector<RootPoint> parallel_roots(const std::vector<double>& params, unsigned workers, F f) {
  std::vector<RootPoint> out(params.size());
  const std::size_t n = params.size();
  const std::size_t shards = std::min<std::size_t>(workers, std::max<std::size_t>(n, 1));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < shards; ++w) {
    const std::size_t lo = n * w / shards, hi = n * (w + 1) / shards;
    jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) {
        out[i].param = params[i];
        try {
          const RootResult r = f(params[i]);
          out[i].value = r.value;
          out[i].changed_sign = r.changed_sign;
        } catch (const std::exception& e) {
          out[i].error = e.what();
        }
      }
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : std::exp(a + (b - a) * i / (n - 1));
  if (n > 1) {
    v.front() = lo;
    v.back() = hi;
  }
  return v;
}

// Root values shared by the clauses of one run.
struct Context {
  VerificationGrid grid;
  std::vector<RootPoint> p1_below, p1_above, p2_below, p2_above;
  std::vector<RootPoint> x1_s, x2_s;
  std::vector<double> s_values;

  explicit Context(const VerificationGrid& g) : grid(g) {
    const unsigned w = worker_count(g);
    const auto mb = grid_m_below(g), ma = grid_m_above(g);
    s_values = grid_s(g);
    const double band = g.band;
    p1_below = parallel_roots(mb, w, [band](double m) { return p1(ModulusM(m, band)); });
    p1_above = parallel_roots(ma, w, [band](double m) { return p1(ModulusM(m, band)); });
    p2_below = parallel_roots(mb, w, [band](double m) { return p2(ModulusM(m, band)); });
    p2_above = parallel_roots(ma, w, [band](double m) { return p2(ModulusM(m, band)); });
    x1_s = parallel_roots(s_values, w, [](double s) { return x1(SParam(s)); });
    x2_s = parallel_roots(s_values, w, [](double s) { return x2(SParam(s)); });
  }

  std::vector<RootPoint> p1_all() const {
    auto v = p1_below;
    v.insert(v.end(), p1_above.begin(), p1_above.end());
    return v;
  }
  std::vector<RootPoint> p2_all() const {
    auto v = p2_below;
    v.insert(v.end(), p2_above.begin(), p2_above.end());
    return v;
  }
};

// Accumulates signed violations for one clause.
class Check {
 public:
  Check(std::string id, double slack) : slack_(slack) { c_.clause_id = std::move(id); }

  // violation > slack is a failure.
  void record(double violation, const std::string& param, std::vector<double> values) {
    ++c_.samples;
    if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
    const bool fail = violation > slack_;
    if (fail) {
      ++c_.failures;
      if (static_cast<int>(c_.witnesses.size()) < kMaxWitnesses) c_.witnesses.push_back({param, values});
    }
    if (violation > c_.worst_violation) {
      c_.worst_violation = violation;
      worst_ = {param, std::move(values)};
    }
  }
  // lhs < rhs (or <=; both pass with violation up to the slack).
  void less(double lhs, double rhs, const std::string& param, std::vector<double> extra = {}) {
    extra.insert(extra.begin(), {lhs, rhs});
    record(lhs - rhs, param, std::move(extra));
  }
  void near(double a, double b, double tol, const std::string& param) {
    // Tolerance is part of the claim, so its violation is measured against 0.
    const double v = std::abs(a - b) - tol;
    record(v > 0.0 ? std::max(v, 2.0 * slack_) : std::min(v, 0.0), param, {a, b, tol});
  }
  void truth(bool ok, const std::string& param, std::vector<double> values = {}) {
    record(ok ? -1.0 : 1.0, param, std::move(values));
  }
  // A root that could not be computed counts as a failure.
  bool usable(const RootPoint& r, const std::string& what) {
    if (r.ok()) return true;
    ++c_.samples;
    ++c_.failures;
    c_.worst_violation = std::numeric_limits<double>::infinity();
    if (static_cast<int>(c_.witnesses.size()) < kMaxWitnesses)
      c_.witnesses.push_back({what + "=" + num(r.param) + " (" + r.error + ")", {}});
    return false;
  }
  void note(std::string n) { c_.note = std::move(n); }

  ClauseCheck finish() {
    if (c_.failures == 0 && !worst_.parameter.empty()) c_.witnesses.push_back(worst_);
    if (c_.samples == 0) c_.note += (c_.note.empty() ? "" : "; ") + std::string("no samples");
    return std::move(c_);
  }

 private:
  double slack_;
  ClauseCheck c_;
  Witness worst_;
};

std::string pm(double m) { return "m=" + num(m); }
std::string ps(double s) { return "s=" + num(s); }

// k-th subinterval membership helpers.  Returns k >= 1 or 0.
int k_in_open(double s, int parity) {
  // s in (2k + parity, 2k + parity + 1)
  const double z = (s - parity) / 2.0;
  const int k = static_cast<int>(std::floor(z));
  if (k < 1) return 0;
  const double frac = s - parity - 2.0 * k;
  return (frac > 0.0 && frac < 1.0) ? k : 0;
}

// Samples strictly inside (a, b), evenly spaced, plus optional closed ends.
std::vector<double> interval_samples(double a, double b, int n, bool with_a, bool with_b) {
  std::vector<double> v;
  if (with_a) v.push_back(a);
  for (int i = 1; i <= n; ++i) v.push_back(a + (b - a) * i / (n + 1));
  if (with_b) v.push_back(b);
  return v;
}

double safe_root(const std::function<RootResult()>& f, std::string& err) {
  try {
    return f().value;
  } catch (const std::exception& e) {
    err = e.what();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double p1_value(double m) {
  std::string e;
  return safe_root([m] { return p1(ModulusM(m)); }, e);
}
double p2_value(double m) {
  std::string e;
  return safe_root([m] { return p2(ModulusM(m)); }, e);
}

// Parameters that snap to integer s stand for the rational they round from;
// at a triple root the rounding of that rational moves the root by ~1e-5.
quad exact_m(double m) {
  if (const auto n = snapped_integer(s_of(m))) {
    const quad a = *n - 1, b = *n + 1;
    return m < 1.0 ? a / b : b / a;
  }
  return quad(m);
}

// Independent root: binary64 scan oracle to locate, 128-bit bisection to refine.
double quad_p1(double m) {
  const double approx = oracle_p1(ModulusM(m)).value;
  const double w = 1e-4 * std::max(1.0, approx);
  return static_cast<double>(detail::quad_root_g1(exact_m(m), approx - w, approx + w));
}
double quad_p2(double m) {
  const double approx = oracle_p2(ModulusM(m)).value;
  const double w = 1e-4 * std::max(1.0, approx);
  return static_cast<double>(detail::quad_root_g2(exact_m(m), approx - w, approx + w));
}
double quad_x1(double s) {
  const auto f = objective_gtilde(SParam(s));
  const double approx = oracle_min_root(f, 1e-9, 1.5 * kPi, kPi / 2048.0).value;
  const quad qs = s;
  return static_cast<double>(detail::bisect_quad([qs](quad x) { return fn::gtilde(x, qs); }, quad(approx - 1e-4),
                                                 quad(approx + 1e-4)));
}

// Signs on both sides of a root differ, at the smallest offset (1e-7 up to
// 1e-3 relative) where both are resolved above rounding.
bool sign_changes(const Objective& f, double root) {
  for (double rel = 1e-7; rel <= 1e-3; rel *= 10.0) {
    const double d = rel * std::max(1.0, std::abs(root));
    const int a = f(root - d).sign(), b = f(root + d).sign();
    if (a != 0 && b != 0) return a != b;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Theorem 1

ClauseCheck c_T1_a_monotone(const Context& cx) {
  Check c("T1.a.monotone", cx.grid.slack);
  for (std::size_t i = 0; i + 1 < cx.p1_below.size(); ++i) {
    const auto &a = cx.p1_below[i], &b = cx.p1_below[i + 1];
    if (!c.usable(a, "m") || !c.usable(b, "m")) continue;
    c.less(a.value, b.value, pm(b.param));
  }
  for (std::size_t i = 0; i + 1 < cx.p1_above.size(); ++i) {
    const auto &a = cx.p1_above[i], &b = cx.p1_above[i + 1];
    if (!c.usable(a, "m") || !c.usable(b, "m")) continue;
    c.less(b.value, a.value, pm(b.param));
  }
  return c.finish();
}

ClauseCheck c_T1_a_exact(const Context& cx) {
  Check c("T1.a.exact", cx.grid.slack);
  c.note("p1 = pi m/|1-m| at m = k/(k+2), (k+2)/k; library value and 128-bit independent root");
  for (int k = 1; k <= cx.grid.k_max + 1; ++k) {
    for (const double m : {double(k) / (k + 2), double(k + 2) / k}) {
      if (std::abs(m - 1.0) <= cx.grid.band) continue;
      const double expected = hyperbola(m);
      c.near(p1_value(m), expected, cx.grid.exact_tol, pm(m));
      c.near(quad_p1(m), expected, cx.grid.exact_tol, pm(m) + " (128-bit)");
    }
  }
  return c.finish();
}

// Distance from m to the nearest k/(k+1) or (k+1)/k (odd s).
double distance_to_odd_s(double m) {
  const int k = std::max(1, static_cast<int>(std::lround((s_of(m) - 1.0) / 2.0)));
  const double ms = m < 1.0 ? double(k) / (k + 1) : double(k + 1) / k;
  return std::abs(m - ms);
}

// Central differences at two steps agree: a bounded, converging difference
// quotient.  The step follows the distance to the nearest known singularity.
void smooth_at(Check& c, const std::function<double(double)>& p, double m, double rel, double dist) {
  const double h1 = std::min(1e-4 * m, 1e-2 * dist), h2 = h1 / 10.0;
  const double d1 = (p(m + h1) - p(m - h1)) / (2 * h1);
  const double d2 = (p(m + h2) - p(m - h2)) / (2 * h2);
  c.near(d1, d2, rel * std::max(1.0, std::abs(d2)), pm(m));
}

ClauseCheck c_T1_b_smooth(const Context& cx) {
  Check c("T1.b.smooth", cx.grid.slack);
  c.note("finite-difference proxy: central quotients at two steps agree and match -g1_m/g1_p");
  const int stride = std::max(1, cx.grid.m_points_per_side / 100);
  auto run = [&](const std::vector<RootPoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); i += stride) {
      const double m = pts[i].param;
      const double dist = distance_to_odd_s(m);
      // Vertical tangents sit at k/(k+1), (k+1)/k.
      if (dist < 1e-6 * m) continue;
      smooth_at(c, p1_value, m, 1e-3, dist);
      try {
        const double d = p1_derivative(ModulusM(m));
        const double h = std::min(1e-6 * m, 1e-3 * dist);
        const double fd = (p1_value(m + h) - p1_value(m - h)) / (2 * h);
        c.near(d, fd, 1e-4 * std::max(1.0, std::abs(fd)), pm(m) + " implicit");
      } catch (const std::exception& e) {
        c.truth(false, pm(m) + " " + e.what());
      }
    }
  };
  run(cx.p1_below);
  run(cx.p1_above);
  return c.finish();
}

ClauseCheck c_T1_b_vertical(const Context& cx) {
  Check c("T1.b.vertical", cx.grid.slack);
  c.note("at k/(k+1), (k+1)/k: g1_p = 0, g1_m != 0, one-sided slope grows >= 10x as h shrinks 100x");
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    for (const double m : {double(k) / (k + 1), double(k + 1) / k}) {
      const auto vt = vertical_tangent_check(ModulusM(m));
      c.truth(vt.confirmed, pm(m), {vt.p, vt.dg_dp, vt.dg_dm});
      const double sign = m < 1.0 ? 1.0 : -1.0;
      const double p0 = p1_value(m);
      for (const double dir : {-1.0, 1.0}) {
        const double ha = 1e-4 * m, hb = 1e-6 * m;
        const double sa = (p1_value(m + dir * ha) - p0) / (dir * ha);
        const double sb = (p1_value(m + dir * hb) - p0) / (dir * hb);
        c.truth(sign * sa > 0 && sign * sb > 10.0 * sign * sa, pm(m) + (dir < 0 ? " left" : " right"), {sa, sb});
      }
    }
  }
  return c.finish();
}

ClauseCheck c_T1_c(const Context& cx) {
  Check c("T1.c", cx.grid.slack);
  for (const auto& r : cx.p1_below) {
    const double m = r.param;
    if (m <= 1.0 / 3.0 || !c.usable(r, "m")) continue;
    const double s = s_of(m), hyp = hyperbola(m);
    if (k_in_open(s, 0)) c.less(r.value, hyp, pm(m));
    else if (k_in_open(s, 1)) c.less(hyp, r.value, pm(m));
  }
  for (const auto& r : cx.p1_above) {
    const double m = r.param;
    if (m >= 3.0 || !c.usable(r, "m")) continue;
    const double s = s_of(m), hyp = hyperbola(m);
    // m in ((2k+3)/(2k+1), (k+1)/k)  <=>  s in (2k+1, 2k+2)
    if (k_in_open(s, 1)) c.less(hyp, r.value, pm(m));
    else if (k_in_open(s, 0)) c.less(r.value, hyp, pm(m));
  }
  return c.finish();
}

ClauseCheck c_T1_d(const Context& cx) {
  Check c("T1.d", cx.grid.slack);
  for (const auto& r : cx.p1_below) {
    const double m = r.param;
    if (m <= 1.0 / 3.0 || !c.usable(r, "m")) continue;
    const double s = s_of(m), hyp = hyperbola(m), w = kPi * m / (1.0 + m);
    if (const int k = k_in_open(s, 0)) c.less(hyp - w * h1_stated(s, k), r.value, pm(m));
    else if (const int k2 = k_in_open(s, 1)) c.less(r.value, hyp + w * h2_stated(s, k2), pm(m));
  }
  for (const auto& r : cx.p1_above) {
    const double m = r.param;
    if (m >= 3.0 || !c.usable(r, "m")) continue;
    const double s = s_of(m), hyp = hyperbola(m), w = kPi * m / (1.0 + m);
    if (const int k = k_in_open(s, 1)) c.less(r.value, hyp + w * h2_stated(s, k), pm(m));
    else if (const int k2 = k_in_open(s, 0)) c.less(hyp - w * h1_stated(s, k2), r.value, pm(m));
  }
  return c.finish();
}

ClauseCheck c_T1_e(const Context& cx) {
  Check c("T1.e", cx.grid.slack);
  const double rho = const_rho();
  for (const auto& r : cx.p1_below) {
    const double m = r.param;
    if (m >= 1.0 / 3.0 || !c.usable(r, "m")) continue;
    c.less(std::max(rho * m, hyperbola(m)), r.value, pm(m));
    c.less(r.value, 1.5 * kPi * m, pm(m));
  }
  for (const auto& r : cx.p1_above) {
    const double m = r.param;
    if (m <= 3.0 || !c.usable(r, "m")) continue;
    c.less(std::max(rho, hyperbola(m)), r.value, pm(m));
    c.less(r.value, 1.5 * kPi, pm(m));
  }
  return c.finish();
}

ClauseCheck sign_change_clause(const std::string& id, const std::vector<RootPoint>& pts, bool second, double slack) {
  Check c(id, slack);
  for (const auto& r : pts) {
    if (!c.usable(r, "m")) continue;
    const ModulusM m(r.param);
    const Objective f = second ? objective_g2(m) : objective_g1(m);
    c.truth(r.changed_sign && sign_changes(f, r.value), pm(r.param), {r.value});
  }
  return c.finish();
}

ClauseCheck c_T1_f(const Context& cx) { return sign_change_clause("T1.f", cx.p1_all(), false, cx.grid.slack); }

ClauseCheck c_T1_remark_h(const Context& cx) {
  Check c("T1.remark.h_range", cx.grid.slack);
  c.note("0 <= h1 < 0.3264, 0 <= h2 < 0.3244, both -> 0 at the subinterval ends");
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    for (const double s : interval_samples(2.0 * k, 2.0 * k + 1.0, 2000, false, false)) {
      const double h = h1_stated(s, k);
      c.less(-h, 0.0, ps(s));
      c.less(h, 0.3264, ps(s));
    }
    for (const double s : interval_samples(2.0 * k + 1.0, 2.0 * k + 2.0, 2000, false, false)) {
      const double h = h2_stated(s, k);
      c.less(-h, 0.0, ps(s));
      c.less(h, 0.3244, ps(s));
    }
    const double e = 1e-12;
    c.less(h1_stated(2.0 * k + e, k), 1e-3, ps(2.0 * k + e));
    c.less(h1_stated(2.0 * k + 1.0 - e, k), 1e-3, ps(2.0 * k + 1.0 - e));
    c.less(h2_stated(2.0 * k + 1.0 + e, k), 1e-3, ps(2.0 * k + 1.0 + e));
    c.less(h2_stated(2.0 * k + 2.0 - e, k), 1e-3, ps(2.0 * k + 2.0 - e));
  }
  return c.finish();
}

// ---------------------------------------------------------------------------
// Theorem 2

ClauseCheck c_T2_a_exact(const Context& cx) {
  Check c("T2.a.exact", cx.grid.slack);
  c.note("p2 = pi m/|1-m| at k/(k+1), (k+1)/k; library value and 128-bit independent root");
  for (int k = 1; k <= cx.grid.k_max + 1; ++k) {
    for (const double m : {double(k) / (k + 1), double(k + 1) / k}) {
      c.near(p2_value(m), hyperbola(m), cx.grid.exact_tol, pm(m));
      c.near(quad_p2(m), hyperbola(m), cx.grid.exact_tol, pm(m) + " (128-bit)");
    }
  }
  return c.finish();
}

ClauseCheck c_T2_a_mstar(const Context& cx) {
  Check c("T2.a.mstar", cx.grid.slack);
  c.note("m* inside the stated enclosures on both sides, p2(m*) on the hyperbola");
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    const auto hm = find_p2_hyperbola_meeting(k);
    c.less(enclosure_lo(k), hm.m_star, pm(hm.m_star));
    c.less(hm.m_star, enclosure_hi(k), pm(hm.m_star));
    c.near(p2_value(hm.m_star), hyperbola(hm.m_star), 1e-8 * hyperbola(hm.m_star), pm(hm.m_star));
    const double mu = 1.0 / hm.m_star;
    c.less(enclosure_above_lo(k), mu, pm(mu));
    c.less(mu, enclosure_above_hi(k), pm(mu));
    c.near(p2_value(mu), hyperbola(mu), 1e-8 * hyperbola(mu), pm(mu));
  }
  return c.finish();
}

ClauseCheck c_T2_b(const Context& cx) {
  Check c("T2.b", cx.grid.slack);
  c.note("finite-difference proxy on the stated sets (first set read as (0,1/2)); "
         "m* < m_bar and a diverging quotient at m_bar");
  const int n = std::max(3, cx.grid.samples_per_interval / 2);
  for (const auto& r : cx.p2_below) {
    if (r.param < 0.5 && (&r - cx.p2_below.data()) % 40 == 0) smooth_at(c, p2_value, r.param, 1e-3, r.param);
  }
  for (const auto& r : cx.p2_above) {
    if (r.param > 2.0 && (&r - cx.p2_above.data()) % 40 == 0) smooth_at(c, p2_value, r.param, 1e-3, r.param);
  }
  const auto crossings = find_crossings(cx.grid.k_max);
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    const double b1 = double(k) / (1 + k), b2 = enclosure_lo(k), b3 = enclosure_hi(k), b4 = double(1 + k) / (2 + k);
    for (const double m : interval_samples(b1, b2, n, false, false)) smooth_at(c, p2_value, m, 1e-3, 1e-2 * m);
    for (const double m : interval_samples(b3, b4, n, false, false)) smooth_at(c, p2_value, m, 1e-3, 1e-2 * m);
    const double a1 = double(k + 2) / (k + 1), a2 = enclosure_above_lo(k), a3 = enclosure_above_hi(k),
                 a4 = double(k + 1) / k;
    for (const double m : interval_samples(a1, a2, n, false, false)) smooth_at(c, p2_value, m, 1e-3, 1e-2 * m);
    for (const double m : interval_samples(a3, a4, n, false, false)) smooth_at(c, p2_value, m, 1e-3, 1e-2 * m);

    const auto hm = find_p2_hyperbola_meeting(k);
    for (const auto& cp : crossings) {
      if (cp.k != k || cp.trivial) continue;
      const double mbar = cp.m_bar;
      if (!cp.above_one) {
        c.less(enclosure_lo(k), hm.m_star, pm(hm.m_star));
        c.less(hm.m_star, mbar, pm(mbar));
        c.less(mbar, enclosure_hi(k), pm(mbar));
      } else {
        c.less(enclosure_above_lo(k), mbar, pm(mbar));
        c.less(mbar, 1.0 / hm.m_star, pm(mbar));
        c.less(1.0 / hm.m_star, enclosure_above_hi(k), pm(mbar));
      }
      // p2 has a cube-root vertical tangent here; binary64 p2 is good to ~1e-5 nearby.
      const double ha = 1e-3 * mbar, hb = 1e-5 * mbar;
      const double qa = (p2_value(mbar + ha) - p2_value(mbar - ha)) / (2 * ha);
      const double qb = (p2_value(mbar + hb) - p2_value(mbar - hb)) / (2 * hb);
      const double sign = cp.above_one ? -1.0 : 1.0;
      c.truth(sign * qa > 0 && sign * qb > 10.0 * sign * qa, pm(mbar) + " vertical", {qa, qb});
    }
  }
  return c.finish();
}

ClauseCheck c_T2_c(const Context& cx) {
  Check c("T2.c", cx.grid.slack);
  c.note("lower constant checked as printed (5.7)");
  const double k57 = kPrintedP2LowerConstant;
  for (const auto& r : cx.p2_below) {
    const double m = r.param;
    if (!c.usable(r, "m")) continue;
    if (m < 0.5) {
      c.less(k57 * m, r.value, pm(m));
      c.less(r.value, 2.0 * kPi * m, pm(m));
    } else {
      const double hyp = hyperbola(m), w = m / (1.0 - m);
      c.less(hyp - w * std::asin((1.0 - m) / (1.0 + m)), r.value, pm(m));
      c.less(r.value, hyp + m / (3.0 * m - 1.0), pm(m));
    }
  }
  for (const auto& r : cx.p2_above) {
    const double m = r.param;
    if (!c.usable(r, "m")) continue;
    if (m <= 2.0) {
      const double hyp = hyperbola(m), w = m / (m - 1.0);
      c.less(hyp - w * std::asin((m - 1.0) / (m + 1.0)), r.value, pm(m));
      c.less(r.value, hyp + m / (3.0 - m), pm(m));
    } else {
      c.less(k57, r.value, pm(m));
      c.less(r.value, 2.0 * kPi, pm(m));
    }
  }
  return c.finish();
}

// Alternation sets of the wrapping statements.  Returns +1 where the root is
// above the hyperbola, -1 below, 0 outside all sets.
int p2_side(double m) {
  if (m > 0.5 && m < 1.0) {
    for (int k = 1; double(k) / (k + 1) < m; ++k) {
      if (m > double(k) / (k + 1) && m <= enclosure_lo(k)) return -1;
      if (m >= enclosure_hi(k) && m < double(k + 1) / (k + 2)) return 1;
    }
  } else if (m > 1.0 && m < 2.0) {
    for (int k = 1; double(k + 2) / (k + 1) > 1.0 + 1e-15 && m < double(k + 1) / k; ++k) {
      if (m > double(k + 2) / (k + 1) && m <= enclosure_above_lo(k)) return 1;
      if (m >= enclosure_above_hi(k) && m < double(k + 1) / k) return -1;
    }
  }
  return 0;
}

ClauseCheck c_T2_d(const Context& cx) {
  Check c("T2.d", cx.grid.slack);
  auto test = [&](double m, double p2v) {
    const int side = p2_side(m);
    if (side > 0) c.less(hyperbola(m), p2v, pm(m));
    else if (side < 0) c.less(p2v, hyperbola(m), pm(m));
  };
  for (const auto& r : cx.p2_all()) {
    if (p2_side(r.param) != 0 && c.usable(r, "m")) test(r.param, r.value);
  }
  // Closed ends and interior samples for k = 1..k_max.
  const int n = cx.grid.samples_per_interval;
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    for (const double m : interval_samples(double(k) / (k + 1), enclosure_lo(k), n, false, true)) test(m, p2_value(m));
    for (const double m : interval_samples(enclosure_hi(k), double(k + 1) / (k + 2), n, true, false)) test(m, p2_value(m));
    for (const double m : interval_samples(double(k + 2) / (k + 1), enclosure_above_lo(k), n, false, true))
      test(m, p2_value(m));
    for (const double m : interval_samples(enclosure_above_hi(k), double(k + 1) / k, n, true, false))
      test(m, p2_value(m));
  }
  return c.finish();
}

ClauseCheck c_T2_e(const Context& cx) { return sign_change_clause("T2.e", cx.p2_all(), true, cx.grid.slack); }

// ---------------------------------------------------------------------------
// Theorem 3

ClauseCheck c_T3_a(const Context& cx) {
  Check c("T3.a", cx.grid.slack);
  c.note("continuity proxy: |p(m(1+1e-9)) - p(m)| small relative to p");
  const int stride = std::max(1, cx.grid.m_points_per_side / 100);
  for (const auto* pts : {&cx.p1_below, &cx.p1_above, &cx.p2_below, &cx.p2_above}) {
    const bool second = pts == &cx.p2_below || pts == &cx.p2_above;
    for (std::size_t i = 0; i < pts->size(); i += stride) {
      const auto& r = (*pts)[i];
      if (!c.usable(r, "m")) continue;
      const double m2 = r.param * (1.0 + 1e-9);
      const double v = second ? p2_value(m2) : p1_value(m2);
      c.less(std::abs(v - r.value), 1e-2 * std::max(1.0, r.value), pm(r.param));
    }
  }
  return c.finish();
}

ClauseCheck c_T3_b(const Context& cx) {
  Check c("T3.b", cx.grid.slack);
  const auto a = cx.p1_all(), b = cx.p2_all();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double m = a[i].param;
    if (!(m < 0.5 || m > 2.0)) continue;
    if (!c.usable(a[i], "m") || !c.usable(b[i], "m")) continue;
    c.less(a[i].value, b[i].value, pm(m));
  }
  return c.finish();
}

ClauseCheck c_T3_c_order(const Context& cx) {
  Check c("T3.c.order", cx.grid.slack);
  auto test = [&](double m, double v1, double v2) {
    const int side = p2_side(m);  // same alternation sets
    if (side == 0) return;
    // p1 > p2 exactly where p2 is under the hyperbola, on both sides of 1.
    if (side < 0) c.less(v2, v1, pm(m));
    else c.less(v1, v2, pm(m));
  };
  const auto a = cx.p1_all(), b = cx.p2_all();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (p2_side(a[i].param) == 0) continue;
    if (!c.usable(a[i], "m") || !c.usable(b[i], "m")) continue;
    test(a[i].param, a[i].value, b[i].value);
  }
  const int n = cx.grid.samples_per_interval;
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    std::vector<double> ms;
    for (auto v : {interval_samples(double(k) / (k + 1), enclosure_lo(k), n, false, true),
                   interval_samples(enclosure_hi(k), double(k + 1) / (k + 2), n, true, false),
                   interval_samples(double(k + 2) / (k + 1), enclosure_above_lo(k), n, false, true),
                   interval_samples(enclosure_above_hi(k), double(k + 1) / k, n, true, false)})
      ms.insert(ms.end(), v.begin(), v.end());
    for (const double m : ms) test(m, p1_value(m), p2_value(m));
  }
  return c.finish();
}

ClauseCheck c_T3_c_crossings(const Context& cx) {
  Check c("T3.c.crossings", cx.grid.slack);
  c.note("nontrivial crossings inside the stated enclosures with |p1-p2| < 1e-8; trivial ones at pi k, pi(k+1)");
  for (const auto& cp : find_crossings(cx.grid.k_max + 1)) {
    if (cp.trivial) {
      const double expected = cp.above_one ? kPi * (cp.k + 1) : kPi * cp.k;
      c.near(p1_value(cp.m_bar), expected, cx.grid.exact_tol, pm(cp.m_bar) + " p1");
      c.near(p2_value(cp.m_bar), expected, cx.grid.exact_tol, pm(cp.m_bar) + " p2");
      continue;
    }
    const double lo = cp.above_one ? enclosure_above_lo(cp.k) : enclosure_lo(cp.k);
    const double hi = cp.above_one ? enclosure_above_hi(cp.k) : enclosure_hi(cp.k);
    c.less(lo, cp.m_bar, pm(cp.m_bar));
    c.less(cp.m_bar, hi, pm(cp.m_bar));
    c.less(cp.residual, 1e-8, pm(cp.m_bar) + " residual");
  }
  return c.finish();
}

ClauseCheck c_T3_d(const Context& cx) {
  Check c("T3.d", cx.grid.slack);
  c.note("t1, t2 at 1 +- 10^-d exceed 10^(d-1), d = 2, 3");
  for (const int d : {2, 3}) {
    for (const double sgn : {-1.0, 1.0}) {
      const double m = 1.0 + sgn * std::pow(10.0, -d);
      const auto t = maxwell_times(ModulusM(m, cx.grid.band));
      c.less(std::pow(10.0, d - 1), t.t1, pm(m) + " t1");
      c.less(std::pow(10.0, d - 1), t.t2, pm(m) + " t2");
    }
  }
  return c.finish();
}

ClauseCheck c_T3_e(const Context& cx) {
  Check c("T3.e", cx.grid.slack);
  c.note("at k/(k+1) p1 slope diverges while p2 slope converges, 0 < p2' < p1'; mirrored for (k+1)/k");
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    for (const double m : {double(k) / (k + 1), double(k + 1) / k}) {
      const double sign = m < 1.0 ? 1.0 : -1.0;
      const double q1 = p1_value(m), q2 = p2_value(m);
      const double ha = 1e-4 * m, hb = 1e-6 * m;
      const double s1a = (p1_value(m + ha) - q1) / ha, s1b = (p1_value(m + hb) - q1) / hb;
      const double s2a = (p2_value(m + ha) - q2) / ha, s2b = (p2_value(m + hb) - q2) / hb;
      c.truth(sign * s1b > 10.0 * sign * s1a && sign * s1a > 0, pm(m) + " p1 slope", {s1a, s1b});
      c.near(s2a, s2b, 1e-2 * std::abs(s2b), pm(m) + " p2 slope");
      c.truth(sign * s2b > 0 && sign * s2b < sign * s1b, pm(m) + " ordering", {s2b, s1b});
    }
  }
  return c.finish();
}

// ---------------------------------------------------------------------------
// Lemmas, propositions, section results

ClauseCheck c_L1(const Context& cx) {
  Check c("L1", cx.grid.slack);
  c.note("random s per k: x1 in the half-interval and the only sign change of gtilde there");
  std::mt19937_64 rng(cx.grid.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    for (int i = 0; i < 50; ++i) {
      for (const int parity : {0, 1}) {
        const double s = 2.0 * k + parity + 1e-6 + (1.0 - 2e-6) * u(rng);
        const double as = std::asin(1.0 / s);
        const double lo = parity == 0 ? kPi - as : kPi, hi = parity == 0 ? kPi : kPi + as;
        const double x = x1(SParam(s)).value;
        c.less(lo, x, ps(s));
        c.less(x, hi, ps(s));
        // Count sign changes on the half-interval.
        const Objective f = objective_gtilde(SParam(s));
        int changes = 0, prev = f(lo).sign();
        for (int j = 1; j <= 400; ++j) {
          const int sg = f(lo + (hi - lo) * j / 400).sign();
          if (sg != 0 && prev != 0 && sg != prev) ++changes;
          if (sg != 0) prev = sg;
        }
        c.truth(changes == 1, ps(s) + " unique", {double(changes)});
      }
    }
  }
  return c.finish();
}

ClauseCheck c_L2(const Context& cx) {
  Check c("L2", cx.grid.slack);
  c.note("if gtilde(pi - d/s-, s-) > 0 then gtilde(pi + d/s+, s+) < 0, s- + s+ = 2 nu");
  std::mt19937_64 rng(cx.grid.seed + 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < cx.grid.random_samples * 2; ++i) {
    const int nu = 1 + static_cast<int>(u(rng) * 10);
    const double sm = 1.0 + 1e-9 + (nu - 1.0 - 2e-9) * u(rng);
    const double sp = 2.0 * nu - sm;
    if (!(sm < sp)) continue;
    const double d = std::max(1e-6, 0.5 * kPi * u(rng));
    const double left = fn::gtilde(kPi - d / sm, sm);
    const double right = fn::gtilde(kPi + d / sp, sp);
    c.less(left + right, 0.0, "nu=" + std::to_string(nu) + " s-=" + num(sm) + " d=" + num(d));
    if (left > 0) c.less(right, 0.0, "s-=" + num(sm));
  }
  return c.finish();
}

ClauseCheck c_C1(const Context& cx) {
  Check c("C1", cx.grid.slack);
  for (std::size_t i = 0; i < cx.s_values.size(); ++i) {
    const auto& r = cx.x1_s[i];
    const double s = r.param;
    if (!c.usable(r, "s")) continue;
    const double as = std::asin(1.0 / s);
    if (k_in_open(s, 0)) {
      c.less(kPi - as, r.value, ps(s));
      c.less(r.value, kPi, ps(s));
    } else if (k_in_open(s, 1)) {
      c.less(kPi, r.value, ps(s));
      c.less(r.value, kPi + as, ps(s));
    }
  }
  return c.finish();
}

ClauseCheck c_P_g1_1(const Context& cx) {
  Check c("P.g1_1", cx.grid.slack);
  c.note("x1(s) = pi at integer s = 2..12; library value and 128-bit independent root");
  for (int s = 2; s <= 12; ++s) {
    c.near(x1(SParam(s)).value, kPi, cx.grid.exact_tol, ps(s));
    c.near(quad_x1(s), kPi, cx.grid.exact_tol, ps(s) + " (128-bit)");
  }
  return c.finish();
}

ClauseCheck c_P_g1_2(const Context& cx) {
  Check c("P.g1_2", cx.grid.slack);
  for (const auto& r : cx.x1_s) {
    const double s = r.param;
    if (!c.usable(r, "s")) continue;
    const double a = a_stated(s);
    if (k_in_open(s, 0)) {
      c.less(kPi - a, r.value, ps(s));
      c.less(r.value, kPi, ps(s));
    } else if (k_in_open(s, 1)) {
      c.less(kPi, r.value, ps(s));
      c.less(r.value, kPi + a, ps(s));
    }
  }
  for (const double s : {4.0, 6.0, 9.0}) c.near(a_stated(s), 0.0, 0.0, ps(s) + " a(s)");
  c.less(a_stated(1e6 + 0.5), 1e-5, "s=1e6+0.5 a(s)");
  return c.finish();
}

ClauseCheck c_E_p1_general(const Context& cx) {
  Check c("E.p1_general", cx.grid.slack);
  for (const auto& r : cx.x1_s) {
    if (!c.usable(r, "s")) continue;
    const double as = std::asin(1.0 / r.param);
    c.less(kPi - as, r.value, ps(r.param));
    c.less(r.value, kPi + as, ps(r.param));
  }
  return c.finish();
}

ClauseCheck c_S4_3(const Context& cx) {
  Check c("S4.3", cx.grid.slack);
  c.note("p1(1/3) = pi/2; for m < 1/3 the root solves f(p/m) = f(p), f = x cot x, and g1(pi m, m) = -sin(pi m)");
  c.near(p1_value(1.0 / 3.0), kPi / 2.0, cx.grid.exact_tol, "m=1/3");
  for (const auto& r : cx.p1_below) {
    const double m = r.param;
    if (m >= 1.0 / 3.0 || !c.usable(r, "m")) continue;
    const double a = eval_f(r.value / m), b = eval_f(r.value);
    c.near(a, b, 1e-8 * std::max(1.0, std::abs(b)), pm(m));
    c.near(eval_g1(kPi * m, ModulusM(m)), -std::sin(kPi * m), 1e-14, pm(m) + " g1(pi m)");
  }
  return c.finish();
}

ClauseCheck c_S5_1(const Context& cx) {
  Check c("S5.1", cx.grid.slack);
  c.note("rho2 m < p2 < 2 pi m for m < 1/2, p2 above the hyperbola on (1/3,1/2), G(rho2) = 1/3");
  const double r2 = const_rho2();
  c.near(eval_G(r2), 1.0 / 3.0, 1e-13, "x=rho2");
  for (const auto& r : cx.p2_below) {
    const double m = r.param;
    if (m >= 0.5 || !c.usable(r, "m")) continue;
    c.less(r2 * m, r.value, pm(m));
    c.less(r.value, 2.0 * kPi * m, pm(m));
    if (m > 1.0 / 3.0) c.less(hyperbola(m), r.value, pm(m));
  }
  return c.finish();
}

template <typename Pred>
ClauseCheck x2_clause(const Context& cx, const std::string& id, Pred pred) {
  Check c(id, cx.grid.slack);
  for (const auto& r : cx.x2_s) {
    if (r.param < 3.0) continue;
    if (!c.usable(r, "s")) continue;
    pred(c, r.param, r.value);
  }
  return c.finish();
}

ClauseCheck c_P_g2_1(const Context& cx) {
  return x2_clause(cx, "P.g2_1", [](Check& c, double s, double x) {
    c.less(x, 1.5 * kPi, ps(s));
    c.less(0.0, fn::g2tilde(1.5 * kPi, s), ps(s) + " g2tilde(3pi/2)");
  });
}

ClauseCheck c_P_g2_2(const Context& cx) {
  return x2_clause(cx, "P.g2_2", [](Check& c, double s, double x) {
    if (s > 3.0) c.less(x, kPi + 1.0 / (s - 2.0), ps(s));
  });
}

int x2_side(double s) {
  const int k = static_cast<int>(std::floor((s - 1.0) / 2.0));
  if (k < 1) return 0;
  if (s > 2.0 * k + 1.0 && s <= 2.0 * k + 2.0 - 1.0 / (2.0 * k + 2.0)) return -1;
  const int k2 = static_cast<int>(std::floor((s - 2.0) / 2.0));
  if (k2 >= 1 && s >= 2.0 * k2 + 2.0 && s < 2.0 * k2 + 3.0) return 1;
  return 0;
}

ClauseCheck c_P_g2_3(const Context& cx) {
  Check c("P.g2_3", cx.grid.slack);
  auto test = [&](double s, double x) {
    const int side = x2_side(s);
    if (side > 0) c.less(kPi, x, ps(s));
    else if (side < 0) c.less(x, kPi, ps(s));
  };
  for (const auto& r : cx.x2_s)
    if (r.param >= 3.0 && x2_side(r.param) != 0 && c.usable(r, "s")) test(r.param, r.value);
  const int n = cx.grid.samples_per_interval;
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    for (const double s : interval_samples(2.0 * k + 1, 2.0 * k + 2 - 1.0 / (2.0 * k + 2), n, false, true))
      test(s, x2(SParam(s)).value);
    for (const double s : interval_samples(2.0 * k + 2, 2.0 * k + 3, n, true, false)) test(s, x2(SParam(s)).value);
    c.near(fn::g2tilde(kPi, 2.0 * k + 2), -8.0 * (2.0 * k + 2), 1e-9, ps(2.0 * k + 2) + " g2tilde(pi)");
  }
  return c.finish();
}

ClauseCheck c_S_g2_1(const Context& cx) {
  Check c("S.g2_1", cx.grid.slack);
  for (const double s : cx.s_values) {
    if (s < 3.0) continue;
    std::pair<double, double> r;
    try {
      r = x_roots_of_h(SParam(s));
    } catch (const std::exception& e) {
      c.truth(false, ps(s) + " " + e.what());
      continue;
    }
    const double as = std::asin(1.0 / s);
    c.less(kPi - as, r.first, ps(s));
    c.less(r.first, kPi + as, ps(s));
    c.less(2.0 * kPi - as, r.second, ps(s));
    c.less(r.second, 2.0 * kPi + as, ps(s));
    const int k = static_cast<int>(std::floor((s - 1.0) / 2.0));
    if (s > 2.0 * k + 1 && s < 2.0 * k + 2) c.less(r.first, kPi, ps(s) + " refined");
    else if (s > 2.0 * k + 2 && s < 2.0 * k + 3) c.less(kPi, r.first, ps(s) + " refined");
  }
  for (int s = 3; s <= 12; ++s) c.near(x_roots_of_h(SParam(s)).first, kPi, cx.grid.exact_tol, ps(s));
  return c.finish();
}

ClauseCheck c_R_g2_1(const Context& cx) {
  Check c("R.g2_1", cx.grid.slack);
  c.note("x2 = pi at s = 2n+1, where g2tilde and h vanish together");
  for (int n = 1; n <= cx.grid.k_max + 2; ++n) {
    const double s = 2.0 * n + 1;
    c.near(x2(SParam(s)).value, kPi, cx.grid.exact_tol, ps(s));
    const auto f = objective_g2tilde(SParam(s));
    const double o = oracle_min_root(f, 1e-9, 1.5 * kPi, kPi / 2048.0).value;
    c.near(o, kPi, cx.grid.oracle_tol, ps(s) + " oracle");
    const Sample g = sample_g2tilde(kPi, s), h = sample_h(kPi, s);
    c.truth(g.sign() == 0 && h.sign() == 0, ps(s) + " common root", {g.value, h.value});
  }
  return c.finish();
}

ClauseCheck c_E_g2_11(const Context& cx) {
  return x2_clause(cx, "E.g2_11", [](Check& c, double s, double x) {
    c.less(kPi - std::asin(1.0 / s), x, ps(s));
    c.less(x, 1.5 * kPi, ps(s));
  });
}

ClauseCheck c_J_monotone(const Context& cx) {
  Check c("J.monotone", cx.grid.slack);
  c.note("dJ/dx = gtilde^2/h^2 >= 0 vs central differences where |h| > 0.1");
  std::mt19937_64 rng(cx.grid.seed + 3);
  std::uniform_real_distribution<double> ux(0.05, 1.5 * kPi), us(1.1, 12.0);
  int taken = 0;
  while (taken < 100) {
    const double x = ux(rng), s = us(rng);
    if (std::abs(fn::h(x, s)) <= 0.1) continue;
    ++taken;
    const SParam sp(s);
    const double d = eval_J_dx(x, sp);
    const double hstep = 1e-5 * std::max(1.0, x);
    const double fd = (eval_J(x + hstep, sp) - eval_J(x - hstep, sp)) / (2 * hstep);
    c.less(-d, 0.0, "x=" + num(x) + " " + ps(s));
    c.near(d, fd, 1e-6 * std::max(1.0, std::abs(d)), "x=" + num(x) + " " + ps(s));
  }
  return c.finish();
}

ClauseCheck c_D_g1(const Context& cx) {
  Check c("D.g1", cx.grid.slack);
  c.note("g1_p(pi(k+1), (k+1)/k) = 0, g1_m = -pi k; p1' < 0 on (1,2) away from (k+1)/k");
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    const double m = double(k + 1) / k, p = kPi * (k + 1);
    c.near(fn::g1_dp(p, m), 0.0, 1e-12 * p, pm(m) + " g1_p");
    c.near(fn::g1_dm(p, m), -kPi * k, 1e-10 * k, pm(m) + " g1_m");
  }
  for (const auto& r : cx.p1_above) {
    const double m = r.param;
    if (m >= 2.0) continue;
    if (dist_int((s_of(m) - 1.0) / 2.0) * 2.0 < 1e-3) continue;
    try {
      c.less(p1_derivative(ModulusM(m)), 0.0, pm(m));
    } catch (const std::exception& e) {
      c.truth(false, pm(m) + " " + e.what());
    }
  }
  return c.finish();
}

ClauseCheck c_x2_odd(const Context& cx) {
  Check c("x2'.odd", cx.grid.slack);
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    const double ref = -kPi / (4.0 * k + 2.0);
    c.near(x2_derivative_numeric(SParam(2.0 * k + 1)), ref, 1e-4 * std::abs(ref), "k=" + std::to_string(k));
    c.near(x2_derivative_at_odd(k), ref, 1e-15, "k=" + std::to_string(k) + " reference");
  }
  return c.finish();
}

ClauseCheck c_D_g2partials(const Context& cx) {
  Check c("D.g2partials", cx.grid.slack);
  c.note("g2tilde_x(pi,2k+1) = 8k(1+k)(1+2k)pi, g2tilde_s(pi,2k+1) = 4k(1+k)pi^2; partials vs differences");
  for (int k = 1; k <= cx.grid.k_max; ++k) {
    const double s = 2.0 * k + 1;
    const double ex = 8.0 * k * (1 + k) * (1 + 2 * k) * kPi, es = 4.0 * k * (1 + k) * kPi * kPi;
    c.near(fn::g2tilde_dx(kPi, s), ex, 1e-12 * ex, ps(s) + " d/dx");
    c.near(fn::g2tilde_ds(kPi, s), es, 1e-12 * es, ps(s) + " d/ds");
  }
  std::mt19937_64 rng(cx.grid.seed + 4);
  std::uniform_real_distribution<double> ux(0.1, 6.0), us(1.2, 10.0), um(0.1, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double x = ux(rng), s = us(rng);
    const double hx = 1e-6 * std::max(1.0, x), hs = 1e-6 * s;
    const double fdx = (fn::g2tilde(x + hx, s) - fn::g2tilde(x - hx, s)) / (2 * hx);
    const double fds = (fn::g2tilde(x, s + hs) - fn::g2tilde(x, s - hs)) / (2 * hs);
    const double scale = s * s * s * (x + 1);
    c.near(fn::g2tilde_dx(x, s), fdx, 1e-6 * scale, "x=" + num(x) + " " + ps(s) + " d/dx");
    c.near(fn::g2tilde_ds(x, s), fds, 1e-6 * scale, "x=" + num(x) + " " + ps(s) + " d/ds");
    const double p = ux(rng);
    double m = um(rng);
    if (std::abs(m - 1.0) < 1e-2) m += 0.05;
    const double hp = 1e-6 * std::max(1.0, p), hm = 1e-6 * m;
    const double gp = (fn::g1(p + hp, m) - fn::g1(p - hp, m)) / (2 * hp);
    const double gm = (fn::g1(p, m + hm) - fn::g1(p, m - hm)) / (2 * hm);
    const double sc = (1.0 + m) * (1.0 + p / m);
    c.near(fn::g1_dp(p, m), gp, 1e-6 * sc, "p=" + num(p) + " " + pm(m) + " g1_p");
    c.near(fn::g1_dm(p, m), gm, 1e-6 * sc * (1.0 + p / (m * m)), "p=" + num(p) + " " + pm(m) + " g1_m");
  }
  return c.finish();
}

ClauseCheck fe_clause(const Context& cx, const std::string& id, const std::vector<RootPoint>& below, bool second) {
  Check c(id, cx.grid.slack);
  const int stride = std::max(1, cx.grid.m_points_per_side / 500);
  for (std::size_t i = 0; i < below.size(); i += stride) {
    const auto& r = below[i];
    if (!c.usable(r, "m")) continue;
    const double mu = 1.0 / r.param;
    const double v = second ? p2_value(mu) : p1_value(mu);
    c.near(v, mu * r.value, cx.grid.oracle_tol, pm(mu));
  }
  return c.finish();
}

ClauseCheck c_FE_p1(const Context& cx) { return fe_clause(cx, "FE.p1", cx.p1_below, false); }
ClauseCheck c_FE_p2(const Context& cx) { return fe_clause(cx, "FE.p2", cx.p2_below, true); }

ClauseCheck c_identities(const Context& cx) {
  Check c("identities", cx.grid.slack);
  c.note("scaling and reflection identities of g1, g2 relative to their rounding scale");
  std::mt19937_64 rng(cx.grid.seed + 5);
  std::uniform_real_distribution<double> up(0.01, 20.0), um(0.02, 0.98);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < cx.grid.random_samples; ++i) {
    const double p = up(rng), m = um(rng);
    const double s = (1 + m) / (1 - m), x = p * (1 - m) / m;
    const Sample a = sample_g1(p, m), b = sample_gtilde(x, s);
    const double tol1 = 1e-12 * (a.noise + std::abs((m - 1) / 2) * b.noise) / eps;
    c.near(a.value, (m - 1) / 2 * b.value, tol1, "p=" + num(p) + " " + pm(m) + " g1");
    const Sample a2 = sample_g2(p, m), b2 = sample_g2tilde(x, s);
    const double w = 1.0 / (2 * (1 + s) * (1 + s));
    c.near(a2.value, w * b2.value, 1e-12 * (a2.noise + w * b2.noise) / eps, "p=" + num(p) + " " + pm(m) + " g2");
    // Reflection: m > 1 written through 1/m.
    const double M = 1.0 / m, P = p * m;  // P = p / M
    const Sample r1 = sample_g1(P, m), r0 = sample_g1(p, M);
    c.near(r1.value, -(1.0 / M) * r0.value, 1e-12 * (r1.noise + r0.noise) / eps, "p=" + num(p) + " " + pm(M) + " g1 refl");
    const Sample t1 = sample_g2(P, m), t0 = sample_g2(p, M);
    c.near(t1.value, -(1.0 / (M * M)) * t0.value, 1e-12 * (t1.noise + t0.noise) / eps,
           "p=" + num(p) + " " + pm(M) + " g2 refl");
  }
  return c.finish();
}

ClauseCheck c_brackets(const Context& cx) {
  Check c("brackets", cx.grid.slack);
  c.note("certified brackets on 1000 log-spaced m per side pair: endpoint signs opposite or exact root");
  const int stride = std::max(1, cx.grid.m_points_per_side / 500);
  for (const auto* pts : {&cx.p1_below, &cx.p1_above}) {
    for (std::size_t i = 0; i < pts->size(); i += stride) {
      const ModulusM m((*pts)[i].param, cx.grid.band);
      const Bracket b1 = bracket_p1(m), b2 = bracket_p2(m);
      c.truth(b1.exact.has_value() || certifies(objective_g1(m), b1), pm(m.value()) + " p1", {b1.lo, b1.hi});
      c.truth(b2.exact.has_value() || certifies(objective_g2(m), b2), pm(m.value()) + " p2", {b2.lo, b2.hi});
    }
  }
  return c.finish();
}

ClauseCheck c_oracle(const Context& cx) {
  Check c("oracle", cx.grid.slack);
  c.note("bracketed roots vs scan oracle on 500 grid points (128-bit root at snapped exact parameters)");
  const auto a = cx.p1_all(), b = cx.p2_all();
  const std::size_t stride = std::max<std::size_t>(1, a.size() / 250);
  for (std::size_t i = 0; i < a.size(); i += stride) {
    const ModulusM m(a[i].param, cx.grid.band);
    // A binary64 scan cannot resolve a triple root; there the reference is the 128-bit root.
    const bool exact1 = bracket_p1(m).exact.has_value(), exact2 = bracket_p2(m).exact.has_value();
    if (c.usable(a[i], "m"))
      c.near(exact1 ? quad_p1(a[i].param) : oracle_p1(m).value, a[i].value, cx.grid.oracle_tol, pm(a[i].param) + " p1");
    if (c.usable(b[i], "m"))
      c.near(exact2 ? quad_p2(b[i].param) : oracle_p2(m).value, b[i].value, cx.grid.oracle_tol, pm(b[i].param) + " p2");
  }
  return c.finish();
}

using ClauseFn = ClauseCheck (*)(const Context&);

struct Entry {
  const char* id;
  ClauseFn fn;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {"T1.a.monotone", c_T1_a_monotone},
      {"T1.a.exact", c_T1_a_exact},
      {"T1.b.smooth", c_T1_b_smooth},
      {"T1.b.vertical", c_T1_b_vertical},
      {"T1.c", c_T1_c},
      {"T1.d", c_T1_d},
      {"T1.e", c_T1_e},
      {"T1.f", c_T1_f},
      {"T1.remark.h_range", c_T1_remark_h},
      {"T2.a.exact", c_T2_a_exact},
      {"T2.a.mstar", c_T2_a_mstar},
      {"T2.b", c_T2_b},
      {"T2.c", c_T2_c},
      {"T2.d", c_T2_d},
      {"T2.e", c_T2_e},
      {"T3.a", c_T3_a},
      {"T3.b", c_T3_b},
      {"T3.c.order", c_T3_c_order},
      {"T3.c.crossings", c_T3_c_crossings},
      {"T3.d", c_T3_d},
      {"T3.e", c_T3_e},
      {"L1", c_L1},
      {"L2", c_L2},
      {"C1", c_C1},
      {"P.g1_1", c_P_g1_1},
      {"P.g1_2", c_P_g1_2},
      {"E.p1_general", c_E_p1_general},
      {"S4.3", c_S4_3},
      {"S5.1", c_S5_1},
      {"P.g2_1", c_P_g2_1},
      {"P.g2_2", c_P_g2_2},
      {"P.g2_3", c_P_g2_3},
      {"S.g2_1", c_S_g2_1},
      {"R.g2_1", c_R_g2_1},
      {"E.g2_11", c_E_g2_11},
      {"J.monotone", c_J_monotone},
      {"D.g1", c_D_g1},
      {"x2'.odd", c_x2_odd},
      {"D.g2partials", c_D_g2partials},
      {"FE.p1", c_FE_p1},
      {"FE.p2", c_FE_p2},
      {"identities", c_identities},
      {"brackets", c_brackets},
      {"oracle", c_oracle},
  };
  return r;
}

std::vector<std::string> ids_with_prefix(const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& e : registry())
    if (std::string(e.id).rfind(prefix, 0) == 0) out.emplace_back(e.id);
  return out;
}

ClauseFn lookup(const std::string& id) {
  for (const auto& e : registry())
    if (id == e.id) return e.fn;
  throw std::invalid_argument("unknown clause id: " + id);
}

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ClauseCheck run_guarded(ClauseFn f, const std::string& id, const Context& cx) {
  try {
    return f(cx);
  } catch (const std::exception& e) {
    ClauseCheck c;
    c.clause_id = id;
    c.samples = 1;
    c.failures = 1;
    c.worst_violation = std::numeric_limits<double>::infinity();
    c.note = std::string("aborted: ") + e.what();
    return c;
  }
}

VerificationReport run(const std::vector<std::string>& ids, const VerificationGrid& grid) {
  const Context cx(grid);
  std::vector<std::future<ClauseCheck>> jobs;
  for (const auto& id : ids) {
    const ClauseFn f = lookup(id);
    jobs.push_back(std::async(std::launch::async, [f, id, &cx] { return run_guarded(f, id, cx); }));
  }
  VerificationReport rep;
  rep.grid = grid;
  rep.timestamp = now_utc();
  for (auto& j : jobs) rep.clauses.push_back(j.get());
  return rep;
}

}  // namespace

std::vector<double> grid_m_below(const VerificationGrid& g) {
  return log_grid(g.m_below_lo, g.m_below_hi, g.m_points_per_side);
}
std::vector<double> grid_m_above(const VerificationGrid& g) {
  return log_grid(g.m_above_lo, g.m_above_hi, g.m_points_per_side);
}
std::vector<double> grid_s(const VerificationGrid& g) {
  std::vector<double> v(g.s_points);
  for (int i = 0; i < g.s_points; ++i)
    v[i] = g.s_points == 1 ? g.s_lo : g.s_lo + (g.s_hi - g.s_lo) * i / (g.s_points - 1);
  return v;
}

const std::vector<std::string>& theorem1_clauses() {
  static const auto v = ids_with_prefix("T1.");
  return v;
}
const std::vector<std::string>& theorem2_clauses() {
  static const auto v = ids_with_prefix("T2.");
  return v;
}
const std::vector<std::string>& theorem3_clauses() {
  static const auto v = ids_with_prefix("T3.");
  return v;
}
const std::vector<std::string>& lemma_clauses() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> out;
    for (const auto& e : registry())
      if (std::string(e.id).rfind("T", 0) != 0) out.emplace_back(e.id);
    return out;
  }();
  return v;
}
std::vector<std::string> all_clauses() {
  std::vector<std::string> v;
  for (const auto& e : registry()) v.emplace_back(e.id);
  return v;
}

VerificationReport verify_theorem1(const VerificationGrid& g) { return run(theorem1_clauses(), g); }
VerificationReport verify_theorem2(const VerificationGrid& g) { return run(theorem2_clauses(), g); }
VerificationReport verify_theorem3(const VerificationGrid& g) { return run(theorem3_clauses(), g); }
VerificationReport verify_lemmas_props(const VerificationGrid& g) { return run(lemma_clauses(), g); }
VerificationReport verify_all(const VerificationGrid& g) { return run(all_clauses(), g); }

ClauseCheck verify_clause(const std::string& id, const VerificationGrid& g) {
  const ClauseFn f = lookup(id);
  const Context cx(g);
  return run_guarded(f, id, cx);
}

long VerificationReport::failures() const {
  long n = 0;
  for (const auto& c : clauses) n += c.passed() ? 0 : std::max(1L, c.failures);
  return n;
}

const ClauseCheck* VerificationReport::find(const std::string& id) const {
  for (const auto& c : clauses)
    if (c.clause_id == id) return &c;
  return nullptr;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "verification " << timestamp << "\n";
  os << "grid: m " << grid.m_points_per_side << " log points on [" << num(grid.m_below_lo) << ", "
     << num(grid.m_below_hi) << "] and [" << num(grid.m_above_lo) << ", " << num(grid.m_above_hi) << "]; s "
     << grid.s_points << " points on [" << num(grid.s_lo) << ", " << num(grid.s_hi) << "]; k 1.." << grid.k_max
     << "; slack " << num(grid.slack) << "\n";
  for (const auto& c : clauses) {
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-18s samples=%-7ld failures=%-5ld worst=%.3e", c.passed() ? "ok" : "FAIL",
                  c.clause_id.c_str(), c.samples, c.failures, c.worst_violation);
    os << line;
    if (!c.note.empty()) os << "  # " << c.note;
    os << "\n";
    if (!c.passed()) {
      for (const auto& w : c.witnesses) {
        os << "       " << w.parameter;
        for (double v : w.values) os << " " << num(v);
        os << "\n";
      }
    }
  }
  os << (passed() ? "all clauses passed" : "FAILED: " + std::to_string(failures()) + " failure(s)") << "\n";
  return os.str();
}

std::string VerificationReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "plateball.verification.v1";
  j["timestamp"] = timestamp;
  j["grid"] = {{"m_points_per_side", grid.m_points_per_side},
               {"m_below", {grid.m_below_lo, grid.m_below_hi}},
               {"m_above", {grid.m_above_lo, grid.m_above_hi}},
               {"s_points", grid.s_points},
               {"s_range", {grid.s_lo, grid.s_hi}},
               {"k_max", grid.k_max},
               {"samples_per_interval", grid.samples_per_interval},
               {"random_samples", grid.random_samples},
               {"seed", grid.seed}};
  j["tolerances"] = {{"slack", grid.slack},
                     {"exact", grid.exact_tol},
                     {"oracle", grid.oracle_tol},
                     {"singular_band", grid.band}};
  j["passed"] = passed();
  j["failures"] = failures();
  ordered_json arr = ordered_json::array();
  for (const auto& c : clauses) {
    ordered_json w = ordered_json::array();
    for (const auto& x : c.witnesses) w.push_back({{"parameter", x.parameter}, {"values", x.values}});
    ordered_json e = {{"clause_id", c.clause_id},
                      {"passed", c.passed()},
                      {"samples", c.samples},
                      {"failures", c.failures}};
    if (std::isfinite(c.worst_violation)) e["worst_violation"] = c.worst_violation;
    else e["worst_violation"] = nullptr;
    e["witnesses"] = w;
    e["note"] = c.note;
    arr.push_back(e);
  }
  j["clauses"] = arr;
  return j.dump(2);
}

}  // namespace plateball
