#include "plateball/root_localization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "plateball/errors.hpp"

namespace plateball {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOracleAgreement = 1e-9;

double h1_of_s(double s) {
  const double k = std::floor(s / 2.0);
  if (k < 1.0 || s - 2.0 * k > 1.0) throw DomainError("h1 needs s in [2k, 2k+1], got s = " + std::to_string(s));
  return std::min({s / 2.0 - k, std::cbrt(2.0 * k + 1.0 - s), s / kPi * std::asin(1.0 / s)});
}

double h2_of_s(double s) {
  const double k = std::floor((s - 1.0) / 2.0);
  if (k < 1.0 || s - (2.0 * k + 1.0) > 1.0) throw DomainError("h2 needs s in [2k+1, 2k+2], got s = " + std::to_string(s));
  return std::min({std::cbrt(s - (2.0 * k + 1.0)), k + 1.0 - s / 2.0, s / kPi * std::asin(1.0 / s)});
}

BoundCertificate cert(double param, double lo, double hi, std::string clause, bool strict_lo = true, bool strict_hi = true) {
  BoundCertificate c;
  c.parameter = param;
  c.lower = lo;
  c.upper = hi;
  c.clause = std::move(clause);
  c.strict_lower = strict_lo;
  c.strict_upper = strict_hi;
  return c;
}

BoundCertificate exact_cert(double param, double value, double half_width, std::string clause) {
  BoundCertificate c = cert(param, value - half_width, value + half_width, std::move(clause), false, false);
  c.exact = value;
  return c;
}

// x1 estimates; `sharp` adds the a(s) band, which the p-chart bracket skips.
std::vector<BoundCertificate> x1_chain(double s, bool sharp) {
  std::vector<BoundCertificate> out;
  if (s < 2.0 && !snapped_integer(s)) {
    out.push_back(cert(s, std::max(2.0 * const_rho() / (s + 1.0), kPi), 3.0 * kPi / (s + 1.0), "T1.e"));
    return out;
  }
  if (auto n = snapped_integer(s)) {
    out.push_back(exact_cert(s, kPi, kExactBracketHalfWidth, "P.g1_1"));
    return out;
  }
  const double as = std::asin(1.0 / s);
  const int k = static_cast<int>(std::floor(s / 2.0));
  if (s - 2.0 * k < 1.0) {  // (2k, 2k+1): root below pi
    if (sharp) out.push_back(cert(s, kPi - eval_a(s), kPi, "P.g1_2", false, true));
    out.push_back(cert(s, kPi - kPi / s * h1_of_s(s), kPi, "T1.c+T1.d"));
    out.push_back(cert(s, kPi - as, kPi, "C1", false, true));
  } else {  // (2k+1, 2k+2): root above pi
    if (sharp) out.push_back(cert(s, kPi, kPi + eval_a(s), "P.g1_2", true, false));
    out.push_back(cert(s, kPi, kPi + kPi / s * h2_of_s(s), "T1.c+T1.d"));
    out.push_back(cert(s, kPi, kPi + as, "C1", true, false));
  }
  out.push_back(cert(s, kPi - as, kPi + as, "E.p1_general", false, false));
  return out;
}

std::vector<BoundCertificate> x2_chain(double s) {
  std::vector<BoundCertificate> out;
  if (s < 3.0 && !snapped_integer(s)) {
    out.push_back(cert(s, 2.0 * kPrintedP2LowerConstant / (s + 1.0), 4.0 * kPi / (s + 1.0), "T2.c"));
    out.push_back(cert(s, 2.0 * const_rho2() / (s + 1.0), 4.0 * kPi / (s + 1.0), "S5.1"));
    return out;
  }
  const double as = std::asin(1.0 / s);
  const double general_hi = kPi + 1.0 / (s - 2.0);
  const int k = static_cast<int>(std::floor((s - 1.0) / 2.0));
  auto n = snapped_integer(s);
  if (n && *n % 2 == 1) {
    BoundCertificate c = cert(s, kPi - as, general_hi, "T2.c");
    c.exact = kPi;
    out.push_back(c);
  } else if (!n && s > 2.0 * k + 1.0 && s <= 2.0 * k + 2.0 - 1.0 / (2.0 * k + 2.0)) {
    out.push_back(cert(s, kPi - as, kPi, "T2.c+T2.d"));
  } else if ((n && *n % 2 == 0) || (s >= 2.0 * k + 2.0 && s < 2.0 * k + 3.0)) {
    out.push_back(cert(s, kPi, general_hi, "T2.c+T2.d"));
  }
  if (out.empty() || out.back().clause != "T2.c") out.push_back(cert(s, kPi - as, general_hi, "T2.c"));
  out.push_back(cert(s, kPi - as, 1.5 * kPi, "E.g2_11"));
  return out;
}

// x-chart certificates scaled into the p-chart, p = x m/(1-m).
std::vector<BoundCertificate> to_p_chart(std::vector<BoundCertificate> chain, double m) {
  const double c = m / (1.0 - m);
  for (auto& b : chain) {
    b.parameter = m;
    b.lower *= c;
    b.upper *= c;
    if (b.exact) {
      const double e = *b.exact * c;
      b.exact = e;
      // Degenerate exact-value brackets keep their half-width in the new chart.
      if (b.clause == "P.g1_1") {
        b.lower = e - kExactBracketHalfWidth;
        b.upper = e + kExactBracketHalfWidth;
      }
    }
  }
  return chain;
}

// p(m) = m p(1/m) for m > 1.
std::vector<BoundCertificate> reflect(std::vector<BoundCertificate> chain, double m) {
  for (auto& b : chain) {
    b.parameter = m;
    b.lower *= m;
    b.upper *= m;
    if (b.exact) b.exact = *b.exact * m;
  }
  return chain;
}

std::vector<BoundCertificate> p1_chain_below_one(double m) {
  if (m < 1.0 / 3.0 && !snapped_integer((1.0 + m) / (1.0 - m))) {
    const double hyp = kPi * m / (1.0 - m);
    return {cert(m, std::max(const_rho() * m, hyp), 1.5 * kPi * m, "T1.e")};
  }
  return to_p_chart(x1_chain((1.0 + m) / (1.0 - m), false), m);
}

std::vector<BoundCertificate> p2_chain_below_one(double m) {
  const double s = (1.0 + m) / (1.0 - m);
  if (m < 0.5 && !snapped_integer(s)) {
    return {cert(m, kPrintedP2LowerConstant * m, 2.0 * kPi * m, "T2.c"),
            cert(m, const_rho2() * m, 2.0 * kPi * m, "S5.1")};
  }
  return to_p_chart(x2_chain(s), m);
}

Bracket to_bracket(const BoundCertificate& c) { return Bracket{c.lower, c.upper, c.clause, c.exact}; }

Bracket first_certified(const Objective& f, const std::vector<BoundCertificate>& chain, const char* what) {
  for (const auto& c : chain) {
    Bracket b = to_bracket(c);
    if (b.exact || certifies(f, b)) return b;
  }
  throw NoSignChange(std::string("no estimate brackets a sign change of ") + what);
}

double chain_upper(const std::vector<BoundCertificate>& chain) {
  double u = 0.0;
  for (const auto& c : chain) u = std::max(u, c.upper);
  return u;
}

// Sign of f near v: probe v -/+ d on a growing ladder until both sides resolve.
bool probe_sign_change(const Objective& f, double v, double tol) {
  const double limit = 1e-3 * std::max(1.0, std::abs(v));
  for (double d = 10.0 * tol; d <= limit; d *= 10.0) {
    const int a = f(v - d).sign();
    const int b = f(v + d).sign();
    if (a != 0 && b != 0) return a != b;
  }
  return false;
}

RootResult solve(const Objective& f, const std::vector<BoundCertificate>& chain, double scale_m, const RootOptions& opt,
                 const char* what) {
  RootResult r;
  try {
    r = refine_root(f, first_certified(f, chain, what), opt.tol);
  } catch (const NoSignChange&) {
    const double hi = chain_upper(chain);
    r = oracle_min_root(f, 1e-9, hi * (1.0 + 1e-9) + kPi * std::min(scale_m, 1.0) / 64.0,
                        oracle_step(scale_m, hi - chain.front().lower), opt.tol);
    r.bracket.clause = "oracle";
  }
  if (opt.verify_with_oracle) {
    const double hi = chain_upper(chain);
    const RootResult o = oracle_min_root(f, 1e-9, hi * (1.0 + 1e-9) + kPi * std::min(scale_m, 1.0) / 64.0,
                                         oracle_step(scale_m, hi - chain.front().lower), opt.tol);
    // At exact-value parameters the root can be a triple root, which a binary64
    // scan resolves only to about the cube root of the rounding noise (~1e-5).
    // There the exact value is checked by residual and the scan only has to
    // find nothing earlier.
    double allowed = kOracleAgreement;
    if (r.bracket.exact) {
      if (f(r.value).sign() != 0) throw OracleMismatch(std::string(what) + ": exact root has a resolvable residual");
      allowed = 1e-4 * std::max(1.0, std::abs(r.value));
    }
    if (std::abs(o.value - r.value) > allowed)
      throw OracleMismatch(std::string(what) + ": bracketed root " + std::to_string(r.value) + " vs oracle " +
                           std::to_string(o.value));
  }
  return r;
}

}  // namespace

Objective objective_g1(ModulusM m) {
  const double mv = m.value();
  return [mv](double p) { return sample_g1(p, mv); };
}
Objective objective_g2(ModulusM m) {
  const double mv = m.value();
  return [mv](double p) { return sample_g2(p, mv); };
}
Objective objective_gtilde(SParam s) {
  const double sv = s.value();
  return [sv](double x) { return sample_gtilde(x, sv); };
}
Objective objective_g2tilde(SParam s) {
  const double sv = s.value();
  return [sv](double x) { return sample_g2tilde(x, sv); };
}
Objective objective_h(SParam s) {
  const double sv = s.value();
  return [sv](double x) { return sample_h(x, sv); };
}

double distance_to_integer(double z) { return std::abs(z - std::round(z)); }

double eval_h1(ModulusM m) {
  if (!(m.value() > 1.0 / 3.0 && m.value() < 1.0)) throw DomainError("h1 needs m in (1/3, 1)");
  return h1_of_s(m_to_s(m).value());
}

double eval_h2(ModulusM m) {
  if (!(m.value() > 1.0 / 3.0 && m.value() < 1.0)) throw DomainError("h2 needs m in (1/3, 1)");
  return h2_of_s(m_to_s(m).value());
}

double eval_a(double s) {
  if (!(s >= 2.0) || !std::isfinite(s)) throw DomainError("a(s) needs s >= 2, got " + std::to_string(s));
  const double r = distance_to_integer(s / 2.0);
  const double cap = std::asin(1.0 / s);
  if (r < 7.0 / 16.0) return std::min(kPi / s * r, cap);
  return std::min(kPi / s * std::cbrt(1.0 - 2.0 * r), cap);
}

std::vector<BoundCertificate> x1_certificates(SParam s) { return x1_chain(s.value(), true); }
std::vector<BoundCertificate> x2_certificates(SParam s) { return x2_chain(s.value()); }

std::vector<BoundCertificate> p1_certificates(ModulusM m) {
  if (m.below_one()) return p1_chain_below_one(m.value());
  return reflect(p1_chain_below_one(1.0 / m.value()), m.value());
}

std::vector<BoundCertificate> p2_certificates(ModulusM m) {
  if (m.below_one()) return p2_chain_below_one(m.value());
  return reflect(p2_chain_below_one(1.0 / m.value()), m.value());
}

bool certifies(const Objective& f, const Bracket& b) {
  if (!(b.lo < b.hi)) return false;
  const int a = f(b.lo).sign();
  const int c = f(b.hi).sign();
  return a * c <= 0;
}

Bracket bracket_p1(ModulusM m) { return first_certified(objective_g1(m), p1_certificates(m), "g1"); }
Bracket bracket_p2(ModulusM m) { return first_certified(objective_g2(m), p2_certificates(m), "g2"); }
Bracket bracket_x1(SParam s) { return first_certified(objective_gtilde(s), x1_certificates(s), "gtilde"); }
Bracket bracket_x2(SParam s) { return first_certified(objective_g2tilde(s), x2_certificates(s), "g2tilde"); }

RootResult refine_root(const Objective& f, const Bracket& b, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be > 0");
  RootResult r;
  r.bracket = b;
  if (b.exact) {
    r.value = *b.exact;
    r.residual = f(r.value).value;
    r.changed_sign = probe_sign_change(f, r.value, tol);
    return r;
  }
  double lo = b.lo, hi = b.hi;
  const Sample slo = f(lo), shi = f(hi);
  if (slo.sign() * shi.sign() > 0) throw NoSignChange("bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                                      "] from " + b.clause + " has no sign change");
  // Orientation comes from whichever endpoint sign is resolved.
  bool lo_positive;
  if (slo.sign() != 0) lo_positive = slo.sign() > 0;
  else if (shi.sign() != 0) lo_positive = shi.sign() < 0;
  else lo_positive = slo.value > 0;

  if (slo.value == 0.0) {
    hi = lo;
  } else if (shi.value == 0.0) {
    lo = hi;
  }
  int it = 0;
  while (hi - lo > tol && it < 400) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double v = f(mid).value;
    ++it;
    if (v == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((v > 0) == lo_positive) lo = mid;
    else hi = mid;
  }
  r.value = 0.5 * (lo + hi);
  r.iterations = it;
  r.residual = f(r.value).value;
  r.changed_sign = probe_sign_change(f, r.value, tol);
  return r;
}

RootResult p1(ModulusM m, const RootOptions& opt) {
  return solve(objective_g1(m), p1_certificates(m), m.value(), opt, "g1");
}

RootResult p2(ModulusM m, const RootOptions& opt) {
  return solve(objective_g2(m), p2_certificates(m), m.value(), opt, "g2");
}

RootResult x1(SParam s, const RootOptions& opt) {
  return solve(objective_gtilde(s), x1_certificates(s), 1.0, opt, "gtilde");
}

RootResult x2(SParam s, const RootOptions& opt) {
  return solve(objective_g2tilde(s), x2_certificates(s), 1.0, opt, "g2tilde");
}

std::pair<double, double> x_roots_of_h(SParam s) {
  const double sv = s.value();
  if (!(sv >= 3.0)) throw DomainError("x_roots_of_h needs s >= 3");
  if (snapped_integer(sv)) return {kPi, 2.0 * kPi};
  const Objective f = objective_h(s);
  const double as = std::asin(1.0 / sv);
  const int k = static_cast<int>(std::floor((sv - 1.0) / 2.0));
  Bracket b1{kPi - as, kPi + as, "P.h_roots", std::nullopt};
  if (sv < 2.0 * k + 2.0) b1.hi = kPi;
  else b1.lo = kPi;
  if (!certifies(f, b1)) b1 = Bracket{kPi - as, kPi + as, "P.h_roots", std::nullopt};
  const Bracket b2{2.0 * kPi - as, 2.0 * kPi + as, "P.h_roots", std::nullopt};
  return {refine_root(f, b1).value, refine_root(f, b2).value};
}

double oracle_step(double m, double bracket_width) {
  const double scale = kPi * std::min(m, 1.0);
  return std::max(std::min(scale / 64.0, bracket_width / 100.0), scale / 2048.0);
}

RootResult oracle_min_root(const Objective& f, double pmin, double pmax, double step, double tol) {
  if (!(pmin > 0.0) || !(step > 0.0) || !(pmax > pmin)) throw DomainError("oracle needs 0 < pmin < pmax and step > 0");
  const long n = static_cast<long>(std::ceil((pmax - pmin) / step));
  double last_x = 0.0;
  int last_sign = 0;
  bool seen_determined = false;
  // Run of unresolved samples since the last resolved one.
  double run_best_x = 0.0, run_best_abs = 0.0;
  bool in_run = false;
  for (long i = 0; i <= n; ++i) {
    const double x = std::min(pmin + static_cast<double>(i) * step, pmax);
    const Sample v = f(x);
    const int sg = v.sign();
    if (sg == 0) {
      if (seen_determined) {
        if (!in_run || std::abs(v.value) < run_best_abs) {
          run_best_x = x;
          run_best_abs = std::abs(v.value);
        }
        in_run = true;
      }
      continue;
    }
    if (seen_determined && sg != last_sign) {
      RootResult r = refine_root(f, Bracket{last_x, x, "oracle", std::nullopt}, tol);
      return r;
    }
    if (seen_determined && in_run) {
      // Touch: resolved samples on both sides agree, so the zero is even order.
      RootResult r;
      r.value = run_best_x;
      r.residual = f(run_best_x).value;
      r.bracket = Bracket{last_x, x, "oracle.touch", std::nullopt};
      r.changed_sign = false;
      return r;
    }
    seen_determined = true;
    last_sign = sg;
    last_x = x;
    in_run = false;
  }
  throw NoRootFound("no sign change in [" + std::to_string(pmin) + ", " + std::to_string(pmax) + "]");
}

RootResult oracle_p1(ModulusM m) {
  const auto chain = p1_certificates(m);
  const double hi = chain_upper(chain);
  return oracle_min_root(objective_g1(m), 1e-9, hi * (1.0 + 1e-9) + kPi * std::min(m.value(), 1.0) / 64.0,
                         oracle_step(m.value(), hi - chain.front().lower));
}

RootResult oracle_p2(ModulusM m) {
  const auto chain = p2_certificates(m);
  const double hi = chain_upper(chain);
  return oracle_min_root(objective_g2(m), 1e-9, hi * (1.0 + 1e-9) + kPi * std::min(m.value(), 1.0) / 64.0,
                         oracle_step(m.value(), hi - chain.front().lower));
}

}  // namespace plateball
