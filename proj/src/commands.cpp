#include "plateball/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "plateball/errors.hpp"
#include "plateball/maxwell_asymptotics.hpp"
#include "plateball/root_localization.hpp"
#include "plateball/special_functions.hpp"

namespace plateball {

namespace {

using Row = std::vector<double>;

double need(const std::map<std::string, double>& args, const std::string& key, const std::string& fn) {
  const auto it = args.find(key);
  if (it == args.end()) throw DomainError(fn + " needs --" + key);
  return it->second;
}

// Evaluate rows in contiguous shards; a nullopt row is dropped.  Output keeps
// the sweep order whatever order the shards finish in.
std::vector<Row> sharded(const std::vector<double>& sweep, unsigned threads,
                         const std::function<std::optional<Row>(double)>& f) {
  const std::size_t n = sweep.size();
  const unsigned hw = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  const std::size_t shards = std::min<std::size_t>(hw, std::max<std::size_t>(n, 1));
  std::vector<std::future<std::vector<Row>>> jobs;
  for (std::size_t w = 0; w < shards; ++w) {
    const std::size_t lo = n * w / shards, hi = n * (w + 1) / shards;
    jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
      std::vector<Row> part;
      for (std::size_t i = lo; i < hi; ++i)
        if (auto r = f(sweep[i])) part.push_back(std::move(*r));
      return part;
    }));
  }
  std::vector<Row> rows;
  for (auto& j : jobs) {
    auto part = j.get();
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return rows;
}

double hyperbola(double m) { return std::numbers::pi * m / std::abs(1.0 - m); }

void read_grid(const nlohmann::json& j, VerificationGrid& g) {
  for (const auto& [key, v] : j.items()) {
    if (key == "m_points_per_side") g.m_points_per_side = v.get<int>();
    else if (key == "m_below") {
      g.m_below_lo = v.at(0).get<double>();
      g.m_below_hi = v.at(1).get<double>();
    } else if (key == "m_above") {
      g.m_above_lo = v.at(0).get<double>();
      g.m_above_hi = v.at(1).get<double>();
    } else if (key == "s_points") g.s_points = v.get<int>();
    else if (key == "s_range") {
      g.s_lo = v.at(0).get<double>();
      g.s_hi = v.at(1).get<double>();
    } else if (key == "k_max") g.k_max = v.get<int>();
    else if (key == "samples_per_interval") g.samples_per_interval = v.get<int>();
    else if (key == "random_samples") g.random_samples = v.get<int>();
    else if (key == "seed") g.seed = v.get<std::uint64_t>();
    else if (key == "slack") g.slack = v.get<double>();
    else if (key == "exact_tol") g.exact_tol = v.get<double>();
    else if (key == "oracle_tol") g.oracle_tol = v.get<double>();
    else throw std::invalid_argument("unknown grid key in config: " + key);
  }
}

}  // namespace

CommandConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  const nlohmann::json j = nlohmann::json::parse(in);
  CommandConfig cfg;
  for (const auto& [key, v] : j.items()) {
    if (key == "tol") cfg.tol = v.get<double>();
    else if (key == "singular_band") cfg.band = v.get<double>();
    else if (key == "threads") cfg.threads = v.get<unsigned>();
    else if (key == "grid") read_grid(v, cfg.grid);
    else throw std::invalid_argument("unknown config key: " + key);
  }
  cfg.grid.band = cfg.band;
  cfg.grid.threads = cfg.threads;
  return cfg;
}

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const RootError*>(&e)) return kExitNoRoot;
  return kExitDomain;
}

OutputRecord cmd_eval(const std::string& fn, const std::map<std::string, double>& args, const CommandConfig& cfg) {
  OutputRecord rec;
  rec.schema = "plateball.eval." + fn;
  auto m_of = [&] { return ModulusM(need(args, "m", fn), cfg.band); };
  auto s_of = [&] { return SParam(need(args, "s", fn)); };
  std::vector<std::string> keys;
  double value = 0.0;
  if (fn == "g1" || fn == "g2") {
    keys = {"p", "m"};
    const double p = need(args, "p", fn);
    value = fn == "g1" ? eval_g1(p, m_of()) : eval_g2(p, m_of());
  } else if (fn == "gtilde" || fn == "g2tilde" || fn == "h" || fn == "J" || fn == "J_dx") {
    keys = {"x", "s"};
    const double x = need(args, "x", fn);
    const SParam s = s_of();
    if (fn == "gtilde") value = eval_gtilde(x, s);
    else if (fn == "g2tilde") value = eval_g2tilde(x, s);
    else if (fn == "h") value = eval_h(x, s);
    else if (fn == "J") value = eval_J(x, s);
    else value = eval_J_dx(x, s);
  } else if (fn == "f" || fn == "G") {
    keys = {"x"};
    const double x = need(args, "x", fn);
    value = fn == "f" ? eval_f(x) : eval_G(x);
  } else if (fn == "rho") {
    value = const_rho();
  } else if (fn == "rho2") {
    value = const_rho2();
  } else if (fn == "m_to_s") {
    keys = {"m"};
    value = m_to_s(m_of()).value();
  } else if (fn == "s_to_m") {
    keys = {"s"};
    value = s_to_m(s_of()).value();
  } else if (fn == "h1" || fn == "h2") {
    keys = {"m"};
    value = fn == "h1" ? eval_h1(m_of()) : eval_h2(m_of());
  } else if (fn == "a") {
    keys = {"s"};
    value = eval_a(need(args, "s", fn));
  } else {
    throw DomainError("unknown function: " + fn);
  }
  Row row;
  for (const auto& k : keys) {
    rec.columns.push_back(k);
    row.push_back(args.at(k));
  }
  rec.columns.push_back("value");
  row.push_back(value);
  rec.rows.push_back(std::move(row));
  return rec;
}

OutputRecord cmd_root(const std::string& which, double param, const CommandConfig& cfg) {
  RootOptions opt;
  opt.tol = cfg.tol;
  RootResult r;
  std::string pname = "m";
  if (which == "p1") r = p1(ModulusM(param, cfg.band), opt);
  else if (which == "p2") r = p2(ModulusM(param, cfg.band), opt);
  else if (which == "x1" || which == "x2") {
    pname = "s";
    r = which == "x1" ? x1(SParam(param), opt) : x2(SParam(param), opt);
  } else {
    throw DomainError("unknown root: " + which + " (expected p1, p2, x1 or x2)");
  }
  OutputRecord rec;
  rec.schema = "plateball.root." + which;
  rec.add_meta("clause", r.bracket.clause);
  rec.add_meta("tol", format_number(cfg.tol));
  rec.columns = {pname, "value", "lo", "hi", "residual", "iterations", "changed_sign"};
  rec.rows.push_back({param, r.value, r.bracket.lo, r.bracket.hi, r.residual, double(r.iterations),
                      r.changed_sign ? 1.0 : 0.0});
  return rec;
}

OutputRecord cmd_bounds(const std::string& figure, double from, double to, int count, const CommandConfig& cfg) {
  if (count < 1) throw DomainError("count must be >= 1");
  if (!(from < to) && count > 1) throw DomainError("sweep needs from < to");
  std::vector<double> sweep(count);
  for (int i = 0; i < count; ++i) sweep[i] = count == 1 ? from : from + (to - from) * i / (count - 1);

  OutputRecord rec;
  rec.schema = "plateball.bounds." + figure;
  rec.add_meta("from", format_number(from));
  rec.add_meta("to", format_number(to));
  rec.add_meta("count", std::to_string(count));
  RootOptions opt;
  opt.tol = cfg.tol;
  const double band = cfg.band;
  const bool m_sweep = figure == "p1" || figure == "p2" || figure == "p1p2";
  auto in_band = [band](double m) { return std::abs(m - 1.0) <= band; };

  std::function<std::optional<Row>(double)> f;
  if (figure == "p1" || figure == "p2") {
    const bool second = figure == "p2";
    rec.columns = {"m", figure, "lower", "upper", "hyperbola"};
    f = [=](double m) -> std::optional<Row> {
      if (in_band(m)) return std::nullopt;
      const ModulusM mm(m, band);
      const RootResult r = second ? p2(mm, opt) : p1(mm, opt);
      return Row{m, r.value, r.bracket.lo, r.bracket.hi, hyperbola(m)};
    };
  } else if (figure == "x1") {
    rec.columns = {"s", "x1", "lower", "upper"};
    f = [=](double s) -> std::optional<Row> {
      const RootResult r = x1(SParam(s), opt);
      return Row{s, r.value, r.bracket.lo, r.bracket.hi};
    };
  } else if (figure == "x1x2") {
    rec.columns = {"s", "x1", "x2"};
    f = [=](double s) -> std::optional<Row> {
      const SParam sp(s);
      return Row{s, x1(sp, opt).value, x2(sp, opt).value};
    };
  } else if (figure == "p1p2") {
    rec.columns = {"m", "p1", "p2"};
    f = [=](double m) -> std::optional<Row> {
      if (in_band(m)) return std::nullopt;
      const ModulusM mm(m, band);
      return Row{m, p1(mm, opt).value, p2(mm, opt).value};
    };
  } else {
    throw DomainError("unknown figure: " + figure + " (expected p1, x1, p2, x1x2 or p1p2)");
  }
  rec.add_meta("sweep", m_sweep ? "m" : "s");
  rec.rows = sharded(sweep, cfg.threads, f);
  return rec;
}

OutputRecord cmd_crossings(int k_max, const CommandConfig&) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  auto cps = find_crossings(k_max);
  std::stable_sort(cps.begin(), cps.end(), [](const auto& a, const auto& b) { return a.m_bar < b.m_bar; });
  OutputRecord rec;
  rec.schema = "plateball.crossings";
  rec.add_meta("k_max", std::to_string(k_max));
  rec.columns = {"k", "m", "m_tail", "p", "trivial", "above_one", "lo", "hi", "residual", "residual_binary64"};
  for (const auto& c : cps)
    rec.rows.push_back({double(c.k), c.m_bar, c.m_bar_tail, c.p_at_crossing, c.trivial ? 1.0 : 0.0, c.above_one ? 1.0 : 0.0, c.lo,
                        c.hi, c.residual, c.residual_binary64});
  return rec;
}

OutputRecord cmd_trajectory(const PendulumInit& init, double s_from, double s_to, int count) {
  if (count < 1) throw DomainError("count must be >= 1");
  ModulusM(init.m);  // domain check
  OutputRecord rec;
  rec.schema = "plateball.trajectory";
  rec.add_meta("theta0", format_number(init.theta0));
  rec.add_meta("d0", format_number(init.d0));
  rec.add_meta("rho0", format_number(init.rho0));
  rec.add_meta("alpha", format_number(init.alpha));
  rec.add_meta("m", format_number(init.m));
  if (!init.within_asymptotic_regime()) rec.add_meta("warning", "rho0 > 0.1: leading-order terms only, O(rho0^2) dropped");
  rec.columns = {"s", "x", "y", "q0", "q1", "q2", "q3", "xq1_plus_yq2"};
  for (const auto& st : sample_trajectory(init, s_from, s_to, count)) {
    const auto& q = st.quaternion;
    rec.rows.push_back({st.s, st.position.x(), st.position.y(), q[0], q[1], q[2], q[3], second_condition(st)});
  }
  return rec;
}

VerificationReport cmd_verify(const CommandConfig& cfg) {
  VerificationGrid g = cfg.grid;
  g.band = cfg.band;
  g.threads = cfg.threads;
  return verify_all(g);
}

}  // namespace plateball
