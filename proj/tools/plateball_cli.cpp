// plateball: evaluation, roots, figure data, crossings, trajectories and
// verification from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "plateball/commands.hpp"

namespace {

using namespace plateball;

struct Output {
  std::string format = "csv";
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
  }
  void write(const OutputRecord& rec) const { write(format == "json" ? rec.to_json() : rec.to_csv()); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maxwell-time asymptotics of the plate-ball problem"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  Output out;
  std::string config_path;
  std::optional<double> tol, band;
  std::optional<unsigned> threads;
  app.add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out.path, "write to this file instead of stdout");
  app.add_option("--config", config_path, "JSON config (tolerances, grid sizes, singular band)")
      ->check(CLI::ExistingFile);
  app.add_option("--tol", tol, "absolute root tolerance");
  app.add_option("--singular-band", band, "half-width of the excluded band around m = 1");
  app.add_option("--threads", threads, "worker threads for sweeps (0: all cores)");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a named function");
  std::string fn;
  std::map<std::string, double> args;
  std::optional<double> ap, am, ax, as;
  eval->add_option("function", fn, "g1 g2 gtilde g2tilde h f G J J_dx rho rho2 m_to_s s_to_m h1 h2 a")->required();
  eval->add_option("--p", ap);
  eval->add_option("--m", am);
  eval->add_option("--x", ax);
  eval->add_option("--s", as);

  // root
  auto* root = app.add_subcommand("root", "minimal positive root with its certified bracket");
  std::string which;
  std::optional<double> rm, rs;
  root->add_option("which", which, "p1 p2 x1 x2")->required()->check(CLI::IsMember({"p1", "p2", "x1", "x2"}));
  root->add_option("--m", rm, "parameter for p1, p2");
  root->add_option("--s", rs, "parameter for x1, x2");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "figure data: roots with their two-sided estimates");
  std::string figure;
  double from = 0.0, to = 0.0;
  int count = 200;
  bounds->add_option("figure", figure, "p1 x1 p2 x1x2 p1p2")
      ->required()
      ->check(CLI::IsMember({"p1", "x1", "p2", "x1x2", "p1p2"}));
  bounds->add_option("--from", from)->required();
  bounds->add_option("--to", to)->required();
  bounds->add_option("--count", count);

  // crossings
  auto* crossings = app.add_subcommand("crossings", "crossing points of p1 and p2");
  int k_max = 5;
  crossings->add_option("--kmax", k_max);

  // trajectory
  auto* traj = app.add_subcommand("trajectory", "leading-order extremal");
  PendulumInit init;
  double s_from = 0.0, s_to = 10.0;
  int s_count = 101;
  traj->add_option("--theta0", init.theta0);
  traj->add_option("--d0", init.d0);
  traj->add_option("--rho0", init.rho0);
  traj->add_option("--alpha", init.alpha);
  traj->add_option("--m", init.m)->required();
  traj->add_option("--from", s_from);
  traj->add_option("--to", s_to);
  traj->add_option("--count", s_count);

  // verify
  auto* verify = app.add_subcommand("verify", "check every clause on a grid; exit 1 on any failure");
  std::optional<int> v_m, v_s, v_k;
  std::optional<double> v_slack;
  std::optional<std::uint64_t> v_seed;
  verify->add_option("--m-points", v_m, "m points per side");
  verify->add_option("--s-points", v_s);
  verify->add_option("--kmax", v_k);
  verify->add_option("--slack", v_slack);
  verify->add_option("--seed", v_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitDomain;
  }

  try {
    CommandConfig cfg = config_path.empty() ? CommandConfig{} : load_config(config_path);
    if (tol) cfg.tol = *tol;
    if (band) cfg.band = *band;
    if (threads) cfg.threads = *threads;

    if (*eval) {
      if (ap) args["p"] = *ap;
      if (am) args["m"] = *am;
      if (ax) args["x"] = *ax;
      if (as) args["s"] = *as;
      out.write(cmd_eval(fn, args, cfg));
    } else if (*root) {
      const bool needs_m = which == "p1" || which == "p2";
      const auto& param = needs_m ? rm : rs;
      if (!param) throw std::domain_error(which + " needs --" + (needs_m ? "m" : "s"));
      out.write(cmd_root(which, *param, cfg));
    } else if (*bounds) {
      out.write(cmd_bounds(figure, from, to, count, cfg));
    } else if (*crossings) {
      out.write(cmd_crossings(k_max, cfg));
    } else if (*traj) {
      if (!init.within_asymptotic_regime())
        std::cerr << "warning: rho0 = " << init.rho0 << " > 0.1; the expansion drops O(rho0^2) terms\n";
      out.write(cmd_trajectory(init, s_from, s_to, s_count));
    } else if (*verify) {
      if (v_m) cfg.grid.m_points_per_side = *v_m;
      if (v_s) cfg.grid.s_points = *v_s;
      if (v_k) cfg.grid.k_max = *v_k;
      if (v_slack) cfg.grid.slack = *v_slack;
      if (v_seed) cfg.grid.seed = *v_seed;
      const VerificationReport rep = cmd_verify(cfg);
      out.write(out.format == "json" ? rep.to_json() + "\n" : rep.to_text());
      if (!out.path.empty())
        std::cerr << (rep.passed() ? "all clauses passed" : "verification FAILED") << "; report in " << out.path
                  << "\n";
      return rep.passed() ? kExitOk : kExitVerificationFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitOk;
}
