#pragma once
// Command layer behind the CLI: each command returns an OutputRecord (or a
// verification report) and never prints.

#include <exception>
#include <map>
#include <string>

#include "plateball/output_record.hpp"
#include "plateball/theorem_verifier.hpp"
#include "plateball/trajectory.hpp"

namespace plateball {

struct CommandConfig {
  double tol = 1e-12;
  double band = 1e-6;
  unsigned threads = 0;  // 0: hardware concurrency
  VerificationGrid grid;
};

// JSON file with optional keys: tol, singular_band, threads and a "grid"
// object whose keys mirror VerificationGrid.  Unknown keys are rejected.
CommandConfig load_config(const std::string& path);

// Exit status for an exception escaping a command: 2 domain, 3 root failure.
int exit_code_for(const std::exception& e) noexcept;

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNoRoot = 3;

// fn in {g1, g2, gtilde, g2tilde, h, f, G, J, J_dx, rho, rho2, m_to_s, s_to_m,
// h1, h2, a}; args keyed by p, m, x, s as the function needs.
OutputRecord cmd_eval(const std::string& fn, const std::map<std::string, double>& args, const CommandConfig& cfg = {});

// which in {p1, p2, x1, x2}; param is m for p1/p2 and s for x1/x2.
OutputRecord cmd_root(const std::string& which, double param, const CommandConfig& cfg = {});

// figure in {p1, x1, p2, x1x2, p1p2} (the five figures, in order).  count
// evenly spaced sweep points on [from, to]; points in the band around m = 1
// are skipped.
OutputRecord cmd_bounds(const std::string& figure, double from, double to, int count, const CommandConfig& cfg = {});

OutputRecord cmd_crossings(int k_max, const CommandConfig& cfg = {});

OutputRecord cmd_trajectory(const PendulumInit& init, double s_from, double s_to, int count);

VerificationReport cmd_verify(const CommandConfig& cfg = {});

}  // namespace plateball
