#pragma once
// Every stated property of p1, p2, x1, x2 as a named numeric check over a grid.
// A check never throws for a failed property; failures are counted and the
// worst offenders kept as witnesses.

#include <cstdint>
#include <string>
#include <vector>

namespace plateball {

struct Witness {
  std::string parameter;  // e.g. "m=0.61"
  std::vector<double> values;
};

struct ClauseCheck {
  std::string clause_id;
  long samples = 0;
  long failures = 0;
  // Largest signed violation seen; <= 0 means every inequality held with margin.
  double worst_violation = -1e300;
  std::vector<Witness> witnesses;
  std::string note;

  bool passed() const noexcept { return failures == 0 && samples > 0; }
};

struct VerificationGrid {
  int m_points_per_side = 2000;
  double m_below_lo = 0.02, m_below_hi = 0.98;
  double m_above_lo = 1.02, m_above_hi = 50.0;
  int s_points = 500;
  double s_lo = 2.05, s_hi = 30.0;
  int k_max = 4;
  int samples_per_interval = 20;
  int random_samples = 1000;
  std::uint64_t seed = 20240611;
  double slack = 1e-12;         // allowed signed violation of an inequality
  double exact_tol = 1e-10;     // closed-form root values
  double oracle_tol = 1e-9;     // bracketed root vs scan oracle
  double band = 1e-6;           // excluded band around m = 1
  unsigned threads = 0;         // 0: hardware concurrency
};

struct VerificationReport {
  std::vector<ClauseCheck> clauses;
  VerificationGrid grid;
  std::string timestamp;

  long failures() const;
  bool passed() const { return failures() == 0; }
  const ClauseCheck* find(const std::string& clause_id) const;
  std::string to_text() const;
  // Machine-readable form; the timestamp is the only nondeterministic field.
  std::string to_json() const;
};

// Registered clause ids, in report order.
const std::vector<std::string>& theorem1_clauses();
const std::vector<std::string>& theorem2_clauses();
const std::vector<std::string>& theorem3_clauses();
const std::vector<std::string>& lemma_clauses();
std::vector<std::string> all_clauses();

VerificationReport verify_theorem1(const VerificationGrid& grid = {});
VerificationReport verify_theorem2(const VerificationGrid& grid = {});
VerificationReport verify_theorem3(const VerificationGrid& grid = {});
VerificationReport verify_lemmas_props(const VerificationGrid& grid = {});
VerificationReport verify_all(const VerificationGrid& grid = {});
// A single clause by id; std::invalid_argument for an unknown id.
ClauseCheck verify_clause(const std::string& clause_id, const VerificationGrid& grid = {});

// Log-uniform m grids of the verification grid.
std::vector<double> grid_m_below(const VerificationGrid& grid);
std::vector<double> grid_m_above(const VerificationGrid& grid);
std::vector<double> grid_s(const VerificationGrid& grid);

}  // namespace plateball
