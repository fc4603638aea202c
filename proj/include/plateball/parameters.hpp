#pragma once

#include <optional>

namespace plateball {

// Half-width of the excluded band around m = 1, where g1 and g2 vanish identically.
inline constexpr double kSingularBand = 1e-6;
// Below this the removable-singularity branches switch to series.
inline constexpr double kSeriesThreshold = 1e-4;
// |sin x| and |h| thresholds for PoleError / AsymptoteError.
inline constexpr double kPoleThreshold = 1e-12;
// Half-width of the fallback bracket placed around a known exact root.
inline constexpr double kExactBracketHalfWidth = 1e-6;
// Relative distance at which s is treated as an integer.
inline constexpr double kIntegerSnap = 1e-12;
// Default absolute tolerance on a root.
inline constexpr double kRootTolerance = 1e-12;

// Frequency ratio m > 0, kept away from the degenerate value 1.
class ModulusM {
 public:
  explicit ModulusM(double m, double band = kSingularBand);
  double value() const noexcept { return m_; }
  bool below_one() const noexcept { return m_ < 1.0; }
  // 1/m, the reflection used for m > 1.
  ModulusM reciprocal() const;

 private:
  double m_;
};

// s = (1+m)/(1-m) > 1.
class SParam {
 public:
  explicit SParam(double s);
  double value() const noexcept { return s_; }

 private:
  double s_;
};

SParam m_to_s(ModulusM m);
ModulusM s_to_m(SParam s);
double p_to_x(double p, ModulusM m);
double x_to_p(double x, SParam s);

// Nearest integer when s is within kIntegerSnap (relative) of it.
std::optional<int> snapped_integer(double s);

}  // namespace plateball
