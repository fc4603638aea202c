#pragma once

#include <stdexcept>
#include <string>

namespace plateball {

// Invalid parameter: m <= 0, m inside the band around 1, s <= 1, negative x.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// sin x vanished where a cotangent is needed.
struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

// h(x,s) vanished in the denominator of J.
struct AsymptoteError : std::domain_error {
  using std::domain_error::domain_error;
};

// Base for every failure to produce a root.
struct RootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoSignChange : RootError {
  using RootError::RootError;
};

struct NoRootFound : RootError {
  using RootError::RootError;
};

struct EnclosureFailure : RootError {
  using RootError::RootError;
};

// Bracketed root disagreed with the scan oracle.
struct OracleMismatch : RootError {
  using RootError::RootError;
};

// Implicit-function derivative requested where the p-partial vanishes.
struct DegenerateDerivative : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace plateball
