#pragma once

namespace spnkit {

// Numerical thresholds shared by the cone tests. Every public entry point takes
// an explicit tolerance; these are only the defaults.
struct Tolerances {
  double eig = 1e-10;
  double psd = 1e-9;
  double rank = 1e-9;
};

inline constexpr Tolerances kDefaults{};
inline constexpr double kDefaultTol = 1e-9;

// Default tolerance for the command-line tool: SPNKIT_TOL if set, otherwise
// kDefaultTol. A malformed SPNKIT_TOL throws BadParams.
double tolerance_from_env();

}  // namespace spnkit
