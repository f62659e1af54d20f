#pragma once

#include <stdexcept>

namespace biphoton {

// Error taxonomy. Each type is named for the contract that rejects the input,
// so callers can map failures to exit codes without parsing messages.

// Spectral mass on the grid underflowed relative to the analytic estimate;
// the frequency window does not contain the configured spectrum.
struct NormIsZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decomposition requires a unit-norm joint spectrum.
struct NotNormalized : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested more Schmidt modes than min(n_s, n_i).
struct RankTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Eigenvalue list is not a probability vector (negative entry or sum != 1).
struct NotAProbabilityVector : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Time sampling cannot represent the frequency content (step too large for
// the grid extent, or window longer than the alias period of the node spacing).
struct NyquistViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Time density has no resolvable nonzero-frequency spectral peak.
struct NoOscillationFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed-step integrator cannot resolve the fastest scale, or the norm drift
// exceeded 1e-6 per unit time.
struct StepTooCoarse : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Integration window does not cover the pulse and the decay tail.
struct WindowTooShort : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Scaling fit needs at least three multiplexing counts.
struct InsufficientPoints : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Configuration file is missing a field, has an unknown key, or fails a
// range check. The message names the offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace biphoton
