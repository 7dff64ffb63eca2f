#pragma once

#include <stdexcept>
#include <string>

namespace pairint {

// Invalid family parameters (G <= 0, l_c out of range, ...).
struct param_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Mismatched grid shapes or vector lengths.
struct shape_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// LP solver did not reach an optimal point.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dual decomposition identity residual above threshold.
struct certificate_inconsistent : std::runtime_error {
  explicit certificate_inconsistent(const std::string& msg, double residual)
      : std::runtime_error(msg), residual(residual) {}
  double residual;
};

// Target correlogram has mass where the iterate's correlogram vanishes.
struct divergent_ratio : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No atomic structure found where one was required.
struct not_atomic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural invariant the algorithm guarantees was violated at runtime.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace pairint
