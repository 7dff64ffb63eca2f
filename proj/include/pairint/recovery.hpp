#pragma once

#include <cstdint>
#include <vector>

#include "pairint/spectral.hpp"

namespace pairint {

struct RecoveryOptions {
  double tol1 = 1e-10;      // KL decrease per step
  double tol2 = 1e-8;       // L1 change per step
  long max_iters = 100000;
  std::uint64_t seed = 1;
  int num_starts = 3;       // independent restarts; lowest final KL wins
  long trace_every = 1;     // subsampling of the stored trace
};

struct RecoveryResult {
  Density rho;
  double kl_final = 0.0;
  std::vector<double> kl_trace;
  std::vector<double> step_deltas;  // L1 distance between consecutive iterates
  long iterations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

// Relative entropy h^dim sum_j F_j ln(F_j / G_j) with the conventions
// 0 ln(0/a) = 0 ln(0/0) = 0 and a ln(a/0) = +inf (returned as the sentinel
// std::numeric_limits<double>::infinity()).
double kl_divergence(const Correlogram& F, const Correlogram& G);

// Strictly positive random start of unit mass with no mirror-symmetry plane
// (draws are rejected while any reflection residual falls below 1e-3).
Density init_density(const Grid& grid, std::uint64_t seed);

// One multiplicative update; preserves non-negativity and unit mass.
Density schulz_snyder_step(const Density& rho, const Correlogram& F_R);

// Iterates until both stopping criteria hold or max_iters is reached; with
// num_starts > 1 the runs execute independently and the lowest final KL is
// returned.
RecoveryResult recover(const Correlogram& F_R, const RecoveryOptions& opts = {});

}  // namespace pairint
