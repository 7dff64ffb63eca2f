#pragma once

#include <optional>
#include <vector>

#include "pairint/potential.hpp"

namespace pairint {

// Restricted minimization over the symmetric three-atom family
//   F = (1 - 2 beta) delta_0 + beta delta_s + beta delta_{-s},
// parameterized by the separation s in (0, 1/2] and side weight beta.

struct RationalFit {
  long q = 0;
  long p = 1;
  double error = 0.0;  // |s - q/p|
};

struct ThreeDeltaResult {
  double s_star = 0.0;
  double beta_star = 0.0;
  double E_star = 0.0;
  bool degenerate = false;  // E(s) constant in s (W(0) is the minimum)
  std::optional<RationalFit> rational;
};

// Largest admissible side weight: inf_k 1/(2(1 - cos(2 pi k s))).  Rational
// s = q/p (detected by continued fractions, denominators <= 64) use the exact
// minimum over k <= p; other s scan k <= k_max.
double theta(double s, long k_max = 10000);

// E(s) = W(0)/2 when W(s) >= W(0), else W(0)/2 + theta(s) (W(s) - W(0)).
// Off-grid s uses the closed form when the potential carries one, otherwise
// periodic cubic interpolation of the samples.
double restricted_energy(double s, const SampledPotential& W, long k_max = 10000);

// Potential value used by restricted_energy (exposed for oracle tests).
double potential_at(const SampledPotential& W, double s);

// Minimizes E(s) over the given samples plus all reduced fractions q/p with
// p <= 64 inside (0, 1/2].  Ties prefer the smallest denominator.
ThreeDeltaResult minimize_three_delta(const SampledPotential& W,
                                      const std::vector<double>& s_grid, long k_max = 10000);

}  // namespace pairint
