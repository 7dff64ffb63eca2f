#pragma once

#include <iosfwd>
#include <vector>

#include "pairint/grid.hpp"
#include "pairint/potential.hpp"

namespace pairint {

// Discrete relaxation in reduced symmetric variables.  Mirror pairs (j, -j)
// are merged into one variable carrying quadrature weight mult * h^dim, which
// removes the sine constraints structurally.  Row k of `rows` holds the
// cosine-moment functional for the k-th reduced wavenumber (k >= 1); the last
// row is the unit-mass functional.
struct ConicLP {
  Grid grid;
  ReducedSites red;
  std::vector<Wavenumber> ks;  // reduced wavenumbers, ks[0] = 0 (no row for it)
  std::vector<double> c;       // objective: 1/2 h^dim mult_i W_i
  std::vector<double> rows;    // (num_rows) x (num_vars), row-major
  double mass_rhs = 1.0;

  std::size_t num_vars() const { return red.sites.size(); }
  std::size_t num_cos_rows() const { return ks.size() - 1; }
  std::size_t num_rows() const { return num_cos_rows() + 1; }
  const double* row(std::size_t r) const { return rows.data() + r * num_vars(); }

  // Expands a reduced vector to the full grid by mirror symmetry.
  std::vector<double> expand(const std::vector<double>& g) const;
};

enum class LPStatus { Optimal, MaxIterations, NumericalFailure };

struct LPSolution {
  LPStatus status = LPStatus::NumericalFailure;
  std::vector<double> f;            // full-grid primal density values
  std::vector<double> g;            // reduced primal
  double objective = 0.0;
  std::vector<double> dual_nonneg;  // reduced-cost duals z >= 0, one per variable
  std::vector<double> dual_cosine;  // duals of the cosine rows, >= 0
  double dual_mass = 0.0;           // dual of the mass row (= dual objective)
  int iterations = 0;
  double res_primal = 0.0;
  double res_dual = 0.0;
  double res_gap = 0.0;
};

// Requires a mean-zero, mirror-symmetric potential.
ConicLP assemble_relaxation(const SampledPotential& W);

// Dense primal-dual path-following solve (Mehrotra predictor-corrector with
// normal-equation factorization).
LPSolution solve_lp(const ConicLP& lp, double tol = 1e-8, int max_iters = 200);

// Optimal splitting of the potential into a pointwise non-negative part, a
// part with non-negative cosine modes, and twice the bound constant.
struct DualDecomposition {
  std::vector<double> Wplus;  // full grid, >= 0
  std::vector<double> K;      // full grid, mean-zero, Khat >= 0
  std::vector<double> Khat;   // measured cosine coefficients of K (reduced k)
  double E_D = 0.0;
  double residual = 0.0;      // max_j |W_j - Wplus_j - K_j - 2 E_D|
};

// Throws certificate_inconsistent when the identity residual exceeds
// 10 * tol * max|W|.
DualDecomposition extract_dual_decomposition(const ConicLP& lp, const LPSolution& sol,
                                             const SampledPotential& W, double tol = 1e-8);

// Triplet text dump for cross-checking against external solvers.
void dump_lp(const ConicLP& lp, std::ostream& os);

}  // namespace pairint
