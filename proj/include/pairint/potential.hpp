#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pairint/grid.hpp"

namespace pairint {

enum class Family {
  PeriodicMorse1D,
  Local,
  RegularizedPowerLaw,
  MultiScale,
  Morse2D,
  Tabulated,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Closed-form interaction families on the unit periodic box.
//   PeriodicMorse1D: sigma, L, G           (G, L > 0)
//   Local:           lc                    (0 < lc <= 1)
//   RegularizedPowerLaw: eps               (eps > 0, default 0.01)
//   MultiScale:      no parameters
//   Morse2D:         L, G                  (G, L > 0)
struct PotentialSpec {
  Family family = Family::PeriodicMorse1D;
  double sigma = 0.1;
  double L = 1.0;
  double G = 1.0;
  double lc = 0.1;
  double eps = 0.01;

  int dim() const { return family == Family::Morse2D ? 2 : 1; }

  static PotentialSpec periodic_morse_1d(double sigma, double L, double G);
  static PotentialSpec local(double lc);
  static PotentialSpec regularized_power_law(double eps = 0.01);
  static PotentialSpec multi_scale();
  static PotentialSpec morse_2d(double L, double G);

  void validate() const;

  // Raw (un-normalized) closed-form value at a point of the unit box.
  double raw(double x, double y = 0.0) const;
  // Mean of raw over the box (analytic for the 1D families).
  double raw_mean() const;
  // One-sided derivative average, used by the particle flow.
  // dim()==1 uses x only; dim()==2 returns d/dx with raw_dy for d/dy.
  double raw_dx(double x, double y = 0.0) const;
  double raw_dy(double x, double y) const;
};

// Grid samples of an interaction potential with normalization flags.
struct SampledPotential {
  Grid grid;
  std::vector<double> values;
  bool mean_zero = false;
  bool mirror_symmetric = false;
  std::optional<PotentialSpec> spec;  // absent for tabulated input

  double max_abs() const;
};

// Samples the closed-form family on the grid, enforces mirror symmetry by
// construction (evaluating one representative per mirror orbit) and subtracts
// the discrete mean so the constant density has energy exactly zero.
SampledPotential build_potential(const PotentialSpec& spec, const Grid& grid);

// Even projection W_E(x) = (W(x) + W(-x))/2; idempotent, mean preserving.
SampledPotential symmetrize(const SampledPotential& W);

// Subtracts the discrete mean h^dim * sum_j W_j.
SampledPotential normalize_mean_zero(const SampledPotential& W);

struct PropertyReport {
  bool mirror_symmetric = false;
  double max_asymmetry = 0.0;       // max |W(x) - W(-x)|
  bool mean_zero = false;
  double mean_residual = 0.0;       // |h^dim sum W|
  double continuity_proxy = 0.0;    // max adjacent jump / max|W|
};

PropertyReport check_potential_properties(const SampledPotential& W);

// Text format: first line "dim n", then n^dim whitespace-separated reals in
// row-major order.  By default the samples are symmetrized and mean-zero
// normalized on load.
SampledPotential load_tabulated(const std::string& path, bool symmetrize_input = true,
                                bool normalize_input = true);
SampledPotential tabulated_from_values(const Grid& grid, std::vector<double> values,
                                       bool symmetrize_input = true, bool normalize_input = true);

}  // namespace pairint
