#pragma once

#include <array>
#include <vector>

#include "pairint/grid.hpp"
#include "pairint/potential.hpp"

namespace pairint {

struct Atom {
  std::size_t index = 0;  // flat grid index
  double mass = 0.0;
};

// Non-negative grid density with unit quadrature mass.  Atomic measures are
// embedded as grid vectors (mass / h^dim in one cell); the explicit atom form
// is converted through from_atoms / extract_atoms, never implicitly.
struct Density {
  Grid grid;
  std::vector<double> values;

  double mass() const;
  static Density constant(const Grid& grid);
  static Density from_atoms(const Grid& grid, const std::vector<Atom>& atoms);
  void validate(double tol = 1e-10) const;
};

// Autocorrelation samples on the grid together with cached cosine modes over
// the reduced wavenumber set.
struct Correlogram {
  Grid grid;
  std::vector<double> values;
  std::vector<double> cosine_coeffs;  // aligned with reduced_wavenumbers(grid)

  double mass() const;
  // residuals of the cone-membership properties (0 when exactly inside)
  double min_value() const;
  double max_asymmetry() const;
  double min_cosine_coeff() const;  // over k != 0
};

// Quadrature-weighted trigonometric moments over the reduced wavenumber set:
// h^dim * sum_j f_j cos(2 pi k . x_j)  (and the sine analogue).
std::vector<double> cosine_coefficients(const Grid& grid, const std::vector<double>& f);
std::vector<double> sine_coefficients(const Grid& grid, const std::vector<double>& f);

// F(s_i) = h^dim sum_j rho_j rho_{j+i}, computed via the power spectrum in
// O(n^dim log n).
Correlogram autocorrelation(const Density& rho);

// Direct O(n^2dim) double-sum reference, kept for testing the fast path.
std::vector<double> autocorrelation_direct(const Density& rho);

// Circular correlation c_j = h^dim sum_i a_i b_{i+j} via FFT.
std::vector<double> correlate(const Grid& grid, const std::vector<double>& a,
                              const std::vector<double>& b);

// E(rho) = 1/2 <F_rho, W>.
double pairwise_energy(const Density& rho, const SampledPotential& W);
double pairwise_energy(const Correlogram& F, const SampledPotential& W);

// (1/2N^2) sum_ij W(x_i - x_j) with periodic distances.  W is evaluated in
// closed form when the sampled potential carries a family spec, otherwise by
// linear interpolation of the grid samples.
double discrete_energy_of_atoms(const std::vector<std::array<double, 2>>& positions,
                                const SampledPotential& W);

}  // namespace pairint
