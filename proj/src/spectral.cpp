#include "pairint/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pairint/fft.hpp"

namespace pairint {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double Density::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return grid.cell() * s;
}

Density Density::constant(const Grid& grid) {
  Density rho;
  rho.grid = grid;
  rho.values.assign(grid.size(), 1.0);
  return rho;
}

Density Density::from_atoms(const Grid& grid, const std::vector<Atom>& atoms) {
  Density rho;
  rho.grid = grid;
  rho.values.assign(grid.size(), 0.0);
  const double inv_cell = 1.0 / grid.cell();
  for (const Atom& a : atoms) {
    if (a.index >= grid.size()) throw shape_error("Density::from_atoms: index out of range");
    rho.values[a.index] += a.mass * inv_cell;
  }
  return rho;
}

void Density::validate(double tol) const {
  if (values.size() != grid.size()) throw shape_error("Density: length mismatch");
  for (double v : values)
    if (v < 0.0) throw shape_error("Density: negative value");
  if (std::abs(mass() - 1.0) > tol) throw shape_error("Density: mass != 1");
}

double Correlogram::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return grid.cell() * s;
}

double Correlogram::min_value() const {
  double m = values.empty() ? 0.0 : values[0];
  for (double v : values) m = std::min(m, v);
  return m;
}

double Correlogram::max_asymmetry() const {
  double m = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j)
    m = std::max(m, std::abs(values[j] - values[grid.mirror(j)]));
  return m;
}

double Correlogram::min_cosine_coeff() const {
  double m = 0.0;
  for (std::size_t i = 1; i < cosine_coeffs.size(); ++i) m = std::min(m, cosine_coeffs[i]);
  return m;
}

std::vector<double> cosine_coefficients(const Grid& grid, const std::vector<double>& f) {
  if (f.size() != grid.size()) throw shape_error("cosine_coefficients: length mismatch");
  auto fhat = fft::forward(grid, f);
  auto ks = reduced_wavenumbers(grid);
  std::vector<double> out(ks.size());
  const double cell = grid.cell();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    int a = ((ks[i][0] % grid.n) + grid.n) % grid.n;
    int b = ((ks[i][1] % grid.n) + grid.n) % grid.n;
    out[i] = cell * fhat[grid.flat(a, grid.dim == 2 ? b : 0)].real();
  }
  return out;
}

std::vector<double> sine_coefficients(const Grid& grid, const std::vector<double>& f) {
  if (f.size() != grid.size()) throw shape_error("sine_coefficients: length mismatch");
  auto fhat = fft::forward(grid, f);
  auto ks = reduced_wavenumbers(grid);
  std::vector<double> out(ks.size());
  const double cell = grid.cell();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    int a = ((ks[i][0] % grid.n) + grid.n) % grid.n;
    int b = ((ks[i][1] % grid.n) + grid.n) % grid.n;
    out[i] = -cell * fhat[grid.flat(a, grid.dim == 2 ? b : 0)].imag();
  }
  return out;
}

Correlogram autocorrelation(const Density& rho) {
  Correlogram F;
  F.grid = rho.grid;
  auto rhat = fft::forward(rho.grid, rho.values);
  std::vector<std::complex<double>> power(rhat.size());
  for (std::size_t k = 0; k < rhat.size(); ++k) power[k] = std::norm(rhat[k]);
  F.values = fft::inverse_real(rho.grid, power);
  const double cell = rho.grid.cell();
  for (double& v : F.values) v *= cell;
  F.cosine_coeffs = cosine_coefficients(F.grid, F.values);
  return F;
}

std::vector<double> autocorrelation_direct(const Density& rho) {
  const Grid& g = rho.grid;
  const std::size_t sz = g.size();
  std::vector<double> F(sz, 0.0);
  const int n = g.n;
  if (g.dim == 1) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += rho.values[j] * rho.values[(j + i) % n];
      F[i] = g.cell() * acc;
    }
  } else {
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        double acc = 0.0;
        for (int j1 = 0; j1 < n; ++j1)
          for (int j2 = 0; j2 < n; ++j2)
            acc += rho.values[g.flat(j1, j2)] * rho.values[g.flat((j1 + i1) % n, (j2 + i2) % n)];
        F[g.flat(i1, i2)] = g.cell() * acc;
      }
  }
  return F;
}

std::vector<double> correlate(const Grid& grid, const std::vector<double>& a,
                              const std::vector<double>& b) {
  if (a.size() != grid.size() || b.size() != grid.size())
    throw shape_error("correlate: length mismatch");
  auto ahat = fft::forward(grid, a);
  auto bhat = fft::forward(grid, b);
  std::vector<std::complex<double>> prod(ahat.size());
  for (std::size_t k = 0; k < ahat.size(); ++k) prod[k] = std::conj(ahat[k]) * bhat[k];
  auto c = fft::inverse_real(grid, prod);
  const double cell = grid.cell();
  for (double& v : c) v *= cell;
  return c;
}

double pairwise_energy(const Density& rho, const SampledPotential& W) {
  if (rho.grid != W.grid) throw shape_error("pairwise_energy: grid mismatch");
  return pairwise_energy(autocorrelation(rho), W);
}

double pairwise_energy(const Correlogram& F, const SampledPotential& W) {
  if (F.grid != W.grid) throw shape_error("pairwise_energy: grid mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < F.values.size(); ++j) acc += F.values[j] * W.values[j];
  return 0.5 * F.grid.cell() * acc;
}

namespace {
// periodic (bi)linear interpolation of the grid samples
double eval_potential(const SampledPotential& W, double x, double y) {
  const Grid& g = W.grid;
  auto wrap = [](double t) {
    t -= std::floor(t);
    return t;
  };
  x = wrap(x);
  y = wrap(y);
  if (g.dim == 1) {
    double u = x * g.n;
    int j = static_cast<int>(std::floor(u));
    double t = u - j;
    return (1.0 - t) * W.values[j % g.n] + t * W.values[(j + 1) % g.n];
  }
  double u = x * g.n, v = y * g.n;
  int j1 = static_cast<int>(std::floor(u)), j2 = static_cast<int>(std::floor(v));
  double t1 = u - j1, t2 = v - j2;
  int a = j1 % g.n, a1 = (j1 + 1) % g.n, b = j2 % g.n, b1 = (j2 + 1) % g.n;
  return (1.0 - t1) * ((1.0 - t2) * W.values[g.flat(a, b)] + t2 * W.values[g.flat(a, b1)]) +
         t1 * ((1.0 - t2) * W.values[g.flat(a1, b)] + t2 * W.values[g.flat(a1, b1)]);
}
}  // namespace

double discrete_energy_of_atoms(const std::vector<std::array<double, 2>>& positions,
                                const SampledPotential& W) {
  const std::size_t N = positions.size();
  if (N == 0) return 0.0;
  // discrete mean removed by build_potential; recover it so closed-form and
  // sampled evaluations agree
  double mean_shift = 0.0;
  if (W.spec.has_value()) {
    double s = 0.0;
    ReducedSites red = reduced_sites(W.grid);
    for (std::size_t i = 0; i < red.sites.size(); ++i) {
      auto p = W.grid.point(red.sites[i]);
      s += red.mult[i] * W.spec->raw(p[0], p[1]);
    }
    mean_shift = s / static_cast<double>(W.grid.size());
  }
  auto wval = [&](double dx, double dy) {
    if (W.spec.has_value()) return W.spec->raw(dx - std::floor(dx), dy - std::floor(dy)) - mean_shift;
    return eval_potential(W, dx, dy);
  };
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      acc += wval(positions[i][0] - positions[j][0], positions[i][1] - positions[j][1]);
  return acc / (2.0 * static_cast<double>(N) * static_cast<double>(N));
}

}  // namespace pairint
