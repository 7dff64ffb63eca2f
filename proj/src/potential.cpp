#include "pairint/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace pairint {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Piecewise-linear compact bump of the local family (unit range form).
double psi(double z) {
  double a = std::abs(z);
  if (a <= 0.5) return 0.1;
  if (a <= 0.6) return 9.0 * a - 4.4;
  if (a <= 0.9) return 1.0;
  if (a <= 1.0) return 10.0 - 10.0 * a;
  return 0.0;
}

double psi_slope(double z) {
  // slope w.r.t. |z|; caller applies sign(z)
  double a = std::abs(z);
  double s;
  if (a < 0.5) s = 0.0;
  else if (a == 0.5) s = 4.5;  // kink: average of 0 and 9
  else if (a < 0.6) s = 9.0;
  else if (a == 0.6) s = 4.5;
  else if (a < 0.9) s = 0.0;
  else if (a == 0.9) s = -5.0;
  else if (a < 1.0) s = -10.0;
  else if (a == 1.0) s = -5.0;
  else s = 0.0;
  return z >= 0 ? s : -s;
}

double tent(double z) { return std::max(1.0 - z, 0.0); }

double morse2d_shape(double x, double y) {
  return std::abs(std::sin(std::numbers::pi * x)) + std::abs(std::sin(std::numbers::pi * y));
}
}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::PeriodicMorse1D: return "morse1d";
    case Family::Local: return "local";
    case Family::RegularizedPowerLaw: return "powerlaw";
    case Family::MultiScale: return "multiscale";
    case Family::Morse2D: return "morse2d";
    case Family::Tabulated: return "tabulated";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "morse1d") return Family::PeriodicMorse1D;
  if (name == "local") return Family::Local;
  if (name == "powerlaw") return Family::RegularizedPowerLaw;
  if (name == "multiscale") return Family::MultiScale;
  if (name == "morse2d") return Family::Morse2D;
  if (name == "tabulated") return Family::Tabulated;
  throw param_error("unknown potential family: " + name);
}

PotentialSpec PotentialSpec::periodic_morse_1d(double sigma, double L, double G) {
  PotentialSpec s;
  s.family = Family::PeriodicMorse1D;
  s.sigma = sigma;
  s.L = L;
  s.G = G;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::local(double lc) {
  PotentialSpec s;
  s.family = Family::Local;
  s.lc = lc;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::regularized_power_law(double eps) {
  PotentialSpec s;
  s.family = Family::RegularizedPowerLaw;
  s.eps = eps;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::multi_scale() {
  PotentialSpec s;
  s.family = Family::MultiScale;
  return s;
}

PotentialSpec PotentialSpec::morse_2d(double L, double G) {
  PotentialSpec s;
  s.family = Family::Morse2D;
  s.L = L;
  s.G = G;
  s.validate();
  return s;
}

void PotentialSpec::validate() const {
  switch (family) {
    case Family::PeriodicMorse1D:
    case Family::Morse2D:
      if (!(G > 0.0) || !(L > 0.0)) throw param_error("morse: requires G > 0 and L > 0");
      if (family == Family::PeriodicMorse1D && !(sigma > 0.0))
        throw param_error("morse1d: requires sigma > 0");
      break;
    case Family::Local:
      if (!(lc > 0.0) || lc > 1.0) throw param_error("local: requires 0 < lc <= 1");
      break;
    case Family::RegularizedPowerLaw:
      if (!(eps > 0.0)) throw param_error("powerlaw: requires eps > 0");
      break;
    case Family::MultiScale:
    case Family::Tabulated:
      break;
  }
}

double PotentialSpec::raw(double x, double y) const {
  switch (family) {
    case Family::PeriodicMorse1D: {
      const double la = L * sigma;  // attraction length
      const double ca = -G * L / (1.0 - std::exp(-1.0 / la));
      const double cr = 1.0 / (1.0 - std::exp(-1.0 / sigma));
      return ca * (std::exp(-x / la) + std::exp(-(1.0 - x) / la)) +
             cr * (std::exp(-x / sigma) + std::exp(-(1.0 - x) / sigma));
    }
    case Family::Local: {
      // sum the periodic images whose support reaches [0,1]
      double acc = 0.0;
      for (int img = -2; img <= 2; ++img) acc += psi((x + img) / lc);
      return acc;
    }
    case Family::RegularizedPowerLaw: {
      // short-range repulsion against a longer-range power-law attraction with
      // an attractive well near x ~ 0.06
      auto wp = [](double r) { return std::pow(r, -0.4) - 3.5 * std::pow(r, -0.2); };
      return wp(x + eps) + wp(1.0 - x + eps);
    }
    case Family::MultiScale: {
      // short-range repulsive tent of width 1/10 plus a long-wave cosine
      return tent(10.0 * x) + tent(10.0 * (1.0 - x)) - 0.5 * std::cos(2.0 * kTwoPi * x);
    }
    case Family::Morse2D: {
      const double r = morse2d_shape(x, y);
      return -G * L * std::exp(-r / L) + std::exp(-r);
    }
    case Family::Tabulated:
      throw param_error("tabulated potentials have no closed form");
  }
  return 0.0;
}

double PotentialSpec::raw_mean() const {
  switch (family) {
    case Family::PeriodicMorse1D:
      // each exponential pair integrates to 2*length*(1 - e^{-1/length})
      return -2.0 * G * L * L * sigma + 2.0 * sigma;
    case Family::Local:
      // integral of psi over one period: 0.455 on each side of the origin
      return 0.91 * lc;
    case Family::RegularizedPowerLaw: {
      auto ip = [this](double e) {
        return (std::pow(1.0 + e, 0.6) - std::pow(e, 0.6)) / 0.6 -
               3.5 * (std::pow(1.0 + e, 0.8) - std::pow(e, 0.8)) / 0.8;
      };
      return 2.0 * ip(eps);
    }
    case Family::MultiScale:
      return 0.1;  // two tents of area 1/20; the cosine integrates to zero
    case Family::Morse2D: {
      // no elementary antiderivative; fine midpoint rule on the separable factor
      const int m = 1 << 14;
      double ia = 0.0, ir = 0.0;
      for (int i = 0; i < m; ++i) {
        double t = std::abs(std::sin(std::numbers::pi * (i + 0.5) / m));
        ia += std::exp(-t / L);
        ir += std::exp(-t);
      }
      ia /= m;
      ir /= m;
      return -G * L * ia * ia + ir * ir;
    }
    case Family::Tabulated:
      throw param_error("tabulated potentials have no closed form");
  }
  return 0.0;
}

double PotentialSpec::raw_dx(double x, double y) const {
  switch (family) {
    case Family::PeriodicMorse1D: {
      const double la = L * sigma;
      const double ca = -G * L / (1.0 - std::exp(-1.0 / la));
      const double cr = 1.0 / (1.0 - std::exp(-1.0 / sigma));
      return ca * (-std::exp(-x / la) + std::exp(-(1.0 - x) / la)) / la +
             cr * (-std::exp(-x / sigma) + std::exp(-(1.0 - x) / sigma)) / sigma;
    }
    case Family::Local: {
      double acc = 0.0;
      for (int img = -2; img <= 2; ++img) acc += psi_slope((x + img) / lc) / lc;
      return acc;
    }
    case Family::RegularizedPowerLaw: {
      auto dwp = [](double r) { return -0.4 * std::pow(r, -1.4) + 0.7 * std::pow(r, -1.2); };
      return dwp(x + eps) - dwp(1.0 - x + eps);
    }
    case Family::MultiScale: {
      double d = 0.0;
      if (10.0 * x < 1.0) d += -10.0;
      else if (10.0 * x == 1.0) d += -5.0;
      if (10.0 * (1.0 - x) < 1.0) d += 10.0;
      else if (10.0 * (1.0 - x) == 1.0) d += 5.0;
      return d + kTwoPi * std::sin(2.0 * kTwoPi * x);
    }
    case Family::Morse2D: {
      const double r = morse2d_shape(x, y);
      const double s = std::sin(std::numbers::pi * x);
      double drdx = std::numbers::pi * std::cos(std::numbers::pi * x) * (s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0));
      return (G * std::exp(-r / L) - std::exp(-r)) * drdx;
    }
    case Family::Tabulated:
      throw param_error("tabulated potentials have no closed form");
  }
  return 0.0;
}

double PotentialSpec::raw_dy(double x, double y) const {
  if (family != Family::Morse2D) return 0.0;
  const double r = morse2d_shape(x, y);
  const double s = std::sin(std::numbers::pi * y);
  double drdy = std::numbers::pi * std::cos(std::numbers::pi * y) * (s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0));
  return (G * std::exp(-r / L) - std::exp(-r)) * drdy;
}

double SampledPotential::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

namespace {
// Subtract the discrete mean in place and set the flag.
void subtract_mean(SampledPotential& W) {
  double mean = 0.0;
  for (double v : W.values) mean += v;
  mean /= static_cast<double>(W.values.size());
  for (double& v : W.values) v -= mean;
  W.mean_zero = true;
}
}  // namespace

SampledPotential build_potential(const PotentialSpec& spec, const Grid& grid) {
  spec.validate();
  if (spec.family == Family::Tabulated)
    throw param_error("build_potential: use load_tabulated for tabulated input");
  if (spec.dim() != grid.dim)
    throw shape_error("build_potential: family dimension does not match grid");

  SampledPotential W;
  W.grid = grid;
  W.spec = spec;
  W.values.assign(grid.size(), 0.0);

  // evaluate one representative per mirror orbit; symmetry is then exact
  ReducedSites red = reduced_sites(grid);
  for (std::size_t i = 0; i < red.sites.size(); ++i) {
    std::size_t j = red.sites[i];
    auto p = grid.point(j);
    double v = spec.raw(p[0], p[1]);
    W.values[j] = v;
    W.values[grid.mirror(j)] = v;
  }
  W.mirror_symmetric = true;
  subtract_mean(W);
  return W;
}

SampledPotential symmetrize(const SampledPotential& W) {
  SampledPotential out = W;
  for (std::size_t j = 0; j < W.values.size(); ++j) {
    std::size_t m = W.grid.mirror(j);
    if (j <= m) {
      double v = 0.5 * (W.values[j] + W.values[m]);
      out.values[j] = v;
      out.values[m] = v;
    }
  }
  out.mirror_symmetric = true;
  return out;
}

SampledPotential normalize_mean_zero(const SampledPotential& W) {
  SampledPotential out = W;
  subtract_mean(out);
  return out;
}

PropertyReport check_potential_properties(const SampledPotential& W) {
  PropertyReport r;
  const double scale = W.max_abs();

  for (std::size_t j = 0; j < W.values.size(); ++j) {
    double asym = std::abs(W.values[j] - W.values[W.grid.mirror(j)]);
    r.max_asymmetry = std::max(r.max_asymmetry, asym);
  }
  r.mirror_symmetric = r.max_asymmetry <= 1e-12 * std::max(1.0, scale);

  double sum = 0.0;
  for (double v : W.values) sum += v;
  r.mean_residual = std::abs(W.grid.cell() * sum);
  r.mean_zero = r.mean_residual <= 1e-12 * std::max(1.0, scale);

  double jump = 0.0;
  const int n = W.grid.n;
  if (W.grid.dim == 1) {
    for (int j = 0; j < n; ++j)
      jump = std::max(jump, std::abs(W.values[(j + 1) % n] - W.values[j]));
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double v = W.values[W.grid.flat(a, b)];
        jump = std::max(jump, std::abs(W.values[W.grid.flat((a + 1) % n, b)] - v));
        jump = std::max(jump, std::abs(W.values[W.grid.flat(a, (b + 1) % n)] - v));
      }
  }
  r.continuity_proxy = scale > 0 ? jump / scale : 0.0;
  return r;
}

SampledPotential tabulated_from_values(const Grid& grid, std::vector<double> values,
                                       bool symmetrize_input, bool normalize_input) {
  if (values.size() != grid.size()) throw shape_error("tabulated: value count != n^dim");
  SampledPotential W;
  W.grid = grid;
  W.values = std::move(values);
  if (symmetrize_input) W = symmetrize(W);
  if (normalize_input) subtract_mean(W);
  return W;
}

SampledPotential load_tabulated(const std::string& path, bool symmetrize_input,
                                bool normalize_input) {
  std::ifstream in(path);
  if (!in) throw param_error("cannot open tabulated potential file: " + path);
  int dim = 0, n = 0;
  in >> dim >> n;
  if (!in) throw param_error("tabulated file: bad header (expected 'dim n'): " + path);
  Grid grid(dim, n);
  std::vector<double> values(grid.size());
  for (auto& v : values) {
    in >> v;
    if (!in) throw param_error("tabulated file: too few values: " + path);
  }
  return tabulated_from_values(grid, std::move(values), symmetrize_input, normalize_input);
}

}  // namespace pairint
