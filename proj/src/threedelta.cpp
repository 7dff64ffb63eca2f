#include "pairint/threedelta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "pairint/spectral.hpp"

namespace pairint {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::optional<RationalFit> detect_rational(double s, long pmax, double tol) {
  long q0 = 0, p0 = 1, q1 = 1, p1 = 0;
  double t = s;
  for (int it = 0; it < 64; ++it) {
    long a = static_cast<long>(std::floor(t));
    long q2 = a * q1 + q0, p2 = a * p1 + p0;
    if (p2 > pmax || p2 <= 0) break;
    double err = std::abs(s - static_cast<double>(q2) / p2);
    if (q2 > 0 && err <= tol) {
      long g = std::gcd(q2, p2);
      return RationalFit{q2 / g, p2 / g, err};
    }
    q0 = q1;
    p0 = p1;
    q1 = q2;
    p1 = p2;
    double frac = t - a;
    if (frac < 1e-15) break;
    t = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

double theta(double s, long k_max) {
  if (!(s > 0.0) || s > 0.5) throw param_error("theta: s must lie in (0, 1/2]");
  if (k_max < 1) throw param_error("theta: k_max must be >= 1");

  long scan = k_max;
  if (auto fit = detect_rational(s, std::min<long>(64, k_max), 1e-10); fit.has_value()) {
    // exact: the infimum over all k is attained within one period of k*q mod p
    s = static_cast<double>(fit->q) / fit->p;
    scan = fit->p;
  }
  double best = std::numeric_limits<double>::infinity();
  for (long k = 1; k <= scan; ++k) {
    double c = std::cos(kTwoPi * k * s);
    if (c >= 1.0 - 1e-15) continue;  // no constraint from this mode
    best = std::min(best, 0.5 / (1.0 - c));
  }
  return best;
}

double potential_at(const SampledPotential& W, double s) {
  s -= std::floor(s);
  if (W.spec.has_value()) {
    double mean = 0.0;
    for (double v : W.values) mean += v;
    mean /= static_cast<double>(W.values.size());
    // W.values are mean-zero samples of spec->raw; shift the closed form by
    // the same constant
    double raw_mean = 0.0;
    {
      ReducedSites red = reduced_sites(W.grid);
      double acc = 0.0;
      for (std::size_t i = 0; i < red.sites.size(); ++i) {
        auto p = W.grid.point(red.sites[i]);
        acc += red.mult[i] * W.spec->raw(p[0], p[1]);
      }
      raw_mean = acc / static_cast<double>(W.grid.size());
    }
    return W.spec->raw(s) - raw_mean + mean;
  }
  // trigonometric interpolation of the samples: exact at the nodes and for
  // band-limited tables, and preserves evenness
  const int n = W.grid.n;
  auto coeffs = cosine_coefficients(W.grid, W.values);  // h-weighted, k = 0..n/2
  double acc = coeffs[0];
  for (int k = 1; k < n / 2 + (n % 2 ? 1 : 0); ++k)
    acc += 2.0 * coeffs[k] * std::cos(kTwoPi * k * s);
  if (n % 2 == 0) acc += coeffs[n / 2] * std::cos(kTwoPi * (n / 2) * s);
  return acc;
}

double restricted_energy(double s, const SampledPotential& W, long k_max) {
  if (W.grid.dim != 1) throw shape_error("restricted_energy: one-dimensional potentials only");
  const double w0 = W.values[0];
  const double ws = potential_at(W, s);
  if (ws >= w0) return 0.5 * w0;
  return 0.5 * w0 + theta(s, k_max) * (ws - w0);
}

ThreeDeltaResult minimize_three_delta(const SampledPotential& W,
                                      const std::vector<double>& s_grid, long k_max) {
  ThreeDeltaResult res;
  std::vector<double> candidates(s_grid);
  for (long p = 2; p <= 64; ++p)
    for (long q = 1; 2 * q <= p; ++q)
      if (std::gcd(q, p) == 1) candidates.push_back(static_cast<double>(q) / p);

  const double w0 = W.values[0];
  double best_E = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  long best_p = std::numeric_limits<long>::max();
  for (double s : candidates) {
    if (!(s > 0.0) || s > 0.5) continue;
    double E = restricted_energy(s, W, k_max);
    auto fit = detect_rational(s, 64, 1e-10);
    long p = fit ? fit->p : std::numeric_limits<long>::max();
    // ties prefer the coarsest lattice (smallest denominator)
    if (E < best_E - 1e-12 || (E < best_E + 1e-12 && p < best_p)) {
      best_E = E;
      best_s = s;
      best_p = p;
    }
  }

  res.s_star = best_s;
  res.E_star = best_E;
  double ws = potential_at(W, best_s);
  res.beta_star = ws >= w0 ? 0.0 : theta(best_s, k_max);
  res.rational = detect_rational(best_s, 64, 1e-10);

  // degenerate when the side atoms never help: E(s) == W(0)/2 for all tested s
  res.degenerate = std::abs(best_E - 0.5 * w0) <= 1e-14 * std::max(1.0, std::abs(w0));
  return res;
}

}  // namespace pairint
