#include "pairint/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pairint/recovery.hpp"

namespace pairint {

std::string exactness_name(ExactnessTag t) {
  switch (t) {
    case ExactnessTag::DeltaExact: return "delta_exact";
    case ExactnessTag::ConstantExact: return "constant_exact";
    case ExactnessTag::LatticeExact: return "lattice_exact";
    case ExactnessTag::None: return "none";
  }
  return "unknown";
}

double guarantee_alpha(double E_candidate, double E_R, double tol_scale) {
  const double guard = std::max(tol_scale, 0.0);
  if (E_R >= -guard) {
    // degenerate bound: only exact matches certify anything
    if (E_candidate < E_R - guard)
      throw certificate_inconsistent("guarantee_alpha: candidate energy below the lower bound",
                                     E_R - E_candidate);
    return E_candidate <= E_R + std::max(guard, 1e-15) ? 1.0 : 0.0;
  }
  double alpha = E_candidate / E_R;
  if (alpha > 1.0 + 1e-6)
    throw certificate_inconsistent("guarantee_alpha: candidate energy below the lower bound",
                                   alpha - 1.0);
  return std::clamp(alpha, 0.0, 1.0);
}

FirstOrderReport first_order_report(const Density& rho, const SampledPotential& W,
                                    double support_threshold) {
  if (rho.grid != W.grid) throw shape_error("first_order_report: grid mismatch");
  FirstOrderReport rep;
  // Lambda_j = h^dim sum_i W_{j-i} rho_i; with mirror-symmetric W this is the
  // circular correlation of W with rho
  rep.Lambda = correlate(rho.grid, W.values, rho.values);
  rep.mu = pairwise_energy(rho, W);

  double max_rho = *std::max_element(rho.values.begin(), rho.values.end());
  double cut = support_threshold * max_rho;
  double max_on = 0.0;
  double min_off = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < rho.values.size(); ++j) {
    double slack = rep.Lambda[j] - 2.0 * rep.mu;
    if (rho.values[j] > cut)
      max_on = std::max(max_on, std::abs(slack));
    else
      min_off = std::min(min_off, slack);
  }
  rep.max_on_support = max_on;
  rep.min_off_support_slack = std::isfinite(min_off) ? min_off : 0.0;
  return rep;
}

ConvexSupportVerdict convex_support_check(const Density& rho, const Correlogram& F_R,
                                          const std::vector<double>& Wplus,
                                          const SupportThresholds& thr) {
  if (rho.grid != F_R.grid) throw shape_error("convex_support_check: grid mismatch");
  ConvexSupportVerdict v;
  Correlogram F_rho = autocorrelation(rho);
  const double cell = rho.grid.cell();

  double fmax = *std::max_element(F_R.values.begin(), F_R.values.end());
  double cut = thr.supp * fmax;
  double leaked = 0.0, total = 0.0, pairing = 0.0;
  for (std::size_t j = 0; j < F_rho.values.size(); ++j) {
    double m = cell * F_rho.values[j];
    total += m;
    if (F_R.values[j] < cut) leaked += m;
    pairing += Wplus[j] * F_rho.values[j];
  }
  v.leaked_mass = leaked;
  v.match_fraction = total > 0.0 ? 1.0 - leaked / total : 1.0;
  v.wplus_pairing = cell * pairing;
  v.holds = leaked <= thr.leak;
  return v;
}

bool exact_case_delta(const SampledPotential& W) {
  const double slack = 1e-12 * std::max(1.0, W.max_abs());
  const double w0 = W.values[0];
  for (double v : W.values)
    if (w0 > v + slack) return false;
  return true;
}

bool exact_case_constant(const SampledPotential& W) {
  const double slack = 1e-12 * std::max(1.0, W.max_abs());
  auto coeffs = cosine_coefficients(W.grid, W.values);
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    if (coeffs[k] < -slack) return false;
  return true;
}

CertificateReport certify(const Density& rho, const SampledPotential& W,
                          const RelaxationSolution& rel, const SupportThresholds& thr) {
  CertificateReport rep;
  rep.E_R = rel.E_R;
  rep.energy_candidate = pairwise_energy(rho, W);
  // for point-mass solutions the target is its atomic representation: the
  // sub-threshold cells are solver noise and would otherwise force the
  // divergence to the infinite sentinel
  const bool atomic_target =
      rel.kind.tag == SolutionTag::SingleDelta || rel.kind.tag == SolutionTag::DiracLattice;
  Correlogram target = rel.F_R;
  if (atomic_target) {
    Density t = Density::from_atoms(rel.F_R.grid, rel.kind.atoms);
    double m = t.mass();
    for (double& v : t.values) v /= m;
    target.values = t.values;
    target.cosine_coeffs = cosine_coefficients(target.grid, target.values);
  }
  rep.kl_residual = kl_divergence(target, autocorrelation(rho));
  rep.alpha = guarantee_alpha(rep.energy_candidate, rep.E_R, 1e-6 * std::max(1.0, W.max_abs()));
  rep.first_order = first_order_report(rho, W, thr.supp);
  rep.prop_supp = convex_support_check(rho, rel.F_R, rel.decomp.Wplus, thr);

  if (exact_case_delta(W))
    rep.exactness = ExactnessTag::DeltaExact;
  else if (exact_case_constant(W))
    rep.exactness = ExactnessTag::ConstantExact;
  else if (rel.kind.tag == SolutionTag::DiracLattice &&
           rep.kl_residual <= 1e-10)
    rep.exactness = ExactnessTag::LatticeExact;
  else
    rep.exactness = ExactnessTag::None;
  return rep;
}

}  // namespace pairint
