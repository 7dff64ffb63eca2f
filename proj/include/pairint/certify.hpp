#pragma once

#include <string>
#include <vector>

#include "pairint/relaxation.hpp"
#include "pairint/spectral.hpp"

namespace pairint {

enum class ExactnessTag { DeltaExact, ConstantExact, LatticeExact, None };

std::string exactness_name(ExactnessTag t);

struct SupportThresholds {
  double supp = 1e-3;   // relative cutoff defining a support cell
  double leak = 1e-3;   // tolerated mass outside the target support
};

struct FirstOrderReport {
  double mu = 0.0;                     // Lagrange constant, equals E(rho)
  double max_on_support = 0.0;         // max_{rho > thr} |Lambda - 2 mu|
  double min_off_support_slack = 0.0;  // min_{rho <= thr} (Lambda - 2 mu)
  std::vector<double> Lambda;          // first variation on the grid
};

struct ConvexSupportVerdict {
  bool holds = false;
  double leaked_mass = 0.0;     // F_rho mass outside supp(F_R)
  double match_fraction = 1.0;  // F_rho mass inside supp(F_R)
  double wplus_pairing = 0.0;   // h^dim sum_j Wplus_j F_rho_j
};

struct CertificateReport {
  double alpha = 0.0;
  double energy_candidate = 0.0;
  double E_R = 0.0;
  double kl_residual = 0.0;
  FirstOrderReport first_order;
  ConvexSupportVerdict prop_supp;
  ExactnessTag exactness = ExactnessTag::None;
};

// alpha guarantee with the zero reference energy: E_cand / E_R clamped to
// [0, 1]; roundoff overshoot up to 1e-6 reports as exactly 1, anything larger
// (or E_cand below the certified bound) raises certificate_inconsistent.
// tol_scale guards the degenerate E_R ~ 0 case.
double guarantee_alpha(double E_candidate, double E_R, double tol_scale = 0.0);

FirstOrderReport first_order_report(const Density& rho, const SampledPotential& W,
                                    double support_threshold = 1e-3);

ConvexSupportVerdict convex_support_check(const Density& rho, const Correlogram& F_R,
                                          const std::vector<double>& Wplus,
                                          const SupportThresholds& thr = {});

// W(0) <= W(x) everywhere: the single Dirac mass is a global minimizer.
bool exact_case_delta(const SampledPotential& W);
// All cosine modes non-negative: the constant density is a global minimizer.
bool exact_case_constant(const SampledPotential& W);

// Full certificate for a candidate density against a solved relaxation.
CertificateReport certify(const Density& rho, const SampledPotential& W,
                          const RelaxationSolution& rel, const SupportThresholds& thr = {});

}  // namespace pairint
