#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pairint/lp.hpp"
#include "pairint/spectral.hpp"

namespace pairint {

enum class SolutionTag { SingleDelta, DiracLattice, AtomicNonLattice, Continuous, Constant };

std::string tag_name(SolutionTag t);

struct SolutionKind {
  SolutionTag tag = SolutionTag::Continuous;
  std::vector<Atom> atoms;          // populated for the atomic tags
  std::vector<double> spacing;      // lattice spacing per axis (DiracLattice)
};

struct ClassifierThresholds {
  double tau_const = 1e-4;  // max |F - 1| for the constant tag
  double tau_atom = 1e-3;   // mass per cell that counts as an atom
  double tau_mass = 1e-2;   // mass defect tolerated by the atomic tags
};

struct SolveOptions {
  double tol = 1e-8;
  int max_iters = 200;
  ClassifierThresholds classify;
};

struct RelaxationSolution {
  Correlogram F_R;
  double E_R = 0.0;
  DualDecomposition decomp;
  SolutionKind kind;
  bool degenerate = false;  // zero objective: every feasible point is optimal
  LPStatus status = LPStatus::Optimal;
  int iterations = 0;
  double res_primal = 0.0, res_dual = 0.0, res_gap = 0.0;
};

// Assembles, solves, classifies and validates the dual decomposition.
RelaxationSolution solve_relaxation(const SampledPotential& W, const SolveOptions& opts = {});

SolutionKind classify_solution(const Correlogram& F_R, const ClassifierThresholds& thr = {});

// Proposes a grid size n' near grid.n for which the detected atom spacing is
// commensurate (an integer multiple of 1/n').  Throws not_atomic when the
// classification carries no atoms.
Grid regrid_for_lattice(const SolutionKind& kind, const Grid& grid);

struct ComplementarityReport {
  double r1 = 0.0;             // h^dim sum_j Wplus_j F_j
  double r2 = 0.0;             // sum_k Khat_k Fhat_k
  double max_pointwise1 = 0.0; // max_j Wplus_j F_j
  double max_pointwise2 = 0.0; // max_k Khat_k Fhat_k
  bool pass = false;
};

ComplementarityReport complementarity_report(const Correlogram& F_R, const DualDecomposition& dd,
                                             double tol = 1e-8, double scale = 1.0);

}  // namespace pairint
