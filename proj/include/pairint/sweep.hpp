#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pairint/relaxation.hpp"

namespace pairint {

struct SweepConfig {
  Family family = Family::PeriodicMorse1D;
  double sigma = 0.1;
  double L_min = 0.5, L_max = 2.0;
  int L_steps = 10;
  double G_min = 0.1, G_max = 2.0;
  int G_steps = 10;
  int n = 200;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  bool recover = false;  // also recover rho* and report alpha per point
  int workers = 0;       // 0: runtime default

  double L_at(int i) const {
    return L_steps > 1 ? L_min + (L_max - L_min) * i / (L_steps - 1) : L_min;
  }
  double G_at(int i) const {
    return G_steps > 1 ? G_min + (G_max - G_min) * i / (G_steps - 1) : G_min;
  }
};

struct PhasePoint {
  int iL = 0, iG = 0;
  double L = 0.0, G = 0.0;
  bool ok = false;
  std::string error;
  SolutionTag tag = SolutionTag::Continuous;
  int n_atoms = 0;
  double spacing = 0.0;
  double E_R = 0.0;
  double alpha = -1.0;  // negative: not computed
  int n = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<PhasePoint> table;  // ordered by (iL, iG)
};

// Runs the relaxation per (L, G) point.  Completed points are appended to the
// JSON-lines checkpoint as they finish and are skipped on re-run, so an
// interrupted sweep resumes where it stopped.  Per-point failures are recorded
// in the table, never thrown.
SweepResult phase_sweep(const SweepConfig& config, const std::string& checkpoint_path);

// Serialization of one point (used by the checkpoint and the final table;
// wall_ms is volatile and only written when include_volatile is set).
std::string phase_point_to_json(const PhasePoint& p, bool include_volatile);
PhasePoint phase_point_from_json(const std::string& line);

// Connected-component labels over the (iL, iG) grid; points of equal kind
// (tag, and atom count for lattices) share a region.
struct RegionMap {
  std::vector<int> region_id;  // indexed iL * G_steps + iG; -1 for failed points
  int num_regions = 0;
};

RegionMap classify_regions(const SweepConfig& config, const std::vector<PhasePoint>& table);

}  // namespace pairint
