#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pairint/potential.hpp"
#include "pairint/spectral.hpp"

namespace pairint {

using Vec2 = std::array<double, 2>;

struct ParticleState {
  std::vector<Vec2> positions;  // wrapped into [0,1)^dim
  double time = 0.0;
  int dim = 1;

  std::size_t count() const { return positions.size(); }
};

struct SimulationOptions {
  double dt = 1e-2;
  double t_end = 1e3;
  double snapshot_every = 10.0;
  std::uint64_t seed = 1;
  // Sampled derivative table (linear interpolation) instead of per-pair
  // closed-form evaluation; table_n is the sampling resolution.
  bool use_table = true;
  int table_n = 16384;
};

struct SimulationTrace {
  std::vector<ParticleState> snapshots;  // includes initial and terminal states
  std::vector<double> energies;          // E_N at each snapshot
  double max_force_terminal = 0.0;
};

// Minus the energy gradient, -(1/N^2) sum_{i != j} grad W(x_j - x_i), with
// periodic differences.  Coincident pairs contribute zero (the even extension
// averages the one-sided slopes).
std::vector<Vec2> gradient(const ParticleState& state, const PotentialSpec& spec);

// Fixed-step RK4 integration of dx/dt = -grad E_N from a uniform random start.
SimulationTrace simulate(const PotentialSpec& spec, std::size_t N,
                         const SimulationOptions& opts = {});

// Integrates a given state forward by `duration` (building block of simulate).
ParticleState advance(const ParticleState& state, const PotentialSpec& spec,
                      const SimulationOptions& opts, double duration);

// Unit-mass histogram of particle positions (1D).
Density histogram(const ParticleState& state, int bins);

// Width of the largest cluster: positions are unwrapped across the biggest
// circular gap and measured max - min.
double cluster_width(const ParticleState& state);

// E_N for the current positions via the closed-form potential.
double particle_energy(const ParticleState& state, const PotentialSpec& spec);

namespace kernels_particles {
// force kernel: OpenMP over target particles plus a serial reference
void forces(const std::vector<Vec2>& pos, int dim, const std::vector<double>& dtable_x,
            const std::vector<double>& dtable_y, int table_n, std::vector<Vec2>& out);
namespace serial {
void forces(const std::vector<Vec2>& pos, int dim, const std::vector<double>& dtable_x,
            const std::vector<double>& dtable_y, int table_n, std::vector<Vec2>& out);
}  // namespace serial
}  // namespace kernels_particles

}  // namespace pairint
