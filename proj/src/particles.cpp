#include "pairint/particles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pairint {

namespace {

double wrap01(double x) {
  x -= std::floor(x);
  return x < 1.0 ? x : 0.0;
}

double lerp_table(const std::vector<double>& table, int n, double x) {
  double u = wrap01(x) * n;
  int j = static_cast<int>(u);
  double t = u - j;
  return (1.0 - t) * table[j % n] + t * table[(j + 1) % n];
}

}  // namespace

namespace kernels_particles {

namespace serial {
void forces(const std::vector<Vec2>& pos, int dim, const std::vector<double>& dtable_x,
            const std::vector<double>& dtable_y, int table_n, std::vector<Vec2>& out) {
  const std::size_t N = pos.size();
  const double scale = -1.0 / (static_cast<double>(N) * static_cast<double>(N));
  out.assign(N, {0.0, 0.0});
  for (std::size_t j = 0; j < N; ++j) {
    double fx = 0.0, fy = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      if (i == j) continue;
      double dx = pos[j][0] - pos[i][0];
      double dy = dim == 2 ? pos[j][1] - pos[i][1] : 0.0;
      if (dx == 0.0 && dy == 0.0) continue;  // even extension: averaged slope is 0
      fx += lerp_table(dtable_x, table_n, dx);
      if (dim == 2) fy += lerp_table(dtable_y, table_n, dy);
    }
    out[j] = {scale * fx, scale * fy};
  }
}
}  // namespace serial

void forces(const std::vector<Vec2>& pos, int dim, const std::vector<double>& dtable_x,
            const std::vector<double>& dtable_y, int table_n, std::vector<Vec2>& out) {
  const std::size_t N = pos.size();
  const double scale = -1.0 / (static_cast<double>(N) * static_cast<double>(N));
  out.assign(N, {0.0, 0.0});
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < N; ++j) {
    double fx = 0.0, fy = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      if (i == j) continue;
      double dx = pos[j][0] - pos[i][0];
      double dy = dim == 2 ? pos[j][1] - pos[i][1] : 0.0;
      if (dx == 0.0 && dy == 0.0) continue;
      fx += lerp_table(dtable_x, table_n, dx);
      if (dim == 2) fy += lerp_table(dtable_y, table_n, dy);
    }
    out[j] = {scale * fx, scale * fy};
  }
}

}  // namespace kernels_particles

namespace {

// 2D tables depend on both coordinates, so the tabulated fast path only
// applies in 1D; 2D always evaluates the closed form.
struct ForceField {
  const PotentialSpec& spec;
  int dim;
  bool tabulated;
  int table_n = 0;
  std::vector<double> dtable;

  ForceField(const PotentialSpec& spec_, const SimulationOptions& opts)
      : spec(spec_), dim(spec_.dim()), tabulated(opts.use_table && spec_.dim() == 1) {
    if (tabulated) {
      table_n = opts.table_n;
      dtable.resize(table_n);
      for (int i = 0; i < table_n; ++i)
        dtable[i] = spec.raw_dx(static_cast<double>(i) / table_n);
    }
  }

  void eval(const std::vector<Vec2>& pos, std::vector<Vec2>& out) const {
    if (tabulated) {
      kernels_particles::forces(pos, dim, dtable, dtable, table_n, out);
      return;
    }
    const std::size_t N = pos.size();
    const double scale = -1.0 / (static_cast<double>(N) * static_cast<double>(N));
    out.assign(N, {0.0, 0.0});
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < N; ++j) {
      double fx = 0.0, fy = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        if (i == j) continue;
        double dx = wrap01(pos[j][0] - pos[i][0]);
        double dy = dim == 2 ? wrap01(pos[j][1] - pos[i][1]) : 0.0;
        if (dx == 0.0 && dy == 0.0) continue;
        fx += spec.raw_dx(dx, dy);
        if (dim == 2) fy += spec.raw_dy(dx, dy);
      }
      out[j] = {scale * fx, scale * fy};
    }
  }
};

void rk4_step(const ForceField& field, std::vector<Vec2>& pos, double dt,
              std::vector<Vec2>& k1, std::vector<Vec2>& k2, std::vector<Vec2>& k3,
              std::vector<Vec2>& k4, std::vector<Vec2>& tmp) {
  const std::size_t N = pos.size();
  auto shifted = [&](const std::vector<Vec2>& k, double a) {
    tmp.resize(N);
    for (std::size_t j = 0; j < N; ++j)
      tmp[j] = {pos[j][0] + a * k[j][0], pos[j][1] + a * k[j][1]};
  };
  field.eval(pos, k1);
  shifted(k1, 0.5 * dt);
  field.eval(tmp, k2);
  shifted(k2, 0.5 * dt);
  field.eval(tmp, k3);
  shifted(k3, dt);
  field.eval(tmp, k4);
  for (std::size_t j = 0; j < N; ++j) {
    pos[j][0] =
        wrap01(pos[j][0] + dt / 6.0 * (k1[j][0] + 2.0 * k2[j][0] + 2.0 * k3[j][0] + k4[j][0]));
    pos[j][1] =
        wrap01(pos[j][1] + dt / 6.0 * (k1[j][1] + 2.0 * k2[j][1] + 2.0 * k3[j][1] + k4[j][1]));
  }
}

}  // namespace

std::vector<Vec2> gradient(const ParticleState& state, const PotentialSpec& spec) {
  SimulationOptions opts;
  opts.use_table = false;
  ForceField field(spec, opts);
  std::vector<Vec2> out;
  field.eval(state.positions, out);
  return out;
}

double particle_energy(const ParticleState& state, const PotentialSpec& spec) {
  const std::size_t N = state.count();
  if (N == 0) return 0.0;
  const double mean = spec.raw_mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      double dx = wrap01(state.positions[i][0] - state.positions[j][0]);
      double dy = spec.dim() == 2 ? wrap01(state.positions[i][1] - state.positions[j][1]) : 0.0;
      acc += spec.raw(dx, dy) - mean;
    }
  return acc / (2.0 * static_cast<double>(N) * static_cast<double>(N));
}

SimulationTrace simulate(const PotentialSpec& spec, std::size_t N, const SimulationOptions& opts) {
  if (!(opts.dt > 0.0)) throw param_error("simulate: dt must be positive");
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  ParticleState state;
  state.dim = spec.dim();
  state.positions.resize(N);
  for (auto& p : state.positions) p = {u(rng), state.dim == 2 ? u(rng) : 0.0};

  ForceField field(spec, opts);
  std::vector<Vec2> k1, k2, k3, k4, tmp;

  SimulationTrace trace;
  trace.snapshots.push_back(state);
  trace.energies.push_back(particle_energy(state, spec));

  double dt = opts.dt;
  double next_snapshot = opts.snapshot_every;
  double last_energy = trace.energies.back();
  while (state.time < opts.t_end - 1e-12) {
    double step = std::min(dt, opts.t_end - state.time);
    rk4_step(field, state.positions, step, k1, k2, k3, k4, tmp);
    state.time += step;
    if (state.time >= next_snapshot - 1e-12 || state.time >= opts.t_end - 1e-12) {
      double e = particle_energy(state, spec);
      // gradient-flow sanity: back off the step when energy rises
      if (e > last_energy + 1e-8 * (1.0 + std::abs(last_energy))) dt *= 0.5;
      last_energy = e;
      trace.snapshots.push_back(state);
      trace.energies.push_back(e);
      next_snapshot += opts.snapshot_every;
    }
  }

  std::vector<Vec2> f;
  field.eval(state.positions, f);
  double fmax = 0.0;
  for (const Vec2& v : f) fmax = std::max(fmax, std::hypot(v[0], v[1]));
  trace.max_force_terminal = fmax;
  return trace;
}

ParticleState advance(const ParticleState& state, const PotentialSpec& spec,
                      const SimulationOptions& opts, double duration) {
  ParticleState out = state;
  ForceField field(spec, opts);
  std::vector<Vec2> k1, k2, k3, k4, tmp;
  double t = 0.0;
  while (t < duration - 1e-12) {
    double step = std::min(opts.dt, duration - t);
    rk4_step(field, out.positions, step, k1, k2, k3, k4, tmp);
    t += step;
  }
  out.time += duration;
  return out;
}

Density histogram(const ParticleState& state, int bins) {
  if (bins < 1) throw param_error("histogram: bins must be >= 1");
  Grid grid(1, bins);
  Density d;
  d.grid = grid;
  d.values.assign(static_cast<std::size_t>(bins), 0.0);
  for (const Vec2& p : state.positions) {
    int b = std::min(bins - 1, static_cast<int>(wrap01(p[0]) * bins));
    d.values[b] += 1.0;
  }
  const double norm = static_cast<double>(state.count()) * grid.cell();
  for (double& v : d.values) v /= norm;
  return d;
}

double cluster_width(const ParticleState& state) {
  auto width_axis = [&](int axis) {
    std::vector<double> xs;
    xs.reserve(state.count());
    for (const Vec2& p : state.positions) xs.push_back(wrap01(p[axis]));
    std::sort(xs.begin(), xs.end());
    double max_gap = 1.0 - xs.back() + xs.front();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      max_gap = std::max(max_gap, xs[i + 1] - xs[i]);
    return 1.0 - max_gap;
  };
  double w = width_axis(0);
  if (state.dim == 2) w = std::max(w, width_axis(1));
  return w;
}

}  // namespace pairint
