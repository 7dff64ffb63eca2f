#include "pairint/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace pairint {

namespace {
constexpr double kTiny = 1e-30;
}

double kl_divergence(const Correlogram& F, const Correlogram& G) {
  if (F.grid != G.grid) throw shape_error("kl_divergence: grid mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < F.values.size(); ++j) {
    double f = F.values[j], g = G.values[j];
    if (f <= kTiny) continue;        // 0 ln(0/a) = 0
    if (g <= kTiny) return std::numeric_limits<double>::infinity();  // a ln(a/0)
    acc += f * std::log(f / g);
  }
  return F.grid.cell() * acc;
}

namespace {

// smallest relative L1 residual against any grid point reflection x -> 2c - x
double min_reflection_residual(const Grid& grid, const std::vector<double>& v) {
  const int n = grid.n;
  double best = std::numeric_limits<double>::infinity();
  double norm = 0.0;
  for (double t : v) norm += std::abs(t);
  if (grid.dim == 1) {
    for (int m = 0; m < n; ++m) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += std::abs(v[((m - j) % n + n) % n] - v[j]);
      best = std::min(best, acc / norm);
    }
  } else {
    for (int m1 = 0; m1 < n; ++m1)
      for (int m2 = 0; m2 < n; ++m2) {
        double acc = 0.0;
        for (int j1 = 0; j1 < n; ++j1)
          for (int j2 = 0; j2 < n; ++j2)
            acc += std::abs(v[grid.flat(((m1 - j1) % n + n) % n, ((m2 - j2) % n + n) % n)] -
                            v[grid.flat(j1, j2)]);
        best = std::min(best, acc / norm);
      }
  }
  return best;
}

}  // namespace

Density init_density(const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  Density rho;
  rho.grid = grid;
  for (int attempt = 0; attempt < 64; ++attempt) {
    rho.values.assign(grid.size(), 0.0);
    for (double& v : rho.values) v = 1.0 + u(rng);
    double mass = rho.mass();
    for (double& v : rho.values) v /= mass;
    if (min_reflection_residual(grid, rho.values) >= 1e-3) return rho;
  }
  throw internal_error("init_density: could not draw an asymmetric start");
}

Density schulz_snyder_step(const Density& rho, const Correlogram& F_R) {
  if (rho.grid != F_R.grid) throw shape_error("schulz_snyder_step: grid mismatch");
  const Grid& grid = rho.grid;

  Correlogram F_rho = autocorrelation(rho);
  std::vector<double> ratio(grid.size());
  for (std::size_t j = 0; j < ratio.size(); ++j) {
    double fr = F_R.values[j], fq = F_rho.values[j];
    if (fq <= kTiny) {
      if (fr <= kTiny) {
        ratio[j] = 0.0;
        continue;
      }
      throw divergent_ratio("schulz_snyder_step: target has mass outside iterate support");
    }
    ratio[j] = fr / fq;
  }

  // multiplier_j = h^dim sum_i rho_{j+i} ratio_i  (a circular correlation)
  std::vector<double> mult = correlate(grid, ratio, rho.values);
  Density next;
  next.grid = grid;
  next.values.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    next.values[j] = std::max(0.0, rho.values[j] * mult[j]);
  return next;
}

namespace {

RecoveryResult recover_single(const Correlogram& F_R, const RecoveryOptions& opts,
                              std::uint64_t seed) {
  RecoveryResult res;
  res.seed = seed;
  Density rho = init_density(F_R.grid, seed);
  const double cell = F_R.grid.cell();

  double kl = kl_divergence(F_R, autocorrelation(rho));
  res.kl_trace.push_back(kl);

  for (long it = 0; it < opts.max_iters; ++it) {
    Density next = schulz_snyder_step(rho, F_R);
    double kl_next = kl_divergence(F_R, autocorrelation(next));
    double l1 = 0.0;
    for (std::size_t j = 0; j < next.values.size(); ++j)
      l1 += std::abs(next.values[j] - rho.values[j]);
    l1 *= cell;

    if (std::isfinite(kl) && kl_next > kl + 1e-12 * (1.0 + std::abs(kl)))
      throw internal_error("recover: KL divergence increased along the iteration");

    rho = std::move(next);
    res.iterations = it + 1;
    if ((it + 1) % opts.trace_every == 0 || it + 1 == opts.max_iters) {
      res.kl_trace.push_back(kl_next);
      res.step_deltas.push_back(l1);
    }
    double decrease = kl - kl_next;
    kl = kl_next;
    if (std::abs(decrease) < opts.tol1 && l1 < opts.tol2) {
      res.converged = true;
      break;
    }
  }
  res.rho = std::move(rho);
  res.kl_final = kl;
  return res;
}

}  // namespace

RecoveryResult recover(const Correlogram& F_R, const RecoveryOptions& opts) {
  const int starts = std::max(1, opts.num_starts);
  std::vector<RecoveryResult> results(starts);
  std::vector<std::exception_ptr> errors(starts);

#pragma omp parallel for schedule(dynamic, 1) if (starts > 1)
  for (int s = 0; s < starts; ++s) {
    try {
      results[s] = recover_single(F_R, opts, opts.seed + static_cast<std::uint64_t>(s));
    } catch (...) {
      errors[s] = std::current_exception();
    }
  }
  for (int s = 0; s < starts; ++s)
    if (errors[s]) std::rethrow_exception(errors[s]);

  int best = 0;
  for (int s = 1; s < starts; ++s)
    if (results[s].kl_final < results[best].kl_final) best = s;
  return std::move(results[best]);
}

}  // namespace pairint
