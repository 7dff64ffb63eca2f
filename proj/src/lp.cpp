#include "pairint/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "pairint/kernels.hpp"
#include "pairint/spectral.hpp"

namespace pairint {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::vector<double> ConicLP::expand(const std::vector<double>& g) const {
  std::vector<double> f(grid.size());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = g[red.site_of[j]];
  return f;
}

ConicLP assemble_relaxation(const SampledPotential& W) {
  if (!W.mean_zero || !W.mirror_symmetric)
    throw shape_error("assemble_relaxation: potential must be mean-zero and mirror-symmetric");

  ConicLP lp;
  lp.grid = W.grid;
  lp.red = reduced_sites(W.grid);
  lp.ks = reduced_wavenumbers(W.grid);

  const std::size_t nv = lp.red.sites.size();
  const double cell = W.grid.cell();

  lp.c.resize(nv);
  for (std::size_t i = 0; i < nv; ++i)
    lp.c[i] = 0.5 * cell * lp.red.mult[i] * W.values[lp.red.sites[i]];

  const std::size_t nrows = lp.ks.size();  // cosine rows for k != 0, then mass
  lp.rows.assign(nrows * nv, 0.0);
  for (std::size_t r = 0; r + 1 < nrows; ++r) {
    const Wavenumber& k = lp.ks[r + 1];
    double* row = lp.rows.data() + r * nv;
    for (std::size_t i = 0; i < nv; ++i) {
      auto p = W.grid.point(lp.red.sites[i]);
      double phase = kTwoPi * (k[0] * p[0] + k[1] * p[1]);
      row[i] = cell * lp.red.mult[i] * std::cos(phase);
    }
  }
  double* mass = lp.rows.data() + (nrows - 1) * nv;
  for (std::size_t i = 0; i < nv; ++i) mass[i] = cell * lp.red.mult[i];
  return lp;
}

namespace {

// Working storage for the standard-form iterate
//   minimize chat.x  s.t.  Ahat x = b, x >= 0,
// with x = (g, s): s are slacks of the cosine rows, the mass row has none.
struct IpmWork {
  const ConicLP& lp;
  std::size_t nv, nc, nx, nm;

  explicit IpmWork(const ConicLP& lp_)
      : lp(lp_), nv(lp_.num_vars()), nc(lp_.num_cos_rows()), nx(nv + nc), nm(nc + 1) {}

  // y = Ahat x
  void apply(const double* x, double* y) const {
    kernels::matvec(lp.rows.data(), nm, nv, x, y);
    for (std::size_t k = 0; k < nc; ++k) y[k] -= x[nv + k];
  }

  // y = Ahat^T lambda
  void apply_t(const double* lam, double* y) const {
    kernels::matvec_t(lp.rows.data(), nm, nv, lam, y);
    for (std::size_t k = 0; k < nc; ++k) y[nv + k] = -lam[k];
  }

  // M = Ahat diag(d) Ahat^T = R diag(d_g) R^T + diag(d_s, 0)
  void normal_matrix(const double* d, double* M) const {
    kernels::syrk_weighted(lp.rows.data(), nm, nv, d, M);
    for (std::size_t k = 0; k < nc; ++k) M[k * nm + k] += d[nv + k];
  }
};

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Factorizes M (destroying it) and solves with one round of iterative
// refinement against the saved copy.
struct NormalSolver {
  std::size_t m;
  std::vector<double> fac, raw;
  bool ok = false;

  bool factorize(const std::vector<double>& M, std::size_t m_) {
    m = m_;
    raw = M;
    fac = M;
    double max_diag = 0.0;
    for (std::size_t i = 0; i < m; ++i) max_diag = std::max(max_diag, fac[i * m + i]);
    double reg = 1e-14 * std::max(1.0, max_diag);
    for (int attempt = 0; attempt < 4; ++attempt) {
      if (kernels::cholesky(fac.data(), m, reg)) {
        ok = true;
        return true;
      }
      fac = M;
      reg *= 1e3;
    }
    ok = false;
    return false;
  }

  void solve(const std::vector<double>& rhs, std::vector<double>& x) const {
    x = rhs;
    kernels::cholesky_solve(fac.data(), m, x.data());
    // one refinement round
    std::vector<double> r(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      double acc = rhs[i];
      const double* Mi = raw.data() + i * m;
      for (std::size_t j = 0; j <= i; ++j) acc -= Mi[j] * x[j];
      for (std::size_t j = i + 1; j < m; ++j) acc -= raw[j * m + i] * x[j];
      r[i] = acc;
    }
    kernels::cholesky_solve(fac.data(), m, r.data());
    for (std::size_t i = 0; i < m; ++i) x[i] += r[i];
  }
};

double step_length(const std::vector<double>& v, const std::vector<double>& dv, double tau) {
  double alpha = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (dv[i] < 0.0) alpha = std::min(alpha, -tau * v[i] / dv[i]);
  return alpha;
}

}  // namespace

LPSolution solve_lp(const ConicLP& lp, double tol, int max_iters) {
  IpmWork w(lp);
  const std::size_t nx = w.nx, nm = w.nm, nv = w.nv, nc = w.nc;

  std::vector<double> chat(nx, 0.0);
  std::copy(lp.c.begin(), lp.c.end(), chat.begin());
  std::vector<double> b(nm, 0.0);
  b[nm - 1] = lp.mass_rhs;

  std::vector<double> x(nx), z(nx), lam(nm, 0.0);
  std::vector<double> M(nm * nm), d(nx), rhs(nm), dlam(nm), dx(nx), dz(nx);
  std::vector<double> rp(nm), rd(nx), tmp_x(nx), tmp_m(nm), rc(nx);
  NormalSolver ns;

  // Starting point: least-squares heuristic shifted into the interior.
  {
    std::fill(d.begin(), d.end(), 1.0);
    w.normal_matrix(d.data(), M.data());
    if (!ns.factorize(M, nm)) {
      LPSolution bad;
      bad.status = LPStatus::NumericalFailure;
      return bad;
    }
    ns.solve(b, tmp_m);
    w.apply_t(tmp_m.data(), x.data());  // x = Ahat^T (Ahat Ahat^T)^{-1} b
    w.apply(chat.data(), rhs.data());
    ns.solve(rhs, lam);
    w.apply_t(lam.data(), z.data());
    for (std::size_t i = 0; i < nx; ++i) z[i] = chat[i] - z[i];

    auto shift_pos = [](std::vector<double>& v) {
      double mn = *std::min_element(v.begin(), v.end());
      double delta = std::max(0.0, -1.5 * mn);
      for (double& t : v) t += delta;
    };
    shift_pos(x);
    shift_pos(z);
    double xz = 0.0, sx = 0.0, sz = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
      xz += x[i] * z[i];
      sx += x[i];
      sz += z[i];
    }
    double dx0 = sz > 0.0 ? 0.5 * xz / sz : 1.0;
    double dz0 = sx > 0.0 ? 0.5 * xz / sx : 1.0;
    if (dx0 <= 0.0) dx0 = 1.0;
    if (dz0 <= 0.0) dz0 = 1.0;
    for (std::size_t i = 0; i < nx; ++i) {
      x[i] += dx0;
      z[i] += dz0;
    }
  }

  LPSolution sol;
  sol.status = LPStatus::MaxIterations;
  const double bnorm = 1.0 + inf_norm(b);

  // The bound duals map back to potential samples through 2/(h^dim mult), so
  // the dual residual is measured in those units; otherwise the decomposition
  // identity would be left 2/h^dim times looser than the tolerance.
  std::vector<double> wfactor(nx, 1.0);
  double wscale = 0.0;
  {
    const double cell = lp.grid.cell();
    for (std::size_t i = 0; i < nv; ++i) {
      wfactor[i] = 2.0 / (cell * lp.red.mult[i]);
      wscale = std::max(wscale, std::abs(chat[i]) * wfactor[i]);
    }
  }
  const double cnorm = 1.0 + wscale;
  auto dual_norm = [&](const std::vector<double>& rd_vec) {
    double m = 0.0;
    for (std::size_t i = 0; i < nx; ++i) m = std::max(m, std::abs(rd_vec[i]) * wfactor[i]);
    return m;
  };

  int iter = 0;
  for (; iter < max_iters; ++iter) {
    // residuals
    w.apply(x.data(), rp.data());
    for (std::size_t i = 0; i < nm; ++i) rp[i] = b[i] - rp[i];
    w.apply_t(lam.data(), rd.data());
    for (std::size_t i = 0; i < nx; ++i) rd[i] = chat[i] - rd[i] - z[i];

    double cx = 0.0, blam = 0.0;
    for (std::size_t i = 0; i < nx; ++i) cx += chat[i] * x[i];
    for (std::size_t i = 0; i < nm; ++i) blam += b[i] * lam[i];

    sol.res_primal = inf_norm(rp) / bnorm;
    sol.res_dual = dual_norm(rd) / cnorm;
    sol.res_gap = std::abs(cx - blam) / (1.0 + std::abs(cx));
    if (sol.res_primal <= tol && sol.res_dual <= tol && sol.res_gap <= tol) {
      sol.status = LPStatus::Optimal;
      break;
    }

    double mu = 0.0;
    for (std::size_t i = 0; i < nx; ++i) mu += x[i] * z[i];
    mu /= static_cast<double>(nx);

    for (std::size_t i = 0; i < nx; ++i) d[i] = x[i] / z[i];
    w.normal_matrix(d.data(), M.data());
    if (!ns.factorize(M, nm)) {
      sol.status = LPStatus::NumericalFailure;
      break;
    }

    auto solve_direction = [&](const std::vector<double>& rc_vec) {
      // rhs = rp + Ahat (d o rd - rc/z)
      for (std::size_t i = 0; i < nx; ++i) tmp_x[i] = d[i] * rd[i] - rc_vec[i] / z[i];
      w.apply(tmp_x.data(), rhs.data());
      for (std::size_t i = 0; i < nm; ++i) rhs[i] += rp[i];
      ns.solve(rhs, dlam);
      w.apply_t(dlam.data(), dx.data());
      for (std::size_t i = 0; i < nx; ++i) {
        dx[i] = d[i] * (dx[i] - rd[i]) + rc_vec[i] / z[i];
        dz[i] = (rc_vec[i] - z[i] * dx[i]) / x[i];
      }
    };

    // affine scaling (predictor) direction
    for (std::size_t i = 0; i < nx; ++i) rc[i] = -x[i] * z[i];
    solve_direction(rc);
    double ap = step_length(x, dx, 1.0);
    double ad = step_length(z, dz, 1.0);
    double mu_aff = 0.0;
    for (std::size_t i = 0; i < nx; ++i) mu_aff += (x[i] + ap * dx[i]) * (z[i] + ad * dz[i]);
    mu_aff /= static_cast<double>(nx);
    double sigma = std::pow(mu_aff / mu, 3);
    sigma = std::clamp(sigma, 1e-8, 1.0 - 1e-8);

    // corrector
    for (std::size_t i = 0; i < nx; ++i) rc[i] = sigma * mu - x[i] * z[i] - dx[i] * dz[i];
    solve_direction(rc);
    ap = step_length(x, dx, 0.9995);
    ad = step_length(z, dz, 0.9995);
    for (std::size_t i = 0; i < nx; ++i) {
      x[i] += ap * dx[i];
      z[i] += ad * dz[i];
    }
    for (std::size_t i = 0; i < nm; ++i) lam[i] += ad * dlam[i];

    if (!std::isfinite(mu) || !std::isfinite(ap) || !std::isfinite(ad)) {
      sol.status = LPStatus::NumericalFailure;
      break;
    }
  }
  sol.iterations = iter;

  if (sol.status != LPStatus::Optimal) {
    w.apply(x.data(), rp.data());
    for (std::size_t i = 0; i < nm; ++i) rp[i] = b[i] - rp[i];
    w.apply_t(lam.data(), rd.data());
    for (std::size_t i = 0; i < nx; ++i) rd[i] = chat[i] - rd[i] - z[i];
    double cx = 0.0, blam = 0.0;
    for (std::size_t i = 0; i < nx; ++i) cx += chat[i] * x[i];
    for (std::size_t i = 0; i < nm; ++i) blam += b[i] * lam[i];
    sol.res_primal = inf_norm(rp) / bnorm;
    sol.res_dual = dual_norm(rd) / cnorm;
    sol.res_gap = std::abs(cx - blam) / (1.0 + std::abs(cx));
  }

  sol.g.assign(x.begin(), x.begin() + nv);
  sol.f = lp.expand(sol.g);
  sol.objective = 0.0;
  for (std::size_t i = 0; i < nv; ++i) sol.objective += lp.c[i] * sol.g[i];
  sol.dual_nonneg.assign(z.begin(), z.begin() + nv);
  sol.dual_cosine.assign(nc, 0.0);
  for (std::size_t k = 0; k < nc; ++k) sol.dual_cosine[k] = std::max(0.0, lam[k]);
  sol.dual_mass = lam[nm - 1];
  return sol;
}

DualDecomposition extract_dual_decomposition(const ConicLP& lp, const LPSolution& sol,
                                             const SampledPotential& W, double tol) {
  if (sol.status != LPStatus::Optimal)
    throw solver_error("extract_dual_decomposition: solution is not optimal");

  DualDecomposition dd;
  const Grid& grid = lp.grid;
  const std::size_t nv = lp.num_vars();
  const double cell = grid.cell();

  // Stationarity c = R^T lambda + z maps the bound duals to W+ and the cosine
  // duals to K; the identity W = W+ + K + 2 E_D below is the ground truth for
  // the scaling.
  dd.E_D = sol.dual_mass;

  std::vector<double> wplus_red(nv), k_red(nv, 0.0);
  for (std::size_t i = 0; i < nv; ++i)
    wplus_red[i] = 2.0 * sol.dual_nonneg[i] / (cell * lp.red.mult[i]);

  for (std::size_t r = 0; r < lp.num_cos_rows(); ++r) {
    const Wavenumber& k = lp.ks[r + 1];
    const double y = sol.dual_cosine[r];
    if (y == 0.0) continue;
    for (std::size_t i = 0; i < nv; ++i) {
      auto p = grid.point(lp.red.sites[i]);
      k_red[i] += 2.0 * y * std::cos(kTwoPi * (k[0] * p[0] + k[1] * p[1]));
    }
  }

  dd.Wplus = lp.expand(wplus_red);
  for (double& v : dd.Wplus) v = std::max(0.0, v);
  dd.K = lp.expand(k_red);
  dd.Khat = cosine_coefficients(grid, dd.K);

  double res = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    res = std::max(res, std::abs(W.values[j] - dd.Wplus[j] - dd.K[j] - 2.0 * dd.E_D));
  dd.residual = res;

  const double thresh = 10.0 * tol * std::max(1.0, W.max_abs());
  if (res > thresh)
    throw certificate_inconsistent("dual decomposition identity residual too large", res);
  return dd;
}

void dump_lp(const ConicLP& lp, std::ostream& os) {
  const std::size_t nv = lp.num_vars(), nr = lp.num_rows();
  os << "rows " << nr << "\n";
  os << "cols " << nv << "\n";
  os << "# minimize c.x  subject to: rows 0.." << nr - 2 << " >= 0, last row == rhs, x >= 0\n";
  for (std::size_t i = 0; i < nv; ++i)
    if (lp.c[i] != 0.0) os << "c " << i << " " << lp.c[i] << "\n";
  for (std::size_t r = 0; r < nr; ++r) {
    const double* row = lp.row(r);
    for (std::size_t i = 0; i < nv; ++i)
      if (row[i] != 0.0) os << "a " << r << " " << i << " " << row[i] << "\n";
  }
  for (std::size_t r = 0; r + 1 < nr; ++r) os << "row " << r << " G 0\n";
  os << "row " << nr - 1 << " E " << lp.mass_rhs << "\n";
}

}  // namespace pairint
