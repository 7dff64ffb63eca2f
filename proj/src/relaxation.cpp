#include "pairint/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pairint {

std::string tag_name(SolutionTag t) {
  switch (t) {
    case SolutionTag::SingleDelta: return "single_delta";
    case SolutionTag::DiracLattice: return "dirac_lattice";
    case SolutionTag::AtomicNonLattice: return "atomic_non_lattice";
    case SolutionTag::Continuous: return "continuous";
    case SolutionTag::Constant: return "constant";
  }
  return "unknown";
}

namespace {

// 1D lattice test: sorted circular gaps all within one cell of the median gap.
bool lattice_1d(const Grid& grid, const std::vector<Atom>& atoms, std::vector<double>& spacing) {
  if (atoms.size() < 2) return false;
  std::vector<double> pos;
  pos.reserve(atoms.size());
  for (const Atom& a : atoms) pos.push_back(grid.point(a.index)[0]);
  std::sort(pos.begin(), pos.end());
  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < pos.size(); ++i) gaps.push_back(pos[i + 1] - pos[i]);
  gaps.push_back(1.0 - pos.back() + pos.front());
  std::vector<double> sorted = gaps;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  double med = sorted[sorted.size() / 2];
  for (double g : gaps)
    if (std::abs(g - med) > grid.h() + 1e-12) return false;
  spacing = {med};
  return true;
}

// 2D lattice test: the atom index set is invariant under translation by
// axis-aligned candidate vectors and the count matches the tiling.
bool lattice_2d(const Grid& grid, const std::vector<Atom>& atoms, std::vector<double>& spacing) {
  if (atoms.size() < 2) return false;
  const int n = grid.n;
  std::vector<char> present(grid.size(), 0);
  for (const Atom& a : atoms) present[a.index] = 1;

  auto invariant = [&](int d1, int d2) {
    for (const Atom& a : atoms) {
      auto c = grid.unflat(a.index);
      if (!present[grid.flat((c[0] + d1) % n, (c[1] + d2) % n)]) return false;
    }
    return true;
  };

  // smallest positive per-axis offsets that map the set to itself
  int p1 = 0, p2 = 0;
  for (int d = 1; d <= n; ++d)
    if (d == n || invariant(d, 0)) {
      p1 = d;
      break;
    }
  for (int d = 1; d <= n; ++d)
    if (d == n || invariant(0, d)) {
      p2 = d;
      break;
    }
  if (p1 == 0 || p2 == 0) return false;
  if (p1 == n && p2 == n) return false;
  long expected = (static_cast<long>(n) / p1) * (static_cast<long>(n) / p2);
  if (n % p1 != 0 || n % p2 != 0) return false;
  if (expected != static_cast<long>(atoms.size())) return false;
  spacing = {p1 * grid.h(), p2 * grid.h()};
  return true;
}

}  // namespace

namespace {

// Connected components of the cells whose mass reaches tau_atom.  A component
// narrower than a few cells is a (possibly smeared) point mass; anything wider
// is continuous structure.
struct Cluster {
  std::vector<std::size_t> cells;
  std::size_t peak = 0;  // cell of largest value
  double mass = 0.0;
  int extent = 0;  // max circular extent over the axes, in cells
};

std::vector<Cluster> find_clusters(const Correlogram& F, double tau_atom) {
  const Grid& grid = F.grid;
  const double cell = grid.cell();
  const int n = grid.n;
  std::vector<char> hot(grid.size(), 0);
  for (std::size_t j = 0; j < F.values.size(); ++j)
    if (cell * F.values[j] >= tau_atom) hot[j] = 1;

  std::vector<char> seen(grid.size(), 0);
  std::vector<Cluster> out;
  for (std::size_t j = 0; j < hot.size(); ++j) {
    if (!hot[j] || seen[j]) continue;
    Cluster cl;
    std::vector<std::size_t> stack{j};
    seen[j] = 1;
    while (!stack.empty()) {
      std::size_t cur = stack.back();
      stack.pop_back();
      cl.cells.push_back(cur);
      cl.mass += cell * F.values[cur];
      if (F.values[cur] > F.values[cl.peak] || cl.cells.size() == 1) cl.peak = cur;
      auto c = grid.unflat(cur);
      const int d1[4] = {1, -1, 0, 0}, d2[4] = {0, 0, 1, -1};
      const int nbrs = grid.dim == 1 ? 2 : 4;
      for (int d = 0; d < nbrs; ++d) {
        std::size_t nxt = grid.flat(((c[0] + d1[d]) % n + n) % n,
                                    grid.dim == 2 ? ((c[1] + d2[d]) % n + n) % n : 0);
        if (hot[nxt] && !seen[nxt]) {
          seen[nxt] = 1;
          stack.push_back(nxt);
        }
      }
    }
    // circular extent per axis: cells covered by the smallest arc
    for (int axis = 0; axis < grid.dim; ++axis) {
      std::vector<char> used(n, 0);
      for (std::size_t c : cl.cells) used[grid.unflat(c)[axis]] = 1;
      int gap = 0, run = 0;
      for (int i = 0; i < 2 * n; ++i) {
        if (!used[i % n]) {
          ++run;
          gap = std::max(gap, run);
        } else {
          run = 0;
        }
      }
      gap = std::min(gap, n);
      cl.extent = std::max(cl.extent, n - gap);
    }
    out.push_back(std::move(cl));
  }
  return out;
}

}  // namespace

SolutionKind classify_solution(const Correlogram& F_R, const ClassifierThresholds& thr) {
  SolutionKind kind;
  const Grid& grid = F_R.grid;
  constexpr int kAtomExtent = 3;  // cells a smeared point mass may occupy

  double dev_const = 0.0;
  for (double v : F_R.values) dev_const = std::max(dev_const, std::abs(v - 1.0));
  if (dev_const <= thr.tau_const) {
    kind.tag = SolutionTag::Constant;
    return kind;
  }

  std::vector<Cluster> clusters = find_clusters(F_R, thr.tau_atom);
  bool any_wide = false;
  std::vector<Atom> atoms;
  double atom_mass = 0.0;
  for (const Cluster& cl : clusters) {
    if (cl.extent > kAtomExtent) {
      any_wide = true;
      continue;
    }
    atoms.push_back({cl.peak, cl.mass});
    atom_mass += cl.mass;
  }

  if (any_wide || atoms.empty()) {
    kind.tag = SolutionTag::Continuous;
    return kind;
  }

  if (atoms.size() == 1 && atom_mass >= 1.0 - thr.tau_mass) {
    kind.tag = SolutionTag::SingleDelta;
    kind.atoms = std::move(atoms);
    return kind;
  }

  if (atom_mass >= 1.0 - thr.tau_mass) {
    std::vector<double> spacing;
    bool is_lattice = grid.dim == 1 ? lattice_1d(grid, atoms, spacing)
                                    : lattice_2d(grid, atoms, spacing);
    kind.tag = is_lattice ? SolutionTag::DiracLattice : SolutionTag::AtomicNonLattice;
    kind.atoms = std::move(atoms);
    kind.spacing = std::move(spacing);
    return kind;
  }

  // point masses that break the mass or spacing tests: ambiguous transition
  kind.tag = SolutionTag::AtomicNonLattice;
  kind.atoms = std::move(atoms);
  return kind;
}

namespace {
// Continued-fraction fit of s by q/p with p <= pmax.  The first convergent
// already within tol_accept wins (a spacing estimate is only good to a cell),
// otherwise the closest one does.
std::pair<long, long> rational_fit(double s, long pmax, double tol_accept) {
  long best_q = 0, best_p = 1;
  double best_err = std::abs(s);
  long q0 = 0, p0 = 1, q1 = 1, p1 = 0;  // convergent recurrence
  double t = s;
  for (int it = 0; it < 64; ++it) {
    long a = static_cast<long>(std::floor(t));
    long q2 = a * q1 + q0, p2 = a * p1 + p0;
    if (p2 > pmax || p2 <= 0) break;
    double err = std::abs(s - static_cast<double>(q2) / p2);
    if (err < best_err) {
      best_err = err;
      best_q = q2;
      best_p = p2;
      if (best_q > 0 && err <= tol_accept) break;
    }
    q0 = q1;
    p0 = p1;
    q1 = q2;
    p1 = p2;
    double frac = t - a;
    if (frac < 1e-15) break;
    t = 1.0 / frac;
  }
  long g = std::gcd(best_q, best_p);
  if (g > 1) {
    best_q /= g;
    best_p /= g;
  }
  return {best_q, best_p};
}
}  // namespace

Grid regrid_for_lattice(const SolutionKind& kind, const Grid& grid) {
  if (kind.atoms.empty() || kind.tag == SolutionTag::Continuous ||
      kind.tag == SolutionTag::Constant)
    throw not_atomic("regrid_for_lattice: no atomic structure detected");

  // median nearest-neighbor gap along the first axis of the atom set
  std::vector<double> pos;
  for (const Atom& a : kind.atoms) pos.push_back(grid.point(a.index)[0]);
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  double spacing;
  if (!kind.spacing.empty()) {
    spacing = kind.spacing[0];
  } else if (pos.size() >= 2) {
    std::vector<double> gaps;
    for (std::size_t i = 0; i + 1 < pos.size(); ++i) gaps.push_back(pos[i + 1] - pos[i]);
    gaps.push_back(1.0 - pos.back() + pos.front());
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    spacing = gaps[gaps.size() / 2];
  } else {
    return grid;  // a single delta is commensurate with any grid
  }

  auto [q, p] = rational_fit(spacing, 64, 0.5 * grid.h());
  if (q <= 0 || p <= 0) throw not_atomic("regrid_for_lattice: spacing has no rational fit");
  // n' multiple of p puts the spacing q/p on the grid; keep n' near n
  long lo = (grid.n / static_cast<int>(p)) * p;
  long hi = lo + p;
  long n_new = (grid.n - lo <= hi - grid.n && lo >= 2) ? lo : hi;
  return Grid(grid.dim, static_cast<int>(n_new));
}

ComplementarityReport complementarity_report(const Correlogram& F_R, const DualDecomposition& dd,
                                             double tol, double scale) {
  ComplementarityReport rep;
  const Grid& grid = F_R.grid;
  for (std::size_t j = 0; j < F_R.values.size(); ++j) {
    double prod = dd.Wplus[j] * F_R.values[j];
    rep.r1 += prod;
    rep.max_pointwise1 = std::max(rep.max_pointwise1, std::abs(prod) * grid.cell());
  }
  rep.r1 *= grid.cell();
  for (std::size_t k = 1; k < F_R.cosine_coeffs.size(); ++k) {
    double prod = dd.Khat[k] * F_R.cosine_coeffs[k];
    rep.r2 += prod;
    rep.max_pointwise2 = std::max(rep.max_pointwise2, std::abs(prod));
  }
  double thresh = 10.0 * tol * std::max(1.0, scale);
  rep.pass = std::abs(rep.r1) <= thresh && std::abs(rep.r2) <= thresh;
  return rep;
}

RelaxationSolution solve_relaxation(const SampledPotential& W, const SolveOptions& opts) {
  ConicLP lp = assemble_relaxation(W);
  LPSolution sol = solve_lp(lp, opts.tol, opts.max_iters);
  if (sol.status == LPStatus::NumericalFailure)
    throw solver_error("solve_relaxation: interior-point solve failed");

  RelaxationSolution out;
  out.status = sol.status;
  out.iterations = sol.iterations;
  out.res_primal = sol.res_primal;
  out.res_dual = sol.res_dual;
  out.res_gap = sol.res_gap;
  out.E_R = sol.objective;
  out.F_R.grid = W.grid;
  out.F_R.values = sol.f;
  out.F_R.cosine_coeffs = cosine_coefficients(W.grid, sol.f);
  out.decomp = extract_dual_decomposition(lp, sol, W, opts.tol);
  out.kind = classify_solution(out.F_R, opts.classify);
  out.degenerate = W.max_abs() == 0.0;
  return out;
}

}  // namespace pairint
