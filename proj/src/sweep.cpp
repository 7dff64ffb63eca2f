#include "pairint/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "pairint/certify.hpp"
#include "pairint/recovery.hpp"

namespace pairint {

using ordered_json = nlohmann::ordered_json;

std::string phase_point_to_json(const PhasePoint& p, bool include_volatile) {
  ordered_json j;
  j["iL"] = p.iL;
  j["iG"] = p.iG;
  j["L"] = p.L;
  j["G"] = p.G;
  j["ok"] = p.ok;
  if (!p.ok) j["error"] = p.error;
  j["kind"] = tag_name(p.tag);
  j["n_atoms"] = p.n_atoms;
  j["spacing"] = p.spacing;
  j["E_R"] = p.E_R;
  if (p.alpha >= 0.0) j["alpha"] = p.alpha;
  j["n"] = p.n;
  j["tol"] = p.tol;
  j["seed"] = p.seed;
  if (include_volatile) j["wall_ms"] = p.wall_ms;
  return j.dump();
}

PhasePoint phase_point_from_json(const std::string& line) {
  ordered_json j = ordered_json::parse(line);
  PhasePoint p;
  p.iL = j.at("iL").get<int>();
  p.iG = j.at("iG").get<int>();
  p.L = j.at("L").get<double>();
  p.G = j.at("G").get<double>();
  p.ok = j.at("ok").get<bool>();
  if (j.contains("error")) p.error = j["error"].get<std::string>();
  for (SolutionTag t : {SolutionTag::SingleDelta, SolutionTag::DiracLattice,
                        SolutionTag::AtomicNonLattice, SolutionTag::Continuous,
                        SolutionTag::Constant})
    if (tag_name(t) == j.at("kind").get<std::string>()) p.tag = t;
  p.n_atoms = j.at("n_atoms").get<int>();
  p.spacing = j.at("spacing").get<double>();
  p.E_R = j.at("E_R").get<double>();
  if (j.contains("alpha")) p.alpha = j["alpha"].get<double>();
  p.n = j.at("n").get<int>();
  p.tol = j.at("tol").get<double>();
  p.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("wall_ms")) p.wall_ms = j["wall_ms"].get<double>();
  return p;
}

namespace {

PhasePoint run_point(const SweepConfig& cfg, int iL, int iG) {
  PhasePoint p;
  p.iL = iL;
  p.iG = iG;
  p.L = cfg.L_at(iL);
  p.G = cfg.G_at(iG);
  p.n = cfg.n;
  p.tol = cfg.tol;
  p.seed = cfg.seed;

  auto t0 = std::chrono::steady_clock::now();
  try {
    PotentialSpec spec = cfg.family == Family::Morse2D
                             ? PotentialSpec::morse_2d(p.L, p.G)
                             : PotentialSpec::periodic_morse_1d(cfg.sigma, p.L, p.G);
    Grid grid(spec.dim(), cfg.n);
    SampledPotential W = build_potential(spec, grid);
    SolveOptions opts;
    opts.tol = cfg.tol;
    RelaxationSolution rel = solve_relaxation(W, opts);
    p.tag = rel.kind.tag;
    p.n_atoms = static_cast<int>(rel.kind.atoms.size());
    p.spacing = rel.kind.spacing.empty() ? 0.0 : rel.kind.spacing[0];
    p.E_R = rel.E_R;
    if (cfg.recover) {
      RecoveryOptions ropts;
      ropts.seed = cfg.seed;
      RecoveryResult rec = recover(rel.F_R, ropts);
      double ecand = pairwise_energy(rec.rho, W);
      p.alpha = guarantee_alpha(ecand, rel.E_R, 1e-6 * std::max(1.0, W.max_abs()));
    }
    p.ok = true;
  } catch (const std::exception& e) {
    p.ok = false;
    p.error = e.what();
  }
  auto t1 = std::chrono::steady_clock::now();
  p.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return p;
}

}  // namespace

SweepResult phase_sweep(const SweepConfig& cfg, const std::string& checkpoint_path) {
  SweepResult result;
  result.config = cfg;

  const int total = cfg.L_steps * cfg.G_steps;
  std::map<std::pair<int, int>, PhasePoint> done;
  {
    std::ifstream in(checkpoint_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      PhasePoint p = phase_point_from_json(line);
      done[{p.iL, p.iG}] = p;
    }
  }

  std::vector<std::pair<int, int>> pending;
  for (int iL = 0; iL < cfg.L_steps; ++iL)
    for (int iG = 0; iG < cfg.G_steps; ++iG)
      if (!done.count({iL, iG})) pending.emplace_back(iL, iG);

  std::ofstream out(checkpoint_path, std::ios::app);
  if (!out) throw param_error("phase_sweep: cannot open checkpoint " + checkpoint_path);

  // the checkpoint writer is the only shared resource
  const int nwork = static_cast<int>(pending.size());
  const int nthreads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (int w = 0; w < nwork; ++w) {
    PhasePoint p = run_point(cfg, pending[w].first, pending[w].second);
#pragma omp critical(pairint_sweep_checkpoint)
    {
      out << phase_point_to_json(p, true) << "\n";
      out.flush();
      done[{p.iL, p.iG}] = p;
    }
  }

  result.table.reserve(total);
  for (int iL = 0; iL < cfg.L_steps; ++iL)
    for (int iG = 0; iG < cfg.G_steps; ++iG) result.table.push_back(done.at({iL, iG}));
  return result;
}

RegionMap classify_regions(const SweepConfig& cfg, const std::vector<PhasePoint>& table) {
  RegionMap map;
  const int NL = cfg.L_steps, NG = cfg.G_steps;
  map.region_id.assign(static_cast<std::size_t>(NL) * NG, -1);

  auto key = [&](const PhasePoint& p) {
    int k = static_cast<int>(p.tag);
    if (p.tag == SolutionTag::DiracLattice) k = 100 + p.n_atoms;
    return p.ok ? k : -1;
  };
  std::vector<int> keys(map.region_id.size(), -1);
  for (const PhasePoint& p : table) keys[static_cast<std::size_t>(p.iL) * NG + p.iG] = key(p);

  int next = 0;
  for (int iL = 0; iL < NL; ++iL)
    for (int iG = 0; iG < NG; ++iG) {
      std::size_t root = static_cast<std::size_t>(iL) * NG + iG;
      if (keys[root] < 0 || map.region_id[root] >= 0) continue;
      // flood fill over 4-neighborhoods of equal key
      std::vector<std::size_t> stack{root};
      map.region_id[root] = next;
      while (!stack.empty()) {
        std::size_t cur = stack.back();
        stack.pop_back();
        int cl = static_cast<int>(cur) / NG, cg = static_cast<int>(cur) % NG;
        const int dl[4] = {1, -1, 0, 0}, dg[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          int nl = cl + dl[d], ng = cg + dg[d];
          if (nl < 0 || nl >= NL || ng < 0 || ng >= NG) continue;
          std::size_t nxt = static_cast<std::size_t>(nl) * NG + ng;
          if (map.region_id[nxt] < 0 && keys[nxt] == keys[root]) {
            map.region_id[nxt] = next;
            stack.push_back(nxt);
          }
        }
      }
      ++next;
    }
  map.num_regions = next;
  return map;
}

}  // namespace pairint
