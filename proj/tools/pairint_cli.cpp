#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "pairint/artifacts.hpp"
#include "pairint/particles.hpp"
#include "pairint/sweep.hpp"
#include "pairint/threedelta.hpp"

namespace fs = std::filesystem;
using namespace pairint;

namespace {

struct RunConfig {
  std::string command;
  std::string config_path;
  std::string family = "morse1d";
  double sigma = 0.1, L = 1.2, G = 0.9, lc = 0.1, eps = 0.01;
  std::string tabulated;
  int n = 200;
  double lp_tol = 1e-8;
  double tol1 = 1e-10, tol2 = 1e-8;
  long max_iters = 100000;
  std::uint64_t seed = 1;
  int seeds = 3;
  std::string method = "auto";  // auto | ss
  std::string out = "out";
  bool dump_lp = false;
  // particles
  std::size_t N = 400;
  double dt = 1e-2, t_end = 1e3, snapshot_every = 10.0;
  int bins = 50;
  // sweep
  double L_min = 0.5, L_max = 2.0, G_min = 0.1, G_max = 2.0;
  int L_steps = 10, G_steps = 10;
  int workers = 0;
  bool sweep_recover = false;
  // threedelta
  int s_steps = 200;
  long k_max = 10000;

  ordered_json to_json() const {
    ordered_json j;
    j["command"] = command;
    const std::string fam = tabulated.empty() ? family : "tabulated";
    j["family"] = fam;
    if (fam == "tabulated") j["tabulated"] = tabulated;
    if (fam == "morse1d") j["sigma"] = sigma;
    if (fam == "morse1d" || fam == "morse2d") {
      j["L"] = L;
      j["G"] = G;
    }
    if (fam == "local") j["lc"] = lc;
    if (fam == "powerlaw") j["eps"] = eps;
    j["n"] = n;
    j["lp_tol"] = lp_tol;
    j["tol1"] = tol1;
    j["tol2"] = tol2;
    j["max_iters"] = max_iters;
    j["seed"] = seed;
    j["seeds"] = seeds;
    j["method"] = method;
    if (command == "particles") {
      j["N"] = N;
      j["dt"] = dt;
      j["t_end"] = t_end;
      j["snapshot_every"] = snapshot_every;
      j["bins"] = bins;
    }
    if (command == "sweep") {
      j["L_min"] = L_min;
      j["L_max"] = L_max;
      j["L_steps"] = L_steps;
      j["G_min"] = G_min;
      j["G_max"] = G_max;
      j["G_steps"] = G_steps;
      j["workers"] = workers;
      j["recover"] = sweep_recover;
    }
    if (command == "threedelta") {
      j["s_steps"] = s_steps;
      j["k_max"] = k_max;
    }
    return j;
  }
};

SampledPotential make_potential(const RunConfig& cfg) {
  Family fam = cfg.tabulated.empty() ? family_from_name(cfg.family) : Family::Tabulated;
  if (fam == Family::Tabulated) {
    if (cfg.tabulated.empty()) throw param_error("tabulated family needs --tabulated FILE");
    return load_tabulated(cfg.tabulated);
  }
  PotentialSpec spec;
  switch (fam) {
    case Family::PeriodicMorse1D: spec = PotentialSpec::periodic_morse_1d(cfg.sigma, cfg.L, cfg.G); break;
    case Family::Local: spec = PotentialSpec::local(cfg.lc); break;
    case Family::RegularizedPowerLaw: spec = PotentialSpec::regularized_power_law(cfg.eps); break;
    case Family::MultiScale: spec = PotentialSpec::multi_scale(); break;
    case Family::Morse2D: spec = PotentialSpec::morse_2d(cfg.L, cfg.G); break;
    default: throw param_error("unsupported family");
  }
  return build_potential(spec, Grid(spec.dim(), cfg.n));
}

void write_decomposition_csv(const std::string& path, const SampledPotential& W,
                             const RelaxationSolution& rel) {
  const Grid& g = W.grid;
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < g.size(); ++j) {
    auto p = g.point(j);
    std::vector<double> row;
    row.push_back(p[0]);
    if (g.dim == 2) row.push_back(p[1]);
    row.push_back(W.values[j]);
    row.push_back(rel.decomp.Wplus[j]);
    row.push_back(rel.decomp.K[j]);
    rows.push_back(std::move(row));
  }
  std::vector<std::string> head =
      g.dim == 1 ? std::vector<std::string>{"x", "W", "Wplus", "K"}
                 : std::vector<std::string>{"x", "y", "W", "Wplus", "K"};
  write_csv(path, head, rows);
}

void write_coefficients_csv(const std::string& path, const RelaxationSolution& rel) {
  const Grid& g = rel.F_R.grid;
  auto ks = reduced_wavenumbers(g);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::vector<double> row;
    row.push_back(ks[i][0]);
    if (g.dim == 2) row.push_back(ks[i][1]);
    row.push_back(rel.decomp.Khat[i]);
    row.push_back(rel.F_R.cosine_coeffs[i]);
    rows.push_back(std::move(row));
  }
  std::vector<std::string> head = g.dim == 1 ? std::vector<std::string>{"k", "Khat", "Fhat"}
                                             : std::vector<std::string>{"k1", "k2", "Khat", "Fhat"};
  write_csv(path, head, rows);
}

RelaxationSolution do_solve(const RunConfig& cfg, const SampledPotential& W) {
  SolveOptions opts;
  opts.tol = cfg.lp_tol;
  RelaxationSolution rel = solve_relaxation(W, opts);

  fs::create_directories(cfg.out);
  write_artifact((fs::path(cfg.out) / "relaxation.json").string(), relaxation_to_json(rel),
                 cfg.to_json());
  write_decomposition_csv((fs::path(cfg.out) / "dual_decomposition.csv").string(), W, rel);
  write_coefficients_csv((fs::path(cfg.out) / "coefficients.csv").string(), rel);
  if (cfg.dump_lp) {
    std::ofstream lpf(fs::path(cfg.out) / "lp.txt");
    dump_lp(assemble_relaxation(W), lpf);
  }
  return rel;
}

struct Candidate {
  Density rho;
  double kl = 0.0;
  bool from_fixed_point = false;
  RecoveryResult rec;  // valid when from_fixed_point
};

Candidate do_recover(const RunConfig& cfg, const SampledPotential& W,
                     const RelaxationSolution& rel) {
  Candidate cand;
  const bool idempotent = rel.kind.tag == SolutionTag::DiracLattice ||
                          rel.kind.tag == SolutionTag::SingleDelta ||
                          rel.kind.tag == SolutionTag::Constant;
  if (cfg.method != "ss" && idempotent) {
    // self-correlating solutions recover themselves
    cand.rho = rel.kind.tag == SolutionTag::Constant
                   ? Density::constant(W.grid)
                   : Density::from_atoms(W.grid, rel.kind.atoms);
    double mass = cand.rho.mass();
    for (double& v : cand.rho.values) v /= mass;
    cand.kl = kl_divergence(rel.F_R, autocorrelation(cand.rho));
    if (cand.kl <= 1e-8) return cand;
  }
  RecoveryOptions ropts;
  ropts.tol1 = cfg.tol1;
  ropts.tol2 = cfg.tol2;
  ropts.max_iters = cfg.max_iters;
  ropts.seed = cfg.seed;
  ropts.num_starts = cfg.seeds;
  cand.rec = recover(rel.F_R, ropts);
  cand.rho = cand.rec.rho;
  cand.kl = cand.rec.kl_final;
  cand.from_fixed_point = true;
  return cand;
}

void emit_recovery(const RunConfig& cfg, const Candidate& cand) {
  if (cand.from_fixed_point) {
    ordered_json j = recovery_to_json(cand.rec);
    write_artifact((fs::path(cfg.out) / "recovery.json").string(), j, cfg.to_json());
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < cand.rec.step_deltas.size(); ++i)
      rows.push_back({static_cast<double>(i + 1), cand.rec.kl_trace[i + 1],
                      cand.rec.step_deltas[i]});
    write_csv((fs::path(cfg.out) / "trace.csv").string(), {"iter", "kl", "l1_delta"}, rows);
  } else {
    ordered_json j;
    j["kl_final"] = cand.kl;
    j["method"] = "self_correlating";
    j["rho"] = cand.rho.values;
    write_artifact((fs::path(cfg.out) / "recovery.json").string(), j, cfg.to_json());
  }
}

int cmd_solve(const RunConfig& cfg) {
  SampledPotential W = make_potential(cfg);
  do_solve(cfg, W);
  std::cout << "wrote " << cfg.out << "/relaxation.json\n";
  return 0;
}

int cmd_recover(const RunConfig& cfg) {
  SampledPotential W = make_potential(cfg);
  RelaxationSolution rel = do_solve(cfg, W);
  Candidate cand = do_recover(cfg, W, rel);
  emit_recovery(cfg, cand);
  std::cout << "kl_final " << cand.kl << "\n";
  return 0;
}

int cmd_certify(const RunConfig& cfg) {
  SampledPotential W = make_potential(cfg);
  RelaxationSolution rel = do_solve(cfg, W);
  Candidate cand = do_recover(cfg, W, rel);
  emit_recovery(cfg, cand);
  CertificateReport rep = certify(cand.rho, W, rel);
  write_artifact((fs::path(cfg.out) / "certificate.json").string(), certificate_to_json(rep),
                 cfg.to_json());
  ordered_json summary;
  summary["alpha"] = rep.alpha;
  summary["E_R"] = rep.E_R;
  summary["energy_candidate"] = rep.energy_candidate;
  summary["kl_final"] = cand.kl;
  summary["kind"] = tag_name(rel.kind.tag);
  summary["exactness"] = exactness_name(rep.exactness);
  write_artifact((fs::path(cfg.out) / "summary.json").string(), summary, cfg.to_json());
  std::cout << "alpha " << rep.alpha << "\n";
  return 0;
}

int cmd_particles(const RunConfig& cfg) {
  Family fam = family_from_name(cfg.family);
  PotentialSpec spec;
  switch (fam) {
    case Family::PeriodicMorse1D: spec = PotentialSpec::periodic_morse_1d(cfg.sigma, cfg.L, cfg.G); break;
    case Family::Local: spec = PotentialSpec::local(cfg.lc); break;
    case Family::RegularizedPowerLaw: spec = PotentialSpec::regularized_power_law(cfg.eps); break;
    case Family::MultiScale: spec = PotentialSpec::multi_scale(); break;
    case Family::Morse2D: spec = PotentialSpec::morse_2d(cfg.L, cfg.G); break;
    default: throw param_error("particles: tabulated potentials are not supported");
  }
  SimulationOptions opts;
  opts.dt = cfg.dt;
  opts.t_end = cfg.t_end;
  opts.snapshot_every = cfg.snapshot_every;
  opts.seed = cfg.seed;
  SimulationTrace trace = simulate(spec, cfg.N, opts);

  fs::create_directories(cfg.out);
  {
    std::vector<std::vector<double>> rows;
    for (std::size_t s = 0; s < trace.snapshots.size(); ++s) {
      std::vector<double> row{trace.snapshots[s].time};
      for (const Vec2& p : trace.snapshots[s].positions) {
        row.push_back(p[0]);
        if (spec.dim() == 2) row.push_back(p[1]);
      }
      rows.push_back(std::move(row));
    }
    std::vector<std::string> head{"time"};
    for (std::size_t i = 0; i < cfg.N; ++i) {
      head.push_back("x" + std::to_string(i));
      if (spec.dim() == 2) head.push_back("y" + std::to_string(i));
    }
    write_csv((fs::path(cfg.out) / "snapshots.csv").string(), head, rows);
  }
  const ParticleState& final_state = trace.snapshots.back();
  {
    Density h = histogram(final_state, cfg.bins);
    std::vector<std::vector<double>> rows;
    for (int b = 0; b < cfg.bins; ++b)
      rows.push_back({(b + 0.5) / cfg.bins, h.values[static_cast<std::size_t>(b)]});
    write_csv((fs::path(cfg.out) / "histogram.csv").string(), {"bin_center", "density"}, rows);
  }
  ordered_json summary;
  summary["width"] = cluster_width(final_state);
  summary["energy_initial"] = trace.energies.front();
  summary["energy_final"] = trace.energies.back();
  summary["max_force_terminal"] = trace.max_force_terminal;
  write_artifact((fs::path(cfg.out) / "summary.json").string(), summary, cfg.to_json());
  std::cout << "width " << cluster_width(final_state) << "\n";
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  SweepConfig sc;
  sc.family = family_from_name(cfg.family);
  sc.sigma = cfg.sigma;
  sc.L_min = cfg.L_min;
  sc.L_max = cfg.L_max;
  sc.L_steps = cfg.L_steps;
  sc.G_min = cfg.G_min;
  sc.G_max = cfg.G_max;
  sc.G_steps = cfg.G_steps;
  sc.n = cfg.n;
  sc.tol = cfg.lp_tol;
  sc.seed = cfg.seed;
  sc.recover = cfg.sweep_recover;
  sc.workers = cfg.workers;

  fs::create_directories(cfg.out);
  SweepResult res = phase_sweep(sc, (fs::path(cfg.out) / "checkpoint.jsonl").string());

  {
    std::ofstream table(fs::path(cfg.out) / "table.jsonl");
    for (const PhasePoint& p : res.table) table << phase_point_to_json(p, false) << "\n";
  }
  RegionMap regions = classify_regions(sc, res.table);
  {
    std::ofstream f(fs::path(cfg.out) / "regions.csv");
    f << "L,G,region,kind\n";
    for (const PhasePoint& p : res.table) {
      int rid = regions.region_id[static_cast<std::size_t>(p.iL) * sc.G_steps + p.iG];
      f << p.L << "," << p.G << "," << rid << "," << tag_name(p.tag) << "\n";
    }
  }
  {
    // region boundaries as short segments between differing neighbors
    std::ofstream f(fs::path(cfg.out) / "boundaries.csv");
    f << "L1,G1,L2,G2\n";
    double dL = sc.L_steps > 1 ? (sc.L_max - sc.L_min) / (sc.L_steps - 1) : 1.0;
    double dG = sc.G_steps > 1 ? (sc.G_max - sc.G_min) / (sc.G_steps - 1) : 1.0;
    auto rid = [&](int iL, int iG) {
      return regions.region_id[static_cast<std::size_t>(iL) * sc.G_steps + iG];
    };
    for (int iL = 0; iL < sc.L_steps; ++iL)
      for (int iG = 0; iG < sc.G_steps; ++iG) {
        if (iL + 1 < sc.L_steps && rid(iL, iG) != rid(iL + 1, iG)) {
          double Lm = sc.L_at(iL) + 0.5 * dL;
          f << Lm << "," << sc.G_at(iG) - 0.5 * dG << "," << Lm << ","
            << sc.G_at(iG) + 0.5 * dG << "\n";
        }
        if (iG + 1 < sc.G_steps && rid(iL, iG) != rid(iL, iG + 1)) {
          double Gm = sc.G_at(iG) + 0.5 * dG;
          f << sc.L_at(iL) - 0.5 * dL << "," << Gm << "," << sc.L_at(iL) + 0.5 * dL << ","
            << Gm << "\n";
        }
      }
  }
  std::cout << "swept " << res.table.size() << " points, " << regions.num_regions
            << " regions\n";
  return 0;
}

int cmd_threedelta(const RunConfig& cfg) {
  SampledPotential W = make_potential(cfg);
  if (W.grid.dim != 1) throw param_error("threedelta: one-dimensional potentials only");
  std::vector<double> s_grid;
  for (int i = 1; i <= cfg.s_steps; ++i) s_grid.push_back(0.5 * i / cfg.s_steps);
  ThreeDeltaResult res = minimize_three_delta(W, s_grid, cfg.k_max);

  fs::create_directories(cfg.out);
  std::vector<std::vector<double>> rows;
  for (double s : s_grid)
    rows.push_back({s, theta(s, cfg.k_max), restricted_energy(s, W, cfg.k_max)});
  write_csv((fs::path(cfg.out) / "curve.csv").string(), {"s", "theta", "E"}, rows);

  ordered_json summary;
  summary["s_star"] = res.s_star;
  summary["beta_star"] = res.beta_star;
  summary["E_star"] = res.E_star;
  summary["degenerate"] = res.degenerate;
  if (res.rational)
    summary["rational"] = {{"q", res.rational->q}, {"p", res.rational->p},
                           {"error", res.rational->error}};
  write_artifact((fs::path(cfg.out) / "summary.json").string(), summary, cfg.to_json());
  std::cout << "s_star " << res.s_star << " E_star " << res.E_star << "\n";
  return 0;
}

// Flat key = value configuration; values never override flags that were
// given on the command line.
void apply_config_file(CLI::App* cmd, RunConfig& cfg) {
  if (cfg.config_path.empty()) return;
  std::ifstream in(cfg.config_path);
  if (!in) throw param_error("cannot open config file: " + cfg.config_path);
  auto as_bool = [](const std::string& v) { return v == "1" || v == "true" || v == "yes"; };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw param_error("config line " + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string t) {
      t.erase(0, t.find_first_not_of(" \t\r"));
      t.erase(t.find_last_not_of(" \t\r") + 1);
      return t;
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt != nullptr && opt->count() > 0) continue;  // flag wins
    if (key == "family") cfg.family = value;
    else if (key == "sigma") cfg.sigma = std::stod(value);
    else if (key == "L") cfg.L = std::stod(value);
    else if (key == "G") cfg.G = std::stod(value);
    else if (key == "lc") cfg.lc = std::stod(value);
    else if (key == "eps") cfg.eps = std::stod(value);
    else if (key == "tabulated") cfg.tabulated = value;
    else if (key == "n") cfg.n = std::stoi(value);
    else if (key == "tol") cfg.lp_tol = std::stod(value);
    else if (key == "tol1") cfg.tol1 = std::stod(value);
    else if (key == "tol2") cfg.tol2 = std::stod(value);
    else if (key == "max_iters") cfg.max_iters = std::stol(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "seeds") cfg.seeds = std::stoi(value);
    else if (key == "method") cfg.method = value;
    else if (key == "out") cfg.out = value;
    else if (key == "dump_lp") cfg.dump_lp = as_bool(value);
    else if (key == "N") cfg.N = std::stoull(value);
    else if (key == "dt") cfg.dt = std::stod(value);
    else if (key == "t_end") cfg.t_end = std::stod(value);
    else if (key == "snapshot_every") cfg.snapshot_every = std::stod(value);
    else if (key == "bins") cfg.bins = std::stoi(value);
    else if (key == "L_min") cfg.L_min = std::stod(value);
    else if (key == "L_max") cfg.L_max = std::stod(value);
    else if (key == "L_steps") cfg.L_steps = std::stoi(value);
    else if (key == "G_min") cfg.G_min = std::stod(value);
    else if (key == "G_max") cfg.G_max = std::stod(value);
    else if (key == "G_steps") cfg.G_steps = std::stoi(value);
    else if (key == "workers") cfg.workers = std::stoi(value);
    else if (key == "recover") cfg.sweep_recover = as_bool(value);
    else if (key == "s_steps") cfg.s_steps = std::stoi(value);
    else if (key == "k_max") cfg.k_max = std::stol(value);
    else throw param_error("config line " + std::to_string(lineno) + ": unknown key " + key);
  }
}

void add_potential_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--config", cfg.config_path, "key=value configuration file");
  cmd->add_option("--family", cfg.family, "morse1d|local|powerlaw|multiscale|morse2d|tabulated");
  cmd->add_option("--sigma", cfg.sigma, "repulsion range (morse1d)");
  cmd->add_option("--L", cfg.L, "attraction/repulsion length ratio");
  cmd->add_option("--G", cfg.G, "attraction strength");
  cmd->add_option("--lc", cfg.lc, "interaction range (local)");
  cmd->add_option("--eps", cfg.eps, "regularization (powerlaw)");
  cmd->add_option("--tabulated", cfg.tabulated, "tabulated potential file");
  cmd->add_option("--n", cfg.n, "grid points per axis");
  cmd->add_option("--tol", cfg.lp_tol, "solver tolerance");
  cmd->add_option("--out", cfg.out, "output directory");
}

void add_recover_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tol1", cfg.tol1, "stopping: KL decrease per step");
  cmd->add_option("--tol2", cfg.tol2, "stopping: L1 change per step");
  cmd->add_option("--max-iters", cfg.max_iters, "iteration cap");
  cmd->add_option("--seed", cfg.seed, "base RNG seed");
  cmd->add_option("--seeds", cfg.seeds, "number of restarts");
  cmd->add_option("--method", cfg.method, "auto|ss");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"candidate global minimizers of pairwise interaction energies"};
  app.require_subcommand(1);

  RunConfig cfg;

  CLI::App* solve = app.add_subcommand("solve", "solve the relaxation for a potential");
  add_potential_flags(solve, cfg);
  solve->add_flag("--dump-lp", cfg.dump_lp, "write the assembled program as text");

  CLI::App* rec = app.add_subcommand("recover", "solve, then recover a candidate density");
  add_potential_flags(rec, cfg);
  add_recover_flags(rec, cfg);

  CLI::App* cert = app.add_subcommand("certify", "solve, recover and certify a candidate");
  add_potential_flags(cert, cfg);
  add_recover_flags(cert, cfg);

  CLI::App* part = app.add_subcommand("particles", "gradient-flow particle simulation");
  add_potential_flags(part, cfg);
  part->add_option("--N", cfg.N, "particle count");
  part->add_option("--dt", cfg.dt, "time step");
  part->add_option("--t-end", cfg.t_end, "final time");
  part->add_option("--snapshot-every", cfg.snapshot_every, "snapshot interval");
  part->add_option("--seed", cfg.seed, "RNG seed");
  part->add_option("--bins", cfg.bins, "histogram bins");

  CLI::App* sweep = app.add_subcommand("sweep", "phase diagram over (L, G)");
  sweep->add_option("--config", cfg.config_path, "key=value configuration file");
  sweep->add_option("--family", cfg.family, "morse1d|morse2d");
  sweep->add_option("--sigma", cfg.sigma, "repulsion range (morse1d)");
  sweep->add_option("--L-min", cfg.L_min);
  sweep->add_option("--L-max", cfg.L_max);
  sweep->add_option("--L-steps", cfg.L_steps);
  sweep->add_option("--G-min", cfg.G_min);
  sweep->add_option("--G-max", cfg.G_max);
  sweep->add_option("--G-steps", cfg.G_steps);
  sweep->add_option("--n", cfg.n, "grid points per point");
  sweep->add_option("--tol", cfg.lp_tol, "solver tolerance");
  sweep->add_option("--seed", cfg.seed, "base RNG seed");
  sweep->add_option("--workers", cfg.workers, "worker pool size (0: default)");
  sweep->add_flag("--recover", cfg.sweep_recover, "also recover and report alpha");
  sweep->add_option("--out", cfg.out, "output directory");

  CLI::App* three = app.add_subcommand("threedelta", "restricted three-atom analysis");
  add_potential_flags(three, cfg);
  three->add_option("--s-steps", cfg.s_steps, "separation samples in (0, 1/2]");
  three->add_option("--k-max", cfg.k_max, "mode cutoff for irrational separations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    for (CLI::App* cmd : {solve, rec, cert, part, sweep, three})
      if (cmd->parsed()) apply_config_file(cmd, cfg);
    if (solve->parsed()) {
      cfg.command = "solve";
      return cmd_solve(cfg);
    }
    if (rec->parsed()) {
      cfg.command = "recover";
      return cmd_recover(cfg);
    }
    if (cert->parsed()) {
      cfg.command = "certify";
      return cmd_certify(cfg);
    }
    if (part->parsed()) {
      cfg.command = "particles";
      return cmd_particles(cfg);
    }
    if (sweep->parsed()) {
      cfg.command = "sweep";
      return cmd_sweep(cfg);
    }
    if (three->parsed()) {
      cfg.command = "threedelta";
      return cmd_threedelta(cfg);
    }
  } catch (const param_error& e) {
    ordered_json err{{"error", "config"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const shape_error& e) {
    ordered_json err{{"error", "config"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const certificate_inconsistent& e) {
    ordered_json err{{"error", "certificate"}, {"message", e.what()}, {"residual", e.residual}};
    std::cerr << err.dump() << "\n";
    return 4;
  } catch (const std::exception& e) {
    ordered_json err{{"error", "solver"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 3;
  }
  return 2;
}
