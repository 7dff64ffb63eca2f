#include "pairint/artifacts.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace pairint {

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(const std::string& data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

void write_artifact(const std::string& path, ordered_json doc, const ordered_json& config) {
  ordered_json out;
  out["schema"] = 1;
  out["config"] = config;
  for (auto& [key, value] : doc.items()) out[key] = value;
  out["content_hash"] = hash_hex(out.dump());
  std::ofstream f(path);
  if (!f) throw param_error("cannot write artifact: " + path);
  f << out.dump(2) << "\n";
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream f(path);
  if (!f) throw param_error("cannot write csv: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
  f << "\n";
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      f << (i ? "," : "") << buf;
    }
    f << "\n";
  }
}

ordered_json relaxation_to_json(const RelaxationSolution& rel) {
  ordered_json j;
  j["grid"] = {{"dim", rel.F_R.grid.dim}, {"n", rel.F_R.grid.n}};
  j["E_R"] = rel.E_R;
  j["kind"] = tag_name(rel.kind.tag);
  j["degenerate"] = rel.degenerate;
  if (!rel.kind.atoms.empty()) {
    ordered_json atoms = ordered_json::array();
    for (const Atom& a : rel.kind.atoms) {
      auto p = rel.F_R.grid.point(a.index);
      ordered_json aj;
      aj["index"] = a.index;
      aj["x"] = rel.F_R.grid.dim == 1 ? ordered_json(p[0]) : ordered_json({p[0], p[1]});
      aj["mass"] = a.mass;
      atoms.push_back(aj);
    }
    j["atoms"] = atoms;
    if (!rel.kind.spacing.empty()) j["spacing"] = rel.kind.spacing;
  }
  j["F_R"] = rel.F_R.values;
  j["decomp"] = {{"E_D", rel.decomp.E_D},
                 {"residual", rel.decomp.residual},
                 {"Wplus", rel.decomp.Wplus},
                 {"Khat", rel.decomp.Khat}};
  j["solver"] = {{"status", rel.status == LPStatus::Optimal ? "optimal"
                            : rel.status == LPStatus::MaxIterations ? "max_iterations"
                                                                    : "numerical_failure"},
                 {"iterations", rel.iterations},
                 {"res_primal", rel.res_primal},
                 {"res_dual", rel.res_dual},
                 {"res_gap", rel.res_gap}};
  return j;
}

ordered_json certificate_to_json(const CertificateReport& rep) {
  ordered_json j;
  j["alpha"] = rep.alpha;
  j["energy_candidate"] = rep.energy_candidate;
  j["E_R"] = rep.E_R;
  j["kl_residual"] = std::isfinite(rep.kl_residual) ? ordered_json(rep.kl_residual)
                                                    : ordered_json("inf");
  j["first_order"] = {{"mu", rep.first_order.mu},
                      {"max_on_support", rep.first_order.max_on_support},
                      {"min_off_support_slack", rep.first_order.min_off_support_slack}};
  j["prop_supp"] = {{"holds", rep.prop_supp.holds},
                    {"leaked_mass", rep.prop_supp.leaked_mass},
                    {"match_fraction", rep.prop_supp.match_fraction},
                    {"wplus_pairing", rep.prop_supp.wplus_pairing}};
  j["exactness"] = exactness_name(rep.exactness);
  return j;
}

ordered_json recovery_to_json(const RecoveryResult& rec) {
  ordered_json j;
  j["kl_final"] = rec.kl_final;
  j["iterations"] = rec.iterations;
  j["converged"] = rec.converged;
  j["seed"] = rec.seed;
  j["rho"] = rec.rho.values;
  return j;
}

}  // namespace pairint
