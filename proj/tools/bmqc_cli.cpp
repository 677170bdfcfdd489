// Command-line harness: reproduces the reference tables and exposes the
// library to scripted experiments. Outputs are deterministic CSV/JSON files
// carrying the config hash and tolerance metadata in header comments.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmqc/cluster.hpp"
#include "bmqc/codes.hpp"
#include "bmqc/fock.hpp"
#include "bmqc/gates.hpp"
#include "bmqc/povm.hpp"
#include "bmqc/prep.hpp"

using namespace bmqc;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config_error = 1;
constexpr int exit_numerical_error = 2;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct RunContext {
  std::string command;
  std::map<std::string, std::string> options;
  int seed = 0;

  uint64_t config_hash() const {
    std::string canon = command + "\n";
    for (const auto& [k, v] : options) canon += k + "=" + v + "\n";
    canon += "seed=" + std::to_string(seed) + "\n";
    return fnv1a(canon);
  }

  void header(std::ostream& out) const {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash()));
    out << "# bmqc " << command << "\n";
    out << "# config-hash: " << hash << "\n";
    out << "# tolerances: herm=" << fmt(herm_tol) << " psd=" << fmt(psd_tol)
        << " prune=" << fmt(branch_prune_tol) << "\n";
    for (const auto& [k, v] : options) out << "# " << k << ": " << v << "\n";
  }
};

std::ofstream open_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

// ---------------------------------------------------------------------------

int run_prep(const std::vector<std::string>& targets, const std::vector<double>& betas,
             double alpha, double r, const std::string& output, int seed) {
  RunContext ctx{"prep",
                 {{"targets", join(targets)},
                  {"betas", join(betas)},
                  {"alpha", fmt(alpha)},
                  {"r", fmt(r)}},
                 seed};
  std::ofstream out = open_output(output);
  ctx.header(out);
  out << "name,beta,F1,F2,success_prob,alpha,r,beta_rot,zeta\n";
  for (const std::string& name : targets)
    for (double beta : betas) {
      PrepResult res = prepare(PrepTarget::by_name(name), CavityModel::of_amplitude(beta),
                               alpha, r);
      out << name << "," << fmt(beta) << "," << fmt(res.fidelity1) << "," << fmt(res.fidelity)
          << "," << fmt(res.success_prob) << "," << fmt(res.alpha) << "," << fmt(res.r) << ","
          << fmt(res.beta_rot) << "," << fmt(res.zeta) << "\n";
    }
  std::cout << "wrote " << output << "\n";
  return exit_ok;
}

int run_cz_tomo(double beta, const std::string& output_prefix, int seed) {
  RunContext ctx{"cz-tomo", {{"beta", fmt(beta)}}, seed};
  ProcessMap map = process_map(beta >= 1.0 ? CavityModel::lossless()
                                           : CavityModel::of_amplitude(beta));

  std::string csv_path = output_prefix + ".csv";
  std::ofstream out = open_output(csv_path);
  ctx.header(out);
  static const char* pauli_names[] = {"II", "IX", "IY", "IZ", "XI", "XX", "XY", "XZ",
                                      "YI", "YX", "YY", "YZ", "ZI", "ZX", "ZY", "ZZ"};
  out << "basis";
  for (const char* n : pauli_names) out << "," << n;
  out << "\n";
  for (int k = 0; k < 16; ++k) {
    out << pauli_names[k];
    for (int l = 0; l < 16; ++l) out << "," << fmt(map.matrix(k, l));
    out << "\n";
  }
  out << "# max|delta|: " << fmt(map.delta) << "\n";

  // state fidelity on the reference input pair
  BinomialCode code = make_code(1, 1, code_cutoff);
  StateVector psi1(std::cos(pi / 4.0) * code.logical_one.amps +
                       std::exp(imag_unit * (pi / 4.0)) * std::sin(pi / 4.0) *
                           code.logical_zero.amps,
                   code.logical_zero.spec);
  StateVector psi2(std::cos(pi / 3.0) * code.logical_one.amps +
                       std::exp(imag_unit * (pi / 5.0)) * std::sin(pi / 3.0) *
                           code.logical_zero.amps,
                   code.logical_zero.spec);
  StateVector in = tensor({psi1, psi2});
  MatXc z = logical_pauli(code, Pauli::Z).mat;
  MatXc p1 = code.logical_one.amps * code.logical_one.amps.adjoint();
  MatXc idm = MatXc::Identity(code_cutoff, code_cutoff);
  MatXc cz = kron(MatXc(idm - p1), idm) + kron(p1, z);
  StateVector want(cz * in.amps, in.spec);
  DensityMatrix got = cz_apply(to_density(in),
                               beta >= 1.0 ? CavityModel::lossless()
                                           : CavityModel::of_amplitude(beta));

  json summary = {{"beta", beta},
                  {"delta", map.delta},
                  {"fidelity_psi1_psi2", fidelity(want, got)}};
  std::ofstream js = open_output(output_prefix + ".json");
  js << summary.dump(2) << "\n";
  std::cout << "wrote " << csv_path << " and " << output_prefix << ".json (delta "
            << fmt(map.delta) << ")\n";
  return exit_ok;
}

ClusterGraph load_graph(const std::string& graph_file, const std::string& topology) {
  if (!graph_file.empty()) {
    std::ifstream in(graph_file);
    if (!in) throw CLI::ValidationError("--graph", "cannot read file '" + graph_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ClusterGraph::parse(ss.str());
  }
  if (topology == "star5") return ClusterGraph::star(4);
  if (topology == "chain3") return ClusterGraph::chain(3);
  if (topology == "chain2") return ClusterGraph::chain(2);
  throw CLI::ValidationError("--topology", "unknown topology '" + topology + "'");
}

int run_cluster(const std::string& graph_file, const std::string& topology,
                const std::string& strategy, const std::vector<double>& betas,
                const std::string& output, int seed) {
  RunContext ctx{"cluster",
                 {{"graph", graph_file.empty() ? topology : graph_file},
                  {"strategy", strategy},
                  {"betas", join(betas)}},
                 seed};
  ClusterGraph graph = load_graph(graph_file, topology);
  ClusterStrategy strat;
  if (strategy == "per-edge")
    strat = ClusterStrategy::PerEdge;
  else if (strategy == "star-optimized")
    strat = ClusterStrategy::StarOptimized;
  else
    throw CLI::ValidationError("--strategy", "expected per-edge or star-optimized");

  std::ofstream out = open_output(output);
  ctx.header(out);
  out << "beta,vertex,stabilizer\n";
  for (double beta : betas) {
    BranchEnsemble state = build_cluster(
        graph, beta >= 1.0 ? CavityModel::lossless() : CavityModel::of_amplitude(beta), strat);
    std::vector<double> s = stabilizer_expectations(state, graph);
    for (size_t i = 0; i < s.size(); ++i)
      out << fmt(beta) << "," << graph.vertices[i] << "," << fmt(s[i]) << "\n";
  }
  std::cout << "wrote " << output << "\n";
  return exit_ok;
}

int run_teleport(const std::vector<double>& betas, const std::string& output, int seed) {
  RunContext ctx{"teleport", {{"betas", join(betas)}}, seed};
  std::ofstream out = open_output(output);
  ctx.header(out);
  out << "beta,fidelity\n";
  for (double beta : betas) {
    TeleportResult res = teleportation_test(
        beta >= 1.0 ? CavityModel::lossless() : CavityModel::of_amplitude(beta));
    out << fmt(beta) << "," << fmt(res.fidelity) << "\n";
  }
  std::cout << "wrote " << output << "\n";
  return exit_ok;
}

int run_povm(const std::string& topology, double t, int vertex,
             const std::vector<double>& betas, const std::string& output, int seed) {
  RunContext ctx{"povm",
                 {{"topology", topology}, {"t", fmt(t)}, {"vertex", std::to_string(vertex)},
                  {"betas", join(betas)}},
                 seed};
  ClusterGraph graph = load_graph("", topology);
  BranchEnsemble cluster = ideal_cluster(graph);
  if (vertex < 0 || vertex >= graph.num_vertices())
    throw CLI::ValidationError("--vertex", "vertex index out of range");

  BranchEnsemble projected = cluster;
  projected.contract(xy_projector_state(t).amps, vertex);
  StateVector reference(projected.branches[0] / projected.branches[0].norm(), projected.spec);

  std::ofstream out = open_output(output);
  ctx.header(out);
  out << "topology,beta,t,vertex,fidelity,success_prob\n";
  for (double beta : betas) {
    PovmOutcome o = measure_xy(cluster, vertex, t,
                               beta >= 1.0 ? CavityModel::lossless()
                                           : CavityModel::of_amplitude(beta));
    out << topology << "," << fmt(beta) << "," << fmt(t) << "," << vertex << ","
        << fmt(o.post_state.fidelity_to(reference)) << "," << fmt(o.success_prob) << "\n";
  }
  std::cout << "wrote " << output << "\n";
  return exit_ok;
}

int run_kl_check(const std::string& code_name, const std::string& error_set,
                 const std::string& output, int seed) {
  RunContext ctx{"kl-check", {{"code", code_name}, {"errors", error_set}}, seed};
  BinomialCode code;
  if (code_name == "N1S1")
    code = make_code(1, 1, 8);
  else if (code_name == "N2S1")
    code = make_code(2, 1, 10);
  else if (code_name == "N1S0")
    code = make_code(1, 0, 6);
  else
    throw CLI::ValidationError("--code", "expected N1S1, N2S1 or N1S0");

  int d = code.cutoff;
  std::vector<MatXc> errors;
  std::vector<std::string> names;
  std::istringstream ss(error_set);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    names.push_back(tok);
    if (tok == "I")
      errors.push_back(MatXc::Identity(d, d));
    else if (tok == "a")
      errors.push_back(annihilation_matrix(d));
    else if (tok == "a2")
      errors.push_back(MatXc(annihilation_matrix(d) * annihilation_matrix(d)));
    else if (tok == "adag")
      errors.push_back(MatXc(annihilation_matrix(d).adjoint()));
    else if (tok == "n")
      errors.push_back(number_matrix(d));
    else
      throw CLI::ValidationError("--errors", "unknown error operator '" + tok + "'");
  }
  KlReport rep = kl_check(code, errors);

  std::ofstream out = open_output(output);
  ctx.header(out);
  out << "k,l,cross,diag_gap,alpha_re,alpha_im\n";
  for (int k = 0; k < static_cast<int>(errors.size()); ++k)
    for (int l = 0; l < static_cast<int>(errors.size()); ++l)
      out << names[static_cast<size_t>(k)] << "," << names[static_cast<size_t>(l)] << ","
          << fmt(rep.cross(k, l)) << "," << fmt(rep.diag_gap(k, l)) << ","
          << fmt(rep.alpha(k, l).real()) << "," << fmt(rep.alpha(k, l).imag()) << "\n";
  out << "# max-residual: " << fmt(rep.max_residual()) << "\n";
  std::cout << "wrote " << output << " (max residual " << fmt(rep.max_residual()) << ")\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binomial-code MBQC toolkit"};
  app.require_subcommand(1);
  app.set_config("--config")->description("flat key=value config file; flags override");

  int seed = 0;
  app.add_option("--seed", seed, "recorded in output metadata")->capture_default_str();

  // prep
  auto* prep = app.add_subcommand("prep", "conditional state preparation table");
  std::vector<std::string> targets = {"plus", "t1", "t2", "h", "ancilla"};
  std::vector<double> prep_betas = {0.99, 0.999};
  double alpha = default_input_alpha, r = default_input_r;
  std::string prep_out = "prep.csv";
  prep->add_option("--targets", targets, "plus,t1,t2,h,ancilla")->delimiter(',');
  prep->add_option("--betas", prep_betas, "cavity efficiencies")->delimiter(',');
  prep->add_option("--alpha", alpha, "input displacement");
  prep->add_option("--r", r, "input squeezing");
  prep->add_option("--output,-o", prep_out, "CSV path");

  // cz-tomo
  auto* tomo = app.add_subcommand("cz-tomo", "CZ process tomography");
  double tomo_beta = 0.999;
  std::string tomo_out = "cz_tomo";
  tomo->add_option("--beta", tomo_beta, "cavity efficiency");
  tomo->add_option("--output,-o", tomo_out, "output prefix (.csv and .json)");

  // cluster
  auto* cluster = app.add_subcommand("cluster", "cluster generation diagnostics");
  std::string graph_file, topology = "star5", strategy = "star-optimized";
  std::vector<double> cluster_betas = {1.0, 0.999, 0.99};
  std::string cluster_out = "cluster.csv";
  cluster->add_option("--graph", graph_file, "edge-list file");
  cluster->add_option("--topology", topology, "star5|chain3|chain2");
  cluster->add_option("--strategy", strategy, "per-edge|star-optimized");
  cluster->add_option("--betas", cluster_betas, "cavity efficiencies")->delimiter(',');
  cluster->add_option("--output,-o", cluster_out, "CSV path");

  // teleport
  auto* teleport = app.add_subcommand("teleport", "star-cluster teleportation benchmark");
  std::vector<double> tele_betas = {0.999, 0.99};
  std::string tele_out = "teleport.csv";
  teleport->add_option("--betas", tele_betas, "cavity efficiencies")->delimiter(',');
  teleport->add_option("--output,-o", tele_out, "CSV path");

  // povm
  auto* povm = app.add_subcommand("povm", "XY-plane measurement benchmark");
  std::string povm_topology = "chain3";
  double povm_t = pi / 3.0;
  int povm_vertex = 1;
  std::vector<double> povm_betas = {0.99, 0.999};
  std::string povm_out = "povm.csv";
  povm->add_option("--topology", povm_topology, "star5|chain3");
  povm->add_option("--t", povm_t, "projection angle");
  povm->add_option("--vertex", povm_vertex, "measured vertex index");
  povm->add_option("--betas", povm_betas, "ancilla cavity efficiencies")->delimiter(',');
  povm->add_option("--output,-o", povm_out, "CSV path");

  // kl-check
  auto* kl = app.add_subcommand("kl-check", "Knill-Laflamme residuals");
  std::string kl_code = "N1S1", kl_errors = "I,a";
  std::string kl_out = "kl_check.csv";
  kl->add_option("--code", kl_code, "N1S1|N2S1|N1S0");
  kl->add_option("--errors", kl_errors, "comma list: I,a,a2,adag,n");
  kl->add_option("--output,-o", kl_out, "CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_config_error;
  }

  try {
    if (prep->parsed()) return run_prep(targets, prep_betas, alpha, r, prep_out, seed);
    if (tomo->parsed()) return run_cz_tomo(tomo_beta, tomo_out, seed);
    if (cluster->parsed())
      return run_cluster(graph_file, topology, strategy, cluster_betas, cluster_out, seed);
    if (teleport->parsed()) return run_teleport(tele_betas, tele_out, seed);
    if (povm->parsed())
      return run_povm(povm_topology, povm_t, povm_vertex, povm_betas, povm_out, seed);
    if (kl->parsed()) return run_kl_check(kl_code, kl_errors, kl_out, seed);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return exit_numerical_error;
  }
  return exit_config_error;
}
