#include "bmqc/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bmqc/fock.hpp"

namespace bmqc {

int ClusterGraph::index_of(int label) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), label);
  if (it == vertices.end() || *it != label)
    throw std::out_of_range("ClusterGraph: unknown vertex " + std::to_string(label));
  return static_cast<int>(it - vertices.begin());
}

std::vector<int> ClusterGraph::neighbors(int label) const {
  std::vector<int> out;
  for (auto [u, v] : edges) {
    if (u == label) out.push_back(v);
    if (v == label) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int ClusterGraph::star_center() const {
  if (num_vertices() < 2 || edges.size() + 1 != vertices.size()) return -1;
  for (int c : vertices) {
    if (static_cast<int>(neighbors(c).size()) != num_vertices() - 1) continue;
    bool ok = true;
    for (int v : vertices)
      if (v != c && neighbors(v) != std::vector<int>{c}) ok = false;
    if (ok) return c;
  }
  return -1;
}

void ClusterGraph::validate() const {
  if (vertices.empty()) throw std::invalid_argument("ClusterGraph: no vertices");
  if (num_vertices() > 5)
    throw std::invalid_argument("ClusterGraph: at most 5 vertices supported at default cutoffs");
  if (!std::is_sorted(vertices.begin(), vertices.end()))
    throw std::logic_error("ClusterGraph: vertex list must be sorted");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("ClusterGraph: self loop on " + std::to_string(u));
    index_of(u);
    index_of(v);
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second)
      throw std::invalid_argument("ClusterGraph: duplicate edge");
  }
  for (const auto& [label, angles] : substitutions) index_of(label);
}

ClusterGraph ClusterGraph::star(int leaves) {
  ClusterGraph g;
  g.vertices.push_back(1);
  for (int l = 0; l < leaves; ++l) {
    g.vertices.push_back(l + 2);
    g.edges.emplace_back(1, l + 2);
  }
  return g;
}

ClusterGraph ClusterGraph::chain(int n) {
  ClusterGraph g;
  for (int i = 1; i <= n; ++i) g.vertices.push_back(i);
  for (int i = 1; i < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

ClusterGraph ClusterGraph::parse(const std::string& text) {
  ClusterGraph g;
  std::set<int> labels;
  std::istringstream in(text);
  std::string line;
  bool in_subs = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "[substitutions]") {
      in_subs = true;
      continue;
    }
    if (in_subs) {
      int v = std::stoi(first);
      double theta, phi;
      if (!(ls >> theta >> phi))
        throw std::invalid_argument("ClusterGraph::parse: bad substitution on line " +
                                    std::to_string(lineno));
      g.substitutions[v] = {theta, phi};
      labels.insert(v);
    } else {
      int u = std::stoi(first);
      int v;
      if (!(ls >> v))
        throw std::invalid_argument("ClusterGraph::parse: bad edge on line " +
                                    std::to_string(lineno));
      g.edges.emplace_back(u, v);
      labels.insert(u);
      labels.insert(v);
    }
  }
  g.vertices.assign(labels.begin(), labels.end());
  g.validate();
  return g;
}

namespace {

StateVector vertex_state(const ClusterGraph& graph, int label, const BinomialCode& code) {
  auto it = graph.substitutions.find(label);
  if (it == graph.substitutions.end())
    return logical_state(code, pi / 4.0, 0.0).vector;  // |+>
  return logical_state(code, it->second.first, it->second.second).vector;
}

// Hadamard on the atomic qubit in the s=0 / g=1 dictionary used by the CPF.
MatXc atom_hadamard() {
  MatXc m(2, 2);
  double inv = 1.0 / std::sqrt(2.0);
  m << -inv, inv, inv, inv;  // basis order (g, s)
  return m;
}

void attach_atom(BranchEnsemble& st) {
  VecXc plus = atom_plus();
  for (VecXc& b : st.branches) b = kron(b, plus);
  st.spec = st.spec.with_atom();
}

// project the atom onto g/s and remove the factor
BranchEnsemble atom_outcome(const BranchEnsemble& st, bool g_outcome) {
  BranchEnsemble out = st;
  out.contract(g_outcome ? atom_g() : atom_s(), st.spec.atom_factor());
  return out;
}

// measured CZ gate between modes i and j, both outcomes kept, feed-forward
// folded into the s branch
void apply_cz_edge(BranchEnsemble& st, int i, int j, const CavityModel& model) {
  int d_i = st.spec.mode_dims[static_cast<size_t>(i)];
  int d_j = st.spec.mode_dims[static_cast<size_t>(j)];
  attach_atom(st);
  int atom = st.spec.atom_factor();
  KrausChannel chan_i = cpf_channel(model, d_i);
  KrausChannel chan_j = cpf_channel(model, d_j);

  st.apply_channel(chan_i, {i, atom});
  st.apply_channel(chan_j, {j, atom});
  st.apply_unitary(AtomicRotation::hadamard().matrix(), {atom});
  st.apply_channel(chan_i, {i, atom});
  st.apply_unitary(AtomicRotation{0.0, pi, pi / 4.0}.matrix(), {atom});

  BranchEnsemble g = atom_outcome(st, true);
  BranchEnsemble s = atom_outcome(st, false);
  s.apply_unitary(number_phase(pi / 2.0, d_i).mat, {i});
  s.apply_unitary(number_phase(pi / 2.0, d_j).mat, {j});

  st = std::move(g);
  st.branches.insert(st.branches.end(), s.branches.begin(), s.branches.end());
  st.prune();
}

// single-measurement star circuit: entangle the atom with the center, map the
// atom-center link onto the computational basis, fan out to the leaves, then
// transfer the atom qubit by one X-type measurement
void apply_star_circuit(BranchEnsemble& st, int center, const std::vector<int>& leaves,
                        const CavityModel& model) {
  attach_atom(st);
  int atom = st.spec.atom_factor();
  auto chan = [&](int mode) {
    return cpf_channel(model, st.spec.mode_dims[static_cast<size_t>(mode)]);
  };

  st.apply_channel(chan(center), {center, atom});
  st.apply_unitary(atom_hadamard(), {atom});
  for (int l : leaves) st.apply_channel(chan(l), {l, atom});
  st.apply_unitary(atom_hadamard(), {atom});

  BranchEnsemble s = atom_outcome(st, false);  // no correction branch
  BranchEnsemble g = atom_outcome(st, true);
  g.apply_unitary(number_phase(pi / 2.0, st.spec.mode_dims[static_cast<size_t>(center)]).mat,
                  {center});

  st = std::move(s);
  st.branches.insert(st.branches.end(), g.branches.begin(), g.branches.end());
  st.prune();
}

}  // namespace

BranchEnsemble build_cluster(const ClusterGraph& graph, const CavityModel& model,
                             ClusterStrategy strategy, int cutoff) {
  graph.validate();
  BinomialCode code = make_code(1, 1, cutoff);
  std::vector<StateVector> init;
  for (int label : graph.vertices) init.push_back(vertex_state(graph, label, code));
  BranchEnsemble st(tensor(init));

  CavityModel gate_model = model;
  gate_model.phi = pi / 2.0;

  switch (strategy) {
    case ClusterStrategy::PerEdge:
      for (auto [u, v] : graph.edges)
        apply_cz_edge(st, graph.index_of(u), graph.index_of(v), gate_model);
      break;
    case ClusterStrategy::StarOptimized: {
      int center = graph.star_center();
      if (center < 0)
        throw std::invalid_argument("build_cluster: star-optimized strategy needs a star graph");
      std::vector<int> leaves;
      for (int v : graph.vertices)
        if (v != center) leaves.push_back(graph.index_of(v));
      apply_star_circuit(st, graph.index_of(center), leaves, gate_model);
      break;
    }
  }
  return st;
}

BranchEnsemble ideal_cluster(const ClusterGraph& graph, int cutoff) {
  graph.validate();
  BinomialCode code = make_code(1, 1, cutoff);
  std::vector<StateVector> init;
  for (int label : graph.vertices) init.push_back(vertex_state(graph, label, code));
  BranchEnsemble st(tensor(init));

  MatXc z = logical_pauli(code, Pauli::Z).mat;
  MatXc p1 = code.logical_one.amps * code.logical_one.amps.adjoint();
  MatXc p0 = MatXc::Identity(cutoff, cutoff) - p1;
  MatXc cz = kron(p0, MatXc::Identity(cutoff, cutoff)) + kron(p1, z);
  for (auto [u, v] : graph.edges)
    st.apply_unitary(cz, {graph.index_of(u), graph.index_of(v)});
  return st;
}

std::vector<double> stabilizer_expectations(const BranchEnsemble& state,
                                            const ClusterGraph& graph) {
  int cutoff = state.spec.mode_dims.at(0);
  BinomialCode code = make_code(1, 1, cutoff);
  MatXc x = logical_pauli(code, Pauli::X).mat;
  MatXc z = logical_pauli(code, Pauli::Z).mat;

  // raw expectations: the logical Paulis vanish outside the code subspace,
  // so leaked population lowers <S_i> instead of being renormalized away
  double total = state.total_weight();
  if (total <= 0.0) throw std::runtime_error("stabilizer_expectations: empty state");

  std::vector<double> out;
  for (int label : graph.vertices) {
    double acc = 0.0;
    for (const VecXc& b : state.branches) {
      VecXc v = apply_on_factors(x, {graph.index_of(label)}, b, state.spec);
      for (int nb : graph.neighbors(label))
        v = apply_on_factors(z, {graph.index_of(nb)}, v, state.spec);
      acc += std::real(b.dot(v));
    }
    out.push_back(acc / total);
  }
  return out;
}

TeleportResult teleportation_test(const CavityModel& model) {
  const int cutoff = 6;
  BinomialCode code = make_code(1, 1, cutoff);
  ClusterGraph graph = ClusterGraph::star(4);
  const double in_theta = pi / 3.0, in_phi = -pi / 5.0;
  graph.substitutions[4] = {in_theta, in_phi};

  BranchEnsemble cluster = build_cluster(graph, model, ClusterStrategy::StarOptimized, cutoff);
  StateVector input = logical_state(code, in_theta, in_phi).vector;

  VecXc word0 = code.logical_zero.amps, word1 = code.logical_one.amps;
  auto xbra = [&](int m) -> VecXc {
    return (word0 + (m ? -1.0 : 1.0) * word1) / std::sqrt(2.0);
  };
  auto zbra = [&](int m) -> VecXc { return m ? word1 : word0; };

  MatXc xl = logical_pauli(code, Pauli::X).mat;
  MatXc pcode = code_projector(code).mat;
  // unitary extension of logical X: identity on the leakage complement
  MatXc xcorr = xl + MatXc::Identity(cutoff, cutoff) - pcode;
  MatXc zcorr = number_phase(pi / 2.0, cutoff).mat;

  double total_p = 0.0, acc = 0.0;
  TeleportResult res;
  for (int mask = 0; mask < 16; ++mask) {
    int z2 = (mask >> 0) & 1, z3 = (mask >> 1) & 1, m4 = (mask >> 2) & 1, m1 = (mask >> 3) & 1;
    BranchEnsemble br = cluster;
    // contract in descending index order so indices stay valid:
    // vertices (1,2,3,4,5) sit at indices (0,1,2,3,4); measure 4,3,2,1
    br.contract(xbra(m4), 3);   // input leaf, X basis
    br.contract(zbra(z3), 2);   // spectator leaf
    br.contract(zbra(z2), 1);   // spectator leaf
    br.contract(xbra(m1), 0);   // center, X basis
    double p = br.total_weight();
    if (p < 1e-16) continue;

    if ((m1 ^ z2 ^ z3) != 0) br.apply_unitary(xcorr, {0});
    if (m4 != 0) br.apply_unitary(zcorr, {0});

    double f = br.fidelity_to(input);
    res.branches.push_back(TeleportBranch{mask, p, f});
    total_p += p;
    acc += p * f;
  }
  if (total_p <= 0.0) throw std::runtime_error("teleportation_test: all branches vanished");
  res.fidelity = acc / total_p;
  return res;
}

}  // namespace bmqc
