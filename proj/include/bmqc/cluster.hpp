#pragma once

#include <map>
#include <string>
#include <vector>

#include "bmqc/branch.hpp"
#include "bmqc/cavity.hpp"
#include "bmqc/codes.hpp"

namespace bmqc {

/// Simple graph of encoded modes; edges are CZ links. Vertices default to
/// the logical |+> state unless a substitution assigns cos(theta)|0_L> +
/// e^{i phi} sin(theta)|1_L>.
struct ClusterGraph {
  std::vector<int> vertices;                        // sorted labels
  std::vector<std::pair<int, int>> edges;           // label pairs
  std::map<int, std::pair<double, double>> substitutions;  // label -> (theta, phi)

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int index_of(int label) const;
  std::vector<int> neighbors(int label) const;

  /// -1 if not a star, otherwise the center label.
  int star_center() const;

  void validate() const;  // simple graph, no self loops, at most 5 vertices

  static ClusterGraph star(int leaves);  // center label 1, leaves 2..leaves+1
  static ClusterGraph chain(int n);      // labels 1..n, consecutive edges

  /// Text format: one "u v" edge per line; optional "[substitutions]" header
  /// followed by "vertex theta phi" lines. '#' starts a comment.
  static ClusterGraph parse(const std::string& text);
};

enum class ClusterStrategy { PerEdge, StarOptimized };

/// Deterministic cluster generation. PerEdge runs the measured CZ gate per
/// edge; StarOptimized entangles one atom with every mode and uses a single
/// terminal measurement with one conditional feed-forward (star graphs only).
BranchEnsemble build_cluster(const ClusterGraph& graph, const CavityModel& model,
                             ClusterStrategy strategy, int cutoff = 6);

/// <S_i> for S_i = X_i prod_{j in N(i)} Z_j, one entry per vertex in label
/// order, normalized over the code-subspace population.
std::vector<double> stabilizer_expectations(const BranchEnsemble& state,
                                            const ClusterGraph& graph);

struct TeleportBranch {
  int outcome_mask = 0;  // bit per measured qubit
  double probability = 0.0;
  double fidelity = 0.0;
};

struct TeleportResult {
  double fidelity = 0.0;  // outcome-averaged
  std::vector<TeleportBranch> branches;
};

/// Five-mode star benchmark: leaf 4 carries B(pi/3, -pi/5); the two spectator
/// leaves are measured in Z, the input leaf and the center in X, and the
/// Pauli byproducts are corrected on leaf 5.
TeleportResult teleportation_test(const CavityModel& model);

/// Ideal (lossless) reference state of a graph, as a single pure branch.
BranchEnsemble ideal_cluster(const ClusterGraph& graph, int cutoff = 6);

}  // namespace bmqc
