#pragma once

#include <functional>
#include <vector>

#include "bmqc/channel.hpp"
#include "bmqc/state.hpp"
#include "bmqc/types.hpp"

namespace bmqc {

/// Exact pure-state simulation for systems too large for dense density
/// matrices: the state is a weighted ensemble of sub-normalized vectors, one
/// per (Kraus index, measurement outcome) history. Branch weights are the
/// squared norms; branches below a relative weight threshold are dropped.
struct BranchEnsemble {
  HilbertSpec spec;
  std::vector<VecXc> branches;

  BranchEnsemble() = default;
  explicit BranchEnsemble(const StateVector& psi) : spec(psi.spec), branches{psi.amps} {}

  double total_weight() const;

  void apply_unitary(const MatXc& op, const std::vector<int>& factors);

  /// Splits every branch over the channel's Kraus operators.
  void apply_channel(const KrausChannel& chan, const std::vector<int>& factors,
                     double prune = branch_prune_tol);

  /// Keep only the component of each branch in the range of `proj` (weights
  /// become conditional). Returns the probability of the kept outcome.
  double project(const MatXc& proj, const std::vector<int>& factors);

  /// sum_b <psi_b| op |psi_b> / total weight, with `op` on the given factors.
  double expectation(const MatXc& op, const std::vector<int>& factors) const;

  /// Contract a bra against one factor; the factor disappears from the spec.
  void contract(const VecXc& bra, int factor);

  void prune(double tol = branch_prune_tol);

  /// Dense density matrix (feasible only for small specs).
  DensityMatrix to_density() const;

  /// <phi| rho |phi> / tr rho for a pure reference state.
  double fidelity_to(const StateVector& phi) const;
};

}  // namespace bmqc
