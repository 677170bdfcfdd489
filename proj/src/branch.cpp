#include "bmqc/branch.hpp"

#include <cmath>
#include <stdexcept>

namespace bmqc {

double BranchEnsemble::total_weight() const {
  double w = 0.0;
  for (const VecXc& b : branches) w += b.squaredNorm();
  return w;
}

void BranchEnsemble::apply_unitary(const MatXc& op, const std::vector<int>& factors) {
  for (VecXc& b : branches) b = apply_on_factors(op, factors, b, spec);
}

void BranchEnsemble::apply_channel(const KrausChannel& chan, const std::vector<int>& factors,
                                   double prune_tol) {
  double total = total_weight();
  std::vector<VecXc> next;
  next.reserve(branches.size() * 2);
  for (const VecXc& b : branches)
    for (const MatXc& k : chan.ops) {
      VecXc nb = apply_on_factors(k, factors, b, spec);
      if (nb.squaredNorm() >= prune_tol * total) next.push_back(std::move(nb));
    }
  branches = std::move(next);
}

double BranchEnsemble::project(const MatXc& proj, const std::vector<int>& factors) {
  double before = total_weight();
  if (before <= 0.0) throw std::runtime_error("BranchEnsemble::project: empty ensemble");
  std::vector<VecXc> next;
  next.reserve(branches.size());
  for (const VecXc& b : branches) {
    VecXc nb = apply_on_factors(proj, factors, b, spec);
    if (nb.squaredNorm() > 0.0) next.push_back(std::move(nb));
  }
  branches = std::move(next);
  return total_weight() / before;
}

double BranchEnsemble::expectation(const MatXc& op, const std::vector<int>& factors) const {
  double total = total_weight();
  if (total <= 0.0) throw std::runtime_error("BranchEnsemble::expectation: empty ensemble");
  cxd acc = 0.0;
  for (const VecXc& b : branches) acc += b.dot(apply_on_factors(op, factors, b, spec));
  return std::real(acc) / total;
}

void BranchEnsemble::contract(const VecXc& bra, int factor) {
  std::vector<VecXc> next;
  next.reserve(branches.size());
  for (const VecXc& b : branches) next.push_back(contract_factor(bra, factor, b, spec));
  branches = std::move(next);
  spec = factor == spec.num_modes() ? spec.without_atom() : spec.without_mode(factor);
}

void BranchEnsemble::prune(double tol) {
  double total = total_weight();
  std::vector<VecXc> next;
  next.reserve(branches.size());
  for (VecXc& b : branches)
    if (b.squaredNorm() >= tol * total) next.push_back(std::move(b));
  branches = std::move(next);
}

DensityMatrix BranchEnsemble::to_density() const {
  MatXc rho = MatXc::Zero(spec.dim(), spec.dim());
  for (const VecXc& b : branches) rho += b * b.adjoint();
  return DensityMatrix(std::move(rho), spec);
}

double BranchEnsemble::fidelity_to(const StateVector& phi) const {
  if (phi.spec != spec) throw std::invalid_argument("BranchEnsemble::fidelity_to: spec mismatch");
  double total = total_weight();
  if (total <= 0.0) throw std::runtime_error("BranchEnsemble::fidelity_to: empty ensemble");
  double acc = 0.0;
  for (const VecXc& b : branches) acc += std::norm(phi.amps.dot(b));
  return acc / total;
}

}  // namespace bmqc
