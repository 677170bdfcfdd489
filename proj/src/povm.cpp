#include "bmqc/povm.hpp"

#include <cmath>
#include <stdexcept>

#include "bmqc/fock.hpp"
#include "bmqc/prep.hpp"

namespace bmqc {

AncillaSpec AncillaSpec::ideal(double t, int cutoff) {
  BinomialCode code = make_code(1, 1, cutoff);
  return AncillaSpec{t, logical_state(code, std::atan(std::sqrt(1.5)), -t).vector};
}

StateVector xy_projector_state(double t, int cutoff) {
  BinomialCode code = make_code(1, 1, cutoff);
  return logical_state(code, pi / 4.0, t).vector;
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

StateVector povm_element(const StateVector& ancilla, int n_a, int n_b) {
  if (n_a < 0 || n_b < 0) throw std::invalid_argument("povm_element: negative photon count");
  const int total = n_a + n_b;
  const int dw = total + 1;  // the detection selects the total-photon sector
  if (ancilla.spec.num_modes() != 1 || ancilla.spec.atom_present)
    throw std::invalid_argument("povm_element: ancilla must be a single mode");

  HilbertSpec two = HilbertSpec::modes(2, dw);
  MatXc u = beamsplitter(dw).mat;
  MatXc adag = annihilation_matrix(dw).adjoint();
  MatXc raise_a = kron(adag, MatXc::Identity(dw, dw));
  MatXc raise_b = kron(MatXc::Identity(dw, dw), adag);

  VecXc v = StateVector::fock(two, {0, 0}).amps;  // U |0,0> = |0,0>
  for (int k = 0; k < n_a; ++k) v = raise_a * v;
  for (int k = 0; k < n_b; ++k) v = raise_b * v;
  v = u.adjoint() * v;

  VecXc bra = VecXc::Zero(dw);
  for (int m = 0; m < std::min<long>(dw, ancilla.amps.size()); ++m) bra[m] = ancilla.amps[m];
  VecXc chi = contract_factor(bra, 0, v, two) / std::sqrt(factorial(n_a) * factorial(n_b));
  return StateVector(chi, HilbertSpec::single_mode(dw));
}

MatXc conditioned_operator(const MatXc& ancilla_rho, int n_a, int n_b, int out_dim) {
  if (ancilla_rho.rows() != ancilla_rho.cols())
    throw std::invalid_argument("conditioned_operator: ancilla matrix must be square");
  const int dw = n_a + n_b + 1;

  Eigen::SelfAdjointEigenSolver<MatXc> es((ancilla_rho + ancilla_rho.adjoint()) / 2.0);
  MatXc e = MatXc::Zero(dw, dw);
  HilbertSpec anc_spec = HilbertSpec::single_mode(static_cast<int>(ancilla_rho.rows()));
  for (long m = 0; m < es.eigenvalues().size(); ++m) {
    double p = es.eigenvalues()[m];
    if (p < 1e-14) continue;
    StateVector phi(es.eigenvectors().col(m), anc_spec);
    VecXc chi = povm_element(phi, n_a, n_b).amps;
    e += p * chi * chi.adjoint();
  }

  MatXc out = MatXc::Zero(out_dim, out_dim);
  int copy = std::min(out_dim, dw);
  out.topLeftCorner(copy, copy) = e.topLeftCorner(copy, copy);
  return out;
}

PovmOutcome measure_xy(const BranchEnsemble& cluster, int vertex, double t,
                       const CavityModel& ancilla_model) {
  // ancilla from the preparation pipeline; mixed when the cavity is lossy
  PrepResult anc = prepare(PrepTarget::ancilla(t), ancilla_model);
  return measure_xy_with_ancilla(cluster, vertex, anc.state.mat);
}

PovmOutcome measure_xy_with_ancilla(const BranchEnsemble& cluster, int vertex,
                                    const MatXc& ancilla_rho) {
  if (vertex < 0 || vertex >= cluster.spec.num_modes())
    throw std::out_of_range("measure_xy: vertex index");
  int d = cluster.spec.mode_dims[static_cast<size_t>(vertex)];

  MatXc e = conditioned_operator(ancilla_rho, 2, 2, d);
  Eigen::SelfAdjointEigenSolver<MatXc> es((e + e.adjoint()) / 2.0);

  PovmOutcome out;
  out.spectrum = es.eigenvalues().reverse();
  double before = cluster.total_weight();
  out.post_state.spec = cluster.spec.without_mode(vertex);
  for (long a = es.eigenvalues().size() - 1; a >= 0; --a) {
    double lambda = es.eigenvalues()[a];
    if (lambda < 1e-14) continue;
    VecXc chi = es.eigenvectors().col(a);
    for (const VecXc& b : cluster.branches) {
      VecXc nb = std::sqrt(lambda) * contract_factor(chi, vertex, b, cluster.spec);
      if (nb.squaredNorm() > 0.0) out.post_state.branches.push_back(std::move(nb));
    }
  }
  if (out.post_state.branches.empty())
    throw std::runtime_error("measure_xy: zero-probability outcome");
  out.success_prob = out.post_state.total_weight() / before;
  return out;
}

}  // namespace bmqc
