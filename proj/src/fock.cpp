#include "bmqc/fock.hpp"

#include <cmath>

namespace bmqc {

MatXc annihilation_matrix(int dim) {
  MatXc a = MatXc::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

MatXc number_matrix(int dim) {
  MatXc n = MatXc::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Operator number_phase(double phi, int cutoff) {
  MatXc m = MatXc::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) m(n, n) = std::exp(imag_unit * (phi * n));
  return Operator(std::move(m), HilbertSpec::single_mode(cutoff));
}

namespace {

// exp(A) for anti-Hermitian A via the eigendecomposition of -iA.
MatXc exp_antihermitian(const MatXc& a) {
  MatXc h = -imag_unit * a;
  Eigen::SelfAdjointEigenSolver<MatXc> es((h + h.adjoint()) / 2.0);
  VecXc phases(es.eigenvalues().size());
  for (long i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(imag_unit * es.eigenvalues()[i]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

int padded_dim(int cutoff) { return std::max(2 * cutoff + 16, 64); }

MatXc displacement_padded(cxd alpha, int dim) {
  MatXc a = annihilation_matrix(dim);
  return exp_antihermitian(alpha * a.adjoint() - std::conj(alpha) * a);
}

MatXc squeezing_padded(double r, int dim) {
  MatXc a = annihilation_matrix(dim);
  MatXc a2 = a * a;
  return exp_antihermitian(0.5 * r * (a2 - a2.adjoint()));
}

}  // namespace

Operator displacement(cxd alpha, int cutoff) {
  int pad = padded_dim(cutoff);
  MatXc d = displacement_padded(alpha, pad);
  return Operator(d.topLeftCorner(cutoff, cutoff), HilbertSpec::single_mode(cutoff));
}

Operator squeezing(double r, int cutoff) {
  int pad = padded_dim(cutoff);
  MatXc s = squeezing_padded(r, pad);
  return Operator(s.topLeftCorner(cutoff, cutoff), HilbertSpec::single_mode(cutoff));
}

StateVector displaced_squeezed_state(cxd alpha, double r, int cutoff) {
  if (cutoff < 8) throw std::invalid_argument("displaced_squeezed_state: cutoff must be >= 8");
  if (std::abs(alpha) > 3.0)
    throw std::invalid_argument("displaced_squeezed_state: |alpha| must be <= 3");
  if (std::abs(r) > 1.5) throw std::invalid_argument("displaced_squeezed_state: |r| must be <= 1.5");

  int pad = padded_dim(cutoff);
  MatXc d = displacement_padded(alpha, pad);
  MatXc s = squeezing_padded(r, pad);
  VecXc full = d * s.col(0);  // D S |0>

  double kept = full.head(cutoff).squaredNorm();
  double deficit = 1.0 - kept;
  if (deficit > trunc_norm_tol)
    throw truncation_error("displaced_squeezed_state: truncated norm deficit " +
                           std::to_string(deficit) + " exceeds tolerance at cutoff " +
                           std::to_string(cutoff));

  VecXc amps = full.head(cutoff) / std::sqrt(kept);
  return StateVector(std::move(amps), HilbertSpec::single_mode(cutoff));
}

Operator beamsplitter(int cutoff) {
  HilbertSpec spec = HilbertSpec::modes(2, cutoff);
  MatXc a = kron(annihilation_matrix(cutoff), MatXc::Identity(cutoff, cutoff));
  MatXc b = kron(MatXc::Identity(cutoff, cutoff), annihilation_matrix(cutoff));
  MatXc g = a.adjoint() * b + a * b.adjoint();
  return Operator(exp_antihermitian(imag_unit * (pi / 4.0) * g), spec);
}

}  // namespace bmqc
