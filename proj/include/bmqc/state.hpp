#pragma once

#include <vector>

#include "bmqc/hilbert.hpp"
#include "bmqc/types.hpp"

namespace bmqc {

/// Pure state over a HilbertSpec. Sub-normalized amplitudes are allowed and
/// are used for conditional branches; norm() reports the current norm.
struct StateVector {
  VecXc amps;
  HilbertSpec spec;

  StateVector() = default;
  StateVector(VecXc a, HilbertSpec s);

  double norm() const { return amps.norm(); }
  StateVector normalized() const;

  static StateVector basis(const HilbertSpec& spec, long index);
  /// Fock basis state |n_1,...,n_k> (no atom factor).
  static StateVector fock(const HilbertSpec& spec, const std::vector<int>& occupation);
};

struct DensityMatrix {
  MatXc mat;
  HilbertSpec spec;

  DensityMatrix() = default;
  DensityMatrix(MatXc m, HilbertSpec s);

  double trace() const { return mat.trace().real(); }
  double hermiticity_defect() const;
  double min_eigenvalue() const;
  /// Throws if Hermiticity, trace or positivity tolerances are violated.
  void validate() const;
};

/// Matrix over a HilbertSpec (gates, observables, Kraus operators).
struct Operator {
  MatXc mat;
  HilbertSpec spec;

  Operator() = default;
  Operator(MatXc m, HilbertSpec s);

  Operator adjoint() const { return Operator(mat.adjoint(), spec); }
  static Operator identity(const HilbertSpec& spec);
};

DensityMatrix to_density(const StateVector& psi);

/// Kronecker product; first factor most significant. Works on any dense
/// complex expression, returns a vector when both inputs are vectors.
template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& lhs, const Eigen::MatrixBase<DB>& rhs) {
  constexpr int cols =
      DA::ColsAtCompileTime == 1 && DB::ColsAtCompileTime == 1 ? 1 : Eigen::Dynamic;
  const auto& a = lhs.derived();
  MatXc b = rhs.derived();
  Eigen::Matrix<cxd, Eigen::Dynamic, cols> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator tensor(const std::vector<Operator>& ops);
StateVector tensor(const std::vector<StateVector>& states);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Trace out all factors not listed in `keep` (factor indices; the atom, when
/// present, is factor num_modes()). The kept factors preserve their order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Uhlmann fidelity (tr sqrt(sqrt(r1) r2 sqrt(r1)))^2. Throws if an input is
/// not positive semidefinite within tolerance.
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);
double fidelity(const StateVector& psi, const DensityMatrix& rho);
double fidelity(const StateVector& a, const StateVector& b);

/// Apply `op`, defined on the listed factors (in the order given), to a full
/// state vector. Remaining factors are untouched.
VecXc apply_on_factors(const MatXc& op, const std::vector<int>& factors, const VecXc& v,
                       const HilbertSpec& spec);

/// rho -> (op on factors) rho (op on factors)^dagger.
MatXc sandwich_on_factors(const MatXc& op, const std::vector<int>& factors, const MatXc& rho,
                          const HilbertSpec& spec);

/// Embed an operator acting on the listed factors into the full space.
MatXc embed_on_factors(const MatXc& op, const std::vector<int>& factors, const HilbertSpec& spec);

/// Contract a bra vector against one factor of a state: the factor is removed
/// from the spec. Returns the (sub-normalized) reduced vector.
VecXc contract_factor(const VecXc& bra, int factor, const VecXc& v, const HilbertSpec& spec);

}  // namespace bmqc
