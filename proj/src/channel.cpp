#include "bmqc/channel.hpp"

namespace bmqc {

double KrausChannel::completeness_defect() const {
  MatXc acc = MatXc::Zero(spec.dim(), spec.dim());
  for (const MatXc& k : ops) acc += k.adjoint() * k;
  acc -= MatXc::Identity(spec.dim(), spec.dim());
  return acc.cwiseAbs().maxCoeff();
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho, const std::vector<int>& factors) const {
  MatXc out = MatXc::Zero(rho.mat.rows(), rho.mat.cols());
  for (const MatXc& k : ops) out += sandwich_on_factors(k, factors, rho.mat, rho.spec);
  return DensityMatrix(std::move(out), rho.spec);
}

}  // namespace bmqc
