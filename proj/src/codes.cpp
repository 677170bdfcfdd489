#include "bmqc/codes.hpp"

#include <cmath>
#include <stdexcept>

namespace bmqc {

namespace {

double binom(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v *= static_cast<double>(n - k + i) / i;
  return v;
}

}  // namespace

BinomialCode make_code(int order, int spacing, int cutoff) {
  if (order < 1 || spacing < 0) throw std::invalid_argument("make_code: need order >= 1, spacing >= 0");
  if ((order + 1) * (spacing + 1) >= cutoff)
    throw std::invalid_argument("make_code: cutoff too small, need (N+1)(S+1) < cutoff");

  HilbertSpec spec = HilbertSpec::single_mode(cutoff);
  VecXc zero = VecXc::Zero(cutoff), one = VecXc::Zero(cutoff);
  double norm = std::pow(2.0, -0.5 * order);
  for (int p = 0; p <= order + 1; ++p) {
    double amp = norm * std::sqrt(binom(order + 1, p));
    int level = p * (spacing + 1);
    (p % 2 == 0 ? zero : one)[level] = amp;
  }
  BinomialCode code;
  code.order = order;
  code.spacing = spacing;
  code.cutoff = cutoff;
  code.logical_zero = StateVector(std::move(zero), spec);
  code.logical_one = StateVector(std::move(one), spec);
  return code;
}

TwoModeCode make_two_mode_dephasing_code(int cutoff) {
  if (cutoff < 5) throw std::invalid_argument("make_two_mode_dephasing_code: cutoff must be >= 5");
  HilbertSpec spec = HilbertSpec::modes(2, cutoff);
  VecXc zero = VecXc::Zero(spec.dim()), one = VecXc::Zero(spec.dim());
  auto idx = [&](int na, int nb) { return na * cutoff + nb; };
  zero[idx(0, 4)] = 1.0 / std::sqrt(2.0);
  zero[idx(4, 0)] = 1.0 / std::sqrt(2.0);
  one[idx(2, 2)] = 1.0;
  return TwoModeCode{StateVector(std::move(zero), spec), StateVector(std::move(one), spec)};
}

Operator logical_pauli(const BinomialCode& code, Pauli which) {
  const VecXc& z = code.logical_zero.amps;
  const VecXc& o = code.logical_one.amps;
  MatXc m;
  switch (which) {
    case Pauli::X:
      m = z * o.adjoint() + o * z.adjoint();
      break;
    case Pauli::Z:
      m = z * z.adjoint() - o * o.adjoint();
      break;
    case Pauli::Y: {
      // Y = i X Z, the standard Pauli algebra completion.
      MatXc x = z * o.adjoint() + o * z.adjoint();
      MatXc zz = z * z.adjoint() - o * o.adjoint();
      m = imag_unit * x * zz;
      break;
    }
  }
  return Operator(std::move(m), code.logical_zero.spec);
}

Operator code_projector(const BinomialCode& code) {
  const VecXc& z = code.logical_zero.amps;
  const VecXc& o = code.logical_one.amps;
  return Operator(z * z.adjoint() + o * o.adjoint(), code.logical_zero.spec);
}

LogicalState logical_state(const BinomialCode& code, double theta, double phi) {
  VecXc v = std::cos(theta) * code.logical_zero.amps +
            std::exp(imag_unit * phi) * std::sin(theta) * code.logical_one.amps;
  return LogicalState{theta, phi, StateVector(std::move(v), code.logical_zero.spec)};
}

KlReport kl_check(const BinomialCode& code, const std::vector<MatXc>& errors) {
  const int n = static_cast<int>(errors.size());
  const long d = code.logical_zero.spec.dim();
  for (const MatXc& e : errors)
    if (e.rows() != d || e.cols() != d)
      throw std::invalid_argument("kl_check: error operator dimension mismatch");

  const VecXc& w0 = code.logical_zero.amps;
  const VecXc& w1 = code.logical_one.amps;
  KlReport rep;
  rep.alpha.resize(n, n);
  rep.cross.resize(n, n);
  rep.diag_gap.resize(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      MatXc ekl = errors[static_cast<size_t>(k)].adjoint() * errors[static_cast<size_t>(l)];
      cxd m01 = w0.dot(ekl * w1);
      cxd m00 = w0.dot(ekl * w0);
      cxd m11 = w1.dot(ekl * w1);
      rep.alpha(k, l) = 0.5 * (m00 + m11);
      rep.cross(k, l) = std::abs(m01);
      rep.diag_gap(k, l) = std::abs(m00 - m11);
    }
  return rep;
}

}  // namespace bmqc
