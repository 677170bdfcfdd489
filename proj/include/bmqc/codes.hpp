#pragma once

#include <vector>

#include "bmqc/state.hpp"
#include "bmqc/types.hpp"

namespace bmqc {

/// Binomial code of order N and spacing S on a single truncated mode. The
/// logical words are binomial-weighted superpositions of Fock states at
/// multiples of S+1; even multiples build logical zero, odd ones logical one.
struct BinomialCode {
  int order = 1;    // N
  int spacing = 1;  // S
  int cutoff = 6;
  StateVector logical_zero;
  StateVector logical_one;
};

BinomialCode make_code(int order, int spacing, int cutoff);

/// Two-mode code correcting dephasing alongside single photon loss:
/// zero = (|04> + |40>)/sqrt(2), one = |22>.
struct TwoModeCode {
  StateVector logical_zero;
  StateVector logical_one;
};

TwoModeCode make_two_mode_dephasing_code(int cutoff);

enum class Pauli { X, Y, Z };

/// Logical Pauli in the code basis, zero outside the code subspace.
Operator logical_pauli(const BinomialCode& code, Pauli which);

/// Projector onto span{logical_zero, logical_one}.
Operator code_projector(const BinomialCode& code);

/// cos(theta) |0_L> + e^{i phi} sin(theta) |1_L>.
struct LogicalState {
  double theta = 0.0;
  double phi = 0.0;
  StateVector vector;
};

LogicalState logical_state(const BinomialCode& code, double theta, double phi);

/// Knill-Laflamme check for an error set. For every operator pair (k, l) the
/// report holds the logical-diagonal matrix element alpha_kl together with the
/// residuals that must vanish for the code to be correctable:
///   cross(k,l)    = |<0| E_k^dag E_l |1>|
///   diag_gap(k,l) = |<0| E_k^dag E_l |0> - <1| E_k^dag E_l |1>|
struct KlReport {
  MatXc alpha;
  MatXd cross;
  MatXd diag_gap;

  double max_residual() const {
    double c = cross.size() ? cross.maxCoeff() : 0.0;
    double d = diag_gap.size() ? diag_gap.maxCoeff() : 0.0;
    return std::max(c, d);
  }
  bool passes(double tol = 1e-10) const { return max_residual() < tol; }
};

KlReport kl_check(const BinomialCode& code, const std::vector<MatXc>& errors);

}  // namespace bmqc
