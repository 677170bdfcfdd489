#pragma once

#include <stdexcept>

#include "bmqc/state.hpp"
#include "bmqc/types.hpp"

namespace bmqc {

/// Thrown when a Gaussian-state constructor would lose more than the allowed
/// norm to Fock-space truncation at the requested cutoff.
struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MatXc annihilation_matrix(int dim);
MatXc number_matrix(int dim);

/// Diagonal phase operator exp(i phi n) on a single mode.
Operator number_phase(double phi, int cutoff);

/// Displacement exp(alpha a^dag - conj(alpha) a). Matrix elements are taken
/// from the untruncated operator (computed on a padded space, then cropped).
Operator displacement(cxd alpha, int cutoff);

/// Squeezing exp[(r/2)(a^2 - a^dag^2)]; r > 0 squeezes the position quadrature.
Operator squeezing(double r, int cutoff);

/// D(alpha) S(r) |0>, truncated to `cutoff` and renormalized. Displacement is
/// applied after squeezing. Throws truncation_error if the pre-truncation
/// norm loss at `cutoff` exceeds trunc_norm_tol.
StateVector displaced_squeezed_state(cxd alpha, double r, int cutoff);

/// Two-mode 50/50 beamsplitter exp[i pi/4 (a^dag b + a b^dag)], both modes at
/// the same cutoff. Unitary on photon-number sectors that fit below cutoff.
Operator beamsplitter(int cutoff);

}  // namespace bmqc
