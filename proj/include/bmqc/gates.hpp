#pragma once

#include <array>

#include "bmqc/cavity.hpp"
#include "bmqc/codes.hpp"
#include "bmqc/state.hpp"

namespace bmqc {

inline constexpr int code_cutoff = 6;

/// CZ between two encoded modes via three atom reflections: CPF on both
/// modes, Hadamard on the atom, CPF on the first mode, a second rotation,
/// then an atomic measurement. Outcome s needs the feed-forward phase
/// exp(i pi n/2) on both modes; outcome g yields the gate directly.
struct CzBranch {
  DensityMatrix state;  // two light modes, atom measured out, feed-forward applied
  double probability = 0.0;
};

CzBranch cz_branch(const DensityMatrix& rho_two_modes, const CavityModel& model,
                   AtomMeasure outcome);

/// Deterministic gate: outcome average of the two corrected branches.
DensityMatrix cz_apply(const DensityMatrix& rho_two_modes, const CavityModel& model);

/// The 16 two-mode tomography inputs: projectors onto products of
/// {|0_L>, B(pi/4, 0), B(pi/4, pi/2), |1_L>}.
std::array<DensityMatrix, 16> tomography_inputs(int cutoff = code_cutoff);

/// Pauli transfer matrix of the gate in the two-qubit logical basis
/// {II, IX, IY, IZ, XI, ..., ZZ} (first qubit major).
struct ProcessMap {
  MatXd matrix = MatXd::Zero(16, 16);
  double delta = 0.0;  // max |matrix - ideal CZ transfer matrix|
  std::array<double, 16> leakage{};  // population outside the code subspace per input
};

ProcessMap process_map(const CavityModel& model);

/// Transfer matrix of the ideal CZ for reference.
MatXd ideal_cz_transfer();

/// Logical two-qubit Pauli sigma_k (k in 0..15) embedded on two modes.
Operator two_qubit_pauli(const BinomialCode& code, int k);

}  // namespace bmqc
