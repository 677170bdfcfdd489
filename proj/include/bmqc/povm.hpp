#pragma once

#include "bmqc/branch.hpp"
#include "bmqc/cavity.hpp"
#include "bmqc/codes.hpp"

namespace bmqc {

/// Optimized ancilla for XY-plane projections: sqrt(2/5)(|0_L> +
/// sqrt(3/2) e^{-it} |1_L>), i.e. tan(theta) = sqrt(3/2).
struct AncillaSpec {
  double t = 0.0;
  StateVector state;

  static AncillaSpec ideal(double t, int cutoff = 6);
};

/// Projection target (|0_L> + e^{it} |1_L>)/sqrt(2) realized by the (2,2)
/// detection with the optimized ancilla.
StateVector xy_projector_state(double t, int cutoff = 6);

/// POVM vector for detecting (n_a, n_b) photons behind the beamsplitter with
/// a pure ancilla in mode a:
///   chi = <A_a| U^dag a^dag^{n_a} b^dag^{n_b} U |0,0> / sqrt(n_a! n_b!),
/// evaluated by explicit operator algebra on the photon-number sector that
/// the detection selects. Sub-normalized; its squared norm is the detection
/// weight. The returned vector lives on n_a + n_b + 1 Fock levels.
StateVector povm_element(const StateVector& ancilla, int n_a, int n_b);

/// Conditioned measurement operator on the monitored mode for a (possibly
/// mixed) ancilla: E = Tr_a[(rho_a (x) I) U^dag |n_a,n_b><n_a,n_b| U],
/// cropped to out_dim Fock levels. PSD with spectrum bounded by 1.
MatXc conditioned_operator(const MatXc& ancilla_rho, int n_a, int n_b, int out_dim);

struct PovmOutcome {
  BranchEnsemble post_state;   // measured vertex removed
  double success_prob = 0.0;   // probability of the (2,2) detection
  VecXd spectrum;              // eigenvalues of the conditioned operator (descending)
};

/// XY-plane measurement of one cluster vertex: the ancilla is prepared by the
/// two-iteration pipeline under `ancilla_model` (mixed when lossy), combined
/// with the vertex on a 50/50 beamsplitter, and both detectors read 2 photons.
PovmOutcome measure_xy(const BranchEnsemble& cluster, int vertex, double t,
                       const CavityModel& ancilla_model);

/// Same measurement with an explicitly supplied ancilla density matrix.
PovmOutcome measure_xy_with_ancilla(const BranchEnsemble& cluster, int vertex,
                                    const MatXc& ancilla_rho);

}  // namespace bmqc
