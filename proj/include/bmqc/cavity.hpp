#pragma once

#include <utility>

#include "bmqc/channel.hpp"
#include "bmqc/state.hpp"
#include "bmqc/types.hpp"

namespace bmqc {

enum class LossVariant { UniformEfficiency, InputOutput };

/// Atom-cavity reflection model. UniformEfficiency attenuates both atomic
/// branches by sqrt(beta_eff) and imprints the phase phi on the coupled
/// branch; InputOutput derives both reflection amplitudes from the one-sided
/// cavity response with kappa = gamma = 1, kappa_c = beta_eff, g^2 = C.
struct CavityModel {
  double cooperativity = 1000.0;
  double beta_eff = 1.0;
  double phi = pi / 2.0;
  LossVariant variant = LossVariant::UniformEfficiency;
  double detuning = 0.0;

  static CavityModel uniform(double beta, double phi_val = pi / 2.0) {
    CavityModel m;
    m.beta_eff = beta;
    m.phi = phi_val;
    return m;
  }
  static CavityModel lossless(double phi_val = pi / 2.0) { return uniform(1.0, phi_val); }

  /// Calibrated mapping for reproducing the reference fidelity tables: the
  /// quoted cavity efficiency acts as the per-photon reflection amplitude,
  /// so |r| = beta and the survival probability is beta^2.
  static CavityModel of_amplitude(double beta, double phi_val = pi / 2.0) {
    return uniform(beta * beta, phi_val);
  }
};

/// (r_g, r_s): per-photon reflection amplitudes for the coupled and uncoupled
/// atomic state.
std::pair<cxd, cxd> reflection_amplitudes(const CavityModel& model);

/// Euler-angle atomic rotation
///   [ e^{i mu} cos z    e^{i beta} sin z ]
///   [ -e^{-i beta} sin z  e^{-i mu} cos z ]
/// in the (g, s) basis.
struct AtomicRotation {
  double mu = 0.0;
  double beta = 0.0;
  double zeta = 0.0;

  MatXc matrix() const;
  static AtomicRotation hadamard() { return {pi / 2.0, pi / 2.0, pi / 4.0}; }
  static AtomicRotation identity() { return {0.0, 0.0, 0.0}; }
  static AtomicRotation of(double beta, double zeta) { return {0.0, beta, zeta}; }
};

// Atomic basis vectors; index 0 is |g>, index 1 is |s>.
VecXc atom_g();
VecXc atom_s();
VecXc atom_plus();  // (|g> + |s>)/sqrt(2)

/// Lossy controlled-phase-flip channel on one mode and the atom. Kraus index
/// j counts lost photons:
///   K_j = A_j^(g) (x) |g><g| + A_j^(s) (x) |s><s|,
///   A_j^(m) = sum_{n>=j} sqrt(C(n,j)) r_m^{n-j} (sqrt(1-|r_m|^2))^j |n-j><n|.
KrausChannel cpf_channel(const CavityModel& model, int cutoff);

enum class AtomMeasure { G, S, None };

struct IterationResult {
  DensityMatrix state;   // on the same (mode..., atom) spec; atom collapsed if measured
  double probability;    // success probability of the requested outcome (1 if unmeasured)
};

/// One atom-cavity iteration on a state carrying the atom as last factor:
/// CPF channel on (mode, atom), rotation on the atom, optional projective
/// atom measurement with renormalization.
IterationResult iterate(const DensityMatrix& rho, const CavityModel& model,
                        const AtomicRotation& rotation, AtomMeasure outcome, int mode = 0);

struct ZMeasurementResult {
  DensityMatrix post_g;
  DensityMatrix post_s;
  double p_g = 0.0;
  double p_s = 0.0;
};

/// Logical Z measurement of a single light mode via one atom-cavity
/// iteration O(pi/2, H, m) with the atom prepared in |A+>. In the lossless
/// limit the two branches realize (Z+I)/2 and (Z-I)/2 on the code subspace.
ZMeasurementResult z_measurement(const DensityMatrix& rho_light, const CavityModel& model);

/// Light ⊗ |A+><A+| on the spec of `light` extended by the atom.
DensityMatrix attach_plus_atom(const DensityMatrix& light);

/// Trace out the atom factor.
DensityMatrix drop_atom(const DensityMatrix& rho);

}  // namespace bmqc
