#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bmqc/cavity.hpp"
#include "bmqc/codes.hpp"
#include "bmqc/state.hpp"

namespace bmqc {

/// Default Gaussian input parameters for the preparation circuit.
inline constexpr double default_input_alpha = 1.4;
inline constexpr double default_input_r = 0.25;
inline constexpr int prep_cutoff = 16;

/// Base ratio fed into the rotation condition: tan of the superposition angle
/// reached by the first iteration. The reference tables are reproduced with
/// pi/3.4; see solve_rotation.
double rotation_base_angle();

/// Named preparation targets cos(theta)|0_L> + e^{i phi} sin(theta)|1_L>.
struct PrepTarget {
  std::string name;
  double theta = 0.0;
  double phi = 0.0;

  static PrepTarget plus();
  static PrepTarget t1();
  static PrepTarget t2();        // cos(2 theta) = 1/sqrt(3)
  static PrepTarget h();
  static PrepTarget ancilla(double t);  // tan(theta) = sqrt(3/2), phi = -t
  static PrepTarget by_name(const std::string& name);  // plus|t1|t2|h|ancilla
};

struct InputFit {
  double alpha = 0.0;
  double r = 0.0;
  double score = 0.0;       // weighted penalty at the optimum (lower is better)
  double ratio20_resid = 0.0;  // |c2/c0 - sqrt(2) tan(theta)|
  double ratio40_resid = 0.0;  // |c4/c0 - 1|
  double leakage = 0.0;        // 1 - sum_{n<=5} |c_n|^2
};

/// Search (alpha, r) so that the displaced squeezed input carries the target
/// amplitude ratios with small weight above n = 5. Coarse grid over
/// alpha in [0.5, 2.5], r in [-0.8, 0.8] followed by Nelder-Mead refinement.
InputFit optimize_input(double theta_target, double ratio_weight = 1.0,
                        double leakage_weight = 5.0);

struct RotationSolution {
  double beta = 0.0;   // rotation phase angle (the Euler beta, not the cavity efficiency)
  double zeta = 0.0;
  double residual = 0.0;  // |ratio(beta, zeta) * base - tan(theta) e^{i phi}|
};

/// Solve the second-iteration rotation condition
///   (-cos z + e^{i b} sin z) / (cos z + e^{i b} sin z) * base = tan(theta) e^{i phi}
/// by Newton iteration on real and imaginary parts. `base_tan` defaults to
/// tan(rotation_base_angle()). zeta is reported in (-pi, -pi/2] to match the
/// reference convention.
RotationSolution solve_rotation(double theta, double phi, double base_tan = -1.0);

/// Amplitude ratio (logical one over logical zero, divided by the incoming
/// tan) produced by the second iteration for the g or s atomic outcome.
cxd rotation_branch_ratio(double beta, double zeta, AtomMeasure outcome);

struct PrepResult {
  DensityMatrix state;       // light mode at prep_cutoff after both iterations
  double fidelity1 = 0.0;    // to the target after the first iteration
  double fidelity = 0.0;     // to the target after the second iteration
  double success_prob = 0.0; // product of the two conditional probabilities
  double alpha = 0.0, r = 0.0, beta_rot = 0.0, zeta = 0.0;
};

/// Conditional preparation: parity filter O(pi, H, g) on the Gaussian input,
/// then O(pi/2, R[beta, zeta], g) with the rotation solved for the target.
PrepResult prepare(const PrepTarget& target, const CavityModel& model,
                   double alpha = default_input_alpha, double r = default_input_r);

/// Same two iterations with the atom traced out instead of measured; returns
/// fidelity to |+> after the first and after both iterations.
std::pair<double, double> traced_fidelity(const CavityModel& model);

/// Overlap gap between the first-iteration state and the best Gaussian
/// post-processing of it: fnet(a, r) = <+|B> - |<+|D(a)S(r)|B>|.
struct FeedForwardGap {
  std::vector<double> alphas;
  std::vector<double> rs;
  MatXd fnet;             // fnet(i, j) for alphas[i], rs[j]
  MatXd offcode_weight;   // sum_{n not in {0,2,4}} |C_n|^2 of D S |B>
  double min_fnet() const { return fnet.minCoeff(); }
};

FeedForwardGap feed_forward_gap(const CavityModel& model,
                                const std::vector<double>& alphas = {},
                                const std::vector<double>& rs = {});

/// The state after the first (parity-filter) iteration, normalized.
StateVector first_iteration_state(const CavityModel& model,
                                  double alpha = default_input_alpha,
                                  double r = default_input_r);

}  // namespace bmqc
