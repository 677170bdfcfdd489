#include "bmqc/prep.hpp"

#include <cmath>
#include <stdexcept>

#include "bmqc/fock.hpp"
#include "bmqc/optim.hpp"

namespace bmqc {

double rotation_base_angle() { return pi / 3.4; }

PrepTarget PrepTarget::plus() { return {"plus", pi / 4.0, 0.0}; }
PrepTarget PrepTarget::t1() { return {"t1", pi / 4.0, pi / 4.0}; }
PrepTarget PrepTarget::t2() { return {"t2", 0.5 * std::acos(1.0 / std::sqrt(3.0)), pi / 4.0}; }
PrepTarget PrepTarget::h() { return {"h", pi / 8.0, 0.0}; }
PrepTarget PrepTarget::ancilla(double t) {
  return {"ancilla", std::atan(std::sqrt(1.5)), -t};
}

PrepTarget PrepTarget::by_name(const std::string& name) {
  if (name == "plus") return plus();
  if (name == "t1") return t1();
  if (name == "t2") return t2();
  if (name == "h") return h();
  if (name == "ancilla") return ancilla(pi / 3.0);
  throw std::invalid_argument("PrepTarget::by_name: unknown target '" + name + "'");
}

namespace {

struct InputScore {
  double score, r20, r40, leak;
};

InputScore score_input(double alpha, double r, double theta, double ratio_w, double leak_w) {
  VecXc c;
  try {
    c = displaced_squeezed_state(alpha, r, prep_cutoff).amps;
  } catch (const std::exception&) {
    return {1e6, 1e6, 1e6, 1.0};
  }
  double c0 = std::abs(c[0]);
  if (c0 < 1e-9) return {1e6, 1e6, 1e6, 1.0};
  double r20 = std::abs(std::abs(c[2]) / c0 - std::sqrt(2.0) * std::tan(theta));
  double r40 = std::abs(std::abs(c[4]) / c0 - 1.0);
  double leak = std::max(0.0, 1.0 - c.head(6).squaredNorm());
  return {ratio_w * (r20 + r40) + leak_w * leak, r20, r40, leak};
}

}  // namespace

InputFit optimize_input(double theta_target, double ratio_weight, double leakage_weight) {
  if (theta_target <= 0.0 || theta_target >= pi / 2.0)
    throw std::invalid_argument("optimize_input: theta must be in (0, pi/2)");
  auto penalty = [&](double a, double r) {
    return score_input(a, r, theta_target, ratio_weight, leakage_weight).score;
  };

  // coarse grid, then refine from the best grid point
  double best_a = 1.0, best_r = 0.0, best = 1e12;
  for (double a = 0.5; a <= 2.5 + 1e-9; a += 0.05)
    for (double r = -0.8; r <= 0.8 + 1e-9; r += 0.05) {
      double p = penalty(a, r);
      if (p < best) {
        best = p;
        best_a = a;
        best_r = r;
      }
    }
  auto opt = nelder_mead_2d(penalty, {best_a, best_r}, 0.05);

  InputScore s = score_input(opt[0], opt[1], theta_target, ratio_weight, leakage_weight);
  return InputFit{opt[0], opt[1], s.score, s.r20, s.r40, s.leak};
}

namespace {

cxd rotation_ratio(double beta, double zeta) {
  cxd e = std::exp(imag_unit * beta);
  double c = std::cos(zeta), s = std::sin(zeta);
  return (-c + e * s) / (c + e * s);
}

}  // namespace

cxd rotation_branch_ratio(double beta, double zeta, AtomMeasure outcome) {
  switch (outcome) {
    case AtomMeasure::G:
      return rotation_ratio(beta, zeta);
    case AtomMeasure::S: {
      cxd e = std::exp(-imag_unit * beta);
      double c = std::cos(zeta), s = std::sin(zeta);
      return (c + e * s) / (c - e * s);
    }
    case AtomMeasure::None:
      break;
  }
  throw std::invalid_argument("rotation_branch_ratio: outcome must be g or s");
}

RotationSolution solve_rotation(double theta, double phi, double base_tan) {
  if (base_tan <= 0.0) base_tan = std::tan(rotation_base_angle());
  cxd target = std::tan(theta) * std::exp(imag_unit * phi) / base_tan;
  auto f = [&](double b, double z) { return rotation_ratio(b, z) - target; };

  double beta = 0.0, zeta = 0.0;
  bool found = false;
  for (double z0 = 0.2; z0 < 1.5 && !found; z0 += 0.25)
    for (double b0 = -3.0; b0 <= 3.0 && !found; b0 += 0.5) {
      double b = b0, z = z0;
      if (newton_2d(f, b, z, 80, 1e-13)) {
        beta = b;
        zeta = z;
        found = true;
      }
    }
  if (!found) throw std::runtime_error("solve_rotation: no solution within bounds");

  // normalize with the symmetries (b, z) ~ (b, z+pi) ~ (b+pi, -z):
  // bring zeta into (0, pi/2], then report the (-pi, -pi/2] representative.
  zeta = std::fmod(zeta, pi);
  if (zeta > pi / 2.0) zeta -= pi;
  if (zeta < -pi / 2.0) zeta += pi;
  if (zeta < 0.0) {
    zeta = -zeta;
    beta += pi;
  }
  beta = std::remainder(beta, 2.0 * pi);
  if (std::abs(beta) < 1e-12) beta = 0.0;
  zeta -= pi;

  double resid = std::abs(rotation_ratio(beta, zeta) * base_tan -
                          std::tan(theta) * std::exp(imag_unit * phi));
  return RotationSolution{beta, zeta, resid};
}

namespace {

StateVector target_state(const PrepTarget& target, int cutoff) {
  BinomialCode code = make_code(1, 1, cutoff);
  return logical_state(code, target.theta, target.phi).vector;
}

CavityModel with_phi(const CavityModel& model, double phi) {
  CavityModel m = model;
  m.phi = phi;
  return m;
}

}  // namespace

PrepResult prepare(const PrepTarget& target, const CavityModel& model, double alpha, double r) {
  StateVector input = displaced_squeezed_state(alpha, r, prep_cutoff);
  StateVector goal = target_state(target, prep_cutoff);
  RotationSolution rot = solve_rotation(target.theta, target.phi);

  // first iteration: parity filter
  DensityMatrix joint = attach_plus_atom(to_density(input));
  IterationResult it1 = iterate(joint, with_phi(model, pi), AtomicRotation::hadamard(),
                                AtomMeasure::G);
  DensityMatrix light1 = drop_atom(it1.state);
  double f1 = fidelity(goal, light1);

  // second iteration: rotate the superposition onto the target
  IterationResult it2 = iterate(attach_plus_atom(light1), with_phi(model, pi / 2.0),
                                AtomicRotation::of(rot.beta, rot.zeta), AtomMeasure::G);
  DensityMatrix light2 = drop_atom(it2.state);
  double f2 = fidelity(goal, light2);

  PrepResult res;
  res.state = std::move(light2);
  res.fidelity1 = f1;
  res.fidelity = f2;
  res.success_prob = it1.probability * it2.probability;
  res.alpha = alpha;
  res.r = r;
  res.beta_rot = rot.beta;
  res.zeta = rot.zeta;
  return res;
}

std::pair<double, double> traced_fidelity(const CavityModel& model) {
  StateVector input = displaced_squeezed_state(default_input_alpha, default_input_r, prep_cutoff);
  StateVector goal = target_state(PrepTarget::plus(), prep_cutoff);
  RotationSolution rot = solve_rotation(pi / 4.0, 0.0);

  DensityMatrix joint = attach_plus_atom(to_density(input));
  IterationResult it1 = iterate(joint, with_phi(model, pi), AtomicRotation::hadamard(),
                                AtomMeasure::None);
  DensityMatrix light1 = drop_atom(it1.state);
  double f1 = fidelity(goal, light1);

  IterationResult it2 = iterate(attach_plus_atom(light1), with_phi(model, pi / 2.0),
                                AtomicRotation::of(rot.beta, rot.zeta), AtomMeasure::None);
  double f2 = fidelity(goal, drop_atom(it2.state));
  return {f1, f2};
}

StateVector first_iteration_state(const CavityModel& model, double alpha, double r) {
  StateVector input = displaced_squeezed_state(alpha, r, prep_cutoff);
  DensityMatrix joint = attach_plus_atom(to_density(input));
  IterationResult it1 = iterate(joint, with_phi(model, pi), AtomicRotation::hadamard(),
                                AtomMeasure::G);
  DensityMatrix light1 = drop_atom(it1.state);

  Eigen::SelfAdjointEigenSolver<MatXc> es(light1.mat);
  VecXc v = es.eigenvectors().col(es.eigenvalues().size() - 1);
  // fix the global phase: largest amplitude real positive
  long imax = 0;
  for (long i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  v *= std::abs(v[imax]) / v[imax];
  return StateVector(v, light1.spec);
}

FeedForwardGap feed_forward_gap(const CavityModel& model, const std::vector<double>& alphas,
                                const std::vector<double>& rs) {
  FeedForwardGap gap;
  gap.alphas = alphas;
  gap.rs = rs;
  if (gap.alphas.empty())
    for (double a = -0.6; a <= 0.6 + 1e-9; a += 0.1) gap.alphas.push_back(a);
  if (gap.rs.empty())
    for (double r = 0.0; r <= 0.6 + 1e-9; r += 0.1) gap.rs.push_back(r);

  const int pad = 64;
  StateVector b16 = first_iteration_state(model);
  VecXc b = VecXc::Zero(pad);
  b.head(prep_cutoff) = b16.amps;
  VecXc plus = VecXc::Zero(pad);
  BinomialCode code = make_code(1, 1, 6);
  plus.head(6) = (code.logical_zero.amps + code.logical_one.amps) / std::sqrt(2.0);
  double base = std::abs(plus.dot(b));

  gap.fnet.resize(static_cast<long>(gap.alphas.size()), static_cast<long>(gap.rs.size()));
  gap.offcode_weight.resize(gap.fnet.rows(), gap.fnet.cols());
  for (size_t i = 0; i < gap.alphas.size(); ++i) {
    MatXc d = displacement(gap.alphas[i], pad).mat;
    for (size_t j = 0; j < gap.rs.size(); ++j) {
      MatXc s = squeezing(gap.rs[j], pad).mat;
      VecXc c = d * (s * b);
      gap.fnet(static_cast<long>(i), static_cast<long>(j)) = base - std::abs(plus.dot(c));
      double off = 0.0;
      for (int n = 0; n < pad; ++n)
        if (n != 0 && n != 2 && n != 4) off += std::norm(c[n]);
      gap.offcode_weight(static_cast<long>(i), static_cast<long>(j)) = off;
    }
  }
  return gap;
}

}  // namespace bmqc
