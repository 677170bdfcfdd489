#include "bmqc/cavity.hpp"

#include <cmath>
#include <stdexcept>

namespace bmqc {

std::pair<cxd, cxd> reflection_amplitudes(const CavityModel& model) {
  switch (model.variant) {
    case LossVariant::UniformEfficiency: {
      if (model.beta_eff <= 0.0 || model.beta_eff > 1.0)
        throw std::invalid_argument("reflection_amplitudes: beta_eff must be in (0, 1]");
      double amp = std::sqrt(model.beta_eff);
      return {amp * std::exp(imag_unit * model.phi), cxd(amp, 0.0)};
    }
    case LossVariant::InputOutput: {
      // kappa = gamma = 1, kappa_c = beta, g^2 = C
      cxd delta(0.0, model.detuning);
      auto refl = [&](double g2) {
        cxd atom = 0.5 + delta;                     // gamma/2 + i Delta
        cxd cav = 0.5 + delta;                      // kappa/2 + i Delta
        return 1.0 - model.beta_eff * atom / (cav * atom + g2);
      };
      return {refl(model.cooperativity), refl(0.0)};
    }
  }
  throw std::logic_error("reflection_amplitudes: unknown variant");
}

MatXc AtomicRotation::matrix() const {
  MatXc r(2, 2);
  r(0, 0) = std::exp(imag_unit * mu) * std::cos(zeta);
  r(0, 1) = std::exp(imag_unit * beta) * std::sin(zeta);
  r(1, 0) = -std::exp(-imag_unit * beta) * std::sin(zeta);
  r(1, 1) = std::exp(-imag_unit * mu) * std::cos(zeta);
  return r;
}

VecXc atom_g() {
  VecXc v(2);
  v << 1.0, 0.0;
  return v;
}

VecXc atom_s() {
  VecXc v(2);
  v << 0.0, 1.0;
  return v;
}

VecXc atom_plus() {
  VecXc v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

namespace {

// Loss ladder A_j^(m) for per-photon amplitude r: surviving photons keep the
// phase of r, lost photons contribute the real amplitude sqrt(1-|r|^2).
MatXc loss_ladder(cxd r, int j, int dim) {
  MatXc a = MatXc::Zero(dim, dim);
  double eta = 1.0 - std::norm(r);
  if (eta < 0.0) eta = 0.0;
  double loss_amp = std::pow(std::sqrt(eta), j);
  for (int n = j; n < dim; ++n) {
    double c = 1.0;
    for (int i = 1; i <= j; ++i) c *= static_cast<double>(n - j + i) / i;
    a(n - j, n) = std::sqrt(c) * std::pow(r, n - j) * loss_amp;
  }
  return a;
}

}  // namespace

KrausChannel cpf_channel(const CavityModel& model, int cutoff) {
  auto [rg, rs] = reflection_amplitudes(model);
  HilbertSpec spec = HilbertSpec::single_mode(cutoff, true);
  MatXc pg = atom_g() * atom_g().adjoint();
  MatXc ps = atom_s() * atom_s().adjoint();

  bool lossless = std::abs(std::norm(rg) - 1.0) < 1e-15 && std::abs(std::norm(rs) - 1.0) < 1e-15;
  int jmax = lossless ? 0 : cutoff - 1;

  KrausChannel chan;
  chan.spec = spec;
  for (int j = 0; j <= jmax; ++j) {
    MatXc k = kron(loss_ladder(rg, j, cutoff), pg) + kron(loss_ladder(rs, j, cutoff), ps);
    if (j == 0 || k.cwiseAbs().maxCoeff() > 0.0) chan.ops.push_back(std::move(k));
  }
  return chan;
}

IterationResult iterate(const DensityMatrix& rho, const CavityModel& model,
                        const AtomicRotation& rotation, AtomMeasure outcome, int mode) {
  const HilbertSpec& spec = rho.spec;
  if (!spec.atom_present) throw std::invalid_argument("iterate: state must carry the atom factor");
  int cutoff = spec.mode_dims.at(static_cast<size_t>(mode));
  int atom = spec.atom_factor();

  KrausChannel chan = cpf_channel(model, cutoff);
  DensityMatrix state = chan.apply(rho, {mode, atom});
  state.mat = sandwich_on_factors(rotation.matrix(), {atom}, state.mat, spec);

  if (outcome == AtomMeasure::None) return {std::move(state), 1.0};

  VecXc m = outcome == AtomMeasure::G ? atom_g() : atom_s();
  MatXc proj = m * m.adjoint();
  MatXc post = sandwich_on_factors(proj, {atom}, state.mat, spec);
  double p = post.trace().real();
  if (p <= 1e-14) throw std::runtime_error("iterate: zero-probability atom projection");
  return {DensityMatrix(post / p, spec), p};
}

DensityMatrix attach_plus_atom(const DensityMatrix& light) {
  if (light.spec.atom_present) throw std::invalid_argument("attach_plus_atom: atom already present");
  VecXc plus = atom_plus();
  MatXc atom_rho = plus * plus.adjoint();
  return tensor(light, DensityMatrix(atom_rho, HilbertSpec({}, true)));
}

DensityMatrix drop_atom(const DensityMatrix& rho) {
  std::vector<int> keep;
  for (int m = 0; m < rho.spec.num_modes(); ++m) keep.push_back(m);
  return partial_trace(rho, keep);
}

ZMeasurementResult z_measurement(const DensityMatrix& rho_light, const CavityModel& model) {
  DensityMatrix joint = attach_plus_atom(rho_light);
  CavityModel m = model;
  m.phi = pi / 2.0;
  IterationResult un = iterate(joint, m, AtomicRotation::hadamard(), AtomMeasure::None);
  int atom = joint.spec.atom_factor();

  ZMeasurementResult res;
  auto branch = [&](const VecXc& mvec, DensityMatrix& out, double& prob) {
    MatXc proj = mvec * mvec.adjoint();
    MatXc post = sandwich_on_factors(proj, {atom}, un.state.mat, joint.spec);
    prob = post.trace().real();
    DensityMatrix full(prob > 1e-14 ? MatXc(post / prob) : MatXc(post), joint.spec);
    out = drop_atom(full);
  };
  branch(atom_g(), res.post_g, res.p_g);
  branch(atom_s(), res.post_s, res.p_s);
  return res;
}

}  // namespace bmqc
