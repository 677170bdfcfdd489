#include "bmqc/gates.hpp"

#include <cmath>
#include <stdexcept>

#include "bmqc/fock.hpp"

namespace bmqc {

namespace {

// second atomic rotation of the gate sequence: R[0, pi, pi/4], chosen so the
// g branch realizes diag(1,1,1,-1) exactly in the lossless limit
AtomicRotation cz_second_rotation() { return AtomicRotation{0.0, pi, pi / 4.0}; }

}  // namespace

CzBranch cz_branch(const DensityMatrix& rho_two_modes, const CavityModel& model,
                   AtomMeasure outcome) {
  if (outcome == AtomMeasure::None)
    throw std::invalid_argument("cz_branch: outcome must be g or s");
  if (rho_two_modes.spec.atom_present || rho_two_modes.spec.num_modes() != 2)
    throw std::invalid_argument("cz_branch: expected two light modes without atom");
  int d0 = rho_two_modes.spec.mode_dims[0];
  int d1 = rho_two_modes.spec.mode_dims[1];

  DensityMatrix rho = attach_plus_atom(rho_two_modes);
  const HilbertSpec& spec = rho.spec;
  int atom = spec.atom_factor();

  KrausChannel chan0 = cpf_channel(model, d0);
  KrausChannel chan1 = cpf_channel(model, d1);

  rho = chan0.apply(rho, {0, atom});
  rho = chan1.apply(rho, {1, atom});
  rho.mat = sandwich_on_factors(AtomicRotation::hadamard().matrix(), {atom}, rho.mat, spec);
  rho = chan0.apply(rho, {0, atom});
  rho.mat = sandwich_on_factors(cz_second_rotation().matrix(), {atom}, rho.mat, spec);

  VecXc m = outcome == AtomMeasure::G ? atom_g() : atom_s();
  MatXc proj = m * m.adjoint();
  MatXc post = sandwich_on_factors(proj, {atom}, rho.mat, spec);
  double p = post.trace().real();
  if (p <= 1e-14) throw std::runtime_error("cz_branch: zero-probability branch");
  DensityMatrix light = drop_atom(DensityMatrix(post / p, spec));

  if (outcome == AtomMeasure::S) {
    MatXc ff0 = number_phase(pi / 2.0, d0).mat;
    MatXc ff1 = number_phase(pi / 2.0, d1).mat;
    light.mat = sandwich_on_factors(ff0, {0}, light.mat, light.spec);
    light.mat = sandwich_on_factors(ff1, {1}, light.mat, light.spec);
  }
  return CzBranch{std::move(light), p};
}

DensityMatrix cz_apply(const DensityMatrix& rho_two_modes, const CavityModel& model) {
  CzBranch g = cz_branch(rho_two_modes, model, AtomMeasure::G);
  CzBranch s = cz_branch(rho_two_modes, model, AtomMeasure::S);
  MatXc mixed = g.probability * g.state.mat + s.probability * s.state.mat;
  return DensityMatrix(std::move(mixed), rho_two_modes.spec);
}

std::array<DensityMatrix, 16> tomography_inputs(int cutoff) {
  BinomialCode code = make_code(1, 1, cutoff);
  std::array<StateVector, 4> frame = {
      code.logical_zero,
      logical_state(code, pi / 4.0, 0.0).vector,
      logical_state(code, pi / 4.0, pi / 2.0).vector,
      code.logical_one,
  };
  std::array<DensityMatrix, 16> inputs;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      inputs[static_cast<size_t>(i * 4 + j)] = to_density(tensor({frame[static_cast<size_t>(i)],
                                                                  frame[static_cast<size_t>(j)]}));
  return inputs;
}

Operator two_qubit_pauli(const BinomialCode& code, int k) {
  if (k < 0 || k > 15) throw std::out_of_range("two_qubit_pauli: index");
  auto single = [&](int p) -> MatXc {
    switch (p) {
      case 0: return code_projector(code).mat;  // logical identity
      case 1: return logical_pauli(code, Pauli::X).mat;
      case 2: return logical_pauli(code, Pauli::Y).mat;
      default: return logical_pauli(code, Pauli::Z).mat;
    }
  };
  MatXc m = kron(single(k / 4), single(k % 4));
  return Operator(std::move(m), HilbertSpec::modes(2, code.cutoff));
}

MatXd ideal_cz_transfer() {
  // 4x4 logical algebra
  MatXc cz = MatXc::Identity(4, 4);
  cz(3, 3) = -1.0;
  MatXc x(2, 2), y(2, 2), z(2, 2), id = MatXc::Identity(2, 2);
  x << 0, 1, 1, 0;
  y << 0, cxd(0, -1), cxd(0, 1), 0;
  z << 1, 0, 0, -1;
  std::array<MatXc, 4> p = {id, x, y, z};
  MatXd r(16, 16);
  for (int k = 0; k < 16; ++k)
    for (int l = 0; l < 16; ++l) {
      MatXc sk = kron(p[static_cast<size_t>(k / 4)], p[static_cast<size_t>(k % 4)]);
      MatXc sl = kron(p[static_cast<size_t>(l / 4)], p[static_cast<size_t>(l % 4)]);
      r(k, l) = std::real((sk * cz * sl * cz.adjoint()).trace()) / 4.0;
    }
  return r;
}

ProcessMap process_map(const CavityModel& model) {
  BinomialCode code = make_code(1, 1, code_cutoff);
  std::array<DensityMatrix, 16> inputs = tomography_inputs(code_cutoff);

  MatXc subspace = kron(code_projector(code).mat, code_projector(code).mat);
  std::array<MatXc, 16> paulis;
  for (int k = 0; k < 16; ++k) paulis[static_cast<size_t>(k)] = two_qubit_pauli(code, k).mat;

  MatXd a(16, 16), b(16, 16);
  ProcessMap map;
  for (int j = 0; j < 16; ++j) {
    DensityMatrix out = cz_apply(inputs[static_cast<size_t>(j)], model);
    // the leaked population is reported and kept in the vectorization: the
    // logical Paulis vanish outside the code subspace, so the trace deficit
    // shows up in the transfer matrix instead of being renormalized away
    MatXc projected = subspace * out.mat * subspace;
    map.leakage[static_cast<size_t>(j)] = 1.0 - projected.trace().real();
    for (int k = 0; k < 16; ++k) {
      a(k, j) = std::real((paulis[static_cast<size_t>(k)] * inputs[static_cast<size_t>(j)].mat)
                              .trace());
      b(k, j) = std::real((paulis[static_cast<size_t>(k)] * projected).trace());
    }
  }
  map.matrix = b * a.inverse();
  map.delta = (map.matrix - ideal_cz_transfer()).cwiseAbs().maxCoeff();
  return map;
}

}  // namespace bmqc
