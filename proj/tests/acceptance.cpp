// Acceptance suite: every reproduction criterion with its tolerance pinned in
// code. Run with no arguments for all criteria, or with a criterion number.
// Prints one pass/fail line per criterion; the exit code is the failure count.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bmqc/cluster.hpp"
#include "bmqc/fock.hpp"
#include "bmqc/gates.hpp"
#include "bmqc/povm.hpp"
#include "bmqc/prep.hpp"

using namespace bmqc;

namespace {

struct Criterion {
  int failures = 0;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void expect_near(double got, double want, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: got %.6g, want %.6g +- %.2g", what.c_str(), got, want,
                  tol);
    expect(std::abs(got - want) <= tol, buf);
  }
};

MatXc ideal_cz_full(const BinomialCode& code) {
  int d = code.cutoff;
  MatXc z = logical_pauli(code, Pauli::Z).mat;
  MatXc p1 = code.logical_one.amps * code.logical_one.amps.adjoint();
  MatXc idm = MatXc::Identity(d, d);
  return kron(MatXc(idm - p1), idm) + kron(p1, z);
}

// 1. lossless exactness, strict
Criterion criterion1() {
  Criterion c;
  const double tol = 1e-9;

  for (double phi : {pi / 2.0, pi, 0.37}) {
    KrausChannel chan = cpf_channel(CavityModel::lossless(phi), 8);
    c.expect(chan.ops.size() == 1, "lossless channel has one Kraus operator");
    MatXc pg = atom_g() * atom_g().adjoint();
    MatXc ps = atom_s() * atom_s().adjoint();
    MatXc idm = MatXc::Identity(8, 8);
    MatXc u = kron(number_phase(phi, 8).mat, pg) + kron(idm, ps);
    c.expect((chan.ops[0] - u).cwiseAbs().maxCoeff() < tol, "CPF equals U(phi)");
  }

  ProcessMap map = process_map(CavityModel::lossless());
  c.expect(map.delta < tol, "CZ transfer matrix equals the ideal CZ");

  ClusterGraph star = ClusterGraph::star(4);
  std::vector<double> stab = stabilizer_expectations(
      build_cluster(star, CavityModel::lossless(), ClusterStrategy::StarOptimized), star);
  for (double s : stab) c.expect(std::abs(s - 1.0) < tol, "5-star stabilizer is +1");

  TeleportResult tele = teleportation_test(CavityModel::lossless());
  c.expect(tele.branches.size() == 16, "all 16 teleportation branches present");
  for (const TeleportBranch& b : tele.branches)
    c.expect(std::abs(b.fidelity - 1.0) < tol, "teleportation branch fidelity is 1");

  BranchEnsemble chain = ideal_cluster(ClusterGraph::chain(3));
  AncillaSpec anc = AncillaSpec::ideal(pi / 3.0);
  PovmOutcome povm = measure_xy_with_ancilla(chain, 1, to_density(anc.state).mat);
  BranchEnsemble projected = chain;
  projected.contract(xy_projector_state(pi / 3.0).amps, 1);
  StateVector ref(projected.branches[0] / projected.branches[0].norm(), projected.spec);
  c.expect(std::abs(povm.post_state.fidelity_to(ref) - 1.0) < tol,
           "POVM post-state equals the XY projection");
  return c;
}

// 2. Knill-Laflamme residuals, strict
Criterion criterion2() {
  Criterion c;
  BinomialCode loss_code = make_code(1, 1, 8);
  MatXc id8 = MatXc::Identity(8, 8);
  KlReport r1 = kl_check(loss_code, {id8, annihilation_matrix(8)});
  c.expect(r1.max_residual() < 1e-10, "photon-loss code passes {I, a}");

  BinomialCode deph_code = make_code(2, 1, 10);
  MatXc id10 = MatXc::Identity(10, 10);
  KlReport r2 = kl_check(deph_code, {id10, annihilation_matrix(10), number_matrix(10)});
  c.expect(r2.max_residual() < 1e-10, "dephasing code passes {I, a, n}");
  return c;
}

// 3. preparation fidelity table
Criterion criterion3() {
  Criterion c;
  struct Row {
    const char* name;
    double f99, f999;
  };
  Row rows[] = {{"plus", 0.964, 0.985}, {"t1", 0.954, 0.985}, {"t2", 0.942, 0.983},
                {"h", 0.947, 0.983},    {"ancilla", 0.953, 0.988}};
  for (const Row& row : rows) {
    PrepResult p99 = prepare(PrepTarget::by_name(row.name), CavityModel::of_amplitude(0.99));
    PrepResult p999 = prepare(PrepTarget::by_name(row.name), CavityModel::of_amplitude(0.999));
    c.expect_near(p99.fidelity, row.f99, 0.03, std::string(row.name) + " F2 at 0.99");
    c.expect_near(p999.fidelity, row.f999, 0.03, std::string(row.name) + " F2 at 0.999");
    for (double m : {p99.success_prob, p999.success_prob})
      c.expect(m >= 0.15 && m <= 0.30,
               std::string(row.name) + " success probability in [0.15, 0.30]");
  }
  return c;
}

// 4. rotation solutions, strict
Criterion criterion4() {
  Criterion c;
  struct Row {
    const char* name;
    double theta, phi, beta, zeta;
  };
  Row rows[] = {
      {"plus", pi / 4.0, 0.0, 0.0, -1.714},
      {"t1", pi / 4.0, pi / 4.0, 1.174, -1.979},
      {"t2", 0.5 * std::acos(1.0 / std::sqrt(3.0)), pi / 4.0, 0.575, -2.103},
      {"h", pi / 8.0, 0.0, 0.0, -2.046},
  };
  for (const Row& row : rows) {
    RotationSolution s = solve_rotation(row.theta, row.phi);
    c.expect_near(s.beta, row.beta, 0.01, std::string(row.name) + " beta_rot");
    c.expect_near(s.zeta, row.zeta, 0.01, std::string(row.name) + " zeta");
    c.expect(s.residual < 1e-6, std::string(row.name) + " self-consistency residual");
  }
  return c;
}

// 5. process tomography
Criterion criterion5() {
  Criterion c;
  ProcessMap m999 = process_map(CavityModel::of_amplitude(0.999));
  c.expect_near(m999.delta, 0.018, 0.03, "max|delta R| at beta 0.999");
  ProcessMap m99 = process_map(CavityModel::of_amplitude(0.99));
  c.expect_near(m99.delta, 0.099, 0.03, "max|delta R| at beta 0.99");

  BinomialCode code = make_code(1, 1, code_cutoff);
  StateVector psi1(std::cos(pi / 4.0) * code.logical_one.amps +
                       std::exp(imag_unit * (pi / 4.0)) * std::sin(pi / 4.0) *
                           code.logical_zero.amps,
                   code.logical_zero.spec);
  StateVector psi2(std::cos(pi / 3.0) * code.logical_one.amps +
                       std::exp(imag_unit * (pi / 5.0)) * std::sin(pi / 3.0) *
                           code.logical_zero.amps,
                   code.logical_zero.spec);
  StateVector in = tensor({psi1, psi2});
  StateVector want(ideal_cz_full(code) * in.amps, in.spec);
  DensityMatrix out = cz_apply(to_density(in), CavityModel::of_amplitude(0.999));
  c.expect_near(fidelity(want, out), 0.981, 0.02, "psi1 psi2 gate fidelity");
  return c;
}

// 6. cluster generation and teleportation
Criterion criterion6() {
  Criterion c;
  TeleportResult t999 = teleportation_test(CavityModel::of_amplitude(0.999));
  TeleportResult t99 = teleportation_test(CavityModel::of_amplitude(0.99));
  c.expect_near(t999.fidelity, 0.98, 0.02, "teleportation fidelity at 0.999");
  c.expect_near(t99.fidelity, 0.96, 0.02, "teleportation fidelity at 0.99");

  ClusterGraph star = ClusterGraph::star(4);
  std::vector<std::vector<double>> runs;
  for (double beta : {1.0, 0.999, 0.99})
    runs.push_back(stabilizer_expectations(
        build_cluster(star,
                      beta >= 1.0 ? CavityModel::lossless() : CavityModel::of_amplitude(beta),
                      ClusterStrategy::StarOptimized),
        star));
  for (double s : runs[1]) c.expect(s > 0.9, "stabilizer above 0.9 at beta 0.999");
  for (size_t i = 0; i < 5; ++i) {
    c.expect(runs[0][i] >= runs[1][i] - 1e-9, "stabilizer monotone from 1 to 0.999");
    c.expect(runs[1][i] >= runs[2][i] - 1e-9, "stabilizer monotone from 0.999 to 0.99");
  }
  return c;
}

// 7. XY-plane measurement reproduction
Criterion criterion7() {
  Criterion c;
  struct Setup {
    const char* name;
    ClusterGraph graph;
    int vertex;
  };
  Setup setups[] = {{"3-chain", ClusterGraph::chain(3), 1},
                    {"5-star", ClusterGraph::star(4), 1}};
  for (double beta : {0.99, 0.999}) {
    PrepResult anc = prepare(PrepTarget::ancilla(pi / 3.0), CavityModel::of_amplitude(beta));
    double want_f = beta == 0.99 ? 0.997 : 0.999;
    for (const Setup& s : setups) {
      BranchEnsemble cluster = ideal_cluster(s.graph);
      BranchEnsemble projected = cluster;
      projected.contract(xy_projector_state(pi / 3.0).amps, s.vertex);
      StateVector ref(projected.branches[0] / projected.branches[0].norm(), projected.spec);
      PovmOutcome o = measure_xy_with_ancilla(cluster, s.vertex, anc.state.mat);
      char label[64];
      std::snprintf(label, sizeof(label), "%s fidelity at %.3f", s.name, beta);
      c.expect_near(o.post_state.fidelity_to(ref), want_f, 0.005, label);
      std::snprintf(label, sizeof(label), "%s success prob at %.3f", s.name, beta);
      c.expect_near(o.success_prob, 0.145, 0.02, label);
    }
  }
  return c;
}

// 8. property suites, no golden numbers
Criterion criterion8() {
  Criterion c;
  std::mt19937 rng(4087231);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> ub(0.3, 1.0), uphi(-pi, pi), uc(0.0, 80.0),
      ud(-1.0, 1.0), uw(0.1, 1.0);

  auto random_density = [&](const HilbertSpec& spec, int rank) {
    MatXc m = MatXc::Zero(spec.dim(), spec.dim());
    double tot = 0.0;
    for (int k = 0; k < rank; ++k) {
      VecXc v(spec.dim());
      for (long i = 0; i < v.size(); ++i) v[i] = cxd(gauss(rng), gauss(rng));
      v.normalize();
      double w = uw(rng);
      tot += w;
      m += w * v * v.adjoint();
    }
    return DensityMatrix(MatXc(m / tot), spec);
  };

  // channel completeness across the parameter space
  for (int rep = 0; rep < 16; ++rep) {
    CavityModel m;
    if (rep % 2 == 0) {
      m = CavityModel::uniform(ub(rng), uphi(rng));
    } else {
      m.variant = LossVariant::InputOutput;
      m.beta_eff = ub(rng);
      m.cooperativity = uc(rng);
      m.detuning = ud(rng);
    }
    KrausChannel chan = cpf_channel(m, 7);
    c.expect(chan.completeness_defect() < 1e-10, "channel completeness");
  }

  // positivity and Hermiticity preservation
  HilbertSpec spec({5}, true);
  for (int rep = 0; rep < 8; ++rep) {
    DensityMatrix rho = random_density(spec, 3);
    KrausChannel chan = cpf_channel(CavityModel::uniform(ub(rng), uphi(rng)), 5);
    DensityMatrix out = chan.apply(rho, {0, 1});
    c.expect(out.hermiticity_defect() < herm_tol, "channel output Hermitian");
    c.expect(out.min_eigenvalue() > -psd_tol, "channel output PSD");
    c.expect(std::abs(out.trace() - 1.0) < 1e-10, "channel output trace one");
  }

  // tensor / partial-trace round trips
  for (int rep = 0; rep < 8; ++rep) {
    DensityMatrix a = random_density(HilbertSpec::single_mode(3), 2);
    DensityMatrix b = random_density(HilbertSpec::single_mode(4), 2);
    DensityMatrix joint = tensor(a, b);
    c.expect((partial_trace(joint, {0}).mat - a.mat).cwiseAbs().maxCoeff() < 1e-10,
             "round trip keeps the first factor");
    c.expect((partial_trace(joint, {1}).mat - b.mat).cwiseAbs().maxCoeff() < 1e-10,
             "round trip keeps the second factor");
  }

  // POVM sub-normalization
  for (int rep = 0; rep < 8; ++rep) {
    DensityMatrix anc = random_density(HilbertSpec::single_mode(6), 3);
    MatXc e = conditioned_operator(anc.mat, 2, 2, 6);
    Eigen::SelfAdjointEigenSolver<MatXc> es(e);
    c.expect(es.eigenvalues().maxCoeff() <= 1.0 + 1e-10, "conditioned operator bounded by one");
    c.expect(es.eigenvalues().minCoeff() > -1e-12, "conditioned operator PSD");
  }

  // Gaussian feed-forward gap stays non-negative on the scanned grid
  FeedForwardGap gap = feed_forward_gap(CavityModel::lossless());
  c.expect(gap.min_fnet() > -1e-9, "feed-forward gap non-negative");
  return c;
}

const char* criterion_names[] = {
    "lossless exactness (strict 1e-9)",
    "Knill-Laflamme residuals (strict 1e-10)",
    "preparation fidelity table",
    "rotation solutions (strict 0.01)",
    "process tomography deviations",
    "cluster stabilizers and teleportation",
    "XY-plane measurement reproduction",
    "property suites",
};

}  // namespace

int main(int argc, char** argv) {
  std::function<Criterion()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                           criterion5, criterion6, criterion7, criterion8};
  int lo = 1, hi = 8;
  if (argc > 1) {
    int k = std::atoi(argv[1]);
    if (k < 1 || k > 8) {
      std::fprintf(stderr, "usage: %s [criterion 1..8]\n", argv[0]);
      return 64;
    }
    lo = hi = k;
  }

  int failed = 0;
  for (int k = lo; k <= hi; ++k) {
    Criterion c = criteria[k - 1]();
    if (c.failures == 0) {
      std::printf("[PASS] criterion %d: %s\n", k, criterion_names[k - 1]);
    } else {
      ++failed;
      std::printf("[FAIL] criterion %d: %s -- %s\n", k, criterion_names[k - 1], c.detail.c_str());
    }
  }
  return failed;
}
