#include "bmqc/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bmqc {

StateVector::StateVector(VecXc a, HilbertSpec s) : amps(std::move(a)), spec(std::move(s)) {
  if (amps.size() != spec.dim())
    throw std::invalid_argument("StateVector: amplitude length " + std::to_string(amps.size()) +
                                " does not match spec dim " + std::to_string(spec.dim()));
}

StateVector StateVector::normalized() const {
  double n = norm();
  if (n <= 0.0) throw std::runtime_error("StateVector: cannot normalize zero vector");
  return StateVector(amps / n, spec);
}

StateVector StateVector::basis(const HilbertSpec& spec, long index) {
  if (index < 0 || index >= spec.dim()) throw std::out_of_range("StateVector::basis index");
  VecXc v = VecXc::Zero(spec.dim());
  v[index] = 1.0;
  return StateVector(v, spec);
}

StateVector StateVector::fock(const HilbertSpec& spec, const std::vector<int>& occupation) {
  if (static_cast<int>(occupation.size()) != spec.num_modes())
    throw std::invalid_argument("StateVector::fock: occupation length mismatch");
  long idx = 0;
  for (int m = 0; m < spec.num_modes(); ++m) {
    if (occupation[m] < 0 || occupation[m] >= spec.mode_dims[m])
      throw std::out_of_range("StateVector::fock: occupation exceeds cutoff");
    idx += occupation[m] * spec.stride(m);
  }
  return basis(spec, idx);
}

DensityMatrix::DensityMatrix(MatXc m, HilbertSpec s) : mat(std::move(m)), spec(std::move(s)) {
  if (mat.rows() != spec.dim() || mat.cols() != spec.dim())
    throw std::invalid_argument("DensityMatrix: matrix shape does not match spec");
}

double DensityMatrix::hermiticity_defect() const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<MatXc> es((mat + mat.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
  if (hermiticity_defect() > herm_tol)
    throw std::runtime_error("DensityMatrix: Hermiticity defect above tolerance");
  double tr = trace();
  if (tr <= 0.0 || tr > 1.0 + herm_tol)
    throw std::runtime_error("DensityMatrix: trace outside (0, 1]");
  if (min_eigenvalue() < -psd_tol)
    throw std::runtime_error("DensityMatrix: not positive semidefinite within tolerance");
}

Operator::Operator(MatXc m, HilbertSpec s) : mat(std::move(m)), spec(std::move(s)) {
  if (mat.rows() != spec.dim() || mat.cols() != spec.dim())
    throw std::invalid_argument("Operator: matrix shape does not match spec");
}

Operator Operator::identity(const HilbertSpec& spec) {
  return Operator(MatXc::Identity(spec.dim(), spec.dim()), spec);
}

DensityMatrix to_density(const StateVector& psi) {
  return DensityMatrix(psi.amps * psi.amps.adjoint(), psi.spec);
}

namespace {

HilbertSpec join_specs(const HilbertSpec& a, const HilbertSpec& b) {
  if (a.atom_present && b.num_factors() > 0)
    throw std::invalid_argument("tensor: atom factor must come last");
  std::vector<int> dims = a.mode_dims;
  dims.insert(dims.end(), b.mode_dims.begin(), b.mode_dims.end());
  return HilbertSpec(dims, a.atom_present || b.atom_present);
}

}  // namespace

Operator tensor(const std::vector<Operator>& ops) {
  if (ops.empty()) throw std::invalid_argument("tensor: empty list");
  MatXc m = ops[0].mat;
  HilbertSpec spec = ops[0].spec;
  for (size_t i = 1; i < ops.size(); ++i) {
    spec = join_specs(spec, ops[i].spec);
    m = kron(m, ops[i].mat);
  }
  return Operator(std::move(m), std::move(spec));
}

StateVector tensor(const std::vector<StateVector>& states) {
  if (states.empty()) throw std::invalid_argument("tensor: empty list");
  VecXc v = states[0].amps;
  HilbertSpec spec = states[0].spec;
  for (size_t i = 1; i < states.size(); ++i) {
    spec = join_specs(spec, states[i].spec);
    v = kron(v, states[i].amps);
  }
  return StateVector(std::move(v), std::move(spec));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.mat, b.mat), join_specs(a.spec, b.spec));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const HilbertSpec& spec = rho.spec;
  const int nf = spec.num_factors();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  std::vector<bool> kept(static_cast<size_t>(nf), false);
  for (int f : keep) {
    if (f < 0 || f >= nf) throw std::out_of_range("partial_trace: invalid factor index");
    if (kept[static_cast<size_t>(f)]) throw std::invalid_argument("partial_trace: duplicate factor");
    kept[static_cast<size_t>(f)] = true;
  }
  for (size_t i = 1; i < keep.size(); ++i)
    if (keep[i] <= keep[i - 1]) throw std::invalid_argument("partial_trace: keep must be ascending");

  std::vector<int> traced;
  for (int f = 0; f < nf; ++f)
    if (!kept[static_cast<size_t>(f)]) traced.push_back(f);

  std::vector<int> kdims, kmodes;
  bool katom = false;
  long kdim = 1;
  for (int f : keep) {
    kdim *= spec.factor_dim(f);
    if (spec.atom_present && f == spec.atom_factor())
      katom = true;
    else
      kmodes.push_back(spec.factor_dim(f));
  }
  HilbertSpec out_spec(kmodes, katom);

  long tdim = 1;
  for (int f : traced) tdim *= spec.factor_dim(f);

  auto offset = [&](const std::vector<int>& factors, long multi) {
    long off = 0;
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
      int d = spec.factor_dim(factors[static_cast<size_t>(i)]);
      off += (multi % d) * spec.stride(factors[static_cast<size_t>(i)]);
      multi /= d;
    }
    return off;
  };

  MatXc out = MatXc::Zero(kdim, kdim);
  for (long r = 0; r < kdim; ++r) {
    long roff = offset(keep, r);
    for (long c = 0; c < kdim; ++c) {
      long coff = offset(keep, c);
      cxd sum = 0.0;
      for (long t = 0; t < tdim; ++t) {
        long toff = offset(traced, t);
        sum += rho.mat(roff + toff, coff + toff);
      }
      out(r, c) = sum;
    }
  }
  return DensityMatrix(std::move(out), std::move(out_spec));
}

namespace {

MatXc psd_sqrt(const MatXc& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<MatXc> es((m + m.adjoint()) / 2.0);
  VecXd ev = es.eigenvalues();
  if (ev.minCoeff() < -psd_tol)
    throw std::runtime_error(std::string("fidelity: ") + what + " is not PSD within tolerance");
  VecXd s = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.spec != rho2.spec) throw std::invalid_argument("fidelity: spec mismatch");
  MatXc s1 = psd_sqrt(rho1.mat, "first argument");
  MatXc inner = s1 * rho2.mat * s1;
  Eigen::SelfAdjointEigenSolver<MatXc> es((inner + inner.adjoint()) / 2.0);
  double acc = 0.0;
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    acc += std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  double f = acc * acc;
  return std::clamp(f, 0.0, 1.0 + 1e-9);
}

double fidelity(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.spec != rho.spec) throw std::invalid_argument("fidelity: spec mismatch");
  return std::real(psi.amps.dot(rho.mat * psi.amps));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.spec != b.spec) throw std::invalid_argument("fidelity: spec mismatch");
  return std::norm(a.amps.dot(b.amps));
}

namespace {

struct FactorView {
  long sub_dim = 1;
  std::vector<long> offsets;  // offset of each sub-index combination
  std::vector<long> bases;    // offsets of all untouched-factor combinations
};

FactorView make_view(const std::vector<int>& factors, const HilbertSpec& spec) {
  const int nf = spec.num_factors();
  for (int f : factors)
    if (f < 0 || f >= nf) throw std::out_of_range("apply_on_factors: invalid factor index");
  FactorView view;
  for (int f : factors) view.sub_dim *= spec.factor_dim(f);

  view.offsets.resize(static_cast<size_t>(view.sub_dim));
  for (long s = 0; s < view.sub_dim; ++s) {
    long rem = s, off = 0;
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
      int d = spec.factor_dim(factors[static_cast<size_t>(i)]);
      off += (rem % d) * spec.stride(factors[static_cast<size_t>(i)]);
      rem /= d;
    }
    view.offsets[static_cast<size_t>(s)] = off;
  }

  view.bases.reserve(static_cast<size_t>(spec.dim() / view.sub_dim));
  for (long idx = 0; idx < spec.dim(); ++idx) {
    bool base = true;
    for (int f : factors)
      if ((idx / spec.stride(f)) % spec.factor_dim(f) != 0) {
        base = false;
        break;
      }
    if (base) view.bases.push_back(idx);
  }
  return view;
}

}  // namespace

VecXc apply_on_factors(const MatXc& op, const std::vector<int>& factors, const VecXc& v,
                       const HilbertSpec& spec) {
  if (v.size() != spec.dim()) throw std::invalid_argument("apply_on_factors: vector size mismatch");
  FactorView view = make_view(factors, spec);
  if (op.rows() != view.sub_dim || op.cols() != view.sub_dim)
    throw std::invalid_argument("apply_on_factors: operator dim does not match factors");
  VecXc out(v.size());
  VecXc x(view.sub_dim), y(view.sub_dim);
  for (long base : view.bases) {
    for (long s = 0; s < view.sub_dim; ++s) x[s] = v[base + view.offsets[static_cast<size_t>(s)]];
    y.noalias() = op * x;
    for (long s = 0; s < view.sub_dim; ++s) out[base + view.offsets[static_cast<size_t>(s)]] = y[s];
  }
  return out;
}

MatXc sandwich_on_factors(const MatXc& op, const std::vector<int>& factors, const MatXc& rho,
                          const HilbertSpec& spec) {
  if (rho.rows() != spec.dim() || rho.cols() != spec.dim())
    throw std::invalid_argument("sandwich_on_factors: matrix size mismatch");
  FactorView view = make_view(factors, spec);
  if (op.rows() != view.sub_dim || op.cols() != view.sub_dim)
    throw std::invalid_argument("sandwich_on_factors: operator dim does not match factors");
  const long m = view.sub_dim;
  MatXc tmp = rho, out(rho.rows(), rho.cols());
  VecXc x(m), y(m);
  // rows: tmp = (op) rho
  for (long col = 0; col < rho.cols(); ++col) {
    for (long base : view.bases) {
      for (long s = 0; s < m; ++s) x[s] = rho(base + view.offsets[static_cast<size_t>(s)], col);
      y.noalias() = op * x;
      for (long s = 0; s < m; ++s) tmp(base + view.offsets[static_cast<size_t>(s)], col) = y[s];
    }
  }
  // cols: out = tmp (op)^dagger
  MatXc opc = op.conjugate();
  out = tmp;
  for (long row = 0; row < rho.rows(); ++row) {
    for (long base : view.bases) {
      for (long s = 0; s < m; ++s) x[s] = tmp(row, base + view.offsets[static_cast<size_t>(s)]);
      y.noalias() = opc * x;
      for (long s = 0; s < m; ++s) out(row, base + view.offsets[static_cast<size_t>(s)]) = y[s];
    }
  }
  return out;
}

MatXc embed_on_factors(const MatXc& op, const std::vector<int>& factors, const HilbertSpec& spec) {
  FactorView view = make_view(factors, spec);
  if (op.rows() != view.sub_dim || op.cols() != view.sub_dim)
    throw std::invalid_argument("embed_on_factors: operator dim does not match factors");
  MatXc out = MatXc::Zero(spec.dim(), spec.dim());
  for (long base : view.bases)
    for (long r = 0; r < view.sub_dim; ++r)
      for (long c = 0; c < view.sub_dim; ++c)
        out(base + view.offsets[static_cast<size_t>(r)],
            base + view.offsets[static_cast<size_t>(c)]) = op(r, c);
  return out;
}

VecXc contract_factor(const VecXc& bra, int factor, const VecXc& v, const HilbertSpec& spec) {
  if (v.size() != spec.dim()) throw std::invalid_argument("contract_factor: vector size mismatch");
  int d = spec.factor_dim(factor);
  if (bra.size() != d) throw std::invalid_argument("contract_factor: bra dim mismatch");
  long stride = spec.stride(factor);
  long dim_out = spec.dim() / d;
  VecXc out = VecXc::Zero(dim_out);
  // index decomposition: idx = hi * (stride*d) + n * stride + lo
  long hi_count = spec.dim() / (stride * d);
  long o = 0;
  for (long hi = 0; hi < hi_count; ++hi)
    for (long lo = 0; lo < stride; ++lo, ++o) {
      cxd sum = 0.0;
      long base = hi * stride * d + lo;
      for (int n = 0; n < d; ++n) sum += std::conj(bra[n]) * v[base + n * stride];
      out[o] = sum;
    }
  return out;
}

}  // namespace bmqc
