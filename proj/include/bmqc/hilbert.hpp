#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmqc {

/// Composite Hilbert space over truncated Fock modes, optionally followed by
/// a two-level atom. Tensor factor ordering is [mode_1, ..., mode_k, atom];
/// the first factor is the most significant index (Kronecker convention), so
/// the atom, when present, is always the fastest-varying index.
struct HilbertSpec {
  std::vector<int> mode_dims;
  bool atom_present = false;

  HilbertSpec() = default;
  HilbertSpec(std::vector<int> dims, bool atom = false)
      : mode_dims(std::move(dims)), atom_present(atom) {
    for (int d : mode_dims)
      if (d < 1) throw std::invalid_argument("HilbertSpec: mode dimension must be >= 1");
  }

  static HilbertSpec single_mode(int dim, bool atom = false) {
    return HilbertSpec(std::vector<int>{dim}, atom);
  }
  static HilbertSpec modes(int n, int dim, bool atom = false) {
    return HilbertSpec(std::vector<int>(static_cast<size_t>(n), dim), atom);
  }

  int num_modes() const { return static_cast<int>(mode_dims.size()); }
  int num_factors() const { return num_modes() + (atom_present ? 1 : 0); }
  int atom_factor() const {
    if (!atom_present) throw std::logic_error("HilbertSpec: no atom factor");
    return num_modes();
  }

  int factor_dim(int f) const {
    if (f < 0 || f >= num_factors()) throw std::out_of_range("HilbertSpec: factor index");
    return f < num_modes() ? mode_dims[static_cast<size_t>(f)] : 2;
  }

  /// Stride of factor f in the flattened index (first factor most significant).
  long stride(int f) const {
    long s = 1;
    for (int g = num_factors() - 1; g > f; --g) s *= factor_dim(g);
    return s;
  }

  long dim() const {
    long d = 1;
    for (int f = 0; f < num_factors(); ++f) d *= factor_dim(f);
    return d;
  }

  HilbertSpec with_atom() const { return HilbertSpec(mode_dims, true); }
  HilbertSpec without_atom() const { return HilbertSpec(mode_dims, false); }

  /// Spec after removing one mode (used when a mode is consumed by a detector).
  HilbertSpec without_mode(int mode) const {
    if (mode < 0 || mode >= num_modes()) throw std::out_of_range("HilbertSpec: mode index");
    std::vector<int> dims = mode_dims;
    dims.erase(dims.begin() + mode);
    return HilbertSpec(dims, atom_present);
  }

  bool operator==(const HilbertSpec& o) const {
    return mode_dims == o.mode_dims && atom_present == o.atom_present;
  }
  bool operator!=(const HilbertSpec& o) const { return !(*this == o); }

  std::string str() const {
    std::string s = "[";
    for (size_t i = 0; i < mode_dims.size(); ++i)
      s += (i ? "," : "") + std::to_string(mode_dims[i]);
    s += atom_present ? ";atom]" : "]";
    return s;
  }
};

}  // namespace bmqc
