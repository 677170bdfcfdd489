#pragma once

#include <complex>

#include <Eigen/Dense>

namespace bmqc {

using cxd = std::complex<double>;
using VecXc = Eigen::VectorXcd;
using MatXc = Eigen::MatrixXcd;
using VecXd = Eigen::VectorXd;
using MatXd = Eigen::MatrixXd;

inline constexpr cxd imag_unit{0.0, 1.0};
inline constexpr double pi = 3.14159265358979323846;

// Numerical tolerances used across the library.
inline constexpr double herm_tol = 1e-10;        // Hermiticity defect of density matrices
inline constexpr double psd_tol = 1e-8;          // eigenvalues of density matrices >= -psd_tol
inline constexpr double branch_prune_tol = 1e-8; // relative weight below which pure-state branches are dropped
inline constexpr double trunc_norm_tol = 1e-4;   // allowed pre-truncation norm loss for Gaussian state constructors

}  // namespace bmqc
