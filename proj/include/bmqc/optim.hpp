#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "bmqc/types.hpp"

namespace bmqc {

/// Deterministic 2-D Nelder-Mead. Returns the best vertex after the simplex
/// diameter or the improvement drops below tol.
inline std::array<double, 2> nelder_mead_2d(const std::function<double(double, double)>& f,
                                            std::array<double, 2> start, double scale,
                                            int max_iter = 400, double tol = 1e-10) {
  struct Vertex {
    std::array<double, 2> x;
    double fx;
  };
  auto eval = [&](std::array<double, 2> x) { return Vertex{x, f(x[0], x[1])}; };
  std::array<Vertex, 3> s = {eval(start), eval({start[0] + scale, start[1]}),
                             eval({start[0], start[1] + scale})};

  for (int it = 0; it < max_iter; ++it) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; });
    double spread = std::max(std::abs(s[2].x[0] - s[0].x[0]), std::abs(s[2].x[1] - s[0].x[1]));
    if (spread < tol && std::abs(s[2].fx - s[0].fx) < tol) break;

    std::array<double, 2> centroid = {(s[0].x[0] + s[1].x[0]) / 2.0,
                                      (s[0].x[1] + s[1].x[1]) / 2.0};
    auto along = [&](double t) {
      return std::array<double, 2>{centroid[0] + t * (centroid[0] - s[2].x[0]),
                                   centroid[1] + t * (centroid[1] - s[2].x[1])};
    };
    Vertex refl = eval(along(1.0));
    if (refl.fx < s[0].fx) {
      Vertex exp = eval(along(2.0));
      s[2] = exp.fx < refl.fx ? exp : refl;
    } else if (refl.fx < s[1].fx) {
      s[2] = refl;
    } else {
      Vertex contr = eval(along(refl.fx < s[2].fx ? 0.5 : -0.5));
      if (contr.fx < std::min(refl.fx, s[2].fx)) {
        s[2] = contr;
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].x = {(s[i].x[0] + s[0].x[0]) / 2.0, (s[i].x[1] + s[0].x[1]) / 2.0};
          s[i] = eval(s[i].x);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; });
  return s[0].x;
}

/// Newton iteration for a complex-valued condition f(x, y) = 0 treated as two
/// real equations, with numerical Jacobian. Returns true on convergence.
inline bool newton_2d(const std::function<cxd(double, double)>& f, double& x, double& y,
                      int max_iter = 60, double tol = 1e-12) {
  const double h = 1e-7;
  for (int it = 0; it < max_iter; ++it) {
    cxd v = f(x, y);
    if (std::abs(v) < tol) return true;
    cxd dx = (f(x + h, y) - f(x - h, y)) / (2.0 * h);
    cxd dy = (f(x, y + h) - f(x, y - h)) / (2.0 * h);
    double a = dx.real(), b = dy.real(), c = dx.imag(), d = dy.imag();
    double det = a * d - b * c;
    if (std::abs(det) < 1e-16) return false;
    double sx = (d * v.real() - b * v.imag()) / det;
    double sy = (-c * v.real() + a * v.imag()) / det;
    x -= sx;
    y -= sy;
  }
  return std::abs(f(x, y)) < tol;
}

}  // namespace bmqc
