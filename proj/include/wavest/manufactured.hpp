#pragma once

#include <array>

#include "wavest/newmark.hpp"

namespace wavest::manufactured {

/// u = exp(-100 r^2), r^2 = (x - c(t))^2 + (y - c(t))^2, c(t) = 0.3 + 0.4 t^2.
/// The bump travels from (0.3, 0.3) at t = 0 to (0.7, 0.7) at t = 1.
struct Gaussian {
  static double center(double t) { return 0.3 + 0.4 * t * t; }
  static double u(double t, double x, double y);
  static double u_t(double t, double x, double y);
  static double u_tt(double t, double x, double y);
  static std::array<double, 2> grad_u(double t, double x, double y);
  static std::array<double, 2> grad_u_t(double t, double x, double y);
  static double laplacian(double t, double x, double y);
  /// f = u_tt - Laplace u
  static double f(double t, double x, double y);
};

/// Wave problem on the unit square with the Gaussian as exact solution. The
/// trace of u on the boundary is below 1e-3 and is not imposed.
wave::WaveProblem gaussian_problem(double T = 1.0);

}  // namespace wavest::manufactured
