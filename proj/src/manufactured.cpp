#include "wavest/manufactured.hpp"

#include <cmath>

namespace wavest::manufactured {

namespace {

struct Local {
  double X, Y, u, a1;  // offsets from the centre, u, c'(t)
};

Local at(double t, double x, double y) {
  const double c = Gaussian::center(t);
  const double X = x - c, Y = y - c;
  return {X, Y, std::exp(-100.0 * (X * X + Y * Y)), 0.8 * t};
}

}  // namespace

double Gaussian::u(double t, double x, double y) { return at(t, x, y).u; }

double Gaussian::u_t(double t, double x, double y) {
  const auto g = at(t, x, y);
  return 200.0 * g.a1 * (g.X + g.Y) * g.u;
}

double Gaussian::u_tt(double t, double x, double y) {
  const auto g = at(t, x, y);
  const double s = g.X + g.Y;
  const double q = 200.0 * g.a1 * s;
  return (200.0 * (0.8 * s - 2.0 * g.a1 * g.a1) + q * q) * g.u;
}

std::array<double, 2> Gaussian::grad_u(double t, double x, double y) {
  const auto g = at(t, x, y);
  return {-200.0 * g.X * g.u, -200.0 * g.Y * g.u};
}

std::array<double, 2> Gaussian::grad_u_t(double t, double x, double y) {
  const auto g = at(t, x, y);
  const double s = g.X + g.Y;
  return {200.0 * g.a1 * g.u * (1.0 - 200.0 * g.X * s), 200.0 * g.a1 * g.u * (1.0 - 200.0 * g.Y * s)};
}

double Gaussian::laplacian(double t, double x, double y) {
  const auto g = at(t, x, y);
  return g.u * (40000.0 * (g.X * g.X + g.Y * g.Y) - 400.0);
}

double Gaussian::f(double t, double x, double y) { return u_tt(t, x, y) - laplacian(t, x, y); }

wave::WaveProblem gaussian_problem(double T) {
  wave::WaveProblem p;
  p.T = T;
  p.f = Gaussian::f;
  p.grad_u0 = [](double x, double y) { return Gaussian::grad_u(0.0, x, y); };
  p.grad_v0 = [](double x, double y) { return Gaussian::grad_u_t(0.0, x, y); };
  p.exact = wave::ExactWave{Gaussian::u, Gaussian::u_t, Gaussian::grad_u};
  return p;
}

}  // namespace wavest::manufactured
