#include "wavest/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wavest {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre needs n >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureRule QuadratureRule::centroid() {
  return {{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}, {1.0}, 1, "centroid"};
}

QuadratureRule QuadratureRule::three_point() {
  const double a = 2.0 / 3.0, b = 1.0 / 6.0;
  return {{{a, b, b}, {b, a, b}, {b, b, a}}, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 2, "three-point"};
}

QuadratureRule QuadratureRule::seven_point() {
  const double s = std::sqrt(15.0);
  const double a1 = (6.0 - s) / 21.0, b1 = 1.0 - 2.0 * a1;
  const double a2 = (6.0 + s) / 21.0, b2 = 1.0 - 2.0 * a2;
  const double w1 = (155.0 - s) / 1200.0, w2 = (155.0 + s) / 1200.0;
  QuadratureRule r;
  r.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, {a1, a1, b1}, {a1, b1, a1}, {b1, a1, a1},
              {a2, a2, b2}, {a2, b2, a2}, {b2, a2, a2}};
  r.weights = {9.0 / 40.0, w1, w1, w1, w2, w2, w2};
  r.degree = 5;
  r.name = "seven-point";
  return r;
}

QuadratureRule QuadratureRule::collapsed_gauss(int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  QuadratureRule r;
  r.degree = 2 * n - 2;
  r.name = "collapsed-gauss-" + std::to_string(n);
  // (s, t) in [0,1]^2 -> (xi, eta) = (s, t (1 - s)); Jacobian (1 - s); the
  // reference triangle has area 1/2, hence the factor 2 in the weights.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double s = 0.5 * (x[i] + 1.0);
      const double t = 0.5 * (x[j] + 1.0);
      const double xi = s;
      const double eta = t * (1.0 - s);
      r.points.push_back({1.0 - xi - eta, xi, eta});
      r.weights.push_back(2.0 * 0.25 * w[i] * w[j] * (1.0 - s));
    }
  return r;
}

QuadratureRule QuadratureRule::of_degree(int degree) {
  if (degree <= 1) return centroid();
  if (degree == 2) return three_point();
  if (degree <= 5) return seven_point();
  return collapsed_gauss((degree + 3) / 2);
}

}  // namespace wavest
