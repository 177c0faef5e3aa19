#pragma once

#include <array>
#include <string>
#include <vector>

namespace wavest {

/// Quadrature on a triangle in barycentric coordinates. Weights are
/// normalised to sum to 1, so integral_K g ~ |K| sum_q w_q g(x_q).
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;
  std::string name;

  std::size_t size() const { return weights.size(); }

  /// Centroid rule, degree 1.
  static QuadratureRule centroid();
  /// Three interior points (2/3, 1/6, 1/6), degree 2.
  static QuadratureRule three_point();
  /// Radon's seven-point rule, degree 5.
  static QuadratureRule seven_point();
  /// Collapsed (Duffy) Gauss-Legendre product with n points per direction,
  /// degree 2n - 2.
  static QuadratureRule collapsed_gauss(int n);
  /// Cheapest rule above with degree >= `degree`.
  static QuadratureRule of_degree(int degree);
};

/// Nodes and weights of Gauss-Legendre quadrature on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace wavest
