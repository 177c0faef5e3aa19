#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "wavest/mesh.hpp"
#include "wavest/quadrature.hpp"
#include "wavest/sparse.hpp"

namespace wavest {

using SpatialFunction = std::function<double(double, double)>;
using SpatialGradient = std::function<std::array<double, 2>(double, double)>;

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, std::size_t iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  std::size_t iterations() const { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

struct SolverStats {
  std::size_t calls = 0;
  std::size_t iterations = 0;
};

/// Jacobi-preconditioned conjugate gradients for an SPD matrix.
class SpdSolver {
 public:
  /// max_iter == 0 picks 10 n + 100.
  explicit SpdSolver(CsrMatrix a, double tol = 1e-10, std::size_t max_iter = 0,
                     Exec exec = Exec::parallel);

  /// Stops when ||b - A x|| <= tol ||b||. Throws SolverError carrying the
  /// last relative residual when max_iter is reached.
  std::vector<double> solve(std::span<const double> rhs, std::span<const double> x0 = {}) const;

  const CsrMatrix& matrix() const { return a_; }
  const SolverStats& stats() const { return stats_; }
  void reset_stats() const { stats_ = {}; }
  double tolerance() const { return tol_; }

 private:
  CsrMatrix a_;
  std::vector<double> inv_diag_;
  double tol_;
  std::size_t max_iter_;
  Exec exec_;
  mutable SolverStats stats_;
};

std::vector<double> solve_spd(const CsrMatrix& a, std::span<const double> rhs, double tol = 1e-10,
                              std::size_t max_iter = 0);

using LocalMatrix = std::array<std::array<double, 3>, 3>;

LocalMatrix local_mass(const Point& p0, const Point& p1, const Point& p2);
LocalMatrix local_stiffness(const Point& p0, const Point& p1, const Point& p2);
/// Gradients of the three barycentric coordinates on a triangle.
std::array<std::array<double, 2>, 3> barycentric_gradients(const Point& p0, const Point& p1,
                                                           const Point& p2);

/// Element matrices are computed concurrently under Exec::parallel; the
/// scatter into global entries always runs in element order.
CsrMatrix assemble_mass(const Mesh& mesh, Exec exec = Exec::parallel);
CsrMatrix assemble_stiffness(const Mesh& mesh, Exec exec = Exec::parallel);

/// b_i = integral g phi_i over all vertices.
std::vector<double> assemble_load(const Mesh& mesh, const SpatialFunction& g,
                                  const QuadratureRule& rule = QuadratureRule::seven_point(),
                                  Exec exec = Exec::parallel);
/// b_i = integral grad g . grad phi_i over all vertices.
std::vector<double> assemble_gradient_load(const Mesh& mesh, const SpatialGradient& grad_g,
                                           const QuadratureRule& rule = QuadratureRule::seven_point(),
                                           Exec exec = Exec::parallel);

enum class FieldKind { h10, l2 };

/// P1 coefficients. h10 fields hold free (interior) vertices only and have
/// zero trace; l2 fields hold every vertex.
struct Field {
  FieldKind kind = FieldKind::h10;
  std::vector<double> values;
  const Mesh* mesh = nullptr;
};

/// P1 space on a mesh with boundary conditions imposed by elimination.
/// Holds the global matrices and their solvers; the mesh must outlive it.
class P1Space {
 public:
  struct Options {
    double tol = 1e-10;
    std::size_t max_iter = 0;
    Exec exec = Exec::parallel;
    QuadratureRule rule = QuadratureRule::seven_point();
  };

  explicit P1Space(const Mesh& mesh);
  P1Space(const Mesh& mesh, Options options);

  const Mesh& mesh() const { return *mesh_; }
  const Options& options() const { return opt_; }
  std::size_t num_free() const { return free_.size(); }
  std::size_t num_all() const { return mesh_->num_vertices(); }
  std::size_t size(FieldKind kind) const { return kind == FieldKind::h10 ? num_free() : num_all(); }
  /// free index -> vertex
  const std::vector<int>& free_vertices() const { return free_; }
  /// vertex -> free index, -1 on the boundary
  const std::vector<int>& free_index() const { return free_index_; }

  const CsrMatrix& mass() const { return mass_; }
  const CsrMatrix& stiffness() const { return stiff_; }
  const CsrMatrix& mass_free() const { return mass_ff_; }
  const CsrMatrix& stiffness_free() const { return stiff_ff_; }
  /// Free rows, all columns: maps an l2 field to the h10 load (f, phi_i).
  const CsrMatrix& mass_free_all() const { return mass_fa_; }

  const SpdSolver& mass_solver() const;
  const SpdSolver& mass_free_solver() const;
  const SpdSolver& stiffness_free_solver() const;

  Field zero(FieldKind kind) const;
  Field make(FieldKind kind, std::vector<double> values) const;
  /// Zero-extends an h10 field to all vertices; l2 fields are copied.
  std::vector<double> all_values(const Field& f) const;
  /// Drops boundary values of an all-vertex vector.
  std::vector<double> free_values(std::span<const double> all) const;
  void check(const Field& f) const;

 private:
  const Mesh* mesh_;
  Options opt_;
  std::vector<int> free_;
  std::vector<int> free_index_;
  CsrMatrix mass_, stiff_, mass_ff_, stiff_ff_, mass_fa_;
  mutable std::unique_ptr<SpdSolver> mass_solver_, mass_ff_solver_, stiff_ff_solver_;
};

/// Nodal interpolant; h10 kind drops boundary values.
Field interpolate(const P1Space& space, const SpatialFunction& g, FieldKind kind);

/// L2 projection P_h onto the full P1 space (l2 field).
Field l2_project(const P1Space& space, const SpatialFunction& g);
/// H1_0 projection Pi_h (h10 field).
Field h1_project(const P1Space& space, const SpatialGradient& grad_g);
/// z with (z, phi) = (grad w, grad phi) for all phi in V_h.
Field apply_discrete_laplacian(const P1Space& space, const Field& w);

double l2_norm(const P1Space& space, const Field& f);
double h1_seminorm(const P1Space& space, const Field& f);
/// (||v||^2_L2 + |u|^2_H1)^(1/2)
double energy_norm(const P1Space& space, const Field& v, const Field& u);

/// ||g - w_h||_L2 and |g - w_h|_H1 by elementwise quadrature; `all` holds
/// coefficients at every vertex.
double l2_error(const Mesh& mesh, std::span<const double> all, const SpatialFunction& g,
                const QuadratureRule& rule, Exec exec = Exec::parallel);
double h1_error(const Mesh& mesh, std::span<const double> all, const SpatialGradient& grad_g,
                const QuadratureRule& rule, Exec exec = Exec::parallel);

/// Exact ||w_h||^2_L2(K) of a P1 function with vertex values g.
double p1_element_l2_squared(double area, double g0, double g1, double g2);

}  // namespace wavest
