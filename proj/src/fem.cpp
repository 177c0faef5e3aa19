#include "wavest/fem.hpp"

#include <cmath>
#include <string>

namespace wavest {

namespace {

// Fills out[k] = fn(k) for every element; the only parallel region in
// assembly. Results are reduced by the caller in element order.
template <class T, class Fn>
std::vector<T> per_element(std::size_t n, Exec exec, Fn fn) {
  std::vector<T> out(n);
  const auto ni = static_cast<std::ptrdiff_t>(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < ni; ++k) out[static_cast<std::size_t>(k)] = fn(static_cast<std::size_t>(k));
  } else {
    for (std::size_t k = 0; k < n; ++k) out[k] = fn(k);
  }
  return out;
}

double ordered_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

std::array<const Point*, 3> corners(const Mesh& mesh, std::size_t k) {
  const auto& t = mesh.triangles()[k];
  const auto& v = mesh.vertices();
  return {&v[t[0]], &v[t[1]], &v[t[2]]};
}

Point map_point(const std::array<const Point*, 3>& p, const std::array<double, 3>& lam) {
  return {lam[0] * p[0]->x + lam[1] * p[1]->x + lam[2] * p[2]->x,
          lam[0] * p[0]->y + lam[1] * p[1]->y + lam[2] * p[2]->y};
}

CsrMatrix scatter(const Mesh& mesh, const std::vector<LocalMatrix>& local) {
  std::vector<Triplet> entries;
  entries.reserve(9 * local.size());
  for (std::size_t k = 0; k < local.size(); ++k) {
    const auto& t = mesh.triangles()[k];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) entries.push_back({t[i], t[j], local[k][i][j]});
  }
  return csr_from_triplets(mesh.num_vertices(), mesh.num_vertices(), std::move(entries));
}

std::vector<double> scatter(const Mesh& mesh, const std::vector<std::array<double, 3>>& local) {
  std::vector<double> b(mesh.num_vertices(), 0.0);
  for (std::size_t k = 0; k < local.size(); ++k)
    for (int i = 0; i < 3; ++i) b[static_cast<std::size_t>(mesh.triangles()[k][i])] += local[k][i];
  return b;
}

}  // namespace

SpdSolver::SpdSolver(CsrMatrix a, double tol, std::size_t max_iter, Exec exec)
    : a_(std::move(a)), tol_(tol), max_iter_(max_iter), exec_(exec) {
  if (a_.rows != a_.cols) throw std::invalid_argument("SPD solver needs a square matrix");
  if (!(tol_ > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
  if (max_iter_ == 0) max_iter_ = 10 * a_.rows + 100;
  inv_diag_ = a_.diagonal();
  for (std::size_t i = 0; i < inv_diag_.size(); ++i) {
    if (!(inv_diag_[i] > 0.0))
      throw std::invalid_argument("non-positive diagonal entry at row " + std::to_string(i));
    inv_diag_[i] = 1.0 / inv_diag_[i];
  }
}

std::vector<double> SpdSolver::solve(std::span<const double> b, std::span<const double> x0) const {
  namespace kn = kernels;
  const std::size_t n = a_.rows;
  if (b.size() != n) throw std::invalid_argument("right-hand side length mismatch");
  ++stats_.calls;
  std::vector<double> x(n, 0.0);
  if (!x0.empty()) {
    if (x0.size() != n) throw std::invalid_argument("initial guess length mismatch");
    x.assign(x0.begin(), x0.end());
  }
  const double bnorm = kn::norm2(b, exec_);
  if (bnorm == 0.0) return std::vector<double>(n, 0.0);

  std::vector<double> r(b.begin(), b.end()), z(n), p(n), q(n);
  if (!x0.empty()) {
    kn::spmv(a_, x, q, exec_);
    kn::axpby(-1.0, q, 1.0, r, exec_);
  }
  double rnorm = kn::norm2(r, exec_);
  if (rnorm <= tol_ * bnorm) return x;
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag_[i] * r[i];
  p = z;
  double rz = kn::dot(r, z, exec_);
  for (std::size_t it = 1; it <= max_iter_; ++it) {
    kn::spmv(a_, p, q, exec_);
    const double pq = kn::dot(p, q, exec_);
    if (!(pq > 0.0))
      throw SolverError("matrix is not positive definite on the search direction", rnorm / bnorm, it);
    const double alpha = rz / pq;
    kn::axpby(alpha, p, 1.0, x, exec_);
    kn::axpby(-alpha, q, 1.0, r, exec_);
    ++stats_.iterations;
    rnorm = kn::norm2(r, exec_);
    if (rnorm <= tol_ * bnorm) return x;
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag_[i] * r[i];
    const double rz_new = kn::dot(r, z, exec_);
    kn::axpby(1.0, z, rz_new / rz, p, exec_);
    rz = rz_new;
  }
  throw SolverError("conjugate gradients did not converge in " + std::to_string(max_iter_) +
                        " iterations (relative residual " + std::to_string(rnorm / bnorm) + ")",
                    rnorm / bnorm, max_iter_);
}

std::vector<double> solve_spd(const CsrMatrix& a, std::span<const double> rhs, double tol,
                              std::size_t max_iter) {
  return SpdSolver(a, tol, max_iter).solve(rhs);
}

std::array<std::array<double, 2>, 3> barycentric_gradients(const Point& p0, const Point& p1,
                                                           const Point& p2) {
  const double two_area = 2.0 * signed_area(p0, p1, p2);
  return {{{(p1.y - p2.y) / two_area, (p2.x - p1.x) / two_area},
           {(p2.y - p0.y) / two_area, (p0.x - p2.x) / two_area},
           {(p0.y - p1.y) / two_area, (p1.x - p0.x) / two_area}}};
}

LocalMatrix local_mass(const Point& p0, const Point& p1, const Point& p2) {
  const double a = std::abs(signed_area(p0, p1, p2)) / 12.0;
  LocalMatrix m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = i == j ? 2.0 * a : a;
  return m;
}

LocalMatrix local_stiffness(const Point& p0, const Point& p1, const Point& p2) {
  const double a = std::abs(signed_area(p0, p1, p2));
  const auto g = barycentric_gradients(p0, p1, p2);
  LocalMatrix k;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k[i][j] = a * (g[i][0] * g[j][0] + g[i][1] * g[j][1]);
  return k;
}

CsrMatrix assemble_mass(const Mesh& mesh, Exec exec) {
  return scatter(mesh, per_element<LocalMatrix>(mesh.num_triangles(), exec, [&](std::size_t k) {
                   const auto p = corners(mesh, k);
                   return local_mass(*p[0], *p[1], *p[2]);
                 }));
}

CsrMatrix assemble_stiffness(const Mesh& mesh, Exec exec) {
  return scatter(mesh, per_element<LocalMatrix>(mesh.num_triangles(), exec, [&](std::size_t k) {
                   const auto p = corners(mesh, k);
                   return local_stiffness(*p[0], *p[1], *p[2]);
                 }));
}

std::vector<double> assemble_load(const Mesh& mesh, const SpatialFunction& g,
                                  const QuadratureRule& rule, Exec exec) {
  return scatter(mesh, per_element<std::array<double, 3>>(mesh.num_triangles(), exec, [&](std::size_t k) {
                   const auto p = corners(mesh, k);
                   std::array<double, 3> b{};
                   for (std::size_t q = 0; q < rule.size(); ++q) {
                     const Point x = map_point(p, rule.points[q]);
                     const double wg = rule.weights[q] * g(x.x, x.y);
                     for (int i = 0; i < 3; ++i) b[i] += wg * rule.points[q][i];
                   }
                   for (double& v : b) v *= mesh.area(k);
                   return b;
                 }));
}

std::vector<double> assemble_gradient_load(const Mesh& mesh, const SpatialGradient& grad_g,
                                           const QuadratureRule& rule, Exec exec) {
  return scatter(mesh, per_element<std::array<double, 3>>(mesh.num_triangles(), exec, [&](std::size_t k) {
                   const auto p = corners(mesh, k);
                   const auto gl = barycentric_gradients(*p[0], *p[1], *p[2]);
                   std::array<double, 2> mean{};
                   for (std::size_t q = 0; q < rule.size(); ++q) {
                     const Point x = map_point(p, rule.points[q]);
                     const auto gg = grad_g(x.x, x.y);
                     mean[0] += rule.weights[q] * gg[0];
                     mean[1] += rule.weights[q] * gg[1];
                   }
                   std::array<double, 3> b{};
                   for (int i = 0; i < 3; ++i)
                     b[i] = mesh.area(k) * (mean[0] * gl[i][0] + mean[1] * gl[i][1]);
                   return b;
                 }));
}

P1Space::P1Space(const Mesh& mesh) : P1Space(mesh, Options{}) {}

P1Space::P1Space(const Mesh& mesh, Options options) : mesh_(&mesh), opt_(std::move(options)) {
  const std::size_t nv = mesh.num_vertices();
  free_index_.assign(nv, -1);
  for (std::size_t v = 0; v < nv; ++v)
    if (!mesh.boundary_vertex()[v]) {
      free_index_[v] = static_cast<int>(free_.size());
      free_.push_back(static_cast<int>(v));
    }
  mass_ = assemble_mass(mesh, opt_.exec);
  stiff_ = assemble_stiffness(mesh, opt_.exec);
  std::vector<int> all(nv);
  for (std::size_t v = 0; v < nv; ++v) all[v] = static_cast<int>(v);
  mass_ff_ = csr_extract(mass_, free_, free_index_, free_.size());
  stiff_ff_ = csr_extract(stiff_, free_, free_index_, free_.size());
  mass_fa_ = csr_extract(mass_, free_, all, nv);
}

const SpdSolver& P1Space::mass_solver() const {
  if (!mass_solver_) mass_solver_ = std::make_unique<SpdSolver>(mass_, opt_.tol, opt_.max_iter, opt_.exec);
  return *mass_solver_;
}

const SpdSolver& P1Space::mass_free_solver() const {
  if (!mass_ff_solver_)
    mass_ff_solver_ = std::make_unique<SpdSolver>(mass_ff_, opt_.tol, opt_.max_iter, opt_.exec);
  return *mass_ff_solver_;
}

const SpdSolver& P1Space::stiffness_free_solver() const {
  if (free_.empty()) throw std::logic_error("mesh has no free vertices");
  if (!stiff_ff_solver_)
    stiff_ff_solver_ = std::make_unique<SpdSolver>(stiff_ff_, opt_.tol, opt_.max_iter, opt_.exec);
  return *stiff_ff_solver_;
}

Field P1Space::zero(FieldKind kind) const { return {kind, std::vector<double>(size(kind), 0.0), mesh_}; }

Field P1Space::make(FieldKind kind, std::vector<double> values) const {
  if (values.size() != size(kind)) throw std::invalid_argument("field length does not match the space");
  return {kind, std::move(values), mesh_};
}

void P1Space::check(const Field& f) const {
  if (f.mesh != mesh_) throw std::invalid_argument("field belongs to a different mesh");
  if (f.values.size() != size(f.kind)) throw std::invalid_argument("field length does not match its kind");
}

std::vector<double> P1Space::all_values(const Field& f) const {
  check(f);
  if (f.kind == FieldKind::l2) return f.values;
  std::vector<double> all(num_all(), 0.0);
  for (std::size_t i = 0; i < free_.size(); ++i) all[static_cast<std::size_t>(free_[i])] = f.values[i];
  return all;
}

std::vector<double> P1Space::free_values(std::span<const double> all) const {
  if (all.size() != num_all()) throw std::invalid_argument("expected one value per vertex");
  std::vector<double> out(free_.size());
  for (std::size_t i = 0; i < free_.size(); ++i) out[i] = all[static_cast<std::size_t>(free_[i])];
  return out;
}

Field interpolate(const P1Space& space, const SpatialFunction& g, FieldKind kind) {
  const auto& v = space.mesh().vertices();
  std::vector<double> all(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) all[i] = g(v[i].x, v[i].y);
  if (kind == FieldKind::l2) return space.make(kind, std::move(all));
  return space.make(kind, space.free_values(all));
}

Field l2_project(const P1Space& space, const SpatialFunction& g) {
  const auto b = assemble_load(space.mesh(), g, space.options().rule, space.options().exec);
  return space.make(FieldKind::l2, space.mass_solver().solve(b));
}

Field h1_project(const P1Space& space, const SpatialGradient& grad_g) {
  if (space.num_free() == 0) return space.zero(FieldKind::h10);
  const auto b = assemble_gradient_load(space.mesh(), grad_g, space.options().rule, space.options().exec);
  return space.make(FieldKind::h10, space.stiffness_free_solver().solve(space.free_values(b)));
}

Field apply_discrete_laplacian(const P1Space& space, const Field& w) {
  space.check(w);
  if (w.kind != FieldKind::h10) throw std::invalid_argument("discrete Laplacian needs an h10 field");
  std::vector<double> kw(space.num_free());
  kernels::spmv(space.stiffness_free(), w.values, kw, space.options().exec);
  return space.make(FieldKind::h10, space.mass_free_solver().solve(kw));
}

namespace {

double quadratic_form(const CsrMatrix& a, std::span<const double> x, Exec exec) {
  std::vector<double> ax(a.rows);
  kernels::spmv(a, x, ax, exec);
  return kernels::dot(x, ax, exec);
}

}  // namespace

double l2_norm(const P1Space& space, const Field& f) {
  space.check(f);
  const auto& m = f.kind == FieldKind::h10 ? space.mass_free() : space.mass();
  return std::sqrt(std::max(0.0, quadratic_form(m, f.values, space.options().exec)));
}

double h1_seminorm(const P1Space& space, const Field& f) {
  space.check(f);
  const auto& k = f.kind == FieldKind::h10 ? space.stiffness_free() : space.stiffness();
  return std::sqrt(std::max(0.0, quadratic_form(k, f.values, space.options().exec)));
}

double energy_norm(const P1Space& space, const Field& v, const Field& u) {
  const double a = l2_norm(space, v);
  const double b = h1_seminorm(space, u);
  return std::sqrt(a * a + b * b);
}

double l2_error(const Mesh& mesh, std::span<const double> all, const SpatialFunction& g,
                const QuadratureRule& rule, Exec exec) {
  if (all.size() != mesh.num_vertices()) throw std::invalid_argument("expected one value per vertex");
  return std::sqrt(ordered_sum(per_element<double>(mesh.num_triangles(), exec, [&](std::size_t k) {
    const auto p = corners(mesh, k);
    const auto& t = mesh.triangles()[k];
    double s = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto& lam = rule.points[q];
      const Point x = map_point(p, lam);
      const double wh = lam[0] * all[t[0]] + lam[1] * all[t[1]] + lam[2] * all[t[2]];
      const double d = g(x.x, x.y) - wh;
      s += rule.weights[q] * d * d;
    }
    return mesh.area(k) * s;
  })));
}

double h1_error(const Mesh& mesh, std::span<const double> all, const SpatialGradient& grad_g,
                const QuadratureRule& rule, Exec exec) {
  if (all.size() != mesh.num_vertices()) throw std::invalid_argument("expected one value per vertex");
  return std::sqrt(ordered_sum(per_element<double>(mesh.num_triangles(), exec, [&](std::size_t k) {
    const auto p = corners(mesh, k);
    const auto& t = mesh.triangles()[k];
    const auto gl = barycentric_gradients(*p[0], *p[1], *p[2]);
    double gx = 0.0, gy = 0.0;
    for (int i = 0; i < 3; ++i) {
      gx += all[t[i]] * gl[i][0];
      gy += all[t[i]] * gl[i][1];
    }
    double s = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = map_point(p, rule.points[q]);
      const auto g = grad_g(x.x, x.y);
      const double dx = g[0] - gx, dy = g[1] - gy;
      s += rule.weights[q] * (dx * dx + dy * dy);
    }
    return mesh.area(k) * s;
  })));
}

double p1_element_l2_squared(double area, double g0, double g1, double g2) {
  const double s = g0 + g1 + g2;
  return area / 12.0 * (g0 * g0 + g1 * g1 + g2 * g2 + s * s);
}

}  // namespace wavest
