#include "wavest/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavest::est {

namespace {

using wave::WaveState;

template <class Fn>
double ordered_parallel_sum(std::size_t n, Exec exec, Fn fn) {
  std::vector<double> part(n);
  const auto ni = static_cast<std::ptrdiff_t>(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < ni; ++i) part[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) part[i] = fn(i);
  }
  double s = 0.0;
  for (double x : part) s += x;
  return s;
}

diff::Steps2 steps_of(const WaveState& prev, const WaveState& cur, const WaveState& next) {
  const diff::Steps2 s{cur.t - prev.t, next.t - cur.t};
  if (!(s[0] > 0.0 && s[1] > 0.0)) throw std::invalid_argument("states must have increasing times");
  return s;
}

std::vector<double> second_diff(const std::vector<double>& a, const std::vector<double>& b,
                                const std::vector<double>& c, const diff::Steps2& s) {
  std::vector<double> out(a.size());
  diff::second_diff(a, b, c, s, out);
  return out;
}

std::vector<double> centered_diff(const std::vector<double>& a, const std::vector<double>& c,
                                  const diff::Steps2& s) {
  std::vector<double> out(a.size());
  diff::centered_diff(a, c, s, out);
  return out;
}

double quadratic_form(const CsrMatrix& a, std::span<const double> x, Exec exec) {
  std::vector<double> ax(a.rows);
  kernels::spmv(a, x, ax, exec);
  return std::max(0.0, kernels::dot(x, ax, exec));
}

std::array<double, 2> element_gradient(const Mesh& mesh, int tri, std::span<const double> all) {
  const auto& t = mesh.triangles()[static_cast<std::size_t>(tri)];
  const auto& v = mesh.vertices();
  const auto g = barycentric_gradients(v[t[0]], v[t[1]], v[t[2]]);
  std::array<double, 2> out{};
  for (int i = 0; i < 3; ++i) {
    out[0] += all[t[i]] * g[i][0];
    out[1] += all[t[i]] * g[i][1];
  }
  return out;
}

void check_window(std::initializer_list<const WaveState*> states, const P1Space& space) {
  for (const auto* s : states) {
    space.check(s->u);
    space.check(s->v);
    space.check(s->f);
  }
}

}  // namespace

double combine3(double h1, double l2, Payload p) {
  return p == Payload::sqrt_squares ? std::sqrt(h1 * h1 + l2 * l2) : std::sqrt(h1 + l2 * l2);
}

double combine5(double h1, double l2, Payload p) {
  return p == Payload::sqrt_squares ? std::sqrt(h1 * h1 + l2 * l2) : h1 + l2;
}

Eta3Terms eta3_terms(const P1Space& space, const WaveState& prev, const WaveState& cur,
                     const WaveState& next) {
  check_window({&prev, &cur, &next}, space);
  const auto s = steps_of(prev, cur, next);
  const Exec exec = space.options().exec;
  const auto d2v = second_diff(prev.v.values, cur.v.values, next.v.values, s);
  const auto d2u = second_diff(prev.u.values, cur.u.values, next.u.values, s);
  const auto d2f = second_diff(prev.f.values, cur.f.values, next.f.values, s);

  const Field z = apply_discrete_laplacian(space, space.make(FieldKind::h10, d2u));
  auto r = d2f;
  const auto& fv = space.free_vertices();
  for (std::size_t i = 0; i < fv.size(); ++i) r[static_cast<std::size_t>(fv[i])] -= z.values[i];

  return {std::sqrt(quadratic_form(space.stiffness_free(), d2v, exec)),
          std::sqrt(quadratic_form(space.mass(), r, exec))};
}

EstimatorSample eta3_step(const P1Space& space, const WaveState& prev, const WaveState& cur,
                          const WaveState& next, Payload p) {
  const auto s = steps_of(prev, cur, next);
  const auto terms = eta3_terms(space, prev, cur, next);
  EstimatorSample out;
  out.t = cur.t;
  out.tau = s[1];
  out.weight = diff::interior_time_weight(s[0], s[1]);
  out.eta3 = out.weight * combine3(terms.h1, terms.l2, p);
  return out;
}

EstimatorSample eta3_initial(const P1Space& space, const WaveState& s0, const WaveState& s1,
                             const WaveState& s2, Payload p) {
  const auto s = steps_of(s0, s1, s2);
  const auto terms = eta3_terms(space, s0, s1, s2);
  EstimatorSample out;
  out.t = s0.t;
  out.k = 0;
  out.tau = s[0];
  out.weight = diff::initial_time_weight(s[0], s[1]);
  out.eta3 = out.weight * combine3(terms.h1, terms.l2, p);
  return out;
}

EstimatorSample eta5_step(const P1Space& space, std::span<const WaveState* const> w, Payload p) {
  if (w.size() != 5) throw std::invalid_argument("5-point indicator needs five states");
  for (const auto* s : w) {
    space.check(s->u);
    space.check(s->v);
  }
  const diff::Steps4 tau{w[1]->t - w[0]->t, w[2]->t - w[1]->t, w[3]->t - w[2]->t, w[4]->t - w[3]->t};
  for (double x : tau)
    if (!(x > 0.0)) throw std::invalid_argument("states must have increasing times");
  const Exec exec = space.options().exec;

  const auto a = second_diff(w[0]->u.values, w[1]->u.values, w[2]->u.values, {tau[0], tau[1]});
  const auto b = second_diff(w[1]->u.values, w[2]->u.values, w[3]->u.values, {tau[1], tau[2]});
  const auto c = second_diff(w[2]->u.values, w[3]->u.values, w[4]->u.values, {tau[2], tau[3]});
  std::vector<double> d4u(a.size());
  diff::hat_second_diff(a, b, c, tau, d4u);
  const auto d2v = second_diff(w[2]->v.values, w[3]->v.values, w[4]->v.values, {tau[2], tau[3]});

  EstimatorSample out;
  out.t = w[3]->t;
  out.tau = tau[3];
  out.weight = diff::interior_time_weight(tau[2], tau[3]);
  out.eta5 = out.weight * combine5(std::sqrt(quadratic_form(space.stiffness_free(), d2v, exec)),
                                   std::sqrt(quadratic_form(space.mass_free(), d4u, exec)), p);
  return out;
}

double edge_jump(const Mesh& mesh, const InteriorEdge& e, std::span<const double> all) {
  if (all.size() != mesh.num_vertices()) throw std::invalid_argument("expected one value per vertex");
  const auto gl = element_gradient(mesh, e.left_tri, all);
  const auto gr = element_gradient(mesh, e.right_tri, all);
  return e.normal.x * (gr[0] - gl[0]) + e.normal.y * (gr[1] - gl[1]);
}

double edge_jump_norm(const Mesh& mesh, int a, int b, std::span<const double> all) {
  const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
  const auto& edges = mesh.interior_edges();
  const auto it = std::lower_bound(edges.begin(), edges.end(), key,
                                   [](const InteriorEdge& e, const std::array<int, 2>& k) { return e.endpoints < k; });
  if (it == edges.end() || it->endpoints != key) {
    for (const auto& be : mesh.boundary_edges())
      if (be.endpoints == key) throw std::invalid_argument("edge jump is undefined on a boundary edge");
    throw std::invalid_argument("no such edge");
  }
  const double j = edge_jump(mesh, *it, all);
  return j * j * it->length;
}

double edge_residual_sum(const Mesh& mesh, std::span<const double> all, Exec exec) {
  const auto& edges = mesh.interior_edges();
  return ordered_parallel_sum(edges.size(), exec, [&](std::size_t i) {
    const double j = edge_jump(mesh, edges[i], all);
    const double h = edges[i].length;
    return h * (j * j * h);
  });
}

double element_residual_sum(const Mesh& mesh, std::span<const double> g, Exec exec) {
  if (g.size() != mesh.num_vertices()) throw std::invalid_argument("expected one value per vertex");
  return ordered_parallel_sum(mesh.num_triangles(), exec, [&](std::size_t k) {
    const auto& t = mesh.triangles()[k];
    const double h = mesh.h_K(k);
    return h * h * p1_element_l2_squared(mesh.area(k), g[t[0]], g[t[1]], g[t[2]]);
  });
}

double space_part1_at(const P1Space& space, const WaveState& prev, const WaveState& cur,
                      const WaveState& next) {
  check_window({&prev, &cur, &next}, space);
  const auto s = steps_of(prev, cur, next);
  const Exec exec = space.options().exec;
  auto g = space.all_values(space.make(FieldKind::h10, centered_diff(prev.v.values, next.v.values, s)));
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= cur.f.values[i];
  return element_residual_sum(space.mesh(), g, exec) +
         edge_residual_sum(space.mesh(), space.all_values(cur.u), exec);
}

double space_part2_at(const P1Space& space, const WaveState& prev, const WaveState& cur,
                      const WaveState& next) {
  check_window({&prev, &cur, &next}, space);
  const auto s = steps_of(prev, cur, next);
  const Exec exec = space.options().exec;
  auto g = space.all_values(
      space.make(FieldKind::h10, second_diff(prev.v.values, cur.v.values, next.v.values, s)));
  const auto df = centered_diff(prev.f.values, next.f.values, s);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= df[i];
  const auto du = space.all_values(space.make(FieldKind::h10, centered_diff(prev.u.values, next.u.values, s)));
  return element_residual_sum(space.mesh(), g, exec) + edge_residual_sum(space.mesh(), du, exec);
}

SpaceParts space_estimator_parts(const P1Space& space, std::span<const WaveState> states) {
  SpaceParts out;
  for (std::size_t n = 1; n + 1 < states.size(); ++n) {
    out.s1 = std::max(out.s1, std::sqrt(space_part1_at(space, states[n - 1], states[n], states[n + 1])));
    out.s2 += (states[n + 1].t - states[n].t) *
              std::sqrt(space_part2_at(space, states[n - 1], states[n], states[n + 1]));
  }
  return out;
}

WaveEstimator::WaveEstimator(const P1Space& space) : WaveEstimator(space, Options{}) {}

WaveEstimator::WaveEstimator(const P1Space& space, Options options) : space_(space), opt_(options) {}

void WaveEstimator::on_state(const wave::StateWindow& w, std::size_t n) {
  if (n < 2) return;
  const std::size_t k = n - 1;
  const WaveState& prev = w.back(2);
  const WaveState& cur = w.back(1);
  const WaveState& next = w.back(0);
  const double tau_prev = w.step_back(1);
  const double tau = w.step_back(0);

  EstimatorSample sample;
  sample.t = cur.t;
  sample.k = k;
  sample.tau = tau;
  sample.weight = diff::interior_time_weight(tau_prev, tau);

  if (opt_.eta3) {
    const std::size_t before = space_.mass_free_solver().stats().calls;
    const auto terms = eta3_terms(space_, prev, cur, next);
    aux_solves_ += space_.mass_free_solver().stats().calls - before;
    const double payload = combine3(terms.h1, terms.l2, opt_.payload);
    if (k == 1) {
      EstimatorSample first;
      first.t = prev.t;
      first.tau = tau_prev;
      first.weight = diff::initial_time_weight(tau_prev, tau);
      first.eta3 = first.weight * payload;
      eta3_ += first.tau * first.eta3;
      samples_.push_back(first);
    }
    sample.eta3 = sample.weight * payload;
    eta3_ += tau * sample.eta3;
  } else if (k == 1) {
    samples_.push_back(EstimatorSample{prev.t, 0, tau_prev, 0.0, 0.0, 0.0});
  }

  if (opt_.eta5 && k >= 3) {
    const std::array<const WaveState*, 5> win{&w.back(4), &w.back(3), &w.back(2), &w.back(1), &w.back(0)};
    sample.eta5 = eta5_step(space_, win, opt_.payload).eta5;
    eta5_ += tau * sample.eta5;
  }

  if (opt_.space) {
    space_parts_.s1 = std::max(space_parts_.s1, std::sqrt(space_part1_at(space_, prev, cur, next)));
    space_parts_.s2 += tau * std::sqrt(space_part2_at(space_, prev, cur, next));
  }
  samples_.push_back(sample);
}

}  // namespace wavest::est
