#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "wavest/manufactured.hpp"
#include "wavest/newmark.hpp"

using namespace wavest;
using namespace wavest::wave;

namespace {

P1Space::Options tight() {
  P1Space::Options o;
  o.tol = 1e-13;
  return o;
}

// Smooth data vanishing on the boundary of the unit square.
std::array<double, 2> grad_bubble(double x, double y) {
  return {(1 - 2 * x) * y * (1 - y) * 16, x * (1 - x) * (1 - 2 * y) * 16};
}

bool all_zero(const Field& f) {
  for (double v : f.values)
    if (v != 0.0) return false;
  return true;
}

}  // namespace

TEST_CASE("state window keeps the newest five states") {
  StateWindow w;
  for (int i = 0; i < 7; ++i) w.push({0.1 * i * i, {}, {}, {}});
  CHECK(w.size() == 5);
  CHECK(w.back(0).t == doctest::Approx(3.6));
  CHECK(w.back(4).t == doctest::Approx(0.4));
  CHECK(w.step_back(0) == doctest::Approx(3.6 - 2.5));
  CHECK_THROWS_AS(w.push({1.0, {}, {}, {}}), std::invalid_argument);
  CHECK_THROWS(w.back(5));
  w.clear();
  CHECK(w.size() == 0);
}

TEST_CASE("zero data gives zero states") {
  const auto mesh = generate_structured(4, StructuredPattern::crisscross);
  const P1Space space(mesh);
  WaveProblem p;
  const NewmarkSolver solver(space, p);
  const auto s0 = solver.initial_state();
  CHECK(all_zero(s0.u));
  CHECK(all_zero(s0.v));
  CHECK(all_zero(s0.f));
  const auto s1 = solver.first_step(s0, 0.1);
  CHECK(all_zero(s1.u));
  CHECK(all_zero(s1.v));
  CHECK(solver.step(s1, 0.2).t == doctest::Approx(0.3));

  std::size_t count = 0;
  solver.run(TimeGrid::uniform(3, 0.3), [&](const StateWindow& w, std::size_t n) {
    CHECK(n == count++);
    CHECK(all_zero(w.back().u));
    CHECK(all_zero(w.back().v));
  });
  CHECK(count == 4);
}

TEST_CASE("initial state reproduces P1 data") {
  const auto mesh = generate_structured(3, StructuredPattern::diagonal);
  const P1Space space(mesh, tight());
  WaveProblem p;
  // u0 = x (1 - x) is not P1; use the hat at the free vertex (1/3, 1/3) through its gradient
  const auto free = space.free_vertices();
  std::vector<double> all(mesh.num_vertices(), 0.0);
  all[free[0]] = 1.0;
  p.grad_u0 = [&](double x, double y) -> std::array<double, 2> {
    for (const auto& t : mesh.triangles()) {
      const auto& a = mesh.vertices()[t[0]];
      const auto& b = mesh.vertices()[t[1]];
      const auto& c = mesh.vertices()[t[2]];
      const double area = signed_area(a, b, c);
      const double l1 = signed_area({x, y}, b, c) / area, l2 = signed_area(a, {x, y}, c) / area;
      if (l1 > 1e-12 && l2 > 1e-12 && 1 - l1 - l2 > 1e-12) {
        const auto g = barycentric_gradients(a, b, c);
        return {all[t[0]] * g[0][0] + all[t[1]] * g[1][0] + all[t[2]] * g[2][0],
                all[t[0]] * g[0][1] + all[t[1]] * g[1][1] + all[t[2]] * g[2][1]};
      }
    }
    return {0, 0};
  };
  const NewmarkSolver solver(space, p);
  const auto s0 = solver.initial_state();
  for (std::size_t i = 0; i < s0.u.values.size(); ++i) CHECK(s0.u.values[i] == doctest::Approx(i == 0 ? 1.0 : 0.0).epsilon(1e-10));
}

TEST_CASE("states satisfy the two-step relation") {
  const auto mesh = generate_structured(8, StructuredPattern::crisscross);
  const P1Space space(mesh, tight());
  const NewmarkSolver solver(space, manufactured::gaussian_problem(0.3));
  double worst = 0.0;
  solver.run(TimeGrid::alternating(0.03, 0.1, 0.3), [&](const StateWindow& w, std::size_t n) {
    if (n >= 2) worst = std::max(worst, two_step_residual(space, w.back(2), w.back(1), w.back(0)));
  });
  CHECK(worst < 1e-10);
}

TEST_CASE("energy is conserved without forcing") {
  const auto mesh = generate_structured(8, StructuredPattern::diagonal);
  const P1Space space(mesh, tight());
  WaveProblem p;
  p.grad_u0 = grad_bubble;
  p.T = 2.0;
  const NewmarkSolver solver(space, p);
  double e0 = -1.0, drift = 0.0;
  solver.run(TimeGrid::decaying(0.01, 2.0), [&](const StateWindow& w, std::size_t) {
    const double e = discrete_energy(space, w.back());
    if (e0 < 0) e0 = e;
    drift = std::max(drift, std::abs(e - e0) / e0);
  });
  CHECK(e0 > 0.0);
  CHECK(drift < 1e-8);
}

TEST_CASE("runs are deterministic") {
  const auto mesh = generate_structured(6, StructuredPattern::crisscross);
  const P1Space space(mesh);
  const NewmarkSolver solver(space, manufactured::gaussian_problem(0.2));
  std::vector<std::vector<double>> first, second;
  solver.run(TimeGrid::uniform(10, 0.2), [&](const StateWindow& w, std::size_t) { first.push_back(w.back().u.values); });
  solver.run(TimeGrid::uniform(10, 0.2), [&](const StateWindow& w, std::size_t) { second.push_back(w.back().u.values); });
  CHECK(first == second);
  // serial and parallel kernels agree bitwise as well
  P1Space::Options so;
  so.exec = Exec::serial;
  const P1Space serial(mesh, so);
  const NewmarkSolver ss(serial, manufactured::gaussian_problem(0.2));
  std::vector<std::vector<double>> third;
  ss.run(TimeGrid::uniform(10, 0.2), [&](const StateWindow& w, std::size_t) { third.push_back(w.back().u.values); });
  CHECK(first == third);
}

TEST_CASE("system solves are cached per step size") {
  const auto mesh = generate_structured(4, StructuredPattern::diagonal);
  const P1Space space(mesh);
  const NewmarkSolver solver(space, manufactured::gaussian_problem(1.0));
  solver.run(TimeGrid::alternating_steps(20, 0.1, 1.0), [](const StateWindow&, std::size_t) {});
  CHECK(solver.system_stats().calls == 20);
}

TEST_CASE("grid times are kept exactly") {
  const auto mesh = generate_structured(3, StructuredPattern::diagonal);
  const P1Space space(mesh);
  const NewmarkSolver solver(space, manufactured::gaussian_problem(1.0));
  const auto grid = TimeGrid::decaying(0.02, 1.0);
  solver.run(grid, [&](const StateWindow& w, std::size_t n) { CHECK(w.back().t == grid.time(n)); });
}

TEST_CASE("problem validation") {
  const auto mesh = generate_structured(2, StructuredPattern::diagonal);
  const P1Space space(mesh);
  WaveProblem p;
  p.T = -1.0;
  CHECK_THROWS_AS(NewmarkSolver(space, p), std::invalid_argument);
}
