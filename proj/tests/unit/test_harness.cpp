#include <cmath>
#include <stdexcept>
#include <sstream>

#include "doctest.h"
#include "wavest/harness.hpp"
#include "wavest/manufactured.hpp"

using namespace wavest;
using namespace wavest::harness;
using manufactured::Gaussian;

TEST_CASE("config text and settings") {
  ExperimentConfig c;
  apply_config_text(c,
                    "# toy model\n"
                    "kind = ode\n"
                    "A = 1000   # stiffness\n"
                    "\n"
                    "grid = alt10\n"
                    "N=1816\n"
                    "payload = paper-literal\n");
  CHECK(c.kind == Kind::ode);
  CHECK(c.A == 1000.0);
  CHECK(c.grid.rule == "alt10");
  CHECK(c.grid.N == 1816);
  CHECK(c.payload == est::Payload::paper_literal);
  CHECK_NOTHROW(c.validate());

  apply_setting(c, "mesh", "structured:n=8:pattern=diagonal");
  apply_setting(c, "decay_cap", "0");
  CHECK(c.grid.decay_cap == 0.0);
  CHECK_THROWS_AS(apply_setting(c, "bogus", "1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(c, "A", "ten"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(c, "N", "-3"), std::invalid_argument);
  try {
    apply_config_text(c, "A = 1\nthis line is wrong\n");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  ExperimentConfig bad;
  bad.A = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK(parse_payload(to_string(est::Payload::sqrt_squares)) == est::Payload::sqrt_squares);
  CHECK_THROWS(parse_payload("cubes"));
}

TEST_CASE("mesh specs") {
  CHECK(load_mesh("structured:n=3:pattern=crisscross")->num_triangles() == 36);
  CHECK(load_mesh("structured:n=3")->num_triangles() == 18);
  CHECK_THROWS(load_mesh("structured:n=0"));
  CHECK_THROWS(load_mesh("sphere:n=3"));
  CHECK_THROWS(load_mesh("file:/nonexistent/mesh.txt"));
}

TEST_CASE("Gaussian data") {
  CHECK(Gaussian::u(0.0, 0.3, 0.3) == 1.0);
  CHECK(Gaussian::u(1.0, 0.7, 0.7) == 1.0);
  CHECK(Gaussian::u(0.0, 0.0, 0.3) < 1e-3);
  // f = u_tt - Laplace u against fourth-order finite differences
  const double h = 1e-3;
  for (double t : {0.0, 0.37, 0.8})
    for (auto [x, y] : {std::pair{0.3, 0.3}, std::pair{0.35, 0.28}, std::pair{0.6, 0.5}}) {
      auto d2 = [h](auto g) { return (-g(2 * h) + 16 * g(h) - 30 * g(0.0) + 16 * g(-h) - g(-2 * h)) / (12 * h * h); };
      const double utt = d2([&](double s) { return Gaussian::u(t + s, x, y); });
      const double lap = d2([&](double s) { return Gaussian::u(t, x + s, y); }) + d2([&](double s) { return Gaussian::u(t, x, y + s); });
      CHECK(std::abs(Gaussian::f(t, x, y) - (utt - lap)) < 1e-6 * (1 + std::abs(lap)));
      const double ut = (Gaussian::u(t + h, x, y) - Gaussian::u(t - h, x, y)) / (2 * h);
      CHECK(Gaussian::u_t(t, x, y) == doctest::Approx(ut).epsilon(1e-5));
      const auto g = Gaussian::grad_u(t, x, y);
      CHECK(g[0] == doctest::Approx((Gaussian::u(t, x + h, y) - Gaussian::u(t, x - h, y)) / (2 * h)).epsilon(1e-4));
    }
}

TEST_CASE("ODE table rows") {
  ExperimentConfig c;
  c.A = 100;
  c.grid.N = 1000;
  const auto r = run_ode_row(c);
  CHECK(std::round(r.ei_T * 10) / 10 == doctest::Approx(2.5));
  CHECK(std::abs(r.ei_hat_T - 2.49) <= 0.011);

  const auto t2 = paper_table_configs(2);
  REQUIRE(t2.size() == 9);
  const auto rows = run_ode_table({t2[4]});
  CHECK(rows[0].A == 1000.0);
  CHECK(rows[0].N == 1816);
  CHECK(std::abs(rows[0].ei_T - 1.17) <= 0.011);
  CHECK(std::abs(rows[0].ei_hat_T - 1.16) <= 0.011);
  CHECK_THROWS(paper_table_configs(4));
}

TEST_CASE("CSV output is deterministic") {
  const auto cfgs = paper_table_configs(1);
  std::ostringstream a, b;
  write_ode_csv(a, run_ode_table({cfgs[0], cfgs[1], cfgs[3]}));
  write_ode_csv(b, run_ode_table({cfgs[0], cfgs[1], cfgs[3]}));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind(std::string(ode_header) + "\n", 0) == 0);
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(0.0832) == "0.0832");
}

TEST_CASE("zero data wave run flags the undefined effectivity") {
  const auto mesh = generate_structured(4, StructuredPattern::crisscross);
  wave::WaveProblem p;
  p.T = 0.1;
  const auto zero = [](double, double, double) { return 0.0; };
  p.exact = wave::ExactWave{zero, zero, [](double, double, double) { return std::array<double, 2>{0.0, 0.0}; }};
  ExperimentConfig c;
  c.kind = Kind::wave;
  const auto res = run_wave(mesh, p, TimeGrid::uniform(8, 0.1), c);
  CHECK_FALSE(res.effectivity_defined);
  CHECK(res.row.e == 0.0);
  CHECK(res.row.eta_T == 0.0);
  CHECK(res.row.eta_hat_T == 0.0);
  CHECK(res.row.eta_S == 0.0);
  CHECK(std::isnan(res.row.ei));
  CHECK(res.trace.size() == 9);
}

TEST_CASE("wave run on the Gaussian") {
  ExperimentConfig c;
  c.kind = Kind::wave;
  c.mesh = "structured:n=8:pattern=crisscross";
  c.grid.rule = "decay";
  c.grid.tau0 = 0.02;
  c.T = 0.3;
  const auto res = run_wave_experiment(c);
  CHECK(res.effectivity_defined);
  CHECK(res.row.e > 0.0);
  CHECK(res.row.ei >= 1.0);
  CHECK(res.row.eta_S == doctest::Approx(res.space.s1 + res.space.s2));
  CHECK(res.row.N_ts == res.trace.size() - 1);
  for (std::size_t i = 1; i < res.trace.size(); ++i) {
    CHECK(res.trace[i].eta_T >= res.trace[i - 1].eta_T);
    CHECK(res.trace[i].error >= res.trace[i - 1].error);
  }
  std::ostringstream a, b;
  write_wave_csv(a, {res.row});
  write_wave_csv(b, {run_wave_experiment(c).row});
  CHECK(a.str() == b.str());
}

TEST_CASE("energy error of the interpolant is small but not zero") {
  const auto mesh = generate_structured(16, StructuredPattern::crisscross);
  const P1Space space(mesh);
  const auto p = manufactured::gaussian_problem(1.0);
  wave::WaveState s;
  s.t = 0.0;
  s.u = interpolate(space, [](double x, double y) { return Gaussian::u(0.0, x, y); }, FieldKind::h10);
  s.v = interpolate(space, [](double x, double y) { return Gaussian::u_t(0.0, x, y); }, FieldKind::h10);
  s.f = space.zero(FieldKind::l2);
  const double e = energy_error_at(space, s, *p.exact, QuadratureRule::seven_point());
  CHECK(e > 0.0);
  CHECK(e < 2.0);
}

TEST_CASE("bench report round-trips through CSV") {
  BenchReport r{10201, 20, 8.0e-4, 1.3e-4, 19, 0};
  std::ostringstream os;
  write_bench_csv(os, r);
  const auto back = parse_bench_csv(os.str());
  CHECK(back.vertices == r.vertices);
  CHECK(back.steps == r.steps);
  CHECK(back.eta3_seconds_per_step == doctest::Approx(r.eta3_seconds_per_step));
  CHECK(back.eta5_seconds_per_step == doctest::Approx(r.eta5_seconds_per_step));
  CHECK(back.eta3_aux_solves == 19);
  CHECK(back.eta5_aux_solves == 0);
  CHECK_THROWS(parse_bench_csv("garbage"));
}

TEST_CASE("estimator benchmark counts solves") {
  ExperimentConfig c;
  c.kind = Kind::wave;
  c.mesh = "structured:n=10";
  c.grid.rule = "uniform";
  c.grid.N = 12;
  c.T = 0.12;
  const auto r = benchmark_estimators(c, 2);
  CHECK(r.vertices == 121);
  CHECK(r.eta3_aux_solves == 11);
  CHECK(r.eta5_aux_solves == 0);
  CHECK(r.eta3_seconds_per_step > 0.0);
  CHECK(r.eta5_seconds_per_step > 0.0);
}
