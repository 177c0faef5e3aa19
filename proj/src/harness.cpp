#include "wavest/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wavest/manufactured.hpp"
#include "wavest/toy_ode.hpp"

namespace wavest::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw std::invalid_argument(key + ": not a number: '" + v + "'");
  return x;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (!(x >= 0.0) || x != std::floor(x)) throw std::invalid_argument(key + ": not a count: '" + v + "'");
  return static_cast<std::size_t>(x);
}

double safe_effectivity(double e, double eta) {
  return e == 0.0 ? std::numeric_limits<double>::quiet_NaN() : ode::effectivity(e, eta);
}

}  // namespace

TimeGrid build_grid(const GridSpec& g, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("final time must be positive");
  if (g.rule == "uniform") {
    if (g.N == 0) throw std::invalid_argument("uniform grid needs N >= 1");
    return TimeGrid::uniform(g.N, T);
  }
  if (g.rule == "alt10" || g.rule == "alt100") {
    const double r = g.rule == "alt10" ? 0.1 : 0.01;
    if (g.taustar > 0.0) return TimeGrid::alternating(g.taustar, r, T);
    if (g.taustar < 0.0) throw std::invalid_argument("taustar must be positive");
    return TimeGrid::alternating_steps(g.N, r, T);
  }
  if (g.rule == "decay") {
    if (!(g.tau0 > 0.0)) throw std::invalid_argument("decaying grid needs tau0 > 0");
    return TimeGrid::decaying(g.tau0, T, g.decay_cap);
  }
  throw std::invalid_argument("unknown grid rule '" + g.rule + "' (uniform|alt10|alt100|decay)");
}

void ExperimentConfig::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (kind == Kind::ode && !(A > 0.0)) throw std::invalid_argument("A must be positive");
  if (quadrature_degree < 1) throw std::invalid_argument("quadrature degree must be >= 1");
}

est::Payload parse_payload(const std::string& s) {
  if (s == "sqrt-squares") return est::Payload::sqrt_squares;
  if (s == "paper-literal") return est::Payload::paper_literal;
  throw std::invalid_argument("payload must be sqrt-squares or paper-literal, got '" + s + "'");
}

std::string to_string(est::Payload p) {
  return p == est::Payload::sqrt_squares ? "sqrt-squares" : "paper-literal";
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "kind") {
    if (value == "ode") c.kind = Kind::ode;
    else if (value == "wave") c.kind = Kind::wave;
    else throw std::invalid_argument("kind must be ode or wave");
  } else if (key == "A") c.A = to_double(key, value);
  else if (key == "N") c.grid.N = to_count(key, value);
  else if (key == "grid") c.grid.rule = value;
  else if (key == "tau0") c.grid.tau0 = to_double(key, value);
  else if (key == "taustar") c.grid.taustar = to_double(key, value);
  else if (key == "decay_cap") c.grid.decay_cap = to_double(key, value);
  else if (key == "mesh") c.mesh = value;
  else if (key == "T") c.T = to_double(key, value);
  else if (key == "tol") c.tol = to_double(key, value);
  else if (key == "quadrature") c.quadrature_degree = static_cast<int>(to_count(key, value));
  else if (key == "payload") c.payload = parse_payload(value);
  else if (key == "out") c.out = value;
  else if (key == "trace") c.trace = value;
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

void apply_config_text(ExperimentConfig& c, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    try {
      apply_setting(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::unique_ptr<Mesh> load_mesh(const std::string& spec, std::vector<std::string>* warnings) {
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open mesh file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    auto imported = import_mesh(ss.str());
    if (warnings) *warnings = imported.warnings;
    return std::make_unique<Mesh>(std::move(imported.mesh));
  }
  if (spec.rfind("structured", 0) == 0) {
    std::size_t n = 0;
    StructuredPattern pattern = StructuredPattern::diagonal;
    std::istringstream parts(spec);
    std::string part;
    std::getline(parts, part, ':');
    while (std::getline(parts, part, ':')) {
      const auto eq = part.find('=');
      const std::string k = part.substr(0, eq);
      const std::string v = eq == std::string::npos ? "" : part.substr(eq + 1);
      if (k == "n") n = to_count("mesh n", v);
      else if (k == "pattern" && v == "diagonal") pattern = StructuredPattern::diagonal;
      else if (k == "pattern" && v == "crisscross") pattern = StructuredPattern::crisscross;
      else throw std::invalid_argument("bad structured mesh option '" + part + "'");
    }
    if (n == 0) throw std::invalid_argument("structured mesh needs n=K with K >= 1");
    return std::make_unique<Mesh>(generate_structured(n, pattern));
  }
  throw std::invalid_argument("mesh spec must start with structured: or file:");
}

OdeRow run_ode_row(const ExperimentConfig& c) {
  c.validate();
  const auto grid = build_grid(c.grid, c.T);
  auto problem = ode::OdeProblem::cosine(c.A, c.T);
  problem.f = [](double) { return 0.0; };
  const auto traj = ode::solve_newmark_ode(problem, grid);
  const std::size_t N = grid.num_steps();
  OdeRow row;
  row.A = c.A;
  row.N = N;
  row.eta_T = ode::eta3_ode_cumulative(traj, c.A, N);
  row.eta_hat_T = ode::eta5_ode_cumulative(traj, c.A, N);
  row.e = ode::ode_energy_error(traj, *problem.exact, c.A);
  row.ei_T = safe_effectivity(row.e, row.eta_T);
  row.ei_hat_T = safe_effectivity(row.e, row.eta_hat_T);
  return row;
}

std::vector<OdeRow> run_ode_table(const std::vector<ExperimentConfig>& configs) {
  std::vector<OdeRow> rows(configs.size());
  std::vector<std::string> errors(configs.size());
  const auto n = static_cast<std::ptrdiff_t>(configs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      rows[k] = run_ode_row(configs[k]);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (std::size_t k = 0; k < errors.size(); ++k)
    if (!errors[k].empty())
      throw std::runtime_error("row " + std::to_string(k) + " (A=" + format_number(configs[k].A) +
                               ", N=" + std::to_string(configs[k].grid.N) + "): " + errors[k]);
  return rows;
}

std::vector<ExperimentConfig> paper_table_configs(int table) {
  std::vector<std::size_t> Ns;
  std::string rule;
  switch (table) {
    case 1: Ns = {100, 1000, 10000}; rule = "uniform"; break;
    case 2: Ns = {180, 1816, 18180}; rule = "alt10"; break;
    case 3: Ns = {196, 1978, 19800}; rule = "alt100"; break;
    default: throw std::invalid_argument("table must be 1, 2 or 3");
  }
  std::vector<ExperimentConfig> out;
  for (double A : {100.0, 1000.0, 10000.0})
    for (std::size_t N : Ns) {
      ExperimentConfig c;
      c.kind = Kind::ode;
      c.A = A;
      c.grid.rule = rule;
      c.grid.N = N;
      out.push_back(c);
    }
  return out;
}

double energy_error_at(const P1Space& space, const wave::WaveState& s, const wave::ExactWave& exact,
                       const QuadratureRule& rule) {
  const double t = s.t;
  const Exec exec = space.options().exec;
  const double ev = l2_error(space.mesh(), space.all_values(s.v),
                             [&](double x, double y) { return exact.u_t(t, x, y); }, rule, exec);
  const double eu = h1_error(space.mesh(), space.all_values(s.u),
                             [&](double x, double y) { return exact.grad_u(t, x, y); }, rule, exec);
  return std::sqrt(ev * ev + eu * eu);
}

double wave_energy_error(const P1Space& space, const std::vector<wave::WaveState>& states,
                         const wave::ExactWave& exact, const QuadratureRule& rule) {
  double e = 0.0;
  for (const auto& s : states) e = std::max(e, energy_error_at(space, s, exact, rule));
  return e;
}

WaveResult run_wave(const Mesh& mesh, const wave::WaveProblem& problem, const TimeGrid& grid,
                    const ExperimentConfig& c) {
  P1Space::Options opt;
  opt.tol = c.tol;
  opt.rule = QuadratureRule::of_degree(c.quadrature_degree);
  P1Space space(mesh, opt);
  wave::NewmarkSolver solver(space, problem);
  est::WaveEstimator::Options eo;
  eo.payload = c.payload;
  est::WaveEstimator estimator(space, eo);

  WaveResult res;
  double e = 0.0;
  solver.run(grid, [&](const wave::StateWindow& w, std::size_t n) {
    estimator.on_state(w, n);
    if (problem.exact) e = std::max(e, energy_error_at(space, w.back(), *problem.exact, opt.rule));
    res.trace.push_back({n, w.back().t, estimator.eta3_total(), estimator.eta5_total(), e});
  });
  res.space = estimator.space_parts();
  res.auxiliary_solves = estimator.auxiliary_solves();
  auto& r = res.row;
  r.h = mesh.h();
  r.tau0 = grid.step(0);
  r.eta_T = estimator.eta3_total();
  r.eta_hat_T = estimator.eta5_total();
  r.eta_S = res.space.total();
  r.tau_F = grid.final_step();
  r.N_ts = grid.num_steps();
  r.e = e;
  res.effectivity_defined = e > 0.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.ei = res.effectivity_defined ? (r.eta_T + r.eta_S) / e : nan;
  r.ei_hat = res.effectivity_defined ? (r.eta_hat_T + r.eta_S) / e : nan;
  return res;
}

WaveResult run_wave_experiment(const ExperimentConfig& c) {
  c.validate();
  const auto mesh = load_mesh(c.mesh);
  return run_wave(*mesh, manufactured::gaussian_problem(c.T), build_grid(c.grid, c.T), c);
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void write_ode_csv(std::ostream& os, const std::vector<OdeRow>& rows) {
  os << ode_header << '\n';
  for (const auto& r : rows)
    os << format_number(r.A) << ',' << r.N << ',' << format_number(r.eta_T) << ','
       << format_number(r.eta_hat_T) << ',' << format_number(r.e) << ',' << format_number(r.ei_T) << ','
       << format_number(r.ei_hat_T) << '\n';
}

void write_wave_csv(std::ostream& os, const std::vector<WaveRow>& rows) {
  os << wave_header << '\n';
  for (const auto& r : rows)
    os << format_number(r.h) << ',' << format_number(r.tau0) << ',' << format_number(r.ei) << ','
       << format_number(r.ei_hat) << ',' << format_number(r.eta_T) << ',' << format_number(r.eta_hat_T)
       << ',' << format_number(r.eta_S) << ',' << format_number(r.tau_F) << ',' << r.N_ts << ','
       << format_number(r.e) << '\n';
}

void write_trace_csv(std::ostream& os, const std::vector<TracePoint>& trace) {
  os << trace_header << '\n';
  for (const auto& p : trace)
    os << p.n << ',' << format_number(p.t) << ',' << format_number(p.eta_T) << ','
       << format_number(p.eta_hat_T) << ',' << format_number(p.error) << '\n';
}

BenchReport benchmark_estimators(const ExperimentConfig& c, std::size_t warmup) {
  c.validate();
  using clock = std::chrono::steady_clock;
  const auto mesh = load_mesh(c.mesh);
  P1Space::Options opt;
  opt.tol = c.tol;
  P1Space space(*mesh, opt);
  wave::NewmarkSolver solver(space, manufactured::gaussian_problem(c.T));
  const auto grid = build_grid(c.grid, c.T);

  BenchReport r;
  r.vertices = mesh->num_vertices();
  double t3 = 0.0, t5 = 0.0;
  std::size_t timed = 0;
  const auto& aux = space.mass_free_solver();
  solver.run(grid, [&](const wave::StateWindow& w, std::size_t n) {
    if (n < 2) return;
    const bool time_it = n >= 4 + warmup;
    const auto before3 = aux.stats().calls;
    const auto a = clock::now();
    est::eta3_step(space, w.back(2), w.back(1), w.back(0), c.payload);
    const auto b = clock::now();
    r.eta3_aux_solves += aux.stats().calls - before3;
    if (n < 4) return;
    const std::array<const wave::WaveState*, 5> win{&w.back(4), &w.back(3), &w.back(2), &w.back(1), &w.back(0)};
    const auto before5 = aux.stats().calls;
    const auto d = clock::now();
    est::eta5_step(space, win, c.payload);
    const auto e = clock::now();
    r.eta5_aux_solves += aux.stats().calls - before5;
    if (time_it) {
      t3 += std::chrono::duration<double>(b - a).count();
      t5 += std::chrono::duration<double>(e - d).count();
      ++timed;
    }
  });
  r.steps = grid.num_steps();
  if (timed > 0) {
    r.eta3_seconds_per_step = t3 / static_cast<double>(timed);
    r.eta5_seconds_per_step = t5 / static_cast<double>(timed);
  }
  return r;
}

void write_bench_csv(std::ostream& os, const BenchReport& r) {
  os << bench_header << '\n'
     << r.vertices << ',' << r.steps << ',' << format_number(r.eta3_seconds_per_step) << ','
     << format_number(r.eta5_seconds_per_step) << ',' << r.eta3_aux_solves << ',' << r.eta5_aux_solves << '\n';
}

BenchReport parse_bench_csv(const std::string& text) {
  std::istringstream in(text);
  std::string header, line;
  if (!std::getline(in, header) || header != bench_header) throw std::invalid_argument("bad bench header");
  if (!std::getline(in, line)) throw std::invalid_argument("missing bench row");
  std::vector<std::string> f;
  std::istringstream row(line);
  for (std::string cell; std::getline(row, cell, ',');) f.push_back(cell);
  if (f.size() != 6) throw std::invalid_argument("bench row needs 6 fields");
  BenchReport r;
  r.vertices = to_count("vertices", f[0]);
  r.steps = to_count("steps", f[1]);
  r.eta3_seconds_per_step = to_double("eta3_seconds_per_step", f[2]);
  r.eta5_seconds_per_step = to_double("eta5_seconds_per_step", f[3]);
  r.eta3_aux_solves = to_count("eta3_aux_solves", f[4]);
  r.eta5_aux_solves = to_count("eta5_aux_solves", f[5]);
  return r;
}

}  // namespace wavest::harness
