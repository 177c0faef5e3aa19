#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wavest/estimators.hpp"
#include "wavest/mesh.hpp"
#include "wavest/newmark.hpp"
#include "wavest/time_grid.hpp"

namespace wavest::harness {

enum class Kind { ode, wave };

struct GridSpec {
  std::string rule = "uniform";  // uniform | alt10 | alt100 | decay
  std::size_t N = 100;
  double tau0 = 0.01;
  double taustar = 0.0;  // alt rules: used instead of N when > 0
  double decay_cap = 10.0;  // <= 0 selects the literal decaying rule
};

/// Validates the rule parameters and builds a grid on [0, T].
TimeGrid build_grid(const GridSpec& spec, double T);

struct ExperimentConfig {
  Kind kind = Kind::ode;
  double A = 100.0;
  GridSpec grid;
  std::string mesh = "structured:n=20:pattern=crisscross";
  double T = 1.0;
  double tol = 1e-10;
  int quadrature_degree = 5;
  est::Payload payload = est::Payload::sqrt_squares;
  std::string out;
  std::string trace;

  void validate() const;
};

/// Applies one `key = value` setting. Keys match the CLI flag names
/// (A, N, grid, tau0, taustar, decay_cap, mesh, T, tol, quadrature, payload,
/// out, trace, kind). Throws std::invalid_argument on unknown keys or bad values.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Parses a line-oriented config file; `#` starts a comment.
void apply_config_text(ExperimentConfig& config, const std::string& text);

est::Payload parse_payload(const std::string& s);
std::string to_string(est::Payload p);

/// `structured:n=K:pattern=diagonal|crisscross` or `file:PATH`.
std::unique_ptr<Mesh> load_mesh(const std::string& spec, std::vector<std::string>* warnings = nullptr);

struct OdeRow {
  double A = 0.0;
  std::size_t N = 0;
  double eta_T = 0.0;
  double eta_hat_T = 0.0;
  double e = 0.0;
  double ei_T = 0.0;
  double ei_hat_T = 0.0;
};

/// Cosine test case u = cos(sqrt(A) t), f = 0.
OdeRow run_ode_row(const ExperimentConfig& config);
std::vector<OdeRow> run_ode_table(const std::vector<ExperimentConfig>& configs);

/// Rows (A, N, rule) of the three toy-model tables; `table` in 1..3.
std::vector<ExperimentConfig> paper_table_configs(int table);

struct WaveRow {
  double h = 0.0;
  double tau0 = 0.0;
  double ei = 0.0;
  double ei_hat = 0.0;
  double eta_T = 0.0;
  double eta_hat_T = 0.0;
  double eta_S = 0.0;
  double tau_F = 0.0;
  std::size_t N_ts = 0;
  double e = 0.0;
};

struct TracePoint {
  std::size_t n = 0;
  double t = 0.0;
  double eta_T = 0.0;      // sum_{k<n} tau_k eta_T(t_k)
  double eta_hat_T = 0.0;  // sum_{3<=k<n} tau_k eta_hat_T(t_k)
  double error = 0.0;      // running max of the energy error
};

struct WaveResult {
  WaveRow row;
  est::SpaceParts space;
  bool effectivity_defined = true;
  std::size_t auxiliary_solves = 0;
  std::vector<TracePoint> trace;
};

/// (||v_h - u_t||^2_L2 + |u_h - u|^2_H1)^(1/2) at the state's time.
double energy_error_at(const P1Space& space, const wave::WaveState& s, const wave::ExactWave& exact,
                       const QuadratureRule& rule);

/// max over a retained trajectory.
double wave_energy_error(const P1Space& space, const std::vector<wave::WaveState>& states,
                         const wave::ExactWave& exact, const QuadratureRule& rule);

/// Runs `problem` on `mesh` with estimators and error tracking.
WaveResult run_wave(const Mesh& mesh, const wave::WaveProblem& problem, const TimeGrid& grid,
                    const ExperimentConfig& config);
/// Gaussian manufactured solution on the configured mesh and grid.
WaveResult run_wave_experiment(const ExperimentConfig& config);

/// 6 significant digits; "nan" for undefined values.
std::string format_number(double x);
void write_ode_csv(std::ostream& os, const std::vector<OdeRow>& rows);
void write_wave_csv(std::ostream& os, const std::vector<WaveRow>& rows);
void write_trace_csv(std::ostream& os, const std::vector<TracePoint>& trace);

inline constexpr const char* ode_header = "A,N,eta_T,eta_hat_T,e,ei_T,ei_hat_T";
inline constexpr const char* wave_header = "h,tau0,ei,ei_hat,eta_T,eta_hat_T,eta_S,tau_F,N_ts,e";
inline constexpr const char* trace_header = "n,t,eta_T,eta_hat_T,e";

struct BenchReport {
  std::size_t vertices = 0;
  std::size_t steps = 0;
  double eta3_seconds_per_step = 0.0;
  double eta5_seconds_per_step = 0.0;
  std::size_t eta3_aux_solves = 0;
  std::size_t eta5_aux_solves = 0;
};

/// Times the two time-estimator paths on the configured mesh over the
/// configured grid, after `warmup` untimed steps.
BenchReport benchmark_estimators(const ExperimentConfig& config, std::size_t warmup = 2);

inline constexpr const char* bench_header =
    "vertices,steps,eta3_seconds_per_step,eta5_seconds_per_step,eta3_aux_solves,eta5_aux_solves";
void write_bench_csv(std::ostream& os, const BenchReport& r);
BenchReport parse_bench_csv(const std::string& text);

}  // namespace wavest::harness
