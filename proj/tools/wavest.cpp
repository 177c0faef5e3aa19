// wavest: Newmark wave solver and time/space error estimators.
//
//   wavest ode   --A 100 --N 1000 --grid uniform
//   wavest wave  --mesh structured:n=20:pattern=crisscross --grid decay --tau0 0.01 --trace t.csv
//   wavest table 2 --out table2.csv
//   wavest bench --mesh structured:n=100 --N 40
//
// Every run accepts --config FILE with `key = value` lines; flags override it.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wavest/harness.hpp"

using namespace wavest;
using harness::ExperimentConfig;

namespace {

struct Flags {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common(CLI::App* app, Flags& flags) {
  app->add_option("--config", flags.config_file, "key = value settings file");
  auto setting = [app, &flags](const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [&flags, key](const std::string& v) { flags.overrides.emplace_back(key, v); }, help);
  };
  setting("--A", "A", "ODE stiffness");
  setting("--N", "N", "number of time steps (uniform, alt10, alt100)");
  setting("--grid", "grid", "uniform | alt10 | alt100 | decay");
  setting("--tau0", "tau0", "initial step of the decaying grid");
  setting("--taustar", "taustar", "long step of the alternating grids");
  setting("--decay-cap", "decay_cap", "cap on t^(-1/2) in the decaying grid; 0 = literal rule");
  setting("--mesh", "mesh", "structured:n=K:pattern=diagonal|crisscross or file:PATH");
  setting("--T", "T", "final time");
  setting("--tol", "tol", "relative CG tolerance");
  setting("--quadrature", "quadrature", "quadrature degree for loads and errors");
  setting("--payload", "payload", "sqrt-squares | paper-literal");
  setting("--out", "out", "CSV output path (default stdout)");
  setting("--trace", "trace", "per-step trace CSV path");
}

ExperimentConfig resolve(const Flags& flags, harness::Kind kind) {
  ExperimentConfig c;
  c.kind = kind;
  if (kind == harness::Kind::wave) c.grid.rule = "decay";
  if (!flags.config_file.empty()) {
    std::ifstream in(flags.config_file);
    if (!in) throw std::invalid_argument("cannot open config file '" + flags.config_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    harness::apply_config_text(c, ss.str());
  }
  for (const auto& [k, v] : flags.overrides) harness::apply_setting(c, k, v);
  c.validate();
  return c;
}

template <class Fn>
void with_output(const std::string& path, Fn write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newmark wave solver with a posteriori time and space estimators"};
  app.require_subcommand(1);

  Flags ode_flags, wave_flags, table_flags, bench_flags;
  auto* ode_cmd = app.add_subcommand("ode", "toy model u'' + A u = 0, u = cos(sqrt(A) t)");
  add_common(ode_cmd, ode_flags);
  auto* wave_cmd = app.add_subcommand("wave", "Gaussian test case on the unit square");
  add_common(wave_cmd, wave_flags);
  auto* table_cmd = app.add_subcommand("table", "all rows of toy-model table 1, 2 or 3");
  int table = 1;
  table_cmd->add_option("table", table, "1 = uniform, 2 = alt10, 3 = alt100")->required()->check(CLI::Range(1, 3));
  add_common(table_cmd, table_flags);
  auto* bench_cmd = app.add_subcommand("bench", "per-step cost of the 3-point and 5-point estimators");
  std::size_t warmup = 2;
  bench_cmd->add_option("--warmup", warmup, "untimed steps before measuring");
  add_common(bench_cmd, bench_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ode_cmd) {
      const auto c = resolve(ode_flags, harness::Kind::ode);
      const auto row = harness::run_ode_row(c);
      with_output(c.out, [&](std::ostream& os) { harness::write_ode_csv(os, {row}); });
    } else if (*table_cmd) {
      const auto base = resolve(table_flags, harness::Kind::ode);
      auto configs = harness::paper_table_configs(table);
      for (auto& c : configs) c.T = base.T;
      const auto rows = harness::run_ode_table(configs);
      with_output(base.out, [&](std::ostream& os) { harness::write_ode_csv(os, rows); });
    } else if (*wave_cmd) {
      auto c = resolve(wave_flags, harness::Kind::wave);
      const auto res = harness::run_wave_experiment(c);
      with_output(c.out, [&](std::ostream& os) { harness::write_wave_csv(os, {res.row}); });
      if (!c.trace.empty())
        with_output(c.trace, [&](std::ostream& os) { harness::write_trace_csv(os, res.trace); });
      std::cerr << "eta_S1 = " << harness::format_number(res.space.s1)
                << ", eta_S2 = " << harness::format_number(res.space.s2)
                << ", auxiliary mass solves = " << res.auxiliary_solves << '\n';
      if (!res.effectivity_defined) {
        std::cerr << "error: true error is zero, effectivity indices are undefined\n";
        return 2;
      }
    } else if (*bench_cmd) {
      const auto c = resolve(bench_flags, harness::Kind::wave);
      const auto r = harness::benchmark_estimators(c, warmup);
      with_output(c.out, [&](std::ostream& os) { harness::write_bench_csv(os, r); });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
