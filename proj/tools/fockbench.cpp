/**
 * Copyright 2026 The Fockbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fockbench/circuit.hpp"
#include "fockbench/errors.hpp"
#include "fockbench/gates.hpp"
#include "fockbench/reproduce.hpp"
#include "fockbench/schemes.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace fockbench;

// Exit codes: 0 success, 1 failed checks, 2 input/parse errors,
// 3 environment/capacity errors.
constexpr int kExitOk = 0;
constexpr int kExitFailedChecks = 1;
constexpr int kExitInputError = 2;
constexpr int kExitEnvironmentError = 3;

std::string format_g17(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int resolve_cutoff(std::optional<int> flag_value) {
  if (flag_value.has_value()) return *flag_value;
  if (const char* env = std::getenv("FOCKBENCH_CUTOFF")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1000) {
      return static_cast<int>(v);
    }
    std::cerr << "warning: ignoring invalid FOCKBENCH_CUTOFF value\n";
  }
  return kDefaultPhotonCutoff;
}

struct RunReport {
  std::string spec_path;
  double herald_probability = 0.0;
  std::string conditional_state;
  std::vector<CheckResult> checks;
  double wall_time_ms = 0.0;
};

json report_to_json(const RunReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back(json{{"name", c.name},
                          {"pass", c.pass},
                          {"measured", c.measured},
                          {"expected", c.expected},
                          {"tolerance", c.tolerance}});
  }
  return json{{"spec_path", report.spec_path},
              {"herald_probability", report.herald_probability},
              {"conditional_state", report.conditional_state},
              {"checks", checks},
              {"wall_time_ms", report.wall_time_ms}};
}

void print_human_report(const RunReport& report, bool dump_state) {
  std::cout << "spec: " << report.spec_path << '\n';
  std::cout << "herald probability: " << format_g17(report.herald_probability)
            << '\n';
  if (!report.checks.empty()) {
    std::cout << "checks:\n";
    for (const auto& c : report.checks) {
      std::cout << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name
                << "  measured=" << format_g17(c.measured)
                << " expected=" << format_g17(c.expected)
                << " tolerance=" << format_g17(c.tolerance) << '\n';
    }
  }
  if (dump_state) {
    std::cout << "conditional state:\n" << report.conditional_state;
  }
  std::cout << "wall time: " << report.wall_time_ms << " ms\n";
}

bool all_checks_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

void print_diagnostics(const std::vector<ParseDiagnostic>& diagnostics,
                       const std::string& path) {
  for (const auto& d : diagnostics) {
    std::cerr << path << ": " << to_string(d) << '\n';
  }
}

int command_run(const std::string& spec_path, bool as_json, bool dump_state,
                bool oracle_mode, std::optional<int> cutoff_flag) {
  const auto start_time = std::chrono::steady_clock::now();

  std::string source;
  try {
    source = read_text_file(spec_path);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  const ParseResult parsed = parse(source);
  print_diagnostics(parsed.diagnostics, spec_path);
  if (!parsed.ok()) return kExitInputError;

  const LowerResult lowered = lower(*parsed.spec, oracle_mode);
  print_diagnostics(lowered.diagnostics, spec_path);
  if (!lowered.ok()) return kExitInputError;

  std::vector<EmbeddedCheck> embedded;
  try {
    embedded = extract_embedded_checks(source);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  HeraldResult hr;
  try {
    hr = run_lowered(*lowered.circuit, resolve_cutoff(cutoff_flag));
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEnvironmentError;
  }

  RunReport report;
  report.spec_path = spec_path;
  report.herald_probability = hr.probability;
  report.conditional_state = state_to_text(hr.conditional_state);
  for (const EmbeddedCheck& check : embedded) {
    if (check.name != "herald_probability") {
      std::cerr << "error: unsupported check `" << check.name << "` at line "
                << check.line << '\n';
      return kExitInputError;
    }
    CheckResult result;
    result.name = check.name;
    result.measured = hr.probability;
    result.expected = check.expected;
    result.tolerance = check.tolerance;
    result.pass = std::abs(result.measured - result.expected) <=
                  result.tolerance;
    report.checks.push_back(std::move(result));
  }
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start_time)
          .count();

  if (as_json) {
    std::cout << report_to_json(report).dump(2) << '\n';
  } else {
    print_human_report(report, dump_state);
  }
  return all_checks_pass(report.checks) ? kExitOk : kExitFailedChecks;
}

int command_reproduce(const std::string& figure, bool as_json,
                      const ReproContext& ctx) {
  const auto start_time = std::chrono::steady_clock::now();
  CriterionReport criterion;
  if (figure == "ns") {
    criterion = reproduce_ns(ctx);
  } else if (figure == "csign") {
    criterion = reproduce_csign(ctx);
  } else if (figure == "noon4") {
    criterion = reproduce_noon4(ctx);
  } else if (figure == "yurke") {
    criterion = reproduce_yurke(ctx);
  } else if (figure == "qnd") {
    criterion = reproduce_qnd(ctx);
  } else {
    std::cerr << "error: unknown figure `" << figure
              << "` (expected ns, csign, noon4, yurke, qnd)\n";
    return kExitInputError;
  }

  RunReport report;
  report.spec_path = "reproduce/" + figure;
  report.herald_probability = criterion.headline_probability;
  report.conditional_state = criterion.conditional_state_text;
  report.checks = criterion.checks;
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start_time)
          .count();

  if (as_json) {
    std::cout << report_to_json(report).dump(2) << '\n';
  } else {
    print_human_report(report, false);
  }
  return criterion.pass() ? kExitOk : kExitFailedChecks;
}

std::vector<double> sweep_values(double from, double to, int steps) {
  std::vector<double> values;
  if (steps == 1) {
    values.push_back(from);
    return values;
  }
  for (int i = 0; i < steps; ++i) {
    values.push_back(from + (to - from) * i / (steps - 1));
  }
  return values;
}

int write_csv(const std::string& out_path, const std::string& contents) {
  if (out_path.empty()) {
    std::cout << contents;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return kExitEnvironmentError;
  }
  out << contents;
  if (!out) {
    std::cerr << "error: failed writing " << out_path << '\n';
    return kExitEnvironmentError;
  }
  return kExitOk;
}

int sweep_yurke_scheme(const std::string& param, double from, double to,
                       int steps, int fixed_n, std::optional<double> fixed_rho,
                       const std::string& out_path) {
  std::ostringstream csv;
  csv << "n,r_sq,probability\n";
  for (const double v : sweep_values(from, to, steps)) {
    int n = fixed_n;
    double rho = 0.0;
    if (param == "r_sq") {
      rho = v;
    } else if (param == "n") {
      n = static_cast<int>(std::lround(v));
      rho = fixed_rho.has_value() ? *fixed_rho : 1.0 / n;
    } else {
      std::cerr << "error: yurke sweep supports params r_sq and n\n";
      return kExitInputError;
    }
    double p = 0.0;
    try {
      p = yurke_success_probability(n, rho);
    } catch (const DomainError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitInputError;
    }
    csv << n << ',' << format_g17(rho) << ',' << format_g17(p) << '\n';
  }
  return write_csv(out_path, csv.str());
}

int sweep_noon4_projector(const std::string& param, double from, double to,
                          int steps, const std::string& out_path) {
  if (param != "phi") {
    std::cerr << "error: noon4-projector sweep supports param phi\n";
    return kExitInputError;
  }
  const PureState noon =
      superpose({{{4, 0}, {1.0, 0.0}}, {{0, 4}, {1.0, 0.0}}}, true);
  const Observable obs = Observable::noon_projector(4);
  std::ostringstream csv;
  csv << "phi,mean_obs,std_obs,delta_phi\n";
  for (const double phi : sweep_values(from, to, steps)) {
    const auto [mean, spread] = observable_statistics(noon, phi, obs);
    double delta = std::numeric_limits<double>::infinity();
    try {
      delta = phase_sensitivity(noon, phi, obs).delta_phi;
    } catch (const DegeneratePointError&) {
      // unbounded sensitivity at this point; report inf
    }
    csv << format_g17(phi) << ',' << format_g17(mean) << ','
        << format_g17(spread) << ',' << format_g17(delta) << '\n';
  }
  return write_csv(out_path, csv.str());
}

int sweep_circuit_file(const std::string& spec_path, const std::string& param,
                       double from, double to, int steps,
                       std::optional<int> cutoff_flag,
                       const std::string& out_path) {
  std::string source;
  try {
    source = read_text_file(spec_path);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  const ParseResult parsed = parse(source);
  print_diagnostics(parsed.diagnostics, spec_path);
  if (!parsed.ok()) return kExitInputError;
  CircuitSpec spec = *parsed.spec;

  bool declared = false;
  for (const auto& sw : spec.sweeps) {
    if (sw.name == param) declared = true;
  }
  const bool builtin = param == "r_sq" || param == "phi" || param == "n";
  if (!declared && !builtin) {
    std::cerr << "error: sweep parameter `" << param
              << "` is neither declared in the spec nor a built-in\n";
    return kExitInputError;
  }
  if (!builtin) {
    std::cerr << "error: declared sweep parameter `" << param
              << "` has no built-in binding (r_sq, phi, n)\n";
    return kExitInputError;
  }

  // Parameter binding over the spec's elements.
  std::vector<std::size_t> tap_elements;  // bs touching exactly 1 herald mode
  std::vector<std::size_t> ps_elements;
  for (std::size_t i = 0; i < spec.elements.size(); ++i) {
    if (const auto* bs = std::get_if<BsElement>(&spec.elements[i])) {
      const int touched = spec.heralds.conditions.contains(bs->mode_a) +
                          spec.heralds.conditions.contains(bs->mode_b);
      if (touched == 1) tap_elements.push_back(i);
    } else if (std::holds_alternative<PsElement>(spec.elements[i])) {
      ps_elements.push_back(i);
    }
  }
  const bool basis_input =
      spec.input.has_value() &&
      std::holds_alternative<OccupationVector>(*spec.input);
  if ((param == "r_sq" && tap_elements.empty()) ||
      (param == "phi" && ps_elements.empty()) ||
      (param == "n" && !basis_input)) {
    std::cerr << "error: sweep parameter `" << param
              << "` is not applicable to this circuit\n";
    return kExitInputError;
  }

  const int cutoff = resolve_cutoff(cutoff_flag);
  std::ostringstream csv;
  csv << param << ",herald_probability\n";
  for (const double v : sweep_values(from, to, steps)) {
    CircuitSpec row_spec = spec;
    if (param == "r_sq") {
      if (!(v > 0.0 && v < 1.0)) {
        std::cerr << "error: r_sq values must lie in (0, 1)\n";
        return kExitInputError;
      }
      for (const std::size_t i : tap_elements) {
        std::get<BsElement>(row_spec.elements[i]).theta =
            std::asin(std::sqrt(v));
      }
    } else if (param == "phi") {
      for (const std::size_t i : ps_elements) {
        std::get<PsElement>(row_spec.elements[i]).phi = v;
      }
    } else {
      const int n = static_cast<int>(std::lround(v));
      if (n < 0) {
        std::cerr << "error: n must be non-negative\n";
        return kExitInputError;
      }
      auto counts = std::get<OccupationVector>(*row_spec.input);
      for (int& c : counts) {
        if (c > 0) c = n;
      }
      row_spec.input = InputDecl{std::move(counts)};
    }
    const LowerResult lowered = lower(row_spec, false);
    if (!lowered.ok()) {
      print_diagnostics(lowered.diagnostics, spec_path);
      return kExitInputError;
    }
    try {
      const HeraldResult hr = run_lowered(*lowered.circuit, cutoff);
      csv << format_g17(v) << ',' << format_g17(hr.probability) << '\n';
    } catch (const CapacityError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitEnvironmentError;
    }
  }
  return write_csv(out_path, csv.str());
}

int command_sweep(const std::string& target, const std::string& param,
                  double from, double to, int steps, int yurke_n,
                  std::optional<double> fixed_rho,
                  std::optional<int> cutoff_flag, const std::string& out_path) {
  if (steps < 1) {
    std::cerr << "error: steps must be >= 1\n";
    return kExitInputError;
  }
  if (target == "yurke") {
    return sweep_yurke_scheme(param, from, to, steps, yurke_n, fixed_rho,
                              out_path);
  }
  if (target == "noon4-projector") {
    return sweep_noon4_projector(param, from, to, steps, out_path);
  }
  return sweep_circuit_file(target, param, from, to, steps, cutoff_flag,
                            out_path);
}

int command_solve_ns(const std::string& out_path, std::uint64_t seed,
                     int starts, int restarts) {
  NsSolveOutcome best;
  bool have_best = false;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    NsSolveOptions options;
    options.seed = seed + static_cast<std::uint64_t>(attempt) * 1000003ULL;
    options.starts_per_pattern = starts;
    const NsSolveOutcome outcome = solve_ns_gate(options);
    if (!have_best || outcome.map_fidelity > best.map_fidelity ||
        (outcome.converged && !best.converged)) {
      best = outcome;
      have_best = true;
    }
    if (best.converged) break;
  }

  std::cout << "herald pattern: " << best.params.herald[0] << ' '
            << best.params.herald[1] << '\n';
  std::cout << "angles: " << format_g17(best.params.angles[0]) << ' '
            << format_g17(best.params.angles[1]) << ' '
            << format_g17(best.params.angles[2]) << '\n';
  std::cout << "phases: " << format_g17(best.params.phases[0]) << ' '
            << format_g17(best.params.phases[1]) << ' '
            << format_g17(best.params.phases[2]) << '\n';
  std::cout << "success probability: " << format_g17(best.success_probability)
            << '\n';
  std::cout << "map fidelity: " << format_g17(best.map_fidelity) << '\n';

  if (!best.converged) {
    std::cerr << "error: search did not converge after " << restarts
              << " restarts; best-found report above\n";
    return kExitFailedChecks;
  }
  if (!out_path.empty()) {
    try {
      save_ns_params(best.params, best.success_probability, out_path);
    } catch (const IoError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitEnvironmentError;
    }
    std::cout << "wrote " << out_path << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fockbench: exact Fock-state simulation of heralded "
               "linear-optical circuits"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "parse, lower and simulate a .circ file");
  std::string run_spec;
  bool run_json = false, run_dump = false, run_oracle = false;
  std::optional<int> run_cutoff;
  run->add_option("spec", run_spec, "circuit file")->required();
  run->add_flag("--json", run_json, "emit a JSON report");
  run->add_flag("--dump-state", run_dump, "print the conditional state");
  run->add_flag("--oracle-mode", run_oracle, "allow kerr elements");
  run->add_option("--cutoff", run_cutoff, "photon-number cutoff");

  // reproduce
  auto* repro = app.add_subcommand(
      "reproduce", "run a self-checking bundle (ns, csign, noon4, yurke, qnd)");
  std::string repro_figure;
  bool repro_json = false;
  ReproContext ctx = ReproContext::default_context();
  repro->add_option("figure", repro_figure, "bundle name")->required();
  repro->add_flag("--json", repro_json, "emit a JSON report");
  repro->add_option("--seed", ctx.seed, "seed for randomized checks");
  repro->add_option("--data-dir", ctx.data_dir, "directory with ns_params.txt");
  repro->add_option("--circuits-dir", ctx.circuits_dir,
                    "directory with shipped circuits");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "parameter sweep to CSV (targets: .circ path, yurke, "
               "noon4-projector)");
  std::string sweep_target, sweep_param, sweep_out;
  double sweep_from = 0.0, sweep_to = 0.0;
  int sweep_steps = 1;
  int sweep_n = 10;
  std::optional<double> sweep_rho;
  std::optional<int> sweep_cutoff;
  sweep->add_option("target", sweep_target, "spec path or scheme name")
      ->required();
  sweep->add_option("param", sweep_param, "r_sq, phi or n")->required();
  sweep->add_option("from", sweep_from, "first value")->required();
  sweep->add_option("to", sweep_to, "last value")->required();
  sweep->add_option("steps", sweep_steps, "row count")->required();
  sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");
  sweep->add_option("--n", sweep_n, "photons per mode for the yurke target");
  sweep->add_option("--r-sq", sweep_rho,
                    "fixed |r|^2 for the yurke target's n sweep");
  sweep->add_option("--cutoff", sweep_cutoff, "photon-number cutoff");

  // solve-ns
  auto* solve = app.add_subcommand(
      "solve-ns", "search the nonlinear sign gate parameters");
  std::string solve_out;
  std::uint64_t solve_seed = 0x5eed5eedULL;
  int solve_starts = 16, solve_restarts = 64;
  solve->add_option("--out", solve_out, "constants file to write");
  solve->add_option("--seed", solve_seed, "search seed");
  solve->add_option("--starts", solve_starts, "starts per herald pattern");
  solve->add_option("--restarts", solve_restarts,
                    "reseeded attempts before giving up");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return kExitInputError;
  }

  try {
    if (run->parsed()) {
      return command_run(run_spec, run_json, run_dump, run_oracle, run_cutoff);
    }
    if (repro->parsed()) {
      return command_reproduce(repro_figure, repro_json, ctx);
    }
    if (sweep->parsed()) {
      return command_sweep(sweep_target, sweep_param, sweep_from, sweep_to,
                           sweep_steps, sweep_n, sweep_rho, sweep_cutoff,
                           sweep_out);
    }
    if (solve->parsed()) {
      return command_solve_ns(solve_out, solve_seed, solve_starts,
                              solve_restarts);
    }
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEnvironmentError;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEnvironmentError;
  } catch (const SearchFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailedChecks;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
