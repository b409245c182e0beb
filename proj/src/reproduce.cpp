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

#include "fockbench/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "fockbench/circuit.hpp"
#include "fockbench/errors.hpp"
#include "fockbench/gates.hpp"
#include "fockbench/postselect.hpp"
#include "fockbench/schemes.hpp"

#ifndef FOCKBENCH_REPO_DIR
#define FOCKBENCH_REPO_DIR "."
#endif

namespace fockbench {

namespace {

constexpr double kPi = 3.14159265358979323846;

CheckResult check_abs(const std::string& name, double measured,
                      double expected, double tolerance) {
  return CheckResult{name, std::abs(measured - expected) <= tolerance,
                     measured, expected, tolerance};
}

CheckResult check_at_least(const std::string& name, double measured,
                           double expected, double tolerance) {
  return CheckResult{name, measured >= expected - tolerance, measured,
                     expected, tolerance};
}

CheckResult check_flag(const std::string& name, bool pass) {
  return CheckResult{name, pass, pass ? 1.0 : 0.0, 1.0, 0.0};
}

Amplitude random_amplitude(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  return {gauss(rng), gauss(rng)};
}

std::array<Amplitude, 3> random_normalized_triple(std::mt19937_64& rng) {
  std::array<Amplitude, 3> t{random_amplitude(rng), random_amplitude(rng),
                             random_amplitude(rng)};
  const double n = std::sqrt(std::norm(t[0]) + std::norm(t[1]) +
                             std::norm(t[2]));
  for (auto& a : t) a /= n;
  return t;
}

std::pair<Amplitude, Amplitude> random_qubit(std::mt19937_64& rng) {
  Amplitude a0 = random_amplitude(rng), a1 = random_amplitude(rng);
  const double n = std::sqrt(std::norm(a0) + std::norm(a1));
  return {a0 / n, a1 / n};
}

PureState uniform_ns_input() {
  return superpose(
      {{{0}, {1.0, 0.0}}, {{1}, {1.0, 0.0}}, {{2}, {1.0, 0.0}}}, true);
}

NsGateParams load_context_ns_params(const ReproContext& ctx) {
  return load_ns_params(ctx.data_dir + "/ns_params.txt");
}

void enumerate_occupations(int modes, int max_total,
                           const std::function<void(const OccupationVector&)>& f) {
  OccupationVector occ(static_cast<std::size_t>(modes), 0);
  std::function<void(int, int)> rec = [&](int mode, int used) {
    if (mode == modes) {
      f(occ);
      return;
    }
    for (int c = 0; c + used <= max_total; ++c) {
      occ[static_cast<std::size_t>(mode)] = c;
      rec(mode + 1, used + c);
    }
    occ[static_cast<std::size_t>(mode)] = 0;
  };
  rec(0, 0);
}

struct Mutation {
  std::string source;
  int expected_line;
  std::string label;
};

}  // namespace

CircuitSpec random_circuit_spec(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> mode_dist(1, 6);
  std::uniform_real_distribution<double> theta_dist(0.0, kPi / 2.0);
  std::uniform_real_distribution<double> phase_dist(-6.0, 6.0);
  std::uniform_int_distribution<int> count_dist(0, 3);
  std::uniform_int_distribution<int> percent(0, 99);

  CircuitSpec spec;
  spec.mode_count = mode_dist(rng);
  auto random_mode = [&] {
    return std::uniform_int_distribution<int>(0, spec.mode_count - 1)(rng);
  };

  const int input_kind = percent(rng);
  if (input_kind < 50) {
    OccupationVector counts(static_cast<std::size_t>(spec.mode_count), 0);
    for (auto& c : counts) c = count_dist(rng);
    spec.input = InputDecl{std::move(counts)};
  } else if (input_kind < 75) {
    std::vector<SuperposeTerm> terms;
    const int nterms = 1 + percent(rng) % 3;
    for (int i = 0; i < nterms; ++i) {
      SuperposeTerm term;
      term.counts.resize(static_cast<std::size_t>(spec.mode_count));
      for (auto& c : term.counts) c = count_dist(rng);
      term.amplitude = {phase_dist(rng), phase_dist(rng)};
      terms.push_back(std::move(term));
    }
    spec.input = InputDecl{std::move(terms)};
  }

  const int elements = percent(rng) % 9;
  for (int i = 0; i < elements; ++i) {
    const int kind = spec.mode_count >= 2 ? percent(rng) % 3 : 1;
    if (kind == 0) {
      BsElement bs;
      bs.theta = theta_dist(rng);
      bs.phase = phase_dist(rng);
      bs.mode_a = random_mode();
      do {
        bs.mode_b = random_mode();
      } while (bs.mode_b == bs.mode_a);
      spec.elements.emplace_back(bs);
    } else if (kind == 1) {
      PsElement ps;
      ps.phi = phase_dist(rng);
      ps.mode = random_mode();
      spec.elements.emplace_back(ps);
    } else {
      KerrElement k;
      k.kappa_tau = phase_dist(rng);
      k.mode_a = random_mode();
      do {
        k.mode_b = random_mode();
      } while (k.mode_b == k.mode_a);
      spec.elements.emplace_back(k);
    }
  }

  for (int mode = 0; mode < spec.mode_count; ++mode) {
    if (percent(rng) < 30) {
      CountCondition cond = percent(rng) < 70
                                ? CountCondition::exactly(count_dist(rng))
                                : CountCondition::at_least(count_dist(rng));
      spec.heralds.conditions.emplace(mode, cond);
    }
  }

  const char* names[] = {"r_sq", "phi", "n"};
  const int sweeps = percent(rng) % 3;
  for (int i = 0; i < sweeps; ++i) {
    SweepDecl sw;
    sw.name = names[percent(rng) % 3];
    sw.from = phase_dist(rng);
    sw.to = phase_dist(rng);
    sw.steps = 1 + percent(rng) % 50;
    spec.sweeps.push_back(std::move(sw));
  }
  return spec;
}

namespace {

std::vector<Mutation> mutation_corpus() {
  const std::string base =
      "modes 2\n"
      "input 1 1\n"
      "bs 0.7853981633974483 0 0 1\n"
      "detect 0 exactly 2\n";
  std::vector<Mutation> out;
  out.push_back({"modes 2\ninput 1 1\nbs 0.7853981633974483 0 0\n"
                 "detect 0 exactly 2\n",
                 3, "deleted token"});
  out.push_back({"modes 2\ninput 1 1\nbs 0.5 0 0 9\ndetect 0 exactly 2\n", 3,
                 "mode index out of range"});
  out.push_back({base + "detect 0 exactly 1\n", 5, "duplicate herald mode"});
  out.push_back({"modes 2\ninput 1 1\nsplitter 0.5 0 0 1\n", 3,
                 "unknown keyword"});
  out.push_back({"modes 2\ninput 1 1\nbs abc 0 0 1\n", 3,
                 "non-numeric angle"});
  out.push_back({"modes 2\ninput 1 1\nbs 2.0 0 0 1\n", 3,
                 "theta out of range"});
  out.push_back({"modes 2\ninput 1 1 1\n", 2, "input length mismatch"});
  out.push_back({"modes 2\nmodes 3\n", 2, "duplicate modes"});
  out.push_back({"input 1 1\nmodes 2\n", 1, "statement before modes"});
  out.push_back({"modes 2\ndetect 0 exactly -1\n", 2,
                 "negative detector count"});
  out.push_back({"modes 2\ninput superpose ( 1,1 : 0.5 )\n", 2,
                 "malformed superpose term"});
  out.push_back({"modes 2\nsweep r_sq 0 1 0\n", 2, "zero sweep steps"});
  return out;
}

}  // namespace

ReproContext ReproContext::default_context() {
  ReproContext ctx;
  ctx.data_dir = std::string(FOCKBENCH_REPO_DIR) + "/data";
  ctx.circuits_dir = std::string(FOCKBENCH_REPO_DIR) + "/circuits";
  return ctx;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ModeUnitary random_mode_unitary(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Amplitude{gauss(rng), gauss(rng)};
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  return ModeUnitary(std::move(q));
}

CriterionReport reproduce_ns(const ReproContext& ctx) {
  CriterionReport report;
  report.name = "ns";
  const NsGateParams params = load_context_ns_params(ctx);

  std::mt19937_64 rng(ctx.seed);
  double worst_p = 0.25;
  double worst_p_dev = 0.0;
  double min_fidelity = 1.0;
  for (int i = 0; i < 100; ++i) {
    const auto [a, b, c] = random_normalized_triple(rng);
    const PureState input =
        superpose({{{0}, a}, {{1}, b}, {{2}, c}}, false);
    const GateRunReport run = ns_gate_apply(input, params);
    const double dev = std::abs(run.success_probability - 0.25);
    if (dev > worst_p_dev) {
      worst_p_dev = dev;
      worst_p = run.success_probability;
    }
    min_fidelity = std::min(min_fidelity, run.fidelity_vs_target);
  }
  report.checks.push_back(
      check_abs("success_prob_100_random_inputs", worst_p, 0.25, 1e-8));
  report.checks.push_back(
      check_at_least("conditional_map_fidelity", min_fidelity, 1.0, 1e-8));

  const GateRunReport uniform_run = ns_gate_apply(uniform_ns_input(), params);
  report.headline_probability = uniform_run.success_probability;
  report.conditional_state_text = state_to_text(uniform_run.conditional_state);
  return report;
}

CriterionReport reproduce_csign(const ReproContext& ctx) {
  CriterionReport report;
  report.name = "csign";
  const NsGateParams params = load_context_ns_params(ctx);
  const DualRailEncoding encoding = DualRailEncoding::two_qubit_layout();

  std::mt19937_64 rng(ctx.seed + 1);
  double worst_p = 0.0625;
  double worst_p_dev = 0.0;
  double min_fidelity = 1.0;
  for (int i = 0; i < 100; ++i) {
    const PureState input =
        encode_qubits({random_qubit(rng), random_qubit(rng)}, encoding);
    const GateRunReport run = csign_apply(input, params);
    const double dev = std::abs(run.success_probability - 0.0625);
    if (dev > worst_p_dev) {
      worst_p_dev = dev;
      worst_p = run.success_probability;
    }
    min_fidelity = std::min(min_fidelity, run.fidelity_vs_target);
  }
  report.checks.push_back(
      check_abs("success_prob_100_random_inputs", worst_p, 0.0625, 1e-8));
  report.checks.push_back(
      check_at_least("kerr_oracle_fidelity", min_fidelity, 1.0, 1e-8));

  const PureState on_on = encode_qubits(
      {{Amplitude{0, 0}, Amplitude{1, 0}}, {Amplitude{0, 0}, Amplitude{1, 0}}},
      encoding);
  const GateRunReport run = csign_apply(on_on, params);
  report.headline_probability = run.success_probability;
  report.conditional_state_text = state_to_text(run.conditional_state);
  return report;
}

CriterionReport reproduce_hom(const ReproContext&) {
  CriterionReport report;
  report.name = "hom";
  const PureState out = apply_unitary(
      make_basis_state({1, 1}), beam_splitter_unitary({kPi / 4.0, 0.0, 0, 1}, 2));

  DetectionPattern coincidence;
  coincidence.conditions.emplace(0, CountCondition::exactly(1));
  coincidence.conditions.emplace(1, CountCondition::exactly(1));
  const HeraldResult hr = project(out, coincidence);
  report.checks.push_back(
      check_abs("coincidence_probability", hr.probability, 0.0, 1e-12));

  double p20 = 0.0, p02 = 0.0;
  for (const auto& outcome : enumerate_outcomes(out, {0, 1})) {
    if (outcome.counts == OccupationVector{2, 0}) p20 = outcome.probability;
    if (outcome.counts == OccupationVector{0, 2}) p02 = outcome.probability;
  }
  report.checks.push_back(check_abs("bunched_20_probability", p20, 0.5, 1e-12));
  report.checks.push_back(check_abs("bunched_02_probability", p02, 0.5, 1e-12));

  report.headline_probability = hr.probability;
  report.conditional_state_text = state_to_text(hr.conditional_state);
  return report;
}

CriterionReport reproduce_noon4(const ReproContext&) {
  CriterionReport report;
  report.name = "noon4";
  const Noon4Result result = noon4_scheme();

  const PureState noon_target =
      superpose({{{4, 0}, {1.0, 0.0}}, {{0, 4}, {-1.0, 0.0}}}, true);
  const double fid = std::norm(inner_product(noon_target, result.output));
  report.checks.push_back(check_at_least("noon4_fidelity", fid, 1.0, 1e-8));

  const PureState arm_target =
      superpose({{{3, 1}, {1.0, 0.0}}, {{1, 3}, {-1.0, 0.0}}}, true);
  const double arm_fid =
      std::norm(inner_product(arm_target, result.heralded_arm_state));
  report.checks.push_back(
      check_at_least("intermediate_31_minus_13_fidelity", arm_fid, 1.0, 1e-8));

  // Brute-force enumeration oracle for the herald probability; the circuit
  // is rebuilt here element by element.
  ModeUnitary pre = beam_splitter_unitary({kPi / 4.0, 0.0, 0, 1}, 4);
  pre = compose(beam_splitter_unitary({kPi / 4.0, 0.0, 0, 2}, 4), pre);
  pre = compose(beam_splitter_unitary({kPi / 4.0, 0.0, 1, 3}, 4), pre);
  const PureState tapped = apply_unitary(make_basis_state({3, 3, 0, 0}), pre);
  double oracle_p = 0.0;
  for (const auto& outcome : enumerate_outcomes(tapped, {2, 3})) {
    if (outcome.counts == OccupationVector{1, 1}) {
      oracle_p = outcome.probability;
    }
  }
  report.checks.push_back(check_abs("herald_prob_vs_enumeration",
                                    result.herald_probability, oracle_p,
                                    1e-12));

  bool photons_four = true;
  for (const auto& [occ, amp] : result.output.terms()) {
    if (total_photons(occ) != 4) photons_four = false;
  }
  report.checks.push_back(check_flag("output_photon_number_is_4", photons_four));

  report.headline_probability = result.herald_probability;
  report.conditional_state_text = state_to_text(result.output);
  return report;
}

CriterionReport reproduce_yurke(const ReproContext&) {
  CriterionReport report;
  report.name = "yurke";

  bool support_ok = true;
  double mag_dev = 0.0;
  for (int n = 2; n <= 5; ++n) {
    const auto [state, prob] =
        yurke_scheme({n, 1.0 / n, 2});
    const OccupationVector hi{n, n - 2};
    const OccupationVector lo{n - 2, n};
    if (state.term_count() != 2 ||
        state.amplitude(hi) == Amplitude{0.0, 0.0} ||
        state.amplitude(lo) == Amplitude{0.0, 0.0}) {
      support_ok = false;
      continue;
    }
    mag_dev = std::max(mag_dev, std::abs(std::abs(state.amplitude(hi)) -
                                         std::abs(state.amplitude(lo))));
  }
  report.checks.push_back(
      check_flag("two_fold_support_is_n_nminus2_pair", support_ok));
  report.checks.push_back(
      check_abs("two_fold_equal_magnitudes", mag_dev, 0.0, 1e-10));

  double closed_vs_sim = 0.0;
  for (int n = 2; n <= 5; ++n) {
    for (int i = 1; i <= 20; ++i) {
      const double rho = static_cast<double>(i) / 21.0;
      const auto [state, prob] = yurke_scheme({n, rho, 2});
      closed_vs_sim = std::max(
          closed_vs_sim, std::abs(prob - yurke_success_probability(n, rho)));
    }
  }
  report.checks.push_back(check_abs("closed_form_vs_full_simulation",
                                    closed_vs_sim, 0.0, 1e-10));

  const double asym = 1.0 / (2.0 * std::exp(2.0));
  const double p1 = yurke_success_probability(10, 0.1);
  const double p2 = yurke_success_probability(100, 0.01);
  const double p3 = yurke_success_probability(1000, 0.001);
  const double p4 = yurke_success_probability(10000, 0.0001);
  report.checks.push_back(check_flag(
      "monotone_approach_to_1_over_2e2",
      p1 < p2 && p2 < p3 && p3 < p4 &&
          std::abs(p4 - asym) < std::abs(p1 - asym)));
  report.checks.push_back(
      check_abs("p_at_n_1e4_near_asymptote", p4, asym, 0.005));

  double argmax_dev = 0.0;
  for (const int n : {10, 100}) {
    const auto [rho_star, p_star] = optimize_reflectivity(n);
    argmax_dev = std::max(argmax_dev, std::abs(rho_star * n - 1.0));
  }
  report.checks.push_back(
      check_abs("argmax_within_25pct_of_1_over_n", argmax_dev, 0.0, 0.25));

  const auto [state2, prob2] = yurke_scheme({2, 0.5, 2});
  report.headline_probability = prob2;
  report.conditional_state_text = state_to_text(state2);
  return report;
}

CriterionReport reproduce_qnd(const ReproContext& ctx) {
  CriterionReport report;
  report.name = "qnd";

  // Defining operator expansions of the assembled unitary, coefficient by
  // coefficient.
  const ModeUnitary u = qnd_unitary();
  const double root2 = std::sqrt(2.0);
  double expansion_dev = 0.0;
  {
    const PureState image = apply_unitary(make_basis_state({0, 0, 1, 1}), u);
    const std::vector<std::pair<OccupationVector, Amplitude>> expected = {
        {{0, 2, 0, 0}, {root2 / 4.0, 0.0}},
        {{2, 0, 0, 0}, {-root2 / 4.0, 0.0}},
        {{0, 0, 0, 2}, {root2 / 4.0, 0.0}},
        {{0, 0, 2, 0}, {-root2 / 4.0, 0.0}},
        {{1, 0, 1, 0}, {-0.5, 0.0}},
        {{0, 1, 0, 1}, {0.5, 0.0}},
    };
    for (const auto& [occ, amp] : expected) {
      expansion_dev =
          std::max(expansion_dev, std::abs(image.amplitude(occ) - amp));
    }
    double listed = 0.0;
    for (const auto& [occ, amp] : expected) listed += std::norm(amp);
    expansion_dev = std::max(expansion_dev, std::abs(image.norm_sq() - listed));
  }
  {
    const PureState image = apply_unitary(make_basis_state({1, 0, 0, 0}), u);
    expansion_dev = std::max(
        expansion_dev,
        std::abs(image.amplitude({1, 0, 0, 0}) - Amplitude{1.0 / root2, 0.0}));
    expansion_dev = std::max(
        expansion_dev,
        std::abs(image.amplitude({0, 0, 1, 0}) - Amplitude{-1.0 / root2, 0.0}));
  }
  report.checks.push_back(
      check_abs("operator_expansion_coefficients", expansion_dev, 0.0, 1e-12));

  std::mt19937_64 rng(ctx.seed + 2);
  double linearity_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto [c0, c1, c2] = random_normalized_triple(rng);
    const QndResult result = qnd_scheme({c0, c1, c2});
    linearity_dev =
        std::max(linearity_dev,
                 std::abs(result.herald_probability - std::norm(c1) / 8.0));
  }
  report.checks.push_back(
      check_abs("herald_prob_is_c1sq_over_8", linearity_dev, 0.0, 1e-10));

  const QndResult single = qnd_scheme({{0, 0}, {1, 0}, {0, 0}});
  report.checks.push_back(
      check_abs("single_photon_success", single.herald_probability, 0.125,
                1e-10));
  const double out_fid =
      std::norm(inner_product(make_basis_state({1}), single.output));
  report.checks.push_back(
      check_at_least("output_is_single_photon", out_fid, 1.0, 1e-10));
  const QndResult vacuum = qnd_scheme({{1, 0}, {0, 0}, {0, 0}});
  report.checks.push_back(
      check_abs("vacuum_never_heralds", vacuum.herald_probability, 0.0, 1e-12));
  const QndResult two = qnd_scheme({{0, 0}, {0, 0}, {1, 0}});
  report.checks.push_back(check_abs("two_photon_blocked_by_vacuum_at_a",
                                    two.herald_probability, 0.0, 1e-12));

  report.headline_probability = single.herald_probability;
  report.conditional_state_text = state_to_text(single.output);
  return report;
}

CriterionReport reproduce_phase_sensitivity(const ReproContext&) {
  CriterionReport report;
  report.name = "phase";

  double heisenberg_dev = 0.0;
  for (const int n : {2, 3, 4}) {
    const PureState noon =
        superpose({{{n, 0}, {1.0, 0.0}}, {{0, n}, {1.0, 0.0}}}, true);
    const SensitivityReport s =
        phase_sensitivity(noon, 0.37, Observable::noon_projector(n));
    heisenberg_dev = std::max(heisenberg_dev, std::abs(s.delta_phi * n - 1.0));
  }
  report.checks.push_back(
      check_abs("noon_projector_heisenberg_limit", heisenberg_dev, 0.0, 1e-9));

  const PureState coherent =
      tensor(truncated_coherent_state({1.0, 0.0}, 10), make_basis_state({0}));
  const SensitivityReport shot =
      phase_sensitivity(coherent, kPi / 2.0, Observable::difference_current());
  report.checks.push_back(
      check_abs("coherent_shot_noise_limit", shot.delta_phi, 1.0, 0.01));

  bool degenerate_detected = false;
  try {
    phase_sensitivity(make_basis_state({1, 1}), kPi / 2.0,
                      Observable::difference_current());
  } catch (const DegeneratePointError&) {
    degenerate_detected = true;
  }
  report.checks.push_back(
      check_flag("dual_fock_difference_current_degenerate", degenerate_detected));

  report.headline_probability = 0.0;
  return report;
}

CriterionReport reproduce_oracle_equivalence(const ReproContext& ctx) {
  CriterionReport report;
  report.name = "oracle";

  std::mt19937_64 rng(ctx.seed + 3);
  double max_dev = 0.0;
  for (int k = 0; k < 25; ++k) {
    const int dim = 2 + k % 3;
    const ModeUnitary u = random_mode_unitary(rng, dim);
    enumerate_occupations(dim, 4, [&](const OccupationVector& input) {
      const PureState evolved = apply_unitary(make_basis_state(input), u);
      enumerate_occupations(dim, 4, [&](const OccupationVector& output) {
        if (total_photons(input) != total_photons(output)) return;
        const Amplitude via_perm =
            transition_amplitude_permanent(u, input, output);
        const Amplitude via_expansion = evolved.amplitude(output);
        max_dev = std::max(max_dev, std::abs(via_perm - via_expansion));
      });
    });
  }
  report.checks.push_back(check_abs("permanent_vs_operator_expansion", max_dev,
                                    0.0, 1e-10));
  report.headline_probability = 0.0;
  return report;
}

CriterionReport reproduce_dsl(const ReproContext& ctx) {
  CriterionReport report;
  report.name = "dsl";

  std::mt19937_64 rng(ctx.seed + 4);
  int round_trip_failures = 0;
  for (int i = 0; i < 200; ++i) {
    const CircuitSpec spec = random_circuit_spec(rng);
    const ParseResult reparsed = parse(serialize(spec));
    if (!reparsed.ok() || !(*reparsed.spec == spec)) ++round_trip_failures;
  }
  report.checks.push_back(check_abs("round_trip_failures_of_200",
                                    round_trip_failures, 0.0, 0.0));

  const char* files[] = {"hom.circ",   "ns.circ",    "csign.circ",
                         "noon4.circ", "yurke.circ", "qnd.circ"};
  bool files_ok = true;
  int checks_passed = 0, checks_total = 0;
  for (const char* file : files) {
    const std::string source =
        read_text_file(ctx.circuits_dir + "/" + file);
    const ParseResult parsed = parse(source);
    if (!parsed.ok()) {
      files_ok = false;
      continue;
    }
    const LowerResult lowered = lower(*parsed.spec, false);
    if (!lowered.ok()) {
      files_ok = false;
      continue;
    }
    const HeraldResult hr = run_lowered(*lowered.circuit);
    for (const EmbeddedCheck& check : extract_embedded_checks(source)) {
      ++checks_total;
      if (check.name == "herald_probability" &&
          std::abs(hr.probability - check.expected) <= check.tolerance) {
        ++checks_passed;
      }
    }
  }
  report.checks.push_back(check_flag("shipped_files_parse_and_lower", files_ok));
  report.checks.push_back(check_abs("shipped_file_embedded_checks",
                                    checks_passed, checks_total, 0.0));

  int diagnostics_ok = 0;
  int corpus_size = 0;
  for (const Mutation& m : mutation_corpus()) {
    ++corpus_size;
    const ParseResult r = parse(m.source);
    bool found = false;
    for (const auto& d : r.diagnostics) {
      if (d.severity == ParseDiagnostic::Severity::kError &&
          d.line == m.expected_line) {
        found = true;
      }
    }
    if (!r.ok() && found) ++diagnostics_ok;
  }
  report.checks.push_back(check_abs("mutation_corpus_positioned_diagnostics",
                                    diagnostics_ok, corpus_size, 0.0));
  report.headline_probability = 0.0;
  return report;
}

std::vector<CriterionReport> run_all_criteria(const ReproContext& ctx) {
  return {reproduce_ns(ctx),     reproduce_csign(ctx),
          reproduce_hom(ctx),    reproduce_noon4(ctx),
          reproduce_yurke(ctx),  reproduce_qnd(ctx),
          reproduce_phase_sensitivity(ctx),
          reproduce_oracle_equivalence(ctx),
          reproduce_dsl(ctx)};
}

}  // namespace fockbench
