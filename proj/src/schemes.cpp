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

#include "fockbench/schemes.hpp"

#include <cmath>
#include <string>

#include "fockbench/errors.hpp"
#include "fockbench/optimize.hpp"

namespace fockbench {

namespace {

constexpr double kPi = 3.14159265358979323846;

double theta_for_reflectivity(double reflectivity_sq) {
  if (!(reflectivity_sq > 0.0 && reflectivity_sq < 1.0)) {
    throw DomainError("reflectivity |r|^2 must lie in (0, 1)");
  }
  return std::asin(std::sqrt(reflectivity_sq));
}

bool amplitudes_close(const Amplitude& a, const Amplitude& b, double tol) {
  return std::abs(a - b) <= tol;
}

// The defining operator expansions of the QND network, checked term by term
// against the assembled matrix before it is used.
bool verify_qnd_unitary(const ModeUnitary& u) {
  const double root2 = std::sqrt(2.0);
  {
    // Ancilla pair c^dag d^dag:
    //   (b'^2 - a'^2 + d'^2 - c'^2 - 2 a'c' + 2 b'd') / 4.
    const PureState image = apply_unitary(make_basis_state({0, 0, 1, 1}), u);
    const std::vector<std::pair<OccupationVector, Amplitude>> expected = {
        {{0, 2, 0, 0}, {root2 / 4.0, 0.0}},  {{2, 0, 0, 0}, {-root2 / 4.0, 0.0}},
        {{0, 0, 0, 2}, {root2 / 4.0, 0.0}},  {{0, 0, 2, 0}, {-root2 / 4.0, 0.0}},
        {{1, 0, 1, 0}, {-0.5, 0.0}},         {{0, 1, 0, 1}, {0.5, 0.0}},
    };
    if (image.term_count() != expected.size()) return false;
    for (const auto& [occ, amp] : expected) {
      if (!amplitudes_close(image.amplitude(occ), amp, 1e-12)) return false;
    }
  }
  {
    // Signal photon a^dag -> (a' - c')/sqrt(2).
    const PureState image = apply_unitary(make_basis_state({1, 0, 0, 0}), u);
    if (image.term_count() != 2 ||
        !amplitudes_close(image.amplitude({1, 0, 0, 0}), {1.0 / root2, 0.0},
                          1e-12) ||
        !amplitudes_close(image.amplitude({0, 0, 1, 0}), {-1.0 / root2, 0.0},
                          1e-12)) {
      return false;
    }
  }
  {
    // Two signal photons a^dag^2 -> (a'^2 - 2 a'c' + c'^2)/2.
    const PureState image = apply_unitary(make_basis_state({2, 0, 0, 0}), u);
    if (image.term_count() != 3 ||
        !amplitudes_close(image.amplitude({2, 0, 0, 0}), {0.5, 0.0}, 1e-12) ||
        !amplitudes_close(image.amplitude({1, 0, 1, 0}), {-1.0 / root2, 0.0},
                          1e-12) ||
        !amplitudes_close(image.amplitude({0, 0, 2, 0}), {0.5, 0.0}, 1e-12)) {
      return false;
    }
  }
  return true;
}

double observable_mean(const PureState& state, const Observable& obs) {
  switch (obs.kind) {
    case Observable::Kind::kDifferenceCurrent: {
      double mean = 0.0;
      for (const auto& [occ, amp] : state.terms()) {
        mean += std::norm(amp) * (occ[0] - occ[1]);
      }
      return mean;
    }
    case Observable::Kind::kNoonProjector: {
      const Amplitude high =
          state.amplitude({obs.noon_n, 0});
      const Amplitude low = state.amplitude({0, obs.noon_n});
      return 2.0 * (std::conj(high) * low).real();
    }
  }
  return 0.0;
}

double observable_second_moment(const PureState& state, const Observable& obs) {
  switch (obs.kind) {
    case Observable::Kind::kDifferenceCurrent: {
      double m2 = 0.0;
      for (const auto& [occ, amp] : state.terms()) {
        const double d = occ[0] - occ[1];
        m2 += std::norm(amp) * d * d;
      }
      return m2;
    }
    case Observable::Kind::kNoonProjector: {
      // O^2 projects onto span{|N,0>, |0,N>}.
      return std::norm(state.amplitude({obs.noon_n, 0})) +
             std::norm(state.amplitude({0, obs.noon_n}));
    }
  }
  return 0.0;
}

PureState propagate_mz(const PureState& input, double phi,
                       const Observable& obs) {
  PureState state = input;
  if (obs.input_splitter) {
    state = apply_unitary(state, beam_splitter_unitary({kPi / 4.0, 0.0, 0, 1}, 2),
                          kDefaultPhotonCutoff);
  }
  state = apply_unitary(state, phase_shifter_unitary(1, phi, 2),
                        kDefaultPhotonCutoff);
  if (obs.output_splitter) {
    state = apply_unitary(state, beam_splitter_unitary({kPi / 4.0, 0.0, 0, 1}, 2),
                          kDefaultPhotonCutoff);
  }
  return state;
}

}  // namespace

Noon4Result noon4_scheme(double tap_reflectivity_sq) {
  const double tap_theta = theta_for_reflectivity(tap_reflectivity_sq);

  // Main 50:50, then a tap on each arm feeding detector modes 2 and 3.
  ModeUnitary pre = beam_splitter_unitary({kPi / 4.0, 0.0, 0, 1}, 4);
  pre = compose(beam_splitter_unitary({tap_theta, 0.0, 0, 2}, 4), pre);
  pre = compose(beam_splitter_unitary({tap_theta, 0.0, 1, 3}, 4), pre);

  const PureState tapped =
      apply_unitary(make_basis_state({3, 3, 0, 0}), pre);
  DetectionPattern herald;
  herald.conditions.emplace(2, CountCondition::exactly(1));
  herald.conditions.emplace(3, CountCondition::exactly(1));
  HeraldResult hr = project(tapped, herald);

  Noon4Result result;
  result.herald_probability = hr.probability;
  result.heralded_arm_state = hr.conditional_state;
  if (hr.probability <= kHeraldProbabilityFloor) {
    result.output = PureState(2);
    return result;
  }
  // Corrective pi/2 phase in the second arm, then the closing 50:50.
  PureState arm = apply_unitary(hr.conditional_state,
                                phase_shifter_unitary(1, kPi / 2.0, 2));
  result.output =
      apply_unitary(arm, beam_splitter_unitary({kPi / 4.0, 0.0, 0, 1}, 2));
  return result;
}

std::pair<PureState, double> yurke_scheme(const YurkeSchemeConfig& config,
                                          int photon_cutoff) {
  if (config.coincidence_order != 1 && config.coincidence_order != 2) {
    throw DomainError("coincidence order must be 1 or 2");
  }
  if (config.n < config.coincidence_order) {
    throw DomainError("need at least as many photons per mode as the "
                      "coincidence order");
  }
  if (2 * config.n > photon_cutoff) {
    throw CapacityError(
        "dual Fock input |" + std::to_string(config.n) + "," +
        std::to_string(config.n) +
        "> exceeds the photon cutoff; use the closed-form probability");
  }
  const double tap_theta = theta_for_reflectivity(config.reflectivity_sq);

  // Taps into the (initially empty) detector modes, then the midway 50:50
  // between them. The pi/2 pre-phase on the second detector arm fixes the
  // relative sign of the two-photon-loss branches to +.
  ModeUnitary circuit = beam_splitter_unitary({tap_theta, 0.0, 0, 2}, 4);
  circuit = compose(beam_splitter_unitary({tap_theta, 0.0, 1, 3}, 4), circuit);
  circuit =
      compose(beam_splitter_unitary({kPi / 4.0, kPi / 2.0, 2, 3}, 4), circuit);

  const PureState evolved = apply_unitary(
      make_basis_state({config.n, config.n, 0, 0}), circuit, photon_cutoff);

  DetectionPattern herald;
  if (config.coincidence_order == 2) {
    herald.conditions.emplace(2, CountCondition::exactly(1));
    herald.conditions.emplace(3, CountCondition::exactly(1));
  } else {
    // Single click: one photon at the first detector, none at the second.
    herald.conditions.emplace(2, CountCondition::exactly(1));
    herald.conditions.emplace(3, CountCondition::exactly(0));
  }
  HeraldResult hr = project(evolved, herald);
  return {std::move(hr.conditional_state), hr.probability};
}

double yurke_success_probability(int n, double reflectivity_sq) {
  if (n < 2) throw DomainError("two-fold coincidence needs n >= 2");
  if (!(reflectivity_sq > 0.0 && reflectivity_sq < 1.0)) {
    throw DomainError("reflectivity |r|^2 must lie in (0, 1)");
  }
  const double rho = reflectivity_sq;
  return 0.5 * n * (n - 1.0) * rho * rho * std::pow(1.0 - rho, 2 * n - 2);
}

std::pair<double, double> optimize_reflectivity(int n) {
  if (n < 2) throw DomainError("two-fold coincidence needs n >= 2");
  // Search over log |r|^2: at large n the profile underflows to exactly zero
  // on most of (0, 1), which starves the bracketing probes on a linear axis.
  const ScalarMaxResult best = golden_section_max(
      [n](double t) { return yurke_success_probability(n, std::exp(t)); },
      std::log(1e-12), std::log(1.0 - 1e-12), 1e-10);
  const double rho = std::exp(best.x);
  return {rho, best.value};
}

ModeUnitary qnd_unitary() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd m(4, 4);
  // Columns are the images of a, b, c, d over (a', b', c', d').
  m << Amplitude{s, 0},  Amplitude{0, 0}, Amplitude{0.5, 0},  Amplitude{-0.5, 0},
       Amplitude{0, 0},  Amplitude{s, 0}, Amplitude{0.5, 0},  Amplitude{0.5, 0},
       Amplitude{-s, 0}, Amplitude{0, 0}, Amplitude{0.5, 0},  Amplitude{-0.5, 0},
       Amplitude{0, 0},  Amplitude{-s, 0}, Amplitude{0.5, 0}, Amplitude{0.5, 0};
  ModeUnitary u(std::move(m), 1e-12);
  static const bool verified = verify_qnd_unitary(u);
  if (!verified) {
    throw DomainError("qnd unitary fails its defining operator expansions");
  }
  return u;
}

QndResult qnd_scheme(const QndInput& input) {
  const double norm_sq =
      std::norm(input.c0) + std::norm(input.c1) + std::norm(input.c2);
  if (std::abs(norm_sq - 1.0) > 1e-10) {
    throw DomainError("qnd input coefficients must be normalized");
  }
  std::vector<std::pair<OccupationVector, Amplitude>> terms;
  if (input.c0 != Amplitude{0.0, 0.0}) terms.push_back({{0, 0, 1, 1}, input.c0});
  if (input.c1 != Amplitude{0.0, 0.0}) terms.push_back({{1, 0, 1, 1}, input.c1});
  if (input.c2 != Amplitude{0.0, 0.0}) terms.push_back({{2, 0, 1, 1}, input.c2});
  const PureState state = superpose(terms, false);

  const PureState evolved = apply_unitary(state, qnd_unitary());
  DetectionPattern herald;
  herald.conditions.emplace(0, CountCondition::exactly(0));  // vacuum at a'
  herald.conditions.emplace(2, CountCondition::exactly(1));
  herald.conditions.emplace(3, CountCondition::exactly(1));
  HeraldResult hr = project(evolved, herald);

  QndResult result;
  result.herald_probability = hr.probability;
  result.output = std::move(hr.conditional_state);
  result.classification = result.herald_probability > kHeraldProbabilityFloor
                              ? QndClassification::kSinglePhotonHeralded
                              : QndClassification::kNoHerald;
  return result;
}

std::pair<double, double> observable_statistics(const PureState& input,
                                                double phi,
                                                const Observable& observable) {
  if (input.mode_count() != 2) {
    throw DomainError("phase sensitivity input must be a two-mode state");
  }
  if (!input.is_normalized(1e-8)) {
    throw DomainError("phase sensitivity input must be normalized");
  }
  const PureState at_phi = propagate_mz(input, phi, observable);
  const double mean = observable_mean(at_phi, observable);
  const double m2 = observable_second_moment(at_phi, observable);
  const double variance = std::max(m2 - mean * mean, 0.0);
  return {mean, std::sqrt(variance)};
}

SensitivityReport phase_sensitivity(const PureState& input, double phi,
                                    const Observable& observable) {
  const auto [mean, std_obs] = observable_statistics(input, phi, observable);

  const double h = 1e-5;
  const double mean_plus =
      observable_mean(propagate_mz(input, phi + h, observable), observable);
  const double mean_minus =
      observable_mean(propagate_mz(input, phi - h, observable), observable);
  const double derivative = (mean_plus - mean_minus) / (2.0 * h);
  if (std::abs(derivative) < 1e-12) {
    throw DegeneratePointError(
        "observable derivative vanishes; phase sensitivity is unbounded here");
  }
  return SensitivityReport{phi, mean, std_obs, std_obs / std::abs(derivative)};
}

PureState truncated_coherent_state(Amplitude alpha, int cutoff) {
  if (cutoff < 0) throw DomainError("negative coherent-state cutoff");
  std::vector<std::pair<OccupationVector, Amplitude>> terms;
  Amplitude power{1.0, 0.0};
  double inv_sqrt_fact = 1.0;
  for (int n = 0; n <= cutoff; ++n) {
    if (n > 0) {
      power *= alpha;
      inv_sqrt_fact /= std::sqrt(static_cast<double>(n));
    }
    terms.push_back({{n}, power * inv_sqrt_fact});
  }
  return superpose(terms, true);
}

}  // namespace fockbench
