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

#ifndef FOCKBENCH_SCHEMES_HPP
#define FOCKBENCH_SCHEMES_HPP

#include <utility>

#include "fockbench/fock_state.hpp"
#include "fockbench/optics.hpp"
#include "fockbench/postselect.hpp"

namespace fockbench {

/// Four-photon path-entangled state generator: dual Fock |3,3> into a
/// Mach-Zehnder whose arms are tapped into two detector modes, heralded on
/// exactly one photon at each detector.
struct Noon4Result {
  /// Conditional two-mode output, equal to (|4,0> - |0,4>)/sqrt(2) up to a
  /// global phase.
  PureState output{0};
  double herald_probability = 0.0;
  /// The heralded arm state before the corrective phase shifter and final
  /// splitter, proportional to |3,1> - |1,3>.
  PureState heralded_arm_state{0};
};

/// `tap_reflectivity_sq` is |r|^2 of the two tap splitters (default 50:50);
/// the herald probability is reported, never assumed.
Noon4Result noon4_scheme(double tap_reflectivity_sq = 0.5);

struct YurkeSchemeConfig {
  int n = 2;                      // photons per input mode of |n,n>
  double reflectivity_sq = 0.5;   // |r|^2 of the two tap splitters
  int coincidence_order = 2;      // 1: single click, 2: two-fold coincidence
};

/// Path-entanglement generator on a dual Fock input |n,n>: a tap splitter on
/// each mode into initially empty ancilla modes, a 50:50 between the
/// ancillas erasing which-path information, detectors on both. Two-fold
/// coincidence gives (|n,n-2> + |n-2,n>)/sqrt(2); a single click gives the
/// Yurke-type state on (n, n-1) occupations.
std::pair<PureState, double> yurke_scheme(
    const YurkeSchemeConfig& config, int photon_cutoff = kDefaultPhotonCutoff);

/// Closed-form two-fold-coincidence herald probability
///   p(n, r^2) = n(n-1)/2 * r^4 * (1-r^2)^(2n-2):
/// the pair leaves one of the two modes (two branches), every other photon
/// must pass its tap, and the midway splitter sends both detector routes of
/// each branch into the coincidence with equal weight.
double yurke_success_probability(int n, double reflectivity_sq);

/// Maximizes the closed form over |r|^2 in (0,1) by golden-section search.
/// The argmax is 1/n; the value approaches 1/(2 e^2) from below.
std::pair<double, double> optimize_reflectivity(int n);

/// Input coefficients c0|0> + c1|1> + c2|2> for the quantum nondemolition
/// device; must be normalized.
struct QndInput {
  Amplitude c0{0.0, 0.0};
  Amplitude c1{1.0, 0.0};
  Amplitude c2{0.0, 0.0};
};

enum class QndClassification {
  kSinglePhotonHeralded,  // coincidence fired: a single photon was present
  kNoHerald,              // herald impossible for this input
};

struct QndResult {
  double herald_probability = 0.0;
  PureState output{0};  // conditional state of the surviving mode b'
  QndClassification classification = QndClassification::kNoHerald;
};

/// Single-photon QND measurement: the input enters mode a, single ancilla
/// photons enter modes c and d, and the device heralds on one photon at each
/// of c' and d' with vacuum at a'. Only the one-photon component can fire
/// the herald (probability |c1|^2 / 8), leaving one photon in b'.
QndResult qnd_scheme(const QndInput& input);

/// The device's 4-mode unitary, checked against its defining operator
/// expansions on first use.
ModeUnitary qnd_unitary();

/// Observable measured at the end of the Mach-Zehnder phase estimation
/// pipeline. The difference current n0 - n1 is read after the full
/// interferometer; the NOON projector |N,0><0,N| + h.c. is applied at the
/// phase stage with no splitters.
struct Observable {
  enum class Kind { kDifferenceCurrent, kNoonProjector };
  Kind kind = Kind::kDifferenceCurrent;
  int noon_n = 0;
  bool input_splitter = true;
  bool output_splitter = true;

  static Observable difference_current() {
    return {Kind::kDifferenceCurrent, 0, true, true};
  }
  static Observable noon_projector(int n) {
    return {Kind::kNoonProjector, n, false, false};
  }
};

struct SensitivityReport {
  double phi = 0.0;
  double mean_obs = 0.0;
  double std_obs = 0.0;
  double delta_phi = 0.0;  // std_obs / |d<obs>/dphi|
};

/// Propagates the two-mode input through the interferometer (50:50, phase
/// phi on the second arm, 50:50 -- stages gated by the observable), then
/// reports <O>, the spread, and delta_phi with the derivative taken by
/// central difference at step 1e-5. Throws DegeneratePointError when the
/// derivative magnitude falls below 1e-12.
SensitivityReport phase_sensitivity(const PureState& input, double phi,
                                    const Observable& observable);

/// (<O>, spread) at the measurement stage, without the sensitivity ratio;
/// well defined even where the sensitivity diverges.
std::pair<double, double> observable_statistics(const PureState& input,
                                                double phi,
                                                const Observable& observable);

/// Coherent state truncated at `cutoff` photons and renormalized, on one
/// mode; used as the classical-light reference input.
PureState truncated_coherent_state(Amplitude alpha, int cutoff);

}  // namespace fockbench

#endif  // FOCKBENCH_SCHEMES_HPP
