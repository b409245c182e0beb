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

#ifndef FOCKBENCH_GATES_HPP
#define FOCKBENCH_GATES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fockbench/fock_state.hpp"
#include "fockbench/optics.hpp"
#include "fockbench/postselect.hpp"

namespace fockbench {

/// Dual-rail encoding: one photon across two modes per logical qubit,
/// |0>_L = |0>_l |1>_k and |1>_L = |1>_l |0>_k.
struct DualRailEncoding {
  std::vector<std::pair<int, int>> qubit_rails;  // (mode_l, mode_k) per qubit
  int total_modes = 0;

  /// Two-qubit layout used by the conditional sign-flip circuit. State modes
  /// are ordered top-to-bottom as {2,1,3,4} in the 1-based labelling of the
  /// four rails, i.e. control rails (l,k) = (1,0) and target rails (2,3).
  static DualRailEncoding two_qubit_layout();
};

/// Solved parameters of the nonlinear sign gate circuit: three beam splitters
/// on (signal, ancilla-photon, ancilla-vacuum) modes arranged as
/// BS1(anc, vac), BS2(anc, signal), BS3(anc, vac), heralded on the photon
/// counts `herald` at the two detector modes (ancilla-photon, ancilla-vacuum).
struct NsGateParams {
  std::array<double, 3> angles{};
  std::array<double, 3> phases{};
  std::array<int, 2> herald{1, 0};
};

struct GateRunReport {
  double success_probability = 0.0;
  PureState conditional_state{0};
  double fidelity_vs_target = 0.0;  // |<target|out>|^2 (global-phase free)
};

/// Tensor product of dual-rail qubits in declared mode order. Each pair
/// (a0, a1) must satisfy |a0|^2 + |a1|^2 = 1 within 1e-10.
PureState encode_qubits(
    const std::vector<std::pair<Amplitude, Amplitude>>& amplitudes,
    const DualRailEncoding& encoding);

/// The 3-mode circuit unitary for given parameters (modes: 0 signal,
/// 1 ancilla photon, 2 ancilla vacuum).
ModeUnitary ns_circuit_unitary(const NsGateParams& params);

/// Same circuit embedded in a larger interferometer.
ModeUnitary ns_circuit_unitary_embedded(const NsGateParams& params,
                                        int total_modes, int signal,
                                        int anc_photon, int anc_vac);

struct NsSolveOptions {
  std::uint64_t seed = 0x5eed5eedULL;
  int starts_per_pattern = 16;
};

struct NsSolveOutcome {
  NsGateParams params;
  double success_probability = 0.0;
  double map_fidelity = 0.0;  // overlap of (l0,l1,l2) with (1,1,-1)/sqrt(3)
  bool converged = false;
};

/// Multi-start numerical search for the nonlinear sign gate: maximizes the
/// herald probability under an equality penalty that forces the conditional
/// map to diag(1, 1, -1) up to one global factor, then polishes with a
/// damped Gauss-Newton step onto the constraint manifold. The herald pattern
/// itself is searched over one-photon and two-photon detector outcomes.
NsSolveOutcome solve_ns_gate(const NsSolveOptions& options = {});

/// As solve_ns_gate but throws SearchFailure when the search does not reach
/// success probability 0.25 within 1e-6 at map fidelity >= 1 - 1e-8.
NsGateParams solve_ns_gate_params(const NsSolveOptions& options = {});

/// Heralded nonlinear sign gate on a one-mode state supported on {0,1,2}
/// photons: conditional output a|0> + b|1> - c|2>, success probability 1/4
/// independent of the input.
GateRunReport ns_gate_apply(const PureState& input, const NsGateParams& params);

/// Nondeterministic conditional sign flip on a two-qubit dual-rail state
/// (modes per DualRailEncoding::two_qubit_layout): 50:50 splitter between
/// the two `l` rails, one NS gate in each arm, conjugate splitter, heralded
/// on both NS detectors. Success probability 1/16.
GateRunReport csign_apply(const PureState& two_qubit_input,
                          const NsGateParams& ns_params);

/// CNOT built as Hadamard on the target, the conditional sign flip, and
/// another Hadamard; each Hadamard is a 50:50 splitter across the target's
/// rails oriented so that H*H = identity.
GateRunReport cnot_via_csign(const PureState& two_qubit_input,
                             const NsGateParams& ns_params);

/// Deterministic reference: ideal Kerr medium with kappa*tau = pi coupling
/// the two `l` rails, which flips the sign of |1>_L |1>_L only.
PureState kerr_oracle_csign(const PureState& two_qubit_input);

/// Constants file: optional `#` comments (`# herald H1 H2` records the
/// detector pattern), then one line `angle1 angle2 angle3 phase1 phase2
/// phase3` in radians at 17 significant digits.
NsGateParams load_ns_params(const std::string& path);
void save_ns_params(const NsGateParams& params, double success_probability,
                    const std::string& path);

}  // namespace fockbench

#endif  // FOCKBENCH_GATES_HPP
