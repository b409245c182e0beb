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

#ifndef FOCKBENCH_CIRCUIT_HPP
#define FOCKBENCH_CIRCUIT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fockbench/fock_state.hpp"
#include "fockbench/optics.hpp"
#include "fockbench/postselect.hpp"

namespace fockbench {

// Circuit description files (.circ) are line-oriented, UTF-8 with LF line
// endings and `#` comments:
//
//   modes N
//   input n1 n2 ...
//   input superpose ( n1,...,nk : re im ; ... )
//   bs THETA PHASE I J
//   ps PHI I
//   kerr KT I J          (accepted only when lowering in oracle mode)
//   detect I (exactly|atleast) N
//   sweep NAME FROM TO STEPS
//
// Angles are radians; a beam splitter's reflectivity is |r|^2 = sin^2(THETA).

struct SourcePos {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
};

struct BsElement {
  double theta = 0.0;
  double phase = 0.0;
  int mode_a = 0;
  int mode_b = 0;
  SourcePos pos;
  friend bool operator==(const BsElement& a, const BsElement& b) {
    return a.theta == b.theta && a.phase == b.phase && a.mode_a == b.mode_a &&
           a.mode_b == b.mode_b;
  }
};

struct PsElement {
  double phi = 0.0;
  int mode = 0;
  SourcePos pos;
  friend bool operator==(const PsElement& a, const PsElement& b) {
    return a.phi == b.phi && a.mode == b.mode;
  }
};

struct KerrElement {
  double kappa_tau = 0.0;
  int mode_a = 0;
  int mode_b = 0;
  SourcePos pos;
  friend bool operator==(const KerrElement& a, const KerrElement& b) {
    return a.kappa_tau == b.kappa_tau && a.mode_a == b.mode_a &&
           a.mode_b == b.mode_b;
  }
};

using CircuitElement = std::variant<BsElement, PsElement, KerrElement>;

struct SuperposeTerm {
  OccupationVector counts;
  Amplitude amplitude;
  friend bool operator==(const SuperposeTerm&, const SuperposeTerm&) = default;
};

using InputDecl = std::variant<OccupationVector, std::vector<SuperposeTerm>>;

struct SweepDecl {
  std::string name;
  double from = 0.0;
  double to = 0.0;
  int steps = 1;
  friend bool operator==(const SweepDecl&, const SweepDecl&) = default;
};

/// Parsed AST of a circuit file. Structural equality ignores source
/// positions, so canonical serialize/parse round trips compare equal.
struct CircuitSpec {
  int mode_count = 0;
  std::optional<InputDecl> input;
  std::vector<CircuitElement> elements;
  DetectionPattern heralds;
  std::vector<SweepDecl> sweeps;
  friend bool operator==(const CircuitSpec&, const CircuitSpec&) = default;
};

struct ParseDiagnostic {
  enum class Severity { kError, kWarning };
  int line = 0;
  int column = 0;
  std::string message;
  Severity severity = Severity::kError;
};

std::string to_string(const ParseDiagnostic& d);

struct ParseResult {
  std::optional<CircuitSpec> spec;  // set iff no error diagnostics
  std::vector<ParseDiagnostic> diagnostics;
  bool ok() const { return spec.has_value(); }
};

/// Never throws on bad input: lexical, syntactic and semantic problems come
/// back as positioned diagnostics.
ParseResult parse(std::string_view source);

/// Canonical form: one statement per line, lowercase keywords, angles as
/// 17-significant-digit decimals. parse(serialize(spec)) == spec.
std::string serialize(const CircuitSpec& spec);

/// Executable form: input state, fused unitary stages (adjacent linear
/// elements composed; kerr elements break the fusion), and the herald.
struct LoweredStage {
  std::variant<ModeUnitary, KerrParams> op;
};

struct LoweredCircuit {
  int mode_count = 0;
  PureState input{0};
  std::vector<LoweredStage> stages;
  DetectionPattern herald;
};

struct LowerResult {
  std::optional<LoweredCircuit> circuit;
  std::vector<ParseDiagnostic> diagnostics;
  bool ok() const { return circuit.has_value(); }
};

/// Kerr elements are rejected unless `oracle_mode` is set; the measurement
/// circuits exist to replace them.
LowerResult lower(const CircuitSpec& spec, bool oracle_mode);

HeraldResult run_lowered(const LoweredCircuit& circuit,
                         int photon_cutoff = kDefaultPhotonCutoff);

/// Check comments, `# check NAME EXPECTED TOLERANCE`, embedded in circuit
/// files. They are ordinary comments to the parser; run-style commands
/// evaluate them against the simulation.
struct EmbeddedCheck {
  std::string name;
  double expected = 0.0;
  double tolerance = 0.0;
  int line = 0;
};

std::vector<EmbeddedCheck> extract_embedded_checks(std::string_view source);

}  // namespace fockbench

#endif  // FOCKBENCH_CIRCUIT_HPP
