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

#ifndef FOCKBENCH_REPRODUCE_HPP
#define FOCKBENCH_REPRODUCE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fockbench/circuit.hpp"
#include "fockbench/optics.hpp"

namespace fockbench {

// Self-checking bundles: every expected value and tolerance is pinned here
// in code, so `fockbench reproduce ...` and the acceptance suite verify the
// repository without external references.

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
};

struct CriterionReport {
  std::string name;
  double headline_probability = 0.0;
  std::string conditional_state_text;
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return !checks.empty();
  }
};

struct ReproContext {
  std::string data_dir;      // holds ns_params.txt and report.schema.json
  std::string circuits_dir;  // holds the shipped .circ files
  std::uint64_t seed = 0x5eedULL;

  static ReproContext default_context();
};

CriterionReport reproduce_ns(const ReproContext& ctx);
CriterionReport reproduce_csign(const ReproContext& ctx);
CriterionReport reproduce_hom(const ReproContext& ctx);
CriterionReport reproduce_noon4(const ReproContext& ctx);
CriterionReport reproduce_yurke(const ReproContext& ctx);
CriterionReport reproduce_qnd(const ReproContext& ctx);
CriterionReport reproduce_phase_sensitivity(const ReproContext& ctx);
CriterionReport reproduce_oracle_equivalence(const ReproContext& ctx);
CriterionReport reproduce_dsl(const ReproContext& ctx);

/// All nine bundles in their canonical order.
std::vector<CriterionReport> run_all_criteria(const ReproContext& ctx);

/// Haar-style random unitary from QR orthonormalization of a complex
/// Gaussian matrix.
ModeUnitary random_mode_unitary(std::mt19937_64& rng, int dim);

/// Random valid circuit spec, the generator behind the serialization
/// round-trip property.
CircuitSpec random_circuit_spec(std::mt19937_64& rng);

std::string read_text_file(const std::string& path);

}  // namespace fockbench

#endif  // FOCKBENCH_REPRODUCE_HPP
