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

#ifndef FOCKBENCH_POSTSELECT_HPP
#define FOCKBENCH_POSTSELECT_HPP

#include <map>
#include <vector>

#include "fockbench/fock_state.hpp"

namespace fockbench {

/// Heralds with probability below this are treated as impossible; matches
/// the state prune threshold.
inline constexpr double kHeraldProbabilityFloor = 1e-12;

struct CountCondition {
  enum class Kind { kExactly, kAtLeast };
  Kind kind = Kind::kExactly;
  int count = 0;

  static CountCondition exactly(int n) { return {Kind::kExactly, n}; }
  static CountCondition at_least(int n) { return {Kind::kAtLeast, n}; }

  bool matches(int n) const {
    return kind == Kind::kExactly ? n == count : n >= count;
  }
  friend bool operator==(const CountCondition&, const CountCondition&) = default;
};

/// Per-mode photon-count conditions defining a heralding event.
struct DetectionPattern {
  std::map<int, CountCondition> conditions;
  friend bool operator==(const DetectionPattern&, const DetectionPattern&) = default;
};

/// Outcome of a projective measurement. `probability` is the squared norm of
/// the unnormalized projected state; `conditional_state` lives on the
/// undetected modes and is normalized (empty when the herald is impossible).
struct HeraldResult {
  double probability = 0.0;
  PureState conditional_state{0};
};

/// Keeps exactly the terms satisfying all conditions. Modes with `exactly`
/// conditions are removed from the conditional state (their counts are
/// classical outcomes); `at_least` modes stay.
HeraldResult project(const PureState& state, const DetectionPattern& pattern);

struct Outcome {
  OccupationVector counts;  // per detected mode, in the order given
  double probability = 0.0;
  PureState conditional_state{0};
};

/// Exhaustive projective measurement on `detected_modes`: every photon-count
/// outcome with its probability and normalized conditional state, sorted
/// lexicographically by counts. Probabilities sum to the input's squared
/// norm. Exact over the sparse support, never sampled.
std::vector<Outcome> enumerate_outcomes(const PureState& state,
                                        const std::vector<int>& detected_modes);

}  // namespace fockbench

#endif  // FOCKBENCH_POSTSELECT_HPP
