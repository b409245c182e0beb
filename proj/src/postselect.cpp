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

#include "fockbench/postselect.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "fockbench/errors.hpp"

namespace fockbench {

namespace {

void check_mode_index(int mode, int mode_count) {
  if (mode < 0 || mode >= mode_count) {
    throw DomainError("detected mode " + std::to_string(mode) +
                      " out of range for " + std::to_string(mode_count) +
                      " modes");
  }
}

OccupationVector remove_modes(const OccupationVector& occ,
                              const std::vector<int>& sorted_removed) {
  OccupationVector out;
  out.reserve(occ.size() - sorted_removed.size());
  std::size_t r = 0;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (r < sorted_removed.size() &&
        static_cast<int>(i) == sorted_removed[r]) {
      ++r;
      continue;
    }
    out.push_back(occ[i]);
  }
  return out;
}

}  // namespace

HeraldResult project(const PureState& state, const DetectionPattern& pattern) {
  std::vector<int> removed;
  for (const auto& [mode, cond] : pattern.conditions) {
    check_mode_index(mode, state.mode_count());
    if (cond.count < 0) throw DomainError("negative count in herald condition");
    if (cond.kind == CountCondition::Kind::kExactly) removed.push_back(mode);
  }
  // pattern.conditions is an ordered map, so `removed` is already sorted.

  double probability = 0.0;
  std::map<OccupationVector, Amplitude> kept;
  for (const auto& [occ, amp] : state.terms()) {
    bool match = true;
    for (const auto& [mode, cond] : pattern.conditions) {
      if (!cond.matches(occ[static_cast<std::size_t>(mode)])) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    probability += std::norm(amp);
    kept[remove_modes(occ, removed)] += amp;
  }

  const int out_modes = state.mode_count() - static_cast<int>(removed.size());
  if (probability <= kHeraldProbabilityFloor) {
    return HeraldResult{probability, PureState(out_modes)};
  }
  const double inv = 1.0 / std::sqrt(probability);
  for (auto& [occ, amp] : kept) amp *= inv;
  return HeraldResult{probability, PureState(out_modes, std::move(kept))};
}

std::vector<Outcome> enumerate_outcomes(
    const PureState& state, const std::vector<int>& detected_modes) {
  std::set<int> seen;
  for (int mode : detected_modes) {
    check_mode_index(mode, state.mode_count());
    if (!seen.insert(mode).second) {
      throw DomainError("duplicate detected mode " + std::to_string(mode));
    }
  }
  std::vector<int> removed(detected_modes.begin(), detected_modes.end());
  std::sort(removed.begin(), removed.end());

  struct Group {
    double probability = 0.0;
    std::map<OccupationVector, Amplitude> terms;
  };
  std::map<OccupationVector, Group> groups;
  for (const auto& [occ, amp] : state.terms()) {
    OccupationVector key;
    key.reserve(detected_modes.size());
    for (int mode : detected_modes) {
      key.push_back(occ[static_cast<std::size_t>(mode)]);
    }
    Group& g = groups[std::move(key)];
    g.probability += std::norm(amp);
    g.terms[remove_modes(occ, removed)] += amp;
  }

  const int out_modes = state.mode_count() - static_cast<int>(removed.size());
  std::vector<Outcome> outcomes;
  outcomes.reserve(groups.size());
  for (auto& [counts, group] : groups) {
    if (group.probability <= kHeraldProbabilityFloor) continue;
    const double inv = 1.0 / std::sqrt(group.probability);
    for (auto& [occ, amp] : group.terms) amp *= inv;
    outcomes.push_back(Outcome{counts, group.probability,
                               PureState(out_modes, std::move(group.terms))});
  }
  return outcomes;
}

}  // namespace fockbench
