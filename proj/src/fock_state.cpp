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

#include "fockbench/fock_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "fockbench/errors.hpp"

namespace fockbench {

namespace {

double norm_sq_of(const Amplitude& a) { return std::norm(a); }

void check_occupation(const OccupationVector& occ, int mode_count) {
  if (static_cast<int>(occ.size()) != mode_count) {
    throw DomainError("occupation vector length " +
                      std::to_string(occ.size()) +
                      " does not match mode count " +
                      std::to_string(mode_count));
  }
  for (int c : occ) {
    if (c < 0) throw DomainError("negative photon count in occupation vector");
  }
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // avoid "-0"
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

int total_photons(const OccupationVector& occ) {
  return std::accumulate(occ.begin(), occ.end(), 0);
}

PureState::PureState(int mode_count) : mode_count_(mode_count) {
  if (mode_count < 0) throw DomainError("mode count must be non-negative");
}

PureState::PureState(int mode_count, std::map<OccupationVector, Amplitude> terms)
    : mode_count_(mode_count), terms_(std::move(terms)) {
  if (mode_count < 0) throw DomainError("mode count must be non-negative");
  for (auto it = terms_.begin(); it != terms_.end();) {
    check_occupation(it->first, mode_count_);
    if (!std::isfinite(it->second.real()) || !std::isfinite(it->second.imag())) {
      throw DomainError("non-finite amplitude");
    }
    if (norm_sq_of(it->second) < kPruneThresholdSq) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

Amplitude PureState::amplitude(const OccupationVector& occ) const {
  auto it = terms_.find(occ);
  return it == terms_.end() ? Amplitude{0.0, 0.0} : it->second;
}

double PureState::norm_sq() const {
  double s = 0.0;
  for (const auto& [occ, amp] : terms_) s += norm_sq_of(amp);
  return s;
}

double PureState::norm() const { return std::sqrt(norm_sq()); }

bool PureState::is_normalized(double tol) const {
  return std::abs(norm_sq() - 1.0) <= tol;
}

int PureState::max_total_photons() const {
  int best = 0;
  for (const auto& [occ, amp] : terms_) {
    best = std::max(best, total_photons(occ));
  }
  return best;
}

PureState make_basis_state(const OccupationVector& counts) {
  if (counts.empty()) throw DomainError("basis state needs at least one mode");
  for (int c : counts) {
    if (c < 0) throw DomainError("negative photon count");
  }
  std::map<OccupationVector, Amplitude> terms;
  terms.emplace(counts, Amplitude{1.0, 0.0});
  return PureState(static_cast<int>(counts.size()), std::move(terms));
}

PureState superpose(
    const std::vector<std::pair<OccupationVector, Amplitude>>& term_list,
    bool normalize) {
  if (term_list.empty()) throw DomainError("superpose needs at least one term");
  const int modes = static_cast<int>(term_list.front().first.size());
  std::map<OccupationVector, Amplitude> acc;
  for (const auto& [occ, amp] : term_list) {
    if (static_cast<int>(occ.size()) != modes) {
      throw DomainError("superpose terms have mixed mode counts");
    }
    for (int c : occ) {
      if (c < 0) throw DomainError("negative photon count");
    }
    acc[occ] += amp;
  }
  if (normalize) {
    double n2 = 0.0;
    for (const auto& [occ, amp] : acc) n2 += norm_sq_of(amp);
    if (n2 <= 0.0) {
      throw DomainError("cannot normalize an all-zero superposition");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& [occ, amp] : acc) amp *= inv;
  }
  return PureState(modes, std::move(acc));
}

PureState tensor(const PureState& left, const PureState& right) {
  std::map<OccupationVector, Amplitude> out;
  for (const auto& [locc, lamp] : left.terms()) {
    for (const auto& [rocc, ramp] : right.terms()) {
      OccupationVector occ;
      occ.reserve(locc.size() + rocc.size());
      occ.insert(occ.end(), locc.begin(), locc.end());
      occ.insert(occ.end(), rocc.begin(), rocc.end());
      out[std::move(occ)] = lamp * ramp;
    }
  }
  return PureState(left.mode_count() + right.mode_count(), std::move(out));
}

Amplitude inner_product(const PureState& bra, const PureState& ket) {
  if (bra.mode_count() != ket.mode_count()) {
    throw DomainError("inner product of states with different mode counts");
  }
  // Iterate the smaller map, look up in the larger one.
  const PureState& small = bra.term_count() <= ket.term_count() ? bra : ket;
  const PureState& large = bra.term_count() <= ket.term_count() ? ket : bra;
  const bool small_is_bra = &small == &bra;
  Amplitude sum{0.0, 0.0};
  for (const auto& [occ, amp] : small.terms()) {
    const Amplitude other = large.amplitude(occ);
    if (small_is_bra) {
      sum += std::conj(amp) * other;
    } else {
      sum += std::conj(other) * amp;
    }
  }
  return sum;
}

bool equal_up_to_global_phase(const PureState& a, const PureState& b,
                              double tol) {
  if (a.mode_count() != b.mode_count()) {
    throw DomainError("comparing states with different mode counts");
  }
  if (!a.is_normalized(1e-8) || !b.is_normalized(1e-8)) {
    throw DomainError("equal_up_to_global_phase requires normalized states");
  }
  return std::abs(inner_product(a, b)) >= 1.0 - tol;
}

PureState normalized(const PureState& s) {
  const double n2 = s.norm_sq();
  if (n2 <= 0.0) throw DomainError("cannot normalize the zero state");
  const double inv = 1.0 / std::sqrt(n2);
  std::map<OccupationVector, Amplitude> out = s.terms();
  for (auto& [occ, amp] : out) amp *= inv;
  return PureState(s.mode_count(), std::move(out));
}

std::string state_to_text(const PureState& s) {
  std::ostringstream os;
  for (const auto& [occ, amp] : s.terms()) {
    for (std::size_t i = 0; i < occ.size(); ++i) {
      if (i) os << ',';
      os << occ[i];
    }
    os << " : " << format_double(amp.real()) << ' '
       << format_double(amp.imag()) << '\n';
  }
  return os.str();
}

}  // namespace fockbench
