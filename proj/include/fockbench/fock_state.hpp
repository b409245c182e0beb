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

#ifndef FOCKBENCH_FOCK_STATE_HPP
#define FOCKBENCH_FOCK_STATE_HPP

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fockbench {

using Amplitude = std::complex<double>;

/// Photon counts per mode. Ordered lexicographically (std::vector's
/// operator<), which makes every map iteration deterministic.
using OccupationVector = std::vector<int>;

int total_photons(const OccupationVector& occ);

/// Stored terms with |amplitude|^2 below this are dropped. Far below every
/// tolerance used by the checks, so pruning only removes numerical dust.
inline constexpr double kPruneThresholdSq = 1e-12;

/// Default global photon-number cutoff per simulation. Operations that would
/// have to expand a term with more photons raise CapacityError.
inline constexpr int kDefaultPhotonCutoff = 12;

/// Sparse multimode pure state in the photon-number basis: a finite map from
/// occupation vectors to complex amplitudes. Immutable after construction;
/// every operation returns a new state, so values can be shared freely
/// between threads.
class PureState {
 public:
  /// The zero state (no terms) on `mode_count` modes.
  explicit PureState(int mode_count);

  /// Takes ownership of `terms`; validates key lengths and non-negative
  /// counts, then prunes amplitudes below the threshold.
  PureState(int mode_count, std::map<OccupationVector, Amplitude> terms);

  int mode_count() const noexcept { return mode_count_; }
  const std::map<OccupationVector, Amplitude>& terms() const noexcept {
    return terms_;
  }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Amplitude of a basis term, zero if absent.
  Amplitude amplitude(const OccupationVector& occ) const;

  double norm_sq() const;
  double norm() const;
  bool is_normalized(double tol = 1e-10) const;

  /// Largest total photon number over all stored terms (0 for the zero state).
  int max_total_photons() const;

 private:
  int mode_count_;
  std::map<OccupationVector, Amplitude> terms_;
};

/// Single-term state |counts> with amplitude 1.
PureState make_basis_state(const OccupationVector& counts);

/// Sum of weighted basis terms; duplicate occupations are accumulated.
/// With `normalize` the result has unit norm (all-zero input is a
/// DomainError); terms below the prune threshold are dropped afterwards.
PureState superpose(
    const std::vector<std::pair<OccupationVector, Amplitude>>& terms,
    bool normalize);

/// Tensor product; the right state's modes are appended after the left's.
PureState tensor(const PureState& left, const PureState& right);

/// <bra|ket> = sum over conj(bra[k]) * ket[k].
Amplitude inner_product(const PureState& bra, const PureState& ket);

/// True iff |<a|b>| >= 1 - tol. Both states must be normalized; heralded
/// outputs carry herald-dependent global phases, so plain term comparison
/// would reject physically identical states.
bool equal_up_to_global_phase(const PureState& a, const PureState& b,
                              double tol);

/// Unit-norm copy; DomainError on the zero state.
PureState normalized(const PureState& s);

/// Text form used by the CLI's --dump-state: one term per line,
/// `n1,n2,...,nk : re imag`, sorted lexicographically by occupation.
std::string state_to_text(const PureState& s);

}  // namespace fockbench

#endif  // FOCKBENCH_FOCK_STATE_HPP
