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

#ifndef FOCKBENCH_TESTS_TEST_UTIL_HPP
#define FOCKBENCH_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <random>

#include "fockbench/fock_state.hpp"

namespace fbtest {

constexpr double kTestPi = 3.14159265358979323846;

inline double fidelity(const fockbench::PureState& a,
                       const fockbench::PureState& b) {
  return std::norm(fockbench::inner_product(a, b));
}

/// Random normalized sparse state with bounded total photon number.
inline fockbench::PureState random_sparse_state(std::mt19937_64& rng,
                                                int modes, int max_total,
                                                int max_terms) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> term_count(1, max_terms);
  std::uniform_int_distribution<int> photon(0, max_total);
  std::vector<std::pair<fockbench::OccupationVector, fockbench::Amplitude>>
      terms;
  const int n_terms = term_count(rng);
  for (int t = 0; t < n_terms; ++t) {
    fockbench::OccupationVector occ(static_cast<std::size_t>(modes), 0);
    int budget = photon(rng);
    std::uniform_int_distribution<int> mode_pick(0, modes - 1);
    while (budget > 0) {
      occ[static_cast<std::size_t>(mode_pick(rng))] += 1;
      --budget;
    }
    terms.emplace_back(std::move(occ),
                       fockbench::Amplitude{gauss(rng), gauss(rng)});
  }
  return fockbench::superpose(terms, true);
}

}  // namespace fbtest

#endif  // FOCKBENCH_TESTS_TEST_UTIL_HPP
