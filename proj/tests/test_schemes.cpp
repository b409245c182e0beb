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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fockbench/errors.hpp"
#include "fockbench/schemes.hpp"
#include "test_util.hpp"

using namespace fockbench;
using fbtest::fidelity;
using fbtest::kTestPi;

namespace {

PureState noon_state(int n, double sign) {
  return superpose({{{n, 0}, {1.0, 0.0}}, {{0, n}, {sign, 0.0}}}, true);
}

}  // namespace

TEST_CASE("four-photon path entanglement") {
  const Noon4Result result = noon4_scheme();

  CHECK(fidelity(noon_state(4, -1.0), result.output) >= 1.0 - 1e-8);

  const PureState arm_target =
      superpose({{{3, 1}, {1.0, 0.0}}, {{1, 3}, {-1.0, 0.0}}}, true);
  CHECK(fidelity(arm_target, result.heralded_arm_state) >= 1.0 - 1e-8);

  // closed form 3 (1-rho)^4 rho^2 at rho = 1/2
  CHECK(result.herald_probability == doctest::Approx(3.0 / 64.0).epsilon(1e-12));

  for (const auto& [occ, amp] : result.output.terms()) {
    CHECK(total_photons(occ) == 4);
  }

  SUBCASE("tap reflectivity knob") {
    const Noon4Result best = noon4_scheme(1.0 / 3.0);
    CHECK(best.herald_probability == doctest::Approx(48.0 / 729.0));
    CHECK(fidelity(noon_state(4, -1.0), best.output) >= 1.0 - 1e-8);
  }
}

TEST_CASE("path-entanglement generator outputs") {
  SUBCASE("two-fold coincidence, two photons per mode") {
    const auto [state, prob] = yurke_scheme({2, 0.5, 2});
    const PureState target =
        superpose({{{2, 0}, {1.0, 0.0}}, {{0, 2}, {1.0, 0.0}}}, true);
    CHECK(std::abs(inner_product(target, state)) >= 1.0 - 1e-10);
    CHECK(prob == doctest::Approx(0.0625));
  }
  SUBCASE("two-fold coincidence, three photons per mode") {
    const auto [state, prob] = yurke_scheme({3, 1.0 / 3.0, 2});
    const PureState target =
        superpose({{{3, 1}, {1.0, 0.0}}, {{1, 3}, {1.0, 0.0}}}, true);
    CHECK(std::abs(inner_product(target, state)) >= 1.0 - 1e-10);
  }
  SUBCASE("single click leaves one photon missing in superposition") {
    const auto [state, prob] = yurke_scheme({2, 0.5, 1});
    REQUIRE(state.term_count() == 2);
    const Amplitude hi = state.amplitude({2, 1});
    const Amplitude lo = state.amplitude({1, 2});
    CHECK(std::abs(std::abs(hi) - std::abs(lo)) < 1e-12);
    // relative phase between the which-mode branches, frozen from simulation
    CHECK(std::abs(hi / lo - Amplitude{0.0, 1.0}) < 1e-10);
    CHECK(prob > 0.0);
  }
  SUBCASE("configuration validation") {
    CHECK_THROWS_AS(yurke_scheme({2, 0.0, 2}), DomainError);
    CHECK_THROWS_AS(yurke_scheme({2, 1.0, 2}), DomainError);
    CHECK_THROWS_AS(yurke_scheme({1, 0.5, 2}), DomainError);
    CHECK_THROWS_AS(yurke_scheme({2, 0.5, 3}), DomainError);
    CHECK_THROWS_AS(yurke_scheme({7, 0.5, 2}), CapacityError);
    CHECK_NOTHROW(yurke_scheme({7, 0.5, 2}, 14));
  }
}

TEST_CASE("closed-form coincidence probability") {
  SUBCASE("matches the full simulation") {
    for (int n = 2; n <= 5; ++n) {
      for (const double rho : {0.1, 0.3, 0.5, 0.7}) {
        const auto [state, prob] = yurke_scheme({n, rho, 2});
        CHECK(std::abs(prob - yurke_success_probability(n, rho)) <= 1e-10);
      }
    }
  }
  SUBCASE("approaches 1/(2 e^2) at the optimal taps") {
    const double asym = 1.0 / (2.0 * std::exp(2.0));
    CHECK(std::abs(yurke_success_probability(100, 0.01) - asym) <
          0.1 * asym);
    const double p10 = yurke_success_probability(10, 0.1);
    const double p100 = yurke_success_probability(100, 0.01);
    const double p1e3 = yurke_success_probability(1000, 1e-3);
    const double p1e4 = yurke_success_probability(10000, 1e-4);
    CHECK(p10 < p100);
    CHECK(p100 < p1e3);
    CHECK(p1e3 < p1e4);
    CHECK(std::abs(p1e4 - asym) < std::abs(p10 - asym));
    CHECK(std::abs(p1e4 - asym) < 0.005);
  }
  SUBCASE("domain validation") {
    CHECK_THROWS_AS(yurke_success_probability(1, 0.5), DomainError);
    CHECK_THROWS_AS(yurke_success_probability(4, 0.0), DomainError);
    CHECK_THROWS_AS(yurke_success_probability(4, 1.0), DomainError);
  }
}

TEST_CASE("reflectivity optimization") {
  SUBCASE("argmax near 1/n, cross-checked against a dense grid") {
    const auto [rho_star, p_star] = optimize_reflectivity(10);
    double best_rho = 0.0, best_p = 0.0;
    for (int k = 1; k < 10000; ++k) {
      const double rho = k * 1e-4;
      const double p = yurke_success_probability(10, rho);
      if (p > best_p) {
        best_p = p;
        best_rho = rho;
      }
    }
    CHECK(std::abs(rho_star - best_rho) <= 1e-4);
    CHECK(std::abs(rho_star - 0.1) <= 1e-6);
    CHECK(p_star >= best_p - 1e-12);
  }
  SUBCASE("large n sits within 2 percent of the asymptote") {
    const auto [rho_star, p_star] = optimize_reflectivity(1000);
    const double asym = 1.0 / (2.0 * std::exp(2.0));
    CHECK(std::abs(p_star - asym) <= 0.02 * asym);
    CHECK(std::abs(rho_star * 1000.0 - 1.0) <= 0.25);
  }
  SUBCASE("profile is unimodal") {
    int sign_changes = 0;
    double prev = yurke_success_probability(10, 1e-3);
    bool rising = true;
    for (int k = 2; k < 1000; ++k) {
      const double p = yurke_success_probability(10, k * 1e-3);
      if (rising && p < prev) {
        rising = false;
        ++sign_changes;
      } else if (!rising && p > prev) {
        rising = true;
        ++sign_changes;
      }
      prev = p;
    }
    CHECK(sign_changes == 1);
  }
}

TEST_CASE("single-photon nondemolition detection") {
  SUBCASE("one photon heralds at 1/8 and survives") {
    const QndResult r = qnd_scheme({{0, 0}, {1, 0}, {0, 0}});
    CHECK(r.herald_probability == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(r.classification == QndClassification::kSinglePhotonHeralded);
    CHECK(r.output.mode_count() == 1);
    CHECK(fidelity(make_basis_state({1}), r.output) >= 1.0 - 1e-12);
  }
  SUBCASE("vacuum never heralds") {
    const QndResult r = qnd_scheme({{1, 0}, {0, 0}, {0, 0}});
    CHECK(r.herald_probability <= 1e-12);
    CHECK(r.classification == QndClassification::kNoHerald);
  }
  SUBCASE("the two-photon false positive is vetoed") {
    const QndResult r = qnd_scheme({{0, 0}, {0, 0}, {1, 0}});
    CHECK(r.herald_probability <= 1e-12);
  }
  SUBCASE("herald probability is linear in the one-photon weight") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < 25; ++i) {
      Amplitude c0{gauss(rng), gauss(rng)}, c1{gauss(rng), gauss(rng)},
          c2{gauss(rng), gauss(rng)};
      const double n =
          std::sqrt(std::norm(c0) + std::norm(c1) + std::norm(c2));
      const QndResult r = qnd_scheme({c0 / n, c1 / n, c2 / n});
      CHECK(std::abs(r.herald_probability - std::norm(c1 / n) / 8.0) <=
            1e-10);
    }
  }
  SUBCASE("unnormalized input rejected") {
    CHECK_THROWS_AS(qnd_scheme({{1, 0}, {1, 0}, {0, 0}}), DomainError);
  }
  SUBCASE("device unitary spot checks") {
    const ModeUnitary u = qnd_unitary();
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(u.entries()(0, 0) - Amplitude{s, 0.0}) < 1e-15);
    CHECK(std::abs(u.entries()(2, 0) - Amplitude{-s, 0.0}) < 1e-15);
    CHECK(std::abs(u.entries()(1, 2) - Amplitude{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(u.entries()(3, 3) - Amplitude{0.5, 0.0}) < 1e-15);
  }
}

TEST_CASE("phase sensitivity") {
  SUBCASE("path-entangled probes reach the 1/N limit") {
    for (const int n : {2, 3, 4}) {
      const SensitivityReport r = phase_sensitivity(
          noon_state(n, 1.0), 0.37, Observable::noon_projector(n));
      CHECK(std::abs(r.delta_phi * n - 1.0) <= 1e-9);
      CHECK(r.mean_obs == doctest::Approx(std::cos(n * 0.37)).epsilon(1e-12));
      CHECK(r.std_obs ==
            doctest::Approx(std::abs(std::sin(n * 0.37))).epsilon(1e-10));
    }
  }
  SUBCASE("coherent light reaches only the 1/sqrt(N) limit") {
    const PureState input =
        tensor(truncated_coherent_state({1.0, 0.0}, 10), make_basis_state({0}));
    const SensitivityReport r = phase_sensitivity(
        input, kTestPi / 2.0, Observable::difference_current());
    CHECK(std::abs(r.delta_phi - 1.0) <= 0.01);
  }
  SUBCASE("dual Fock input with a plain difference current is degenerate") {
    CHECK_THROWS_AS(phase_sensitivity(make_basis_state({1, 1}), kTestPi / 2.0,
                                      Observable::difference_current()),
                    DegeneratePointError);
  }
  SUBCASE("statistics helper matches the report") {
    const auto [mean, spread] = observable_statistics(
        noon_state(4, 1.0), 0.37, Observable::noon_projector(4));
    const SensitivityReport r = phase_sensitivity(
        noon_state(4, 1.0), 0.37, Observable::noon_projector(4));
    CHECK(mean == r.mean_obs);
    CHECK(spread == r.std_obs);
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(phase_sensitivity(make_basis_state({1}), 0.3,
                                      Observable::difference_current()),
                    DomainError);
  }
}

TEST_CASE("truncated coherent state") {
  const PureState s = truncated_coherent_state({1.0, 0.0}, 10);
  CHECK(s.is_normalized());
  double mean = 0.0;
  for (const auto& [occ, amp] : s.terms()) {
    mean += std::norm(amp) * occ[0];
  }
  CHECK(std::abs(mean - 1.0) < 1e-6);
}
