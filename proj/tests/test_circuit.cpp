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

#include "fockbench/circuit.hpp"
#include "fockbench/errors.hpp"
#include "fockbench/reproduce.hpp"
#include "fockbench/schemes.hpp"
#include "test_util.hpp"

using namespace fockbench;
using fbtest::kTestPi;

namespace {

const char* kHomSource =
    "modes 2\n"
    "input 1 1\n"
    "bs 0.7853981633974483 0 0 1\n"
    "detect 0 exactly 2\n";

bool has_error_at_line(const ParseResult& r, int line) {
  for (const auto& d : r.diagnostics) {
    if (d.severity == ParseDiagnostic::Severity::kError && d.line == line) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("parsing a minimal two-mode interference spec") {
  const ParseResult r = parse(kHomSource);
  REQUIRE(r.ok());
  const CircuitSpec& spec = *r.spec;
  CHECK(spec.mode_count == 2);
  REQUIRE(spec.input.has_value());
  CHECK(std::get<OccupationVector>(*spec.input) == OccupationVector{1, 1});
  REQUIRE(spec.elements.size() == 1);
  const auto& bs = std::get<BsElement>(spec.elements[0]);
  CHECK(bs.theta == doctest::Approx(kTestPi / 4.0));
  CHECK(bs.mode_a == 0);
  CHECK(bs.mode_b == 1);
  REQUIRE(spec.heralds.conditions.size() == 1);
  CHECK(spec.heralds.conditions.at(0) == CountCondition::exactly(2));
}

TEST_CASE("shipped four-photon spec has the documented shape") {
  const std::string source = read_text_file(
      ReproContext::default_context().circuits_dir + "/noon4.circ");
  const ParseResult r = parse(source);
  REQUIRE(r.ok());
  CHECK(r.spec->mode_count == 4);
  CHECK(r.spec->elements.size() == 5);
  CHECK(r.spec->heralds.conditions.size() == 2);
}

TEST_CASE("semantic validation points at the offending line") {
  SUBCASE("mode index out of range") {
    const ParseResult r = parse("modes 2\ninput 1 1\nbs 0.5 0 0 9\n");
    CHECK_FALSE(r.ok());
    CHECK(has_error_at_line(r, 3));
    bool message_found = false;
    for (const auto& d : r.diagnostics) {
      if (d.message.find("out of range") != std::string::npos) {
        message_found = true;
      }
    }
    CHECK(message_found);
  }
  SUBCASE("duplicate herald mode") {
    const ParseResult r =
        parse(std::string(kHomSource) + "detect 0 exactly 1\n");
    CHECK_FALSE(r.ok());
    CHECK(has_error_at_line(r, 5));
  }
  SUBCASE("unknown statement") {
    const ParseResult r = parse("modes 2\nsplitter 1 2\n");
    CHECK_FALSE(r.ok());
    CHECK(has_error_at_line(r, 2));
  }
  SUBCASE("statement before modes") {
    const ParseResult r = parse("input 1 1\nmodes 2\n");
    CHECK_FALSE(r.ok());
    CHECK(has_error_at_line(r, 1));
  }
  SUBCASE("non-numeric angle with a column") {
    const ParseResult r = parse("modes 2\nbs abc 0 0 1\n");
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].line == 2);
    CHECK(r.diagnostics[0].column == 4);
  }
  SUBCASE("theta outside the mixing range") {
    const ParseResult r = parse("modes 2\nbs 1.9 0 0 1\n");
    CHECK_FALSE(r.ok());
    CHECK(has_error_at_line(r, 2));
  }
  SUBCASE("input length mismatch") {
    const ParseResult r = parse("modes 2\ninput 1 1 1\n");
    CHECK_FALSE(r.ok());
    CHECK(has_error_at_line(r, 2));
  }
  SUBCASE("malformed superpose term") {
    const ParseResult r = parse("modes 2\ninput superpose ( 1,1 : 0.5 )\n");
    CHECK_FALSE(r.ok());
    CHECK(has_error_at_line(r, 2));
  }
  SUBCASE("empty source") {
    const ParseResult r = parse("");
    CHECK_FALSE(r.ok());
  }
  SUBCASE("unrecognized sweep name warns but parses") {
    const ParseResult r = parse("modes 2\nsweep bogus 0 1 5\n");
    CHECK(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].severity == ParseDiagnostic::Severity::kWarning);
  }
}

TEST_CASE("canonical serialization") {
  const ParseResult r = parse(kHomSource);
  REQUIRE(r.ok());
  const std::string canonical = serialize(*r.spec);
  CHECK(canonical.find("bs 0.78539816339744828 0 0 1") != std::string::npos);

  const ParseResult round = parse(canonical);
  REQUIRE(round.ok());
  CHECK(*round.spec == *r.spec);

  SUBCASE("sweep declarations survive the round trip") {
    CircuitSpec spec = *r.spec;
    spec.sweeps.push_back(SweepDecl{"r_sq", 0.01, 0.5, 50});
    const ParseResult again = parse(serialize(spec));
    REQUIRE(again.ok());
    REQUIRE(again.spec->sweeps.size() == 1);
    CHECK(again.spec->sweeps[0] == spec.sweeps[0]);
    CHECK(*again.spec == spec);
  }
  SUBCASE("superpose inputs survive the round trip") {
    const std::string source =
        "modes 2\n"
        "input superpose ( 1,0 : 0.59999999999999998 0 ; 0,1 : 0 0.8 )\n";
    const ParseResult a = parse(source);
    REQUIRE(a.ok());
    const ParseResult b = parse(serialize(*a.spec));
    REQUIRE(b.ok());
    CHECK(*a.spec == *b.spec);
  }
}

TEST_CASE("round trip holds on generated specs") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 50; ++i) {
    const CircuitSpec spec = random_circuit_spec(rng);
    const ParseResult r = parse(serialize(spec));
    REQUIRE(r.ok());
    CHECK(*r.spec == spec);
  }
}

TEST_CASE("lowering and running") {
  SUBCASE("two-photon bunching probability") {
    const ParseResult r = parse(kHomSource);
    REQUIRE(r.ok());
    const LowerResult lowered = lower(*r.spec, false);
    REQUIRE(lowered.ok());
    const HeraldResult hr = run_lowered(*lowered.circuit);
    CHECK(std::abs(hr.probability - 0.5) <= 1e-12);
  }
  SUBCASE("adjacent linear elements are fused") {
    const ParseResult r = parse(
        "modes 2\ninput 1 0\nbs 0.7853981633974483 0 0 1\nps 1.0 0\n");
    REQUIRE(r.ok());
    const LowerResult lowered = lower(*r.spec, false);
    REQUIRE(lowered.ok());
    CHECK(lowered.circuit->stages.size() == 1);
  }
  SUBCASE("nonlinear elements require oracle mode") {
    const ParseResult r =
        parse("modes 2\ninput 1 1\nkerr 3.1415926535897931 0 1\n");
    REQUIRE(r.ok());
    const LowerResult rejected = lower(*r.spec, false);
    CHECK_FALSE(rejected.ok());
    REQUIRE_FALSE(rejected.diagnostics.empty());
    CHECK(rejected.diagnostics[0].message ==
          "nonlinear element outside oracle mode");
    CHECK(rejected.diagnostics[0].line == 3);

    const LowerResult accepted = lower(*r.spec, true);
    REQUIRE(accepted.ok());
    const HeraldResult hr = run_lowered(*accepted.circuit);
    CHECK(hr.probability == doctest::Approx(1.0));
    CHECK(equal_up_to_global_phase(hr.conditional_state,
                                   make_basis_state({1, 1}), 1e-12));
  }
  SUBCASE("missing input defaults to vacuum") {
    const ParseResult r = parse("modes 2\nbs 0.5 0 0 1\n");
    REQUIRE(r.ok());
    const LowerResult lowered = lower(*r.spec, false);
    REQUIRE(lowered.ok());
    const HeraldResult hr = run_lowered(*lowered.circuit);
    CHECK(hr.probability == doctest::Approx(1.0));
  }
}

TEST_CASE("lowered circuits match hand-assembled module calls") {
  const ReproContext ctx = ReproContext::default_context();
  SUBCASE("path-entanglement generator") {
    const std::string source = read_text_file(ctx.circuits_dir + "/yurke.circ");
    const ParseResult r = parse(source);
    REQUIRE(r.ok());
    const LowerResult lowered = lower(*r.spec, false);
    REQUIRE(lowered.ok());
    const HeraldResult from_file = run_lowered(*lowered.circuit);
    const auto [state, prob] = yurke_scheme({2, 0.5, 2});
    CHECK(std::abs(from_file.probability - prob) <= 1e-12);
    for (const auto& [occ, amp] : state.terms()) {
      CHECK(std::abs(from_file.conditional_state.amplitude(occ) - amp) <=
            1e-12);
    }
  }
  SUBCASE("four-photon generator") {
    const std::string source = read_text_file(ctx.circuits_dir + "/noon4.circ");
    const ParseResult r = parse(source);
    REQUIRE(r.ok());
    const LowerResult lowered = lower(*r.spec, false);
    REQUIRE(lowered.ok());
    const HeraldResult from_file = run_lowered(*lowered.circuit);
    const Noon4Result scheme = noon4_scheme();
    CHECK(std::abs(from_file.probability - scheme.herald_probability) <=
          1e-12);
    for (const auto& [occ, amp] : scheme.output.terms()) {
      CHECK(std::abs(from_file.conditional_state.amplitude(occ) - amp) <=
            1e-12);
    }
  }
  SUBCASE("nondemolition detector") {
    const std::string source = read_text_file(ctx.circuits_dir + "/qnd.circ");
    const ParseResult r = parse(source);
    REQUIRE(r.ok());
    const LowerResult lowered = lower(*r.spec, false);
    REQUIRE(lowered.ok());
    const HeraldResult from_file = run_lowered(*lowered.circuit);
    const QndResult scheme = qnd_scheme({{0, 0}, {1, 0}, {0, 0}});
    CHECK(std::abs(from_file.probability - scheme.herald_probability) <=
          1e-12);
    for (const auto& [occ, amp] : scheme.output.terms()) {
      CHECK(std::abs(from_file.conditional_state.amplitude(occ) - amp) <=
            1e-12);
    }
  }
}

TEST_CASE("embedded check comments") {
  const std::string source =
      std::string(kHomSource) + "# check herald_probability 0.5 1e-10\n";
  const auto checks = extract_embedded_checks(source);
  REQUIRE(checks.size() == 1);
  CHECK(checks[0].name == "herald_probability");
  CHECK(checks[0].expected == 0.5);
  CHECK(checks[0].tolerance == 1e-10);
  CHECK(checks[0].line == 5);

  CHECK_THROWS_AS(extract_embedded_checks("# check herald_probability\n"),
                  DomainError);
}
