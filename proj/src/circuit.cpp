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

#include "fockbench/circuit.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "fockbench/errors.hpp"

namespace fockbench {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

// Strips the `#` comment, then splits on whitespace keeping columns.
std::vector<Token> tokenize(std::string_view line) {
  const std::size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j]))) {
      ++j;
    }
    tokens.push_back(Token{std::string(line.substr(i, j - i)),
                           static_cast<int>(i) + 1});
    i = j;
  }
  return tokens;
}

std::string format_g17(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source) {}

  ParseResult run() {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= source_.size()) {
      std::size_t end = source_.find('\n', start);
      if (end == std::string_view::npos) end = source_.size();
      lines.push_back(source_.substr(start, end - start));
      start = end + 1;
      if (start > source_.size()) break;
    }
    for (std::size_t k = 0; k < lines.size(); ++k) {
      line_no_ = static_cast<int>(k) + 1;
      parse_line(lines[k]);
    }
    if (!saw_modes_) {
      error(1, 1, saw_any_statement_
                      ? "missing `modes` declaration"
                      : "empty circuit: missing `modes` declaration");
    }
    ParseResult result;
    result.diagnostics = std::move(diagnostics_);
    bool has_error = false;
    for (const auto& d : result.diagnostics) {
      if (d.severity == ParseDiagnostic::Severity::kError) has_error = true;
    }
    if (!has_error) result.spec = std::move(spec_);
    return result;
  }

 private:
  void error(int line, int col, std::string msg) {
    diagnostics_.push_back(ParseDiagnostic{
        line, col, std::move(msg), ParseDiagnostic::Severity::kError});
  }
  void warning(int line, int col, std::string msg) {
    diagnostics_.push_back(ParseDiagnostic{
        line, col, std::move(msg), ParseDiagnostic::Severity::kWarning});
  }

  bool parse_double(const Token& t, double& out) {
    char* end = nullptr;
    out = std::strtod(t.text.c_str(), &end);
    if (end != t.text.c_str() + t.text.size() || t.text.empty()) {
      error(line_no_, t.column, "expected a number, got `" + t.text + "`");
      return false;
    }
    if (!std::isfinite(out)) {
      error(line_no_, t.column, "number must be finite");
      return false;
    }
    return true;
  }

  bool parse_int(const Token& t, int& out) {
    char* end = nullptr;
    const long v = std::strtol(t.text.c_str(), &end, 10);
    if (end != t.text.c_str() + t.text.size() || t.text.empty()) {
      error(line_no_, t.column, "expected an integer, got `" + t.text + "`");
      return false;
    }
    if (v < -1000000 || v > 1000000) {
      error(line_no_, t.column, "integer out of range");
      return false;
    }
    out = static_cast<int>(v);
    return true;
  }

  bool check_mode_index(const Token& t, int mode) {
    if (mode < 0 || mode >= spec_.mode_count) {
      error(line_no_, t.column, "mode index out of range");
      return false;
    }
    return true;
  }

  bool require_modes(const Token& keyword) {
    if (!saw_modes_) {
      error(line_no_, keyword.column,
            "`" + keyword.text + "` before `modes` declaration");
      return false;
    }
    return true;
  }

  bool expect_count(const std::vector<Token>& tokens, std::size_t count,
                    const char* usage) {
    if (tokens.size() != count) {
      error(line_no_, tokens[0].column,
            std::string("expected `") + usage + "`");
      return false;
    }
    return true;
  }

  void parse_line(std::string_view raw) {
    const std::vector<Token> tokens = tokenize(raw);
    if (tokens.empty()) return;
    saw_any_statement_ = true;
    const std::string& kw = tokens[0].text;
    if (kw == "modes") {
      parse_modes(tokens);
    } else if (kw == "input") {
      parse_input(tokens, raw);
    } else if (kw == "bs") {
      parse_bs(tokens);
    } else if (kw == "ps") {
      parse_ps(tokens);
    } else if (kw == "kerr") {
      parse_kerr(tokens);
    } else if (kw == "detect") {
      parse_detect(tokens);
    } else if (kw == "sweep") {
      parse_sweep(tokens);
    } else {
      error(line_no_, tokens[0].column, "unknown statement `" + kw + "`");
    }
  }

  void parse_modes(const std::vector<Token>& tokens) {
    if (saw_modes_) {
      error(line_no_, tokens[0].column, "duplicate `modes` declaration");
      return;
    }
    if (!expect_count(tokens, 2, "modes N")) return;
    int n = 0;
    if (!parse_int(tokens[1], n)) return;
    if (n <= 0) {
      error(line_no_, tokens[1].column, "mode count must be positive");
      return;
    }
    spec_.mode_count = n;
    saw_modes_ = true;
  }

  void parse_input(const std::vector<Token>& tokens, std::string_view raw) {
    if (!require_modes(tokens[0])) return;
    if (spec_.input.has_value()) {
      error(line_no_, tokens[0].column, "duplicate `input` declaration");
      return;
    }
    if (tokens.size() >= 2 && tokens[1].text == "superpose") {
      parse_input_superpose(tokens, raw);
      return;
    }
    if (tokens.size() != static_cast<std::size_t>(spec_.mode_count) + 1) {
      error(line_no_, tokens[0].column,
            "`input` needs one photon count per mode (" +
                std::to_string(spec_.mode_count) + ")");
      return;
    }
    OccupationVector counts;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      int c = 0;
      if (!parse_int(tokens[i], c)) return;
      if (c < 0) {
        error(line_no_, tokens[i].column, "photon count must be >= 0");
        return;
      }
      counts.push_back(c);
    }
    spec_.input = InputDecl{std::move(counts)};
  }

  // `input superpose ( n1,...,nk : re im ; ... )`
  void parse_input_superpose(const std::vector<Token>& tokens,
                             std::string_view raw) {
    std::string_view body = raw;
    const std::size_t hash = body.find('#');
    if (hash != std::string_view::npos) body = body.substr(0, hash);
    const std::size_t open = body.find('(');
    const std::size_t close = body.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos ||
        close < open) {
      error(line_no_, tokens[1].column,
            "`input superpose` needs a parenthesized term list");
      return;
    }
    const std::string inner(body.substr(open + 1, close - open - 1));
    std::vector<SuperposeTerm> terms;
    std::size_t pos = 0;
    while (pos <= inner.size()) {
      std::size_t sep = inner.find(';', pos);
      if (sep == std::string::npos) sep = inner.size();
      const std::string chunk = inner.substr(pos, sep - pos);
      const int chunk_col = static_cast<int>(open + 2 + pos);
      if (chunk.find_first_not_of(" \t") != std::string::npos) {
        SuperposeTerm term;
        if (!parse_superpose_term(chunk, chunk_col, term)) return;
        terms.push_back(std::move(term));
      }
      pos = sep + 1;
      if (sep == inner.size()) break;
    }
    if (terms.empty()) {
      error(line_no_, tokens[1].column, "`input superpose` has no terms");
      return;
    }
    spec_.input = InputDecl{std::move(terms)};
  }

  bool parse_superpose_term(const std::string& chunk, int col,
                            SuperposeTerm& out) {
    const std::size_t colon = chunk.find(':');
    if (colon == std::string::npos) {
      error(line_no_, col, "superpose term needs `counts : re im`");
      return false;
    }
    // counts
    std::string counts_part = chunk.substr(0, colon);
    std::size_t pos = 0;
    OccupationVector counts;
    while (pos <= counts_part.size()) {
      std::size_t sep = counts_part.find(',', pos);
      if (sep == std::string::npos) sep = counts_part.size();
      std::string item = counts_part.substr(pos, sep - pos);
      const std::size_t b = item.find_first_not_of(" \t");
      const std::size_t e = item.find_last_not_of(" \t");
      if (b == std::string::npos) {
        error(line_no_, col, "empty photon count in superpose term");
        return false;
      }
      item = item.substr(b, e - b + 1);
      char* end = nullptr;
      const long v = std::strtol(item.c_str(), &end, 10);
      if (end != item.c_str() + item.size() || v < 0 || v > 1000000) {
        error(line_no_, col, "bad photon count `" + item + "`");
        return false;
      }
      counts.push_back(static_cast<int>(v));
      pos = sep + 1;
      if (sep == counts_part.size()) break;
    }
    if (static_cast<int>(counts.size()) != spec_.mode_count) {
      error(line_no_, col,
            "superpose term has " + std::to_string(counts.size()) +
                " counts, expected " + std::to_string(spec_.mode_count));
      return false;
    }
    // amplitude
    std::istringstream amp_stream(chunk.substr(colon + 1));
    double re = 0.0, im = 0.0;
    std::string extra;
    if (!(amp_stream >> re >> im) || (amp_stream >> extra) ||
        !std::isfinite(re) || !std::isfinite(im)) {
      error(line_no_, col, "superpose term needs `counts : re im`");
      return false;
    }
    out.counts = std::move(counts);
    out.amplitude = Amplitude{re, im};
    return true;
  }

  void parse_bs(const std::vector<Token>& tokens) {
    if (!require_modes(tokens[0])) return;
    if (!expect_count(tokens, 5, "bs THETA PHASE I J")) return;
    BsElement el;
    el.pos = {line_no_, tokens[0].column};
    if (!parse_double(tokens[1], el.theta) ||
        !parse_double(tokens[2], el.phase) ||
        !parse_int(tokens[3], el.mode_a) || !parse_int(tokens[4], el.mode_b)) {
      return;
    }
    if (el.theta < 0.0 || el.theta > kPi / 2.0) {
      error(line_no_, tokens[1].column, "theta must lie in [0, pi/2]");
      return;
    }
    if (!check_mode_index(tokens[3], el.mode_a) ||
        !check_mode_index(tokens[4], el.mode_b)) {
      return;
    }
    if (el.mode_a == el.mode_b) {
      error(line_no_, tokens[4].column, "beam splitter modes must differ");
      return;
    }
    spec_.elements.emplace_back(el);
  }

  void parse_ps(const std::vector<Token>& tokens) {
    if (!require_modes(tokens[0])) return;
    if (!expect_count(tokens, 3, "ps PHI I")) return;
    PsElement el;
    el.pos = {line_no_, tokens[0].column};
    if (!parse_double(tokens[1], el.phi) || !parse_int(tokens[2], el.mode)) {
      return;
    }
    if (!check_mode_index(tokens[2], el.mode)) return;
    spec_.elements.emplace_back(el);
  }

  void parse_kerr(const std::vector<Token>& tokens) {
    if (!require_modes(tokens[0])) return;
    if (!expect_count(tokens, 4, "kerr KT I J")) return;
    KerrElement el;
    el.pos = {line_no_, tokens[0].column};
    if (!parse_double(tokens[1], el.kappa_tau) ||
        !parse_int(tokens[2], el.mode_a) || !parse_int(tokens[3], el.mode_b)) {
      return;
    }
    if (!check_mode_index(tokens[2], el.mode_a) ||
        !check_mode_index(tokens[3], el.mode_b)) {
      return;
    }
    if (el.mode_a == el.mode_b) {
      error(line_no_, tokens[3].column, "kerr modes must differ");
      return;
    }
    spec_.elements.emplace_back(el);
  }

  void parse_detect(const std::vector<Token>& tokens) {
    if (!require_modes(tokens[0])) return;
    if (!expect_count(tokens, 4, "detect I (exactly|atleast) N")) return;
    int mode = 0, count = 0;
    if (!parse_int(tokens[1], mode)) return;
    if (!check_mode_index(tokens[1], mode)) return;
    CountCondition cond;
    if (tokens[2].text == "exactly") {
      cond.kind = CountCondition::Kind::kExactly;
    } else if (tokens[2].text == "atleast") {
      cond.kind = CountCondition::Kind::kAtLeast;
    } else {
      error(line_no_, tokens[2].column,
            "expected `exactly` or `atleast`, got `" + tokens[2].text + "`");
      return;
    }
    if (!parse_int(tokens[3], count)) return;
    if (count < 0) {
      error(line_no_, tokens[3].column, "detector count must be >= 0");
      return;
    }
    cond.count = count;
    if (spec_.heralds.conditions.contains(mode)) {
      error(line_no_, tokens[1].column,
            "duplicate herald mode " + std::to_string(mode));
      return;
    }
    spec_.heralds.conditions.emplace(mode, cond);
  }

  void parse_sweep(const std::vector<Token>& tokens) {
    if (!expect_count(tokens, 5, "sweep NAME FROM TO STEPS")) return;
    SweepDecl sw;
    sw.name = tokens[1].text;
    int steps = 0;
    if (!parse_double(tokens[2], sw.from) || !parse_double(tokens[3], sw.to) ||
        !parse_int(tokens[4], steps)) {
      return;
    }
    if (steps < 1) {
      error(line_no_, tokens[4].column, "sweep needs at least one step");
      return;
    }
    sw.steps = steps;
    if (sw.name != "r_sq" && sw.name != "phi" && sw.name != "n") {
      warning(line_no_, tokens[1].column,
              "sweep parameter `" + sw.name +
                  "` is not a recognized built-in (r_sq, phi, n)");
    }
    spec_.sweeps.push_back(std::move(sw));
  }

  std::string_view source_;
  int line_no_ = 0;
  bool saw_modes_ = false;
  bool saw_any_statement_ = false;
  CircuitSpec spec_;
  std::vector<ParseDiagnostic> diagnostics_;
};

}  // namespace

std::string to_string(const ParseDiagnostic& d) {
  std::ostringstream os;
  os << "line " << d.line << ", col " << d.column << ": "
     << (d.severity == ParseDiagnostic::Severity::kError ? "error" : "warning")
     << ": " << d.message;
  return os.str();
}

ParseResult parse(std::string_view source) { return Parser(source).run(); }

std::string serialize(const CircuitSpec& spec) {
  std::ostringstream os;
  os << "modes " << spec.mode_count << '\n';
  if (spec.input.has_value()) {
    if (const auto* counts = std::get_if<OccupationVector>(&*spec.input)) {
      os << "input";
      for (int c : *counts) os << ' ' << c;
      os << '\n';
    } else {
      const auto& terms = std::get<std::vector<SuperposeTerm>>(*spec.input);
      os << "input superpose (";
      for (std::size_t i = 0; i < terms.size(); ++i) {
        os << (i ? " ; " : " ");
        for (std::size_t j = 0; j < terms[i].counts.size(); ++j) {
          if (j) os << ',';
          os << terms[i].counts[j];
        }
        os << " : " << format_g17(terms[i].amplitude.real()) << ' '
           << format_g17(terms[i].amplitude.imag());
      }
      os << " )\n";
    }
  }
  for (const auto& element : spec.elements) {
    if (const auto* bs = std::get_if<BsElement>(&element)) {
      os << "bs " << format_g17(bs->theta) << ' ' << format_g17(bs->phase)
         << ' ' << bs->mode_a << ' ' << bs->mode_b << '\n';
    } else if (const auto* ps = std::get_if<PsElement>(&element)) {
      os << "ps " << format_g17(ps->phi) << ' ' << ps->mode << '\n';
    } else if (const auto* kerr = std::get_if<KerrElement>(&element)) {
      os << "kerr " << format_g17(kerr->kappa_tau) << ' ' << kerr->mode_a
         << ' ' << kerr->mode_b << '\n';
    }
  }
  for (const auto& [mode, cond] : spec.heralds.conditions) {
    os << "detect " << mode << ' '
       << (cond.kind == CountCondition::Kind::kExactly ? "exactly" : "atleast")
       << ' ' << cond.count << '\n';
  }
  for (const auto& sw : spec.sweeps) {
    os << "sweep " << sw.name << ' ' << format_g17(sw.from) << ' '
       << format_g17(sw.to) << ' ' << sw.steps << '\n';
  }
  return os.str();
}

LowerResult lower(const CircuitSpec& spec, bool oracle_mode) {
  LowerResult result;
  for (const auto& element : spec.elements) {
    if (const auto* kerr = std::get_if<KerrElement>(&element)) {
      if (!oracle_mode) {
        result.diagnostics.push_back(ParseDiagnostic{
            kerr->pos.line, kerr->pos.column,
            "nonlinear element outside oracle mode",
            ParseDiagnostic::Severity::kError});
      }
    }
  }
  if (!result.diagnostics.empty()) return result;

  LoweredCircuit circuit;
  circuit.mode_count = spec.mode_count;
  circuit.herald = spec.heralds;

  if (!spec.input.has_value()) {
    circuit.input = make_basis_state(
        OccupationVector(static_cast<std::size_t>(spec.mode_count), 0));
  } else if (const auto* counts =
                 std::get_if<OccupationVector>(&*spec.input)) {
    circuit.input = make_basis_state(*counts);
  } else {
    const auto& decl = std::get<std::vector<SuperposeTerm>>(*spec.input);
    std::vector<std::pair<OccupationVector, Amplitude>> terms;
    terms.reserve(decl.size());
    for (const auto& t : decl) terms.emplace_back(t.counts, t.amplitude);
    circuit.input = superpose(terms, true);
  }

  // Fuse adjacent linear elements; a kerr element breaks the fusion.
  std::optional<ModeUnitary> pending;
  auto flush = [&] {
    if (pending.has_value()) {
      circuit.stages.push_back(LoweredStage{std::move(*pending)});
      pending.reset();
    }
  };
  for (const auto& element : spec.elements) {
    if (const auto* bs = std::get_if<BsElement>(&element)) {
      const ModeUnitary u = beam_splitter_unitary(
          {bs->theta, bs->phase, bs->mode_a, bs->mode_b}, spec.mode_count);
      pending = pending.has_value() ? compose(u, *pending) : u;
    } else if (const auto* ps = std::get_if<PsElement>(&element)) {
      const ModeUnitary u =
          phase_shifter_unitary(ps->mode, ps->phi, spec.mode_count);
      pending = pending.has_value() ? compose(u, *pending) : u;
    } else if (const auto* kerr = std::get_if<KerrElement>(&element)) {
      flush();
      circuit.stages.push_back(LoweredStage{
          KerrParams{kerr->kappa_tau, kerr->mode_a, kerr->mode_b}});
    }
  }
  flush();
  result.circuit = std::move(circuit);
  return result;
}

HeraldResult run_lowered(const LoweredCircuit& circuit, int photon_cutoff) {
  PureState state = circuit.input;
  for (const auto& stage : circuit.stages) {
    if (const auto* u = std::get_if<ModeUnitary>(&stage.op)) {
      state = apply_unitary(state, *u, photon_cutoff);
    } else {
      state = apply_kerr(state, std::get<KerrParams>(stage.op));
    }
  }
  return project(state, circuit.herald);
}

std::vector<EmbeddedCheck> extract_embedded_checks(std::string_view source) {
  std::vector<EmbeddedCheck> checks;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    const std::string_view line = source.substr(start, end - start);
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) {
      std::istringstream is{std::string(line.substr(hash + 1))};
      std::string word;
      if (is >> word && word == "check") {
        EmbeddedCheck check;
        check.line = line_no;
        if (is >> check.name >> check.expected >> check.tolerance) {
          checks.push_back(std::move(check));
        } else {
          throw DomainError("malformed check comment at line " +
                            std::to_string(line_no));
        }
      }
    }
    start = end + 1;
    if (start > source.size()) break;
  }
  return checks;
}

}  // namespace fockbench
