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

#include "fockbench/optics.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fockbench/errors.hpp"

namespace fockbench {

namespace {

constexpr int kMaxPermanentPhotons = 20;

// Factorials in double up to 20!. Only ratios under square roots reach user
// code, so the rounding of 19! and 20! stays far below 1e-10.
constexpr std::array<double, kMaxPermanentPhotons + 1> kFactorial = {
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
};

// Memoized sqrt-factorial table; the magic static makes first use safe under
// concurrent callers, read-only afterwards.
const std::array<double, kMaxPermanentPhotons + 1>& sqrt_factorial_table() {
  static const std::array<double, kMaxPermanentPhotons + 1> table = [] {
    std::array<double, kMaxPermanentPhotons + 1> t{};
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::sqrt(kFactorial[i]);
    return t;
  }();
  return table;
}

double sqrt_factorial_product(const OccupationVector& occ) {
  const auto& table = sqrt_factorial_table();
  double p = 1.0;
  for (int c : occ) p *= table[static_cast<std::size_t>(c)];
  return p;
}

void check_mode_pair(int mode_a, int mode_b, int total_modes,
                     const char* what) {
  if (total_modes <= 0) throw DomainError("total mode count must be positive");
  if (mode_a == mode_b) {
    throw DomainError(std::string(what) + ": modes must be distinct");
  }
  if (mode_a < 0 || mode_b < 0 || mode_a >= total_modes ||
      mode_b >= total_modes) {
    throw DomainError(std::string(what) + ": mode index out of range");
  }
}

// One multinomial expansion term of (sum_k U(k,j) b_k^dag)^n: the photon
// split `powers` over the column's nonzero rows and its coefficient
// n!/(prod powers!) * prod U^powers.
struct ColumnTerm {
  std::vector<std::pair<int, int>> powers;  // (mode, count), count > 0
  Amplitude coefficient;
};

void generate_column_terms(const Eigen::MatrixXcd& u, int column,
                           const std::vector<int>& support, std::size_t pos,
                           int remaining, Amplitude coeff_so_far,
                           double inv_fact_so_far,
                           std::vector<std::pair<int, int>>& powers,
                           int n, std::vector<ColumnTerm>& out) {
  if (pos + 1 == support.size()) {
    // Last support row takes all remaining photons.
    const int mode = support[pos];
    Amplitude c = coeff_so_far;
    for (int i = 0; i < remaining; ++i) c *= u(mode, column);
    const double mult =
        kFactorial[static_cast<std::size_t>(n)] * inv_fact_so_far /
        kFactorial[static_cast<std::size_t>(remaining)];
    if (remaining > 0) powers.emplace_back(mode, remaining);
    out.push_back(ColumnTerm{powers, c * mult});
    if (remaining > 0) powers.pop_back();
    return;
  }
  const int mode = support[pos];
  Amplitude c = coeff_so_far;
  for (int take = 0; take <= remaining; ++take) {
    if (take > 0) {
      c *= u(mode, column);
      powers.emplace_back(mode, take);
    }
    generate_column_terms(u, column, support, pos + 1, remaining - take, c,
                          inv_fact_so_far /
                              kFactorial[static_cast<std::size_t>(take)],
                          powers, n, out);
    if (take > 0) powers.pop_back();
  }
}

std::vector<ColumnTerm> column_power_terms(const Eigen::MatrixXcd& u,
                                           int column, int n) {
  std::vector<int> support;
  for (int k = 0; k < u.rows(); ++k) {
    if (u(k, column) != Amplitude{0.0, 0.0}) support.push_back(k);
  }
  std::vector<ColumnTerm> out;
  if (support.empty()) return out;  // column is zero: term annihilates
  std::vector<std::pair<int, int>> powers;
  generate_column_terms(u, column, support, 0, n, Amplitude{1.0, 0.0}, 1.0,
                        powers, n, out);
  return out;
}

}  // namespace

ModeUnitary::ModeUnitary(Eigen::MatrixXcd entries, double unitarity_tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DomainError("mode unitary must be a non-empty square matrix");
  }
  const Eigen::MatrixXcd gram = entries_ * entries_.adjoint();
  const double err =
      (gram - Eigen::MatrixXcd::Identity(entries_.rows(), entries_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (!(err <= unitarity_tol)) {
    throw DomainError("matrix is not unitary (deviation " +
                      std::to_string(err) + ")");
  }
}

ModeUnitary ModeUnitary::identity(int dim) {
  return ModeUnitary(Eigen::MatrixXcd::Identity(dim, dim));
}

ModeUnitary beam_splitter_unitary(const BeamSplitterParams& params,
                                  int total_modes) {
  check_mode_pair(params.mode_a, params.mode_b, total_modes, "beam splitter");
  if (!std::isfinite(params.theta) || !std::isfinite(params.phase)) {
    throw DomainError("beam splitter: non-finite angle");
  }
  if (params.theta < 0.0 || params.theta > M_PI / 2.0) {
    throw DomainError("beam splitter: theta must lie in [0, pi/2]");
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(total_modes, total_modes);
  const double c = std::cos(params.theta);
  const double s = std::sin(params.theta);
  const Amplitude ph = std::polar(1.0, params.phase);
  u(params.mode_a, params.mode_a) = c;
  u(params.mode_b, params.mode_a) = s;
  u(params.mode_a, params.mode_b) = ph * s;
  u(params.mode_b, params.mode_b) = -ph * c;
  return ModeUnitary(std::move(u), 1e-12);
}

ModeUnitary phase_shifter_unitary(int mode, double phi, int total_modes) {
  if (total_modes <= 0) throw DomainError("total mode count must be positive");
  if (mode < 0 || mode >= total_modes) {
    throw DomainError("phase shifter: mode index out of range");
  }
  if (!std::isfinite(phi)) throw DomainError("phase shifter: non-finite phase");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(total_modes, total_modes);
  u(mode, mode) = std::polar(1.0, phi);
  return ModeUnitary(std::move(u), 1e-12);
}

ModeUnitary compose(const ModeUnitary& later, const ModeUnitary& earlier) {
  if (later.dim() != earlier.dim()) {
    throw DomainError("compose: dimension mismatch");
  }
  return ModeUnitary(later.entries() * earlier.entries());
}

PureState apply_unitary(const PureState& state, const ModeUnitary& u,
                        int photon_cutoff) {
  if (u.dim() != state.mode_count()) {
    throw DomainError("apply_unitary: unitary dimension " +
                      std::to_string(u.dim()) + " vs state mode count " +
                      std::to_string(state.mode_count()));
  }
  const int modes = state.mode_count();
  const Eigen::MatrixXcd& mat = u.entries();

  std::map<OccupationVector, Amplitude> out;
  const OccupationVector zero(static_cast<std::size_t>(modes), 0);
  for (const auto& [occ, amp] : state.terms()) {
    const int total = total_photons(occ);
    if (total > photon_cutoff) {
      throw CapacityError("term with " + std::to_string(total) +
                          " photons exceeds cutoff " +
                          std::to_string(photon_cutoff));
    }
    // |n> = prod_j (a_j^dag)^{n_j} / sqrt(prod n_j!) |vac>; substitute
    // a_j^dag -> sum_k U(k,j) b_k^dag and convolve the multinomial
    // expansions mode by mode.
    std::map<OccupationVector, Amplitude> partial;
    partial.emplace(zero, amp / sqrt_factorial_product(occ));
    for (int j = 0; j < modes; ++j) {
      const int n = occ[static_cast<std::size_t>(j)];
      if (n == 0) continue;
      const std::vector<ColumnTerm> expansion = column_power_terms(mat, j, n);
      std::map<OccupationVector, Amplitude> next;
      for (const auto& [vec, coef] : partial) {
        for (const ColumnTerm& term : expansion) {
          OccupationVector merged = vec;
          for (const auto& [mode, count] : term.powers) {
            merged[static_cast<std::size_t>(mode)] += count;
          }
          next[std::move(merged)] += coef * term.coefficient;
        }
      }
      partial.swap(next);
    }
    for (const auto& [vec, coef] : partial) {
      out[vec] += coef * sqrt_factorial_product(vec);
    }
  }
  return PureState(modes, std::move(out));
}

std::complex<double> permanent(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) {
    throw DomainError("permanent requires a square matrix");
  }
  const int n = static_cast<int>(a.rows());
  if (n == 0) return {1.0, 0.0};
  if (n > kMaxPermanentPhotons) {
    throw CapacityError("permanent of size " + std::to_string(n) +
                        " exceeds the supported maximum of " +
                        std::to_string(kMaxPermanentPhotons));
  }
  // Ryser: perm(A) = sum_{S != 0} (-1)^{n-|S|} prod_i sum_{j in S} a_ij,
  // visiting subsets in Gray-code order so each step updates one column.
  Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(n);
  std::complex<double> total{0.0, 0.0};
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t iter = 1; iter < count; ++iter) {
    const std::uint64_t next = iter ^ (iter >> 1);
    const std::uint64_t diff = next ^ gray;
    const int j = std::countr_zero(diff);
    if (next & diff) {
      row_sums += a.col(j);
    } else {
      row_sums -= a.col(j);
    }
    gray = next;
    std::complex<double> prod{1.0, 0.0};
    for (int i = 0; i < n; ++i) prod *= row_sums(i);
    const int bits = std::popcount(gray);
    total += ((n - bits) % 2 == 0) ? prod : -prod;
  }
  return total;
}

Amplitude transition_amplitude_permanent(const ModeUnitary& u,
                                         const OccupationVector& input,
                                         const OccupationVector& output) {
  if (static_cast<int>(input.size()) != u.dim() ||
      static_cast<int>(output.size()) != u.dim()) {
    throw DomainError("occupation length does not match unitary dimension");
  }
  for (int c : input) {
    if (c < 0) throw DomainError("negative photon count");
  }
  for (int c : output) {
    if (c < 0) throw DomainError("negative photon count");
  }
  const int n_in = total_photons(input);
  const int n_out = total_photons(output);
  if (n_in != n_out) return {0.0, 0.0};
  if (n_in > kMaxPermanentPhotons) {
    throw CapacityError("transition with " + std::to_string(n_in) +
                        " photons exceeds the permanent size limit");
  }
  if (n_in == 0) return {1.0, 0.0};

  Eigen::MatrixXcd m(n_in, n_in);
  int r = 0;
  for (std::size_t i = 0; i < output.size(); ++i) {
    for (int rep = 0; rep < output[i]; ++rep, ++r) {
      int c = 0;
      for (std::size_t j = 0; j < input.size(); ++j) {
        for (int rep2 = 0; rep2 < input[j]; ++rep2, ++c) {
          m(r, c) = u.entries()(static_cast<Eigen::Index>(i),
                                static_cast<Eigen::Index>(j));
        }
      }
    }
  }
  return permanent(m) /
         (sqrt_factorial_product(input) * sqrt_factorial_product(output));
}

PureState apply_kerr(const PureState& state, const KerrParams& params) {
  check_mode_pair(params.mode_a, params.mode_b, state.mode_count(), "kerr");
  std::map<OccupationVector, Amplitude> out;
  for (const auto& [occ, amp] : state.terms()) {
    const double phi = params.kappa_tau *
                       occ[static_cast<std::size_t>(params.mode_a)] *
                       occ[static_cast<std::size_t>(params.mode_b)];
    out.emplace(occ, amp * std::polar(1.0, phi));
  }
  return PureState(state.mode_count(), std::move(out));
}

}  // namespace fockbench
