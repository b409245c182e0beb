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

#ifndef FOCKBENCH_OPTICS_HPP
#define FOCKBENCH_OPTICS_HPP

#include <Eigen/Dense>
#include <complex>

#include "fockbench/fock_state.hpp"

namespace fockbench {

/// Beam splitter acting on one mode pair. The mixing angle fixes the
/// reflectivity |r|^2 = sin^2(theta); `phase` is applied as a pre-rotation
/// on mode_b (a phase plate in that arm before the splitter).
struct BeamSplitterParams {
  double theta = 0.0;
  double phase = 0.0;
  int mode_a = 0;
  int mode_b = 1;
};

/// Ideal cross-Kerr element: each term picks up exp(i * kappa_tau * na * nb).
struct KerrParams {
  double kappa_tau = 0.0;
  int mode_a = 0;
  int mode_b = 1;
};

/// Complex matrix acting on mode creation operators,
/// a_j^dag -> sum_k U(k,j) a'_k^dag. Every linear element compiles to one.
/// Construction validates unitarity (U U^dag = 1 within `unitarity_tol`).
class ModeUnitary {
 public:
  explicit ModeUnitary(Eigen::MatrixXcd entries, double unitarity_tol = 1e-10);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }

  static ModeUnitary identity(int dim);

 private:
  Eigen::MatrixXcd entries_;
};

/// Identity outside {mode_a, mode_b}; on the pair the real-orthogonal
/// convention
///   a^dag -> cos(theta) a'^dag + sin(theta) b'^dag
///   b^dag -> e^{i phase} (sin(theta) a'^dag - cos(theta) b'^dag).
/// At theta = pi/4 this sends |1,1> to (|2,0> - |0,2>)/sqrt(2).
ModeUnitary beam_splitter_unitary(const BeamSplitterParams& params,
                                  int total_modes);

/// Diagonal matrix with e^{i phi} at (mode, mode).
ModeUnitary phase_shifter_unitary(int mode, double phi, int total_modes);

/// Matrix product later * earlier: `earlier` acts on the state first.
ModeUnitary compose(const ModeUnitary& later, const ModeUnitary& earlier);

/// Applies the mode unitary to a Fock state by multinomial expansion of the
/// transformed creation-operator products, with exact factorial bookkeeping.
/// Photon number is conserved term by term; any input term with more than
/// `photon_cutoff` photons raises CapacityError.
PureState apply_unitary(const PureState& state, const ModeUnitary& u,
                        int photon_cutoff = kDefaultPhotonCutoff);

/// Permanent by Ryser's inclusion-exclusion formula with Gray-code updates,
/// O(2^n n). perm of the empty matrix is 1.
std::complex<double> permanent(const Eigen::MatrixXcd& a);

/// <output| U |input> via the permanent of the row/column-repeated submatrix
/// divided by sqrt(prod n_i! prod m_j!). Independent of apply_unitary; the
/// two routes cross-check each other. Photon-number mismatch gives exact 0;
/// more than 20 photons raises CapacityError.
Amplitude transition_amplitude_permanent(const ModeUnitary& u,
                                         const OccupationVector& input,
                                         const OccupationVector& output);

/// Ideal Kerr nonlinearity, the reference oracle the measurement-induced
/// gates are validated against. Diagonal in the photon-number basis, so the
/// norm is preserved exactly.
PureState apply_kerr(const PureState& state, const KerrParams& params);

}  // namespace fockbench

#endif  // FOCKBENCH_OPTICS_HPP
