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

#ifndef FOCKBENCH_OPTIMIZE_HPP
#define FOCKBENCH_OPTIMIZE_HPP

#include <Eigen/Dense>
#include <functional>

namespace fockbench {

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
};

/// Derivative-free simplex minimization with the standard
/// reflect/expand/contract/shrink moves. Stops when the simplex's function
/// spread drops below f_tol or after max_iterations.
NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& start, double initial_step, int max_iterations,
    double f_tol);

struct ScalarMaxResult {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
ScalarMaxResult golden_section_max(const std::function<double(double)>& f,
                                   double lo, double hi, double x_tol);

}  // namespace fockbench

#endif  // FOCKBENCH_OPTIMIZE_HPP
