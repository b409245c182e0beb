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

#ifndef FOCKBENCH_ERRORS_HPP
#define FOCKBENCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fockbench {

/// A precondition was violated (bad mode index, negative photon count,
/// unnormalized input where a normalized one is required, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// The operation would exceed a configured resource bound, e.g. the global
/// photon cutoff or the maximum permanent size. Raised instead of silently
/// truncating amplitudes.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical search failed to reach its target quality.
class SearchFailure : public std::runtime_error {
 public:
  explicit SearchFailure(const std::string& what) : std::runtime_error(what) {}
};

/// The observable's phase derivative vanishes; the phase sensitivity is
/// unbounded at this operating point.
class DegeneratePointError : public std::runtime_error {
 public:
  explicit DegeneratePointError(const std::string& what)
      : std::runtime_error(what) {}
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fockbench

#endif  // FOCKBENCH_ERRORS_HPP
