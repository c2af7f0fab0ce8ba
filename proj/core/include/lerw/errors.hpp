// Copyright 2026 The lerw Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LERW_ERRORS_HPP_
#define LERW_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lerw {

// Malformed input: bad kernel rows, non-nested sequences, endpoint mismatch.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The target set cannot be reached almost surely from the start state.
class UnreachableTargetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A trajectory ran past the configured hard step cap.
class StepCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A linear system that should be nonsingular was not (or failed its
// residual check in floating point).
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size or tolerance guard refused the requested computation.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lerw

#endif  // LERW_ERRORS_HPP_
