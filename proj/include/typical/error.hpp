// Copyright 2026 The typical-worlds Authors
//
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

#pragma once

#include <stdexcept>
#include <string>

namespace typical {

/// Malformed input: wrong dimensions, unknown symbols, bad parameters.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical invariant failed to hold (completeness, unitarity, ...).
/// The message names the invariant.
class InvariantViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested object exceeds a configured size cap.
class CapExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Iterative numerical routine did not converge.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace typical
