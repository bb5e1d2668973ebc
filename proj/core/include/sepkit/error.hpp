/*
 * Copyright 2026 The sepkit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace sepkit {

/// Operand dimensions do not agree with each other or with a declared shape.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value violates one of its type invariants. The message names the invariant.
class InvariantError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation precondition does not hold (bad parameter, wrong regime).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A tensor construction would exceed the configured dimension cap.
class CapExceededError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A property that is guaranteed mathematically was observed to fail.
/// Always indicates a bug in the implementation, never a property of the input.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sepkit
