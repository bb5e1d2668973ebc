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

// Tensor-product closure of separability criteria: if rho and sigma pass a
// criterion then so does rho (x) sigma on the joined cut AA':BB'. Each check
// also verifies the algebraic identity the closure argument rests on.

#include <cstdint>
#include <string>
#include <vector>

#include "sepkit/criteria.hpp"
#include "sepkit/states.hpp"

namespace sepkit {

inline constexpr double kClosureTol = 1e-8;

/// rho (x) sigma regrouped from A B A' B' to (A A') (B B').
DensityMatrix bipartite_product(const DensityMatrix& rho, const DensityMatrix& sigma,
                                std::size_t cap = dimension_cap());

/// Regroups X on A B_1..B_k and Y on A' B'_1..B'_k into an operator on
/// (A A') (B_1 B'_1) .. (B_k B'_k).
Matrix compose_extensions(const Matrix& x, const BipartiteShape& xs, const Matrix& y, const BipartiteShape& ys,
                          std::size_t copies);

struct SubAssertion {
  std::string name;
  double value = 0.0;  // error, or margin for "*_psd" / "*_prefix" entries
  double tolerance = kClosureTol;
  bool ok = false;
};

struct ClosureCheck {
  Verdict product_verdict;
  std::vector<SubAssertion> sub_assertions;
  bool violation = false;
};

/// Throws PreconditionError unless both inputs pass `criterion`.
ClosureCheck closure_check(Criterion criterion, const DensityMatrix& rho, const DensityMatrix& sigma,
                           const RunAllOptions& opts = {});

/// Builds the composed extension from each input's separable witness and
/// re-verifies every extension constraint for rho (x) sigma.
ClosureCheck symext_closure_constructive(const SeparableSample& rho, const SeparableSample& sigma,
                                         std::size_t copies);

struct ClosureSweepReport {
  std::string criterion;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t sub_assertion_failures = 0;
  std::size_t separable_inputs = 0;
  std::size_t filtered_inputs = 0;
  std::size_t rejected_samples = 0;
  double min_margin = 0.0;
  double mean_margin = 0.0;
  double max_margin = 0.0;
  double tolerance = kClosureTol;
};

/// Samples `trials` passing pairs on 2x2 (x) 2x2, half random separable and
/// half random states filtered by the criterion, and runs closure_check on
/// each. Symmetric extension pairs are checked constructively from separable
/// witnesses.
ClosureSweepReport closure_sweep(Criterion criterion, std::size_t trials, std::uint64_t seed);

}  // namespace sepkit
