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

#include <map>
#include <string>
#include <vector>

namespace sepkit {

enum class Outcome { Pass, Fail, Inconclusive };

/// Outcome of one separability criterion on one state.
///
/// `margin` is the signed distance from the decision threshold (positive means
/// the state satisfies the criterion) and `passed == (margin >= -tolerance)`.
/// Inconclusive outcomes are counted as passed: the criterion did not detect
/// entanglement.
struct Verdict {
  std::string criterion;
  bool passed = false;
  Outcome outcome = Outcome::Fail;
  double margin = 0.0;
  double tolerance = 0.0;
  std::map<std::string, std::vector<double>> details;
  std::vector<std::string> notes;
};

inline Verdict make_verdict(std::string criterion, double margin, double tolerance) {
  Verdict v;
  v.criterion = std::move(criterion);
  v.margin = margin;
  v.tolerance = tolerance;
  v.passed = margin >= -tolerance;
  v.outcome = v.passed ? Outcome::Pass : Outcome::Fail;
  return v;
}

}  // namespace sepkit
