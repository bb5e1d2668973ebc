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

// One-shot separability criteria. Each is a necessary condition for
// separability; a failing verdict certifies entanglement.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sepkit/linalg.hpp"
#include "sepkit/symext.hpp"
#include "sepkit/verdict.hpp"

namespace sepkit {

enum class EntropyOrder { Two, VonNeumann };

enum class Criterion { Ppt, Reduction, Entropic2, EntropicVonNeumann, Majorization, CrossNorm, SymmetricExtension };

std::string_view criterion_name(Criterion c);
/// Accepts the canonical names plus "entropic" (alpha = 2), "crossnorm",
/// "symext".
std::optional<Criterion> parse_criterion(std::string_view name);

// Default tolerances.
inline constexpr double kSpectralRelTol = 1e-9;
inline constexpr double kPrefixSumTol = 1e-10;
inline constexpr double kEntropyTol = 1e-9;
inline constexpr double kCrossNormTol = 1e-9;

/// Renyi entropy in bits of a probability spectrum. Non-positive entries
/// contribute nothing.
double renyi_entropy(const RealVector& spectrum, EntropyOrder order);

/// margin = min eigenvalue of rho^{T_B}.
Verdict ppt_test(const DensityMatrix& rho);
/// margin = min(lambda_min(I (x) rho_B - rho), lambda_min(rho_A (x) I - rho)).
Verdict reduction_test(const DensityMatrix& rho);
/// margin = min_M S(rho_AB) - S(rho_M) over both marginals.
Verdict entropic_test(const DensityMatrix& rho, EntropyOrder order);
/// margin = most negative prefix-sum difference of sorted spectra.
Verdict majorization_test(const DensityMatrix& rho);
/// margin = 1 - ||realign(rho)||_1.
Verdict cross_norm_test(const DensityMatrix& rho);

struct RunAllOptions {
  bool include_symmetric_extension = true;
  std::size_t symext_copies = 2;
  SymExtOptions symext;
  /// Independent evidence of entanglement (e.g. a UPB certificate). When set,
  /// every passing verdict is annotated with it.
  std::optional<std::string> entanglement_certificate;
};

Verdict evaluate(Criterion c, const DensityMatrix& rho, const RunAllOptions& opts = {});

/// PPT, reduction, entropic (alpha = 2), majorization, cross norm and,
/// optionally, the symmetric extension test.
std::vector<Verdict> run_all(const DensityMatrix& rho, const RunAllOptions& opts = {});

}  // namespace sepkit
