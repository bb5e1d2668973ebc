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

// Distance geometry of separable vs PPT states: certified witness lower
// bounds, the fidelity bound for PPT states, the bisected PPT boundary along
// the segment toward Phi(d), the finite de Finetti error term and Monte-Carlo
// farness bounds against explicit separable ansatze.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepkit/linalg.hpp"
#include "sepkit/states.hpp"

namespace sepkit {

/// 2 * dim * n / (n + k).
double definetti_bound(std::size_t dim, std::size_t n, std::size_t k);

struct SepOverlapResult {
  double value = 0.0;          // analytic maximum 1/d
  double numeric_max = 0.0;    // best product-vector overlap found
  std::size_t starts = 0;
};

/// max over separable sigma of Tr(sigma Phi(d)) = 1/d, cross-checked by a
/// multi-start product-vector search. Throws TheoremViolation if the search
/// exceeds 1/d + 1e-6.
SepOverlapResult sep_max_overlap_maxent(std::size_t d, std::size_t starts, std::uint64_t seed);

/// max(0, Tr(W rho) - sep_max) for 0 <= W <= I. `sep_max` must upper-bound
/// Tr(W sigma) over separable sigma; the result then lower-bounds the trace
/// distance of rho from the separable set.
double witness_lower_bound(const DensityMatrix& rho, const Matrix& witness, double sep_max);

struct FidelityBoundResult {
  double fidelity = 0.0;
  double bound = 0.0;
  bool ok = false;
  /// |Tr(sigma Phi) - Tr(sigma^{T_B} Phi^{T_B})|
  double transpose_identity_error = 0.0;
};

/// F(sigma, Phi(d)) <= 1/sqrt(d) for PPT sigma on d x d. Throws
/// PreconditionError if sigma is not PPT.
FidelityBoundResult fidelity_bound_check(const DensityMatrix& sigma);

inline constexpr double kDefaultBisectionTol = 1e-6;

struct BoundaryResult {
  double t_star = 0.0;
  DensityMatrix boundary_state;
  double distance_from_start = 0.0;
  double bound = 0.0;  // 1/sqrt(d)
  bool bound_ok = false;
  /// The bound is a theorem only for separable inputs; set when the caller
  /// supplied a separability certificate.
  bool separable_certified = false;
  /// PPT margins at the bracket ends.
  double margin_low = 0.0;
  double margin_high = 0.0;
};

/// Bisects t on (1 - t) rho + t Phi(d) for the PPT boundary. `certificate`
/// marks rho as separable by construction.
BoundaryResult ppt_boundary_bisect(const DensityMatrix& rho, double tol = kDefaultBisectionTol,
                                   const ProductEnsemble* certificate = nullptr);

struct FarnessPoint {
  std::size_t n = 0;
  double lower_bound = 0.0;
  double standard_error = 0.0;
  double acceptance_target = 0.0;
  double acceptance_ansatz = 0.0;
};

struct FarnessReport {
  std::vector<FarnessPoint> points;
  /// Indices of ansatz members closer than eps to rho; the tomographic
  /// separation argument does not cover them.
  std::vector<std::size_t> near_members;
  std::string scope = "vs given ansatz";
};

/// LB(n) = acceptance(rho, rho, n) - mixture_acceptance(ansatz, rho, n): a lower
/// bound on the trace distance of rho^{(x)n} from sum_i p_i tau_i^{(x)n}.
FarnessReport farness_certificate(const DensityMatrix& rho, const Ensemble& ansatz,
                                  const std::vector<std::size_t>& n_list, double eps, std::size_t trials,
                                  std::uint64_t seed);

/// Best of `samples` random separable states (k product terms) by trace
/// distance to rho.
SeparableSample closest_separable_search(const DensityMatrix& rho, std::size_t samples, std::size_t k,
                                         std::uint64_t seed);

}  // namespace sepkit
