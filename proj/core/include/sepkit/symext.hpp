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

// Symmetric extension test. An extension of rho on A:B to k copies is an
// operator X on A B_1 ... B_k that is positive semidefinite, invariant under
// every permutation of the B systems, and has Tr_{B_2..B_k} X = rho.
//
// Feasibility is decided by alternating projections between the affine set
// {X Hermitian : X symmetric, Tr_{B_2..B_k} X = rho} and the PSD cone. Every
// extension is supported on the intersection over j of supp(rho)_{A B_j} (x)
// H_rest, so rank-deficient inputs are solved inside that face. The default
// iteration is accelerated with adaptive restart; Dykstra's correction is
// available as an option. Infeasibility detection is heuristic (a plateau of
// the inter-set gap) unless the face admits no operator with marginal rho,
// hence the explicit inconclusive status.

#include <optional>
#include <string_view>
#include <vector>

#include "sepkit/linalg.hpp"
#include "sepkit/states.hpp"
#include "sepkit/verdict.hpp"

namespace sepkit {

class ExtensionProblem {
 public:
  /// Throws PreconditionError for k < 2 and CapExceededError when
  /// dimA * dimB^k exceeds `cap`.
  ExtensionProblem(DensityMatrix base, std::size_t copies, std::size_t cap = dimension_cap());

  const DensityMatrix& base() const { return base_; }
  std::size_t copies() const { return copies_; }
  std::size_t dimA() const { return base_.shape().dimA; }
  std::size_t dimB() const { return base_.shape().dimB; }
  /// [dimA, dimB, ..., dimB] with `copies` B entries.
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const { return total_; }

 private:
  DensityMatrix base_;
  std::size_t copies_;
  std::vector<std::size_t> dims_;
  std::size_t total_;
};

enum class FeasibilityStatus { Feasible, InfeasibleEvidence, Inconclusive };

std::string_view status_name(FeasibilityStatus s);

struct SymExtOptions {
  std::size_t max_iters = 20000;
  double tol = 1e-7;
  std::size_t plateau_window = 50;
  /// A gap counts as stable when it moved by at most this fraction over one window.
  double plateau_rel_change = 1e-3;
  /// Dykstra correction on the cone step; plain alternating projections when false.
  bool dykstra = false;
  /// Nesterov extrapolation with restart; only used without Dykstra.
  bool accelerate = true;
  /// Starting operator; the affine projection of a feasible point is itself,
  /// so a valid extension is reported feasible at iteration 0.
  std::optional<Matrix> warm_start;
};

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::Inconclusive;
  /// max(constraint violations) of the final affine iterate.
  double residual = 0.0;
  /// Final Frobenius distance between consecutive projections.
  double gap = 0.0;
  std::size_t iterations = 0;
  std::optional<Matrix> witness_extension;
};

/// (1/k!) sum_pi P_pi X P_pi^dagger over permutations of the B systems.
Matrix symmetrize_B(const Matrix& x, std::size_t dimA, std::size_t dimB, std::size_t copies);
Matrix symmetrize_B(const Matrix& x, const ExtensionProblem& problem);

/// Tr_{B_2..B_k} X.
Matrix extension_marginal(const Matrix& x, std::size_t dimA, std::size_t dimB, std::size_t copies);

/// Orthogonal (Frobenius) projection onto the affine constraint set, closed form
/// on the full space.
Matrix project_affine(const Matrix& x, const ExtensionProblem& problem);
/// Projection onto the PSD cone (negative eigenvalues clipped).
Matrix project_psd(const Matrix& x);

/// sum_i p_i sigma_i (x) tau_i^{(x) k} on A B_1 ... B_k.
Matrix extend_separable(const ProductEnsemble& ens, std::size_t copies, std::size_t cap = dimension_cap());

struct ExtensionCheck {
  double hermitian_error = 0.0;
  double symmetry_error = 0.0;
  double marginal_error = 0.0;
  double psd_margin = 0.0;

  bool ok(double tol) const {
    return hermitian_error <= tol && symmetry_error <= tol && marginal_error <= tol && psd_margin >= -tol;
  }
};

/// Independent re-verification of all constraint families. Symmetry is checked
/// against every adjacent transposition of B systems, which generate the group.
ExtensionCheck verify_extension(const Matrix& x, const DensityMatrix& rho, std::size_t copies);

FeasibilityResult has_symmetric_extension(const DensityMatrix& rho, std::size_t copies,
                                          const SymExtOptions& opts = {});

Verdict symmetric_extension_test(const DensityMatrix& rho, std::size_t copies, const SymExtOptions& opts = {});

}  // namespace sepkit
