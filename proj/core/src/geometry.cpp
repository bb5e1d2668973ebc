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

#include "sepkit/geometry.hpp"

#include <cmath>
#include <limits>

#include "sepkit/criteria.hpp"
#include "sepkit/error.hpp"
#include "sepkit/product_search.hpp"
#include "sepkit/random.hpp"
#include "sepkit/tomography.hpp"

namespace sepkit {

namespace {

constexpr double kOverlapSlack = 1e-6;
constexpr double kWitnessTol = 1e-9;
constexpr double kFidelitySlack = 1e-8;
constexpr double kBoundarySlack = 1e-6;

std::size_t require_square(const DensityMatrix& rho, const char* op) {
  const BipartiteShape s = rho.shape();
  if (s.dimA != s.dimB || s.dimA < 2) {
    throw PreconditionError(std::string(op) + " needs a d x d shape with d >= 2");
  }
  return s.dimA;
}

}  // namespace

double definetti_bound(std::size_t dim, std::size_t n, std::size_t k) {
  if (n < 1) throw PreconditionError("definetti_bound needs n >= 1");
  return (2.0 * static_cast<double>(dim) * static_cast<double>(n)) / static_cast<double>(n + k);
}

SepOverlapResult sep_max_overlap_maxent(std::size_t d, std::size_t starts, std::uint64_t seed) {
  if (d < 2) throw PreconditionError("sep_max_overlap_maxent needs d >= 2");
  SepOverlapResult out;
  out.value = 1.0 / static_cast<double>(d);
  out.starts = starts;
  out.numeric_max = max_product_overlap(max_entangled_vector(d), {d, d}, starts, seed).value;
  if (out.numeric_max > out.value + kOverlapSlack) {
    throw TheoremViolation("product overlap with Phi(" + std::to_string(d) + ") exceeds 1/d: " +
                           std::to_string(out.numeric_max));
  }
  return out;
}

double witness_lower_bound(const DensityMatrix& rho, const Matrix& witness, double sep_max) {
  require_shape(witness, rho.shape());
  if (!is_hermitian(witness)) throw PreconditionError("witness must be Hermitian");
  const RealVector ev = hermitian_eigenvalues(witness);
  if (ev.minCoeff() < -kWitnessTol || ev.maxCoeff() > 1.0 + kWitnessTol) {
    throw PreconditionError("witness must satisfy 0 <= W <= I");
  }
  const double value = rho.matrix().cwiseProduct(witness.transpose()).sum().real();
  return std::max(0.0, value - sep_max);
}

FidelityBoundResult fidelity_bound_check(const DensityMatrix& sigma) {
  const std::size_t d = require_square(sigma, "fidelity_bound_check");
  if (!ppt_test(sigma).passed) throw PreconditionError("fidelity_bound_check: state is not PPT, bound does not apply");

  const DensityMatrix phi = max_entangled(d);
  FidelityBoundResult out;
  out.fidelity = pure_fidelity(sigma, max_entangled_vector(d));
  out.bound = 1.0 / std::sqrt(static_cast<double>(d));
  out.ok = out.fidelity <= out.bound + kFidelitySlack;

  const Complex direct = sigma.matrix().cwiseProduct(phi.matrix().transpose()).sum();
  const Matrix sigmaT = partial_transpose(sigma.matrix(), sigma.shape());
  const Matrix phiT = partial_transpose(phi.matrix(), phi.shape());
  const Complex transposed = sigmaT.cwiseProduct(phiT.transpose()).sum();
  out.transpose_identity_error = std::abs(direct - transposed);
  return out;
}

BoundaryResult ppt_boundary_bisect(const DensityMatrix& rho, double tol, const ProductEnsemble* certificate) {
  const std::size_t d = require_square(rho, "ppt_boundary_bisect");
  if (!(tol > 0.0)) throw PreconditionError("bisection tolerance must be positive");
  if (!ppt_test(rho).passed) throw PreconditionError("ppt_boundary_bisect: start state is not PPT");
  if (ppt_test(max_entangled(d)).passed) throw TheoremViolation("Phi(d) passed the PPT test");

  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (ppt_test(segment_state(rho, mid)).passed) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  DensityMatrix boundary = segment_state(rho, lo);
  BoundaryResult out{lo, boundary};
  out.distance_from_start = trace_distance(rho, boundary);
  out.bound = 1.0 / std::sqrt(static_cast<double>(d));
  out.bound_ok = out.distance_from_start <= out.bound + kBoundarySlack;
  out.separable_certified = certificate != nullptr;
  out.margin_low = ppt_test(boundary).margin;
  out.margin_high = ppt_test(segment_state(rho, hi)).margin;
  if (certificate != nullptr && !(certificate->shape() == rho.shape())) {
    throw DimensionError("separability certificate shape does not match the state");
  }
  return out;
}

FarnessReport farness_certificate(const DensityMatrix& rho, const Ensemble& ansatz,
                                  const std::vector<std::size_t>& n_list, double eps, std::size_t trials,
                                  std::uint64_t seed) {
  if (!(ansatz.shape() == rho.shape())) throw DimensionError("farness_certificate: ansatz shape differs from state");
  FarnessReport report;
  for (std::size_t i = 0; i < ansatz.size(); ++i) {
    if (trace_distance(ansatz.members()[i].state, rho) < eps) report.near_members.push_back(i);
  }

  const Povm povm = local_ic_povm(rho.shape(), derive_seed(seed, 0));
  for (std::size_t n : n_list) {
    const AcceptanceEstimate self =
        acceptance_probability(rho, rho, n, eps, trials, derive_seed(derive_seed(seed, 1), n), povm);
    const AcceptanceEstimate mix =
        mixture_acceptance(ansatz, rho, n, eps, trials, derive_seed(derive_seed(seed, 2), n), povm);
    FarnessPoint p;
    p.n = n;
    p.acceptance_target = self.probability;
    p.acceptance_ansatz = mix.probability;
    p.lower_bound = self.probability - mix.probability;
    p.standard_error = std::hypot(self.standard_error, mix.standard_error);
    report.points.push_back(p);
  }
  return report;
}

SeparableSample closest_separable_search(const DensityMatrix& rho, std::size_t samples, std::size_t k,
                                         std::uint64_t seed) {
  if (samples == 0) throw PreconditionError("closest_separable_search needs at least one sample");
  std::optional<SeparableSample> best;
  double bestDistance = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    SeparableSample candidate = random_separable(rho.shape(), k, derive_seed(seed, s));
    const double dist = trace_distance(rho, candidate.state);
    if (dist < bestDistance) {
      bestDistance = dist;
      best = std::move(candidate);
    }
  }
  return std::move(*best);
}

}  // namespace sepkit
