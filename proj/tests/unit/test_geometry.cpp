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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "sepkit/criteria.hpp"
#include "sepkit/error.hpp"
#include "sepkit/geometry.hpp"

using namespace sepkit;

TEST(DefinettiTest, KnownValuesAndMonotonicity) {
  EXPECT_EQ(definetti_bound(4, 1, 99), 0.08);
  for (std::size_t n = 1; n <= 10; ++n) {
    EXPECT_NEAR(definetti_bound(4, n, n * n), 8.0 / (1.0 + n), 1e-15);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < 200; k += 7) {
      const double b = definetti_bound(4, n, k);
      EXPECT_LT(b, previous);
      previous = b;
    }
  }
  EXPECT_THROW(definetti_bound(4, 0, 3), PreconditionError);
}

TEST(SepOverlapTest, ProductSearchStaysBelowInverseDimension) {
  for (std::size_t d : {2u, 3u, 4u}) {
    const SepOverlapResult r = sep_max_overlap_maxent(d, 20, d);
    EXPECT_EQ(r.value, 1.0 / d);
    EXPECT_LE(r.numeric_max, r.value + 1e-9);
    EXPECT_GE(r.numeric_max, r.value - 1e-6);
  }
  EXPECT_THROW(sep_max_overlap_maxent(1, 5, 0), PreconditionError);
}

TEST(WitnessTest, EprPowersReachOneMinusInversePower) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const DensityMatrix epr = tensor_power_bipartite(max_entangled(2), n);
    const std::size_t d = std::size_t{1} << n;
    const SepOverlapResult sep = sep_max_overlap_maxent(d, 5, n);
    EXPECT_LE(sep.numeric_max, std::ldexp(1.0, -static_cast<int>(n)) + 1e-9);
    const double lb = witness_lower_bound(epr, epr.matrix(), sep.value);
    EXPECT_NEAR(lb, 1.0 - std::ldexp(1.0, -static_cast<int>(n)), 1e-9) << n;
  }
}

TEST(WitnessTest, LowerBoundNeverExceedsDistanceToSeparableStates) {
  std::mt19937_64 rng(31);
  const DensityMatrix phi = max_entangled(3);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = trial % 3 == 0 ? isotropic_state(3, 0.01 * trial) : gen::density({3, 3}, rng);
    const DensityMatrix sigma = random_separable({3, 3}, 1 + trial % 9, rng()).state;
    EXPECT_LE(witness_lower_bound(rho, phi.matrix(), 1.0 / 3.0), trace_distance(rho, sigma) + 1e-12);
  }
}

TEST(WitnessTest, RejectsInvalidWitnesses) {
  const DensityMatrix phi = max_entangled(2);
  EXPECT_THROW(witness_lower_bound(phi, 2.0 * identity(4), 0.5), PreconditionError);
  EXPECT_THROW(witness_lower_bound(phi, -phi.matrix(), 0.5), PreconditionError);
  Matrix nonHermitian = phi.matrix();
  nonHermitian(0, 1) = Complex(0.0, 0.3);
  EXPECT_THROW(witness_lower_bound(phi, nonHermitian, 0.5), PreconditionError);
  EXPECT_THROW(witness_lower_bound(phi, identity(9), 0.5), DimensionError);
  EXPECT_EQ(witness_lower_bound(maximally_mixed({2, 2}), phi.matrix(), 0.5), 0.0);
}

TEST(FidelityBoundTest, PptStatesRespectTheBound) {
  std::mt19937_64 rng(41);
  for (std::size_t d : {2u, 3u}) {
    std::size_t checked = 0;
    while (checked < 30) {
      const DensityMatrix sigma = gen::density({d, d}, rng);
      if (!ppt_test(sigma).passed) continue;
      const FidelityBoundResult r = fidelity_bound_check(sigma);
      EXPECT_TRUE(r.ok) << r.fidelity;
      EXPECT_LT(r.transpose_identity_error, 1e-10);
      ++checked;
    }
    const FidelityBoundResult edge = fidelity_bound_check(isotropic_state(d, 1.0 / (d + 1)));
    EXPECT_NEAR(edge.fidelity, 1.0 / std::sqrt(static_cast<double>(d)), 1e-9);
    EXPECT_TRUE(edge.ok);
  }
  EXPECT_TRUE(fidelity_bound_check(tiles_upb_state()).ok);
  EXPECT_THROW(fidelity_bound_check(max_entangled(2)), PreconditionError);
  EXPECT_THROW(fidelity_bound_check(random_density({2, 3}, 1)), PreconditionError);
}

TEST(BoundaryTest, IsotropicThreshold) {
  for (std::size_t d : {2u, 3u, 4u}) {
    const BoundaryResult r = ppt_boundary_bisect(maximally_mixed({d, d}));
    EXPECT_NEAR(r.t_star, 1.0 / (d + 1), 1e-6);
    EXPECT_GE(r.margin_low, -1e-12);
    EXPECT_LT(r.margin_high, 0.0);
    EXPECT_TRUE(r.bound_ok);
    EXPECT_FALSE(r.separable_certified);
  }
}

TEST(BoundaryTest, SeparableStartsStayWithinTheBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SeparableSample s = random_separable({3, 3}, 1 + seed % 9, seed);
    const BoundaryResult r = ppt_boundary_bisect(s.state, kDefaultBisectionTol, &s.ensemble);
    EXPECT_TRUE(r.separable_certified);
    EXPECT_LE(r.distance_from_start, 1.0 / std::sqrt(3.0) + 1e-6);
    EXPECT_GE(r.margin_low, -1e-12);
    EXPECT_LT(r.margin_high, 0.0);
    EXPECT_NEAR(r.distance_from_start, trace_distance(s.state, segment_state(s.state, r.t_star)), 1e-12);
  }
}

TEST(BoundaryTest, Preconditions) {
  EXPECT_THROW(ppt_boundary_bisect(max_entangled(2)), PreconditionError);
  EXPECT_THROW(ppt_boundary_bisect(maximally_mixed({2, 3})), PreconditionError);
  EXPECT_THROW(ppt_boundary_bisect(maximally_mixed({2, 2}), 0.0), PreconditionError);
  const SeparableSample wrong = random_separable({3, 3}, 2, 0);
  EXPECT_THROW(ppt_boundary_bisect(maximally_mixed({2, 2}), 1e-3, &wrong.ensemble), DimensionError);
}

TEST(FarnessTest, MaximallyEntangledVersusMixedGrowsWithCopies) {
  const Ensemble ansatz({{1.0, maximally_mixed({2, 2})}});
  const FarnessReport r = farness_certificate(max_entangled(2), ansatz, {10, 150}, 0.75, 400, 5);
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_EQ(r.near_members.empty(), trace_distance(max_entangled(2), maximally_mixed({2, 2})) >= 0.75);
  EXPECT_GE(r.points[1].lower_bound - r.points[0].lower_bound, 0.3);
  for (const FarnessPoint& p : r.points) {
    EXPECT_NEAR(p.lower_bound, p.acceptance_target - p.acceptance_ansatz, 1e-15);
    EXPECT_LE(p.standard_error, std::sqrt(0.5) / 20.0 + 1e-12);
  }
  EXPECT_EQ(r.scope, "vs given ansatz");
}

TEST(FarnessTest, FlagsNearMembersAndIsDeterministic) {
  const Ensemble ansatz({{0.5, isotropic_state(2, 0.3)}, {0.5, isotropic_state(2, 0.95)}});
  const FarnessReport a = farness_certificate(max_entangled(2), ansatz, {20}, 0.2, 50, 8);
  const FarnessReport b = farness_certificate(max_entangled(2), ansatz, {20}, 0.2, 50, 8);
  EXPECT_EQ(a.near_members, std::vector<std::size_t>{1});
  EXPECT_EQ(a.points[0].lower_bound, b.points[0].lower_bound);
  EXPECT_THROW(farness_certificate(max_entangled(3), ansatz, {20}, 0.2, 10, 0), DimensionError);
}

TEST(ClosestSeparableTest, BestOfSamples) {
  const DensityMatrix tiles = tiles_upb_state();
  const SeparableSample few = closest_separable_search(tiles, 5, 4, 2);
  const SeparableSample many = closest_separable_search(tiles, 200, 4, 2);
  EXPECT_LE(trace_distance(tiles, many.state), trace_distance(tiles, few.state));
  EXPECT_THROW(closest_separable_search(tiles, 0, 4, 2), PreconditionError);
}
