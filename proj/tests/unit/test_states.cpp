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
#include <cstdlib>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "sepkit/error.hpp"
#include "sepkit/product_search.hpp"
#include "sepkit/states.hpp"

using namespace sepkit;

namespace {

std::size_t numeric_rank(const Matrix& m, double tol = 1e-10) {
  const RealVector ev = hermitian_eigenvalues(m);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) r += ev(i) > tol ? 1 : 0;
  return r;
}

}  // namespace

TEST(MaxEntangledTest, EntriesMarginalAndFidelity) {
  const Matrix phi = max_entangled(2).matrix();
  for (Eigen::Index r = 0; r < 4; ++r)
    for (Eigen::Index c = 0; c < 4; ++c) {
      const bool corner = (r == 0 || r == 3) && (c == 0 || c == 3);
      EXPECT_EQ(phi(r, c), Complex(corner ? 0.5 : 0.0, 0.0)) << r << "," << c;
    }
  for (std::size_t d = 2; d <= 5; ++d) {
    const DensityMatrix rho = max_entangled(d);
    EXPECT_LT(max_abs(partial_trace(rho.matrix(), {d, d}, Subsystem::A) - identity(d) / double(d)), 1e-15);
    EXPECT_NEAR(pure_fidelity(rho, max_entangled_vector(d)), 1.0, 1e-14);
    EXPECT_EQ(numeric_rank(rho.matrix()), 1u);
  }
  EXPECT_THROW(max_entangled(1), PreconditionError);
}

TEST(AntisymVectorTest, OrthonormalAndEigenvectorsOfPartialTranspose) {
  for (std::size_t d = 2; d <= 5; ++d) {
    const Matrix pt = partial_transpose(max_entangled(d).matrix(), {d, d});
    std::vector<Vector> all;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) all.push_back(antisym_vector(i, j, d));
    for (std::size_t a = 0; a < all.size(); ++a) {
      EXPECT_NEAR(all[a].norm(), 1.0, 1e-15);
      for (std::size_t b = a + 1; b < all.size(); ++b) EXPECT_NEAR(std::abs(all[a].dot(all[b])), 0.0, 1e-15);
      EXPECT_LT((pt * all[a] + all[a] / double(d)).cwiseAbs().maxCoeff(), 1e-14);
    }
    std::mt19937_64 rng(d);
    for (int trial = 0; trial < 5; ++trial) {
      const Vector a = oracle::haar_vector(d, rng);
      const Vector sym = oracle::kron(a, a);
      for (const Vector& v : all) EXPECT_NEAR(std::abs(v.dot(sym)), 0.0, 1e-14);
    }
  }
  EXPECT_THROW(antisym_vector(1, 1, 3), PreconditionError);
  EXPECT_THROW(antisym_vector(2, 1, 3), PreconditionError);
  EXPECT_THROW(antisym_vector(0, 3, 3), PreconditionError);
}

TEST(SegmentStateTest, EndpointsAndIsotropicBoundary) {
  std::mt19937_64 rng(2);
  const DensityMatrix rho = gen::density({3, 3}, rng);
  EXPECT_LT(max_abs(segment_state(rho, 0.0).matrix() - rho.matrix()), 1e-15);
  EXPECT_LT(max_abs(segment_state(maximally_mixed({2, 2}), 1.0).matrix() - max_entangled(2).matrix()), 1e-15);
  for (std::size_t d = 2; d <= 4; ++d) {
    const double boundary = 1.0 / double(d + 1);
    for (double t : {0.0, 0.5 * boundary, boundary - 1e-6, boundary + 1e-6, 0.7, 1.0}) {
      const double margin = psd_margin(partial_transpose(isotropic_state(d, t).matrix(), {d, d}));
      // Partial transpose eigenvalues: (1-t)/d^2 + t/d on symmetric, (1-t)/d^2 - t/d on antisymmetric vectors.
      EXPECT_NEAR(margin, (1.0 - t) / double(d * d) - t / double(d), 1e-12);
      EXPECT_EQ(margin >= -1e-12, t <= boundary) << "d=" << d << " t=" << t;
    }
  }
  EXPECT_THROW(segment_state(rho, -0.1), PreconditionError);
  EXPECT_THROW(segment_state(rho, 1.1), PreconditionError);
  EXPECT_THROW(segment_state(gen::density({2, 3}, rng), 0.5), PreconditionError);
}

TEST(TilesTest, TraceRankAndPpt) {
  const DensityMatrix tiles = tiles_upb_state();
  EXPECT_NEAR(tiles.matrix().trace().real(), 1.0, 1e-14);
  EXPECT_EQ(numeric_rank(tiles.matrix()), 4u);
  EXPECT_GE(psd_margin(partial_transpose(tiles.matrix(), {3, 3})), -1e-10);
  EXPECT_GE(oracle::min_eigenvalue(partial_transpose(tiles.matrix(), {3, 3})), -1e-10);
}

TEST(TilesTest, VectorsFormAnUnextendibleProductBasis) {
  const auto v = tiles_vectors();
  for (std::size_t j = 0; j < v.size(); ++j) {
    EXPECT_NEAR(v[j].norm(), 1.0, 1e-15);
    // Each vector is a product: its 3x3 coefficient matrix has rank 1.
    Matrix coeffs(3, 3);
    for (Eigen::Index a = 0; a < 3; ++a)
      for (Eigen::Index b = 0; b < 3; ++b) coeffs(a, b) = v[j](a * 3 + b);
    EXPECT_NEAR(singular_values(coeffs)(1), 0.0, 1e-15);
  }
  const UpbCertificate cert = upb_certificate({v.begin(), v.end()}, {3, 3}, 50, 42);
  EXPECT_TRUE(cert.certified);
  EXPECT_LT(cert.orthogonality_error, 1e-15);
  EXPECT_NEAR(cert.min_overlap, 0.0284162, 1e-6);
  EXPECT_GT(cert.min_overlap, kUpbOverlapThreshold);
  // Random product vectors never beat the optimized minimum.
  Matrix p = Matrix::Zero(9, 9);
  for (const Vector& x : v) p += x * x.adjoint();
  EXPECT_GE(oracle::sample_product_expectation(p, 3, 3, 20000, 5).min, cert.min_overlap - 1e-9);
}

TEST(TilesTest, IncompleteSetIsNotCertified) {
  const auto v = tiles_vectors();
  // Four tiles leave a product vector in the complement.
  const UpbCertificate cert = upb_certificate({v.begin(), v.begin() + 4}, {3, 3}, 50, 42);
  EXPECT_FALSE(cert.certified);
  EXPECT_LT(cert.min_overlap, 1e-9);
}

TEST(RandomDensityTest, ValidDeterministicAndUnbiased) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DensityMatrix rho = random_density({2, 2}, seed);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GE(psd_margin(rho.matrix()), -1e-12);
    EXPECT_EQ(rho.matrix(), random_density({2, 2}, seed).matrix());
  }
  Matrix mean = Matrix::Zero(2, 2);
  const int samples = 10000;
  for (int s = 0; s < samples; ++s) mean += random_density(2, static_cast<std::uint64_t>(s)).matrix();
  mean /= double(samples);
  EXPECT_LT(trace_distance(DensityMatrix::single(mean), DensityMatrix::single(identity(2) / 2.0)), 0.05);
}

TEST(RandomSeparableTest, EnsembleConsistencyAndRank) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const BipartiteShape s = gen::shape(rng);
    const std::size_t k = 1 + trial % 12;
    const SeparableSample sample = random_separable(s, k, rng());
    EXPECT_EQ(sample.ensemble.size(), k);
    Matrix rebuilt = Matrix::Zero(static_cast<Eigen::Index>(s.total()), static_cast<Eigen::Index>(s.total()));
    for (const ProductMember& m : sample.ensemble.members())
      rebuilt += m.weight * oracle::kron(m.stateA.matrix(), m.stateB.matrix());
    EXPECT_LT(max_abs(rebuilt - sample.state.matrix()), 1e-12);
  }
  const SeparableSample pure = random_separable({2, 3}, 1, 9);
  EXPECT_EQ(numeric_rank(pure.state.matrix()), 1u);
  EXPECT_NEAR((pure.state.matrix() * pure.state.matrix()).trace().real(), 1.0, 1e-12);
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(numeric_rank(random_separable({2, 2}, 4, seed).state.matrix()), 4u);
  EXPECT_THROW(random_separable({2, 2}, 0, 1), PreconditionError);
}

TEST(EnsembleTest, InvariantsAreEnforced) {
  const DensityMatrix a = maximally_mixed({2, 2});
  const DensityMatrix b = max_entangled(2);
  EXPECT_NO_THROW(Ensemble({{0.25, a}, {0.75, b}}));
  EXPECT_THROW(Ensemble({{0.5, a}, {0.6, b}}), InvariantError);
  EXPECT_THROW(Ensemble({{-0.5, a}, {1.5, b}}), InvariantError);
  EXPECT_THROW(Ensemble({{0.5, a}, {0.5, maximally_mixed({2, 3})}}), InvariantError);
  EXPECT_THROW(Ensemble(std::vector<WeightedState>{}), InvariantError);
  const DensityMatrix mix = Ensemble({{0.25, a}, {0.75, b}}).mixture();
  EXPECT_LT(max_abs(mix.matrix() - (0.25 * a.matrix() + 0.75 * b.matrix())), 1e-15);
}

TEST(TensorPowerTest, IdentityProductsAndAssociativity) {
  std::mt19937_64 rng(6);
  const DensityMatrix rho = gen::density({2, 2}, rng);
  EXPECT_LT(max_abs(tensor_power_bipartite(rho, 1).matrix() - rho.matrix()), 1e-15);

  const DensityMatrix a = random_density(2, rng());
  const DensityMatrix b = random_density(3, rng());
  const DensityMatrix power = tensor_power_bipartite(product_state(a, b), 2);
  EXPECT_EQ(power.shape(), (BipartiteShape{4, 9}));
  const Matrix expected = oracle::kron(oracle::kron(a.matrix(), a.matrix()), oracle::kron(b.matrix(), b.matrix()));
  EXPECT_LT(max_abs(power.matrix() - expected), 1e-14);

  // rho^{(x)3} = regroup(rho^{(x)2} (x) rho) on A A A : B B B.
  const DensityMatrix p2 = tensor_power_bipartite(rho, 2);
  const DensityMatrix p3 = tensor_power_bipartite(rho, 3);
  const std::vector<std::size_t> dims{4, 4, 2, 2};
  const std::vector<std::size_t> perm{0, 2, 1, 3};
  const Matrix joined = oracle::permute(oracle::kron(p2.matrix(), rho.matrix()), dims, perm);
  EXPECT_LT(max_abs(p3.matrix() - joined), 1e-14);
}

TEST(TensorPowerTest, PptSurvivesPowersAndCapIsEnforced) {
  const DensityMatrix square = tensor_power_bipartite(tiles_upb_state(), 2);
  EXPECT_GE(psd_margin(partial_transpose(square.matrix(), square.shape())), -1e-9);
  EXPECT_THROW(tensor_power_bipartite(tiles_upb_state(), 4), CapExceededError);
  EXPECT_THROW(tensor_power_bipartite(max_entangled(2), 2, 15), CapExceededError);
  EXPECT_THROW(tensor_power_bipartite(max_entangled(2), 0), PreconditionError);
}

TEST(DimensionCapTest, EnvironmentOverride) {
  ::unsetenv("SEPKIT_DIM_CAP");
  EXPECT_EQ(dimension_cap(), kDefaultDimensionCap);
  ::setenv("SEPKIT_DIM_CAP", "64", 1);
  EXPECT_EQ(dimension_cap(), 64u);
  EXPECT_THROW(tensor_power_bipartite(max_entangled(3), 2), CapExceededError);
  ::setenv("SEPKIT_DIM_CAP", "garbage", 1);
  EXPECT_EQ(dimension_cap(), kDefaultDimensionCap);
  ::unsetenv("SEPKIT_DIM_CAP");
}
