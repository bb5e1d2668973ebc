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
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "sepkit/error.hpp"
#include "sepkit/linalg.hpp"
#include "sepkit/states.hpp"

using namespace sepkit;

namespace {

Matrix diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST(DensityMatrixTest, AcceptsValidStates) {
  EXPECT_NO_THROW(DensityMatrix(diag({0.5, 0.5, 0.0, 0.0}), {2, 2}));
  EXPECT_NO_THROW(DensityMatrix(diag({1.0, -1e-12, 0.0, 0.0}), {2, 2}));
}

TEST(DensityMatrixTest, RejectsBrokenInvariantsByName) {
  Matrix nonHermitian = diag({0.5, 0.5, 0.0, 0.0});
  nonHermitian(0, 1) = 0.1;
  try {
    DensityMatrix(nonHermitian, {2, 2});
    FAIL() << "expected InvariantError";
  } catch (const InvariantError& e) {
    EXPECT_NE(std::string(e.what()).find("Hermitian"), std::string::npos);
  }
  EXPECT_THROW(DensityMatrix(diag({0.5, 0.4, 0.0, 0.0}), {2, 2}), InvariantError);
  EXPECT_THROW(DensityMatrix(diag({1.1, -0.1, 0.0, 0.0}), {2, 2}), InvariantError);
  EXPECT_THROW(DensityMatrix(diag({1.0, 0.0, 0.0}), {2, 2}), DimensionError);
}

TEST(TensorTest, IdentityAndBasisCases) {
  EXPECT_LT(max_abs(tensor(identity(2), identity(2)) - identity(4)), 1e-15);
  EXPECT_LT(max_abs(tensor(diag({1, 0}), diag({0, 1})) - diag({0, 1, 0, 0})), 1e-15);
}

TEST(TensorTest, MatchesQuadrupleLoop) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = gen::complex_matrix(2 + trial % 3, 1 + trial % 2, rng);
    const Matrix b = gen::complex_matrix(3, 2 + trial % 2, rng);
    EXPECT_LT(max_abs(tensor(a, b) - oracle::kron(a, b)), 1e-14);
  }
}

TEST(PermuteSystemsTest, IdentityAndSwap) {
  std::mt19937_64 rng(3);
  const Matrix a = gen::hermitian(2, rng);
  const Matrix b = gen::hermitian(3, rng);
  const std::vector<std::size_t> dims{2, 3};
  const std::vector<std::size_t> id{0, 1};
  const std::vector<std::size_t> swap{1, 0};
  const Matrix ab = tensor(a, b);
  EXPECT_LT(max_abs(permute_systems(ab, dims, id) - ab), 1e-15);
  EXPECT_LT(max_abs(permute_systems(ab, dims, swap) - tensor(b, a)), 1e-14);
}

TEST(PermuteSystemsTest, PairRegroupingOfTwoBellPairs) {
  const Matrix phiphi = tensor(max_entangled(2).matrix(), max_entangled(2).matrix());
  const std::vector<std::size_t> dims{2, 2, 2, 2};
  const std::vector<std::size_t> perm{0, 2, 1, 3};
  const Matrix regrouped = permute_systems(phiphi, dims, perm);
  EXPECT_LT(max_abs(regrouped - oracle::permute(phiphi, dims, perm)), 1e-15);
  EXPECT_TRUE(check_psd(regrouped).accepted);
  EXPECT_NEAR(regrouped.trace().real(), 1.0, 1e-14);
  const std::vector<std::size_t> firstPair{0, 1};
  EXPECT_LT(max_abs(partial_trace_systems(regrouped, dims, firstPair) - identity(4) / 4.0), 1e-14);
}

TEST(PermuteSystemsTest, RandomPermutationsMatchOracleAndInvert) {
  std::mt19937_64 rng(5);
  const std::vector<std::size_t> dims{2, 3, 2};
  std::vector<std::size_t> perm{0, 1, 2};
  do {
    const Matrix m = gen::complex_matrix(12, 12, rng);
    const Matrix p = permute_systems(m, dims, perm);
    EXPECT_LT(max_abs(p - oracle::permute(m, dims, perm)), 1e-14);
    std::vector<std::size_t> permutedDims(3);
    for (std::size_t i = 0; i < 3; ++i) permutedDims[i] = dims[perm[i]];
    EXPECT_LT(max_abs(permute_systems(p, permutedDims, inverse_permutation(perm)) - m), 1e-14);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(PermuteSystemsTest, RejectsBadInput) {
  const std::vector<std::size_t> dims{2, 2};
  const std::vector<std::size_t> bad{0, 0};
  const std::vector<std::size_t> id{0, 1};
  const std::vector<std::size_t> wrongDims{2, 3};
  EXPECT_THROW(permute_systems(identity(4), dims, bad), PreconditionError);
  EXPECT_THROW(permute_systems(identity(4), wrongDims, id), DimensionError);
}

TEST(PartialTraceTest, ProductMarginalsAndMaxEntangled) {
  std::mt19937_64 rng(7);
  const DensityMatrix a = random_density(2, rng());
  const DensityMatrix b = random_density(3, rng());
  const Matrix ab = tensor(a.matrix(), b.matrix());
  EXPECT_LT(max_abs(partial_trace(ab, {2, 3}, Subsystem::A) - a.matrix()), 1e-14);
  EXPECT_LT(max_abs(partial_trace(ab, {2, 3}, Subsystem::B) - b.matrix()), 1e-14);
  for (std::size_t d = 2; d <= 5; ++d) {
    EXPECT_LT(max_abs(partial_trace(max_entangled(d).matrix(), {d, d}, Subsystem::B) - identity(d) / double(d)), 1e-14);
    EXPECT_LT(max_abs(partial_trace(identity(d * d), {d, d}, Subsystem::A) - double(d) * identity(d)), 1e-14);
  }
  EXPECT_THROW(partial_trace(identity(5), {2, 2}, Subsystem::A), DimensionError);
}

TEST(PartialTraceTest, MatchesEinsumOracleAndPreservesTrace) {
  std::mt19937_64 rng(8);
  const std::vector<std::size_t> dims{2, 3, 2};
  const Matrix m = gen::complex_matrix(12, 12, rng);
  const std::vector<std::vector<std::size_t>> keeps{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
  for (const auto& keep : keeps) {
    std::vector<bool> mask(3, false);
    for (std::size_t k : keep) mask[k] = true;
    const Matrix reduced = partial_trace_systems(m, dims, keep);
    EXPECT_LT(max_abs(reduced - oracle::partial_trace(m, dims, mask)), 1e-13);
    EXPECT_NEAR(std::abs(reduced.trace() - m.trace()), 0.0, 1e-12);
  }
  const std::vector<std::size_t> unordered{1, 0};
  EXPECT_THROW(partial_trace_systems(m, dims, unordered), PreconditionError);
}

TEST(PartialTransposeTest, DefiningCaseAndOracle) {
  std::mt19937_64 rng(9);
  const Matrix a = gen::complex_matrix(2, 2, rng);
  const Matrix b = gen::complex_matrix(3, 3, rng);
  EXPECT_LT(max_abs(partial_transpose(tensor(a, b), {2, 3}) - tensor(a, b.transpose())), 1e-14);
  const Matrix m = gen::complex_matrix(6, 6, rng);
  EXPECT_LT(max_abs(partial_transpose(m, {2, 3}) - oracle::partial_transpose_b(m, 2, 3)), 1e-15);
  const Matrix real = diag({0.1, 0.2, 0.3, 0.4});
  EXPECT_LT(max_abs(partial_transpose(real, {2, 2}) - real), 1e-15);
}

TEST(PartialTransposeTest, MaxEntangledSpectrum) {
  for (std::size_t d = 2; d <= 6; ++d) {
    const Matrix pt = partial_transpose(max_entangled(d).matrix(), {d, d});
    EXPECT_NEAR(psd_margin(pt), -1.0 / double(d), 1e-9) << "d=" << d;
    EXPECT_NEAR(oracle::min_eigenvalue(pt), -1.0 / double(d), 1e-9) << "d=" << d;
  }
}

TEST(PartialTransposeTest, InvolutionTracePreservingAndInnerProduct) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const BipartiteShape s = gen::shape(rng);
    const Matrix x = gen::hermitian(s.total(), rng);
    const Matrix y = gen::hermitian(s.total(), rng);
    const Matrix xt = partial_transpose(x, s);
    EXPECT_LT(max_abs(partial_transpose(xt, s) - x), 1e-15);
    EXPECT_NEAR(std::abs(xt.trace() - x.trace()), 0.0, 1e-12);
    EXPECT_TRUE(is_hermitian(xt));
    EXPECT_NEAR(std::abs((xt * partial_transpose(y, s)).trace() - (x * y).trace()), 0.0, 1e-10);
    // Commutes with the partial trace over A.
    EXPECT_LT(max_abs(partial_trace(xt, s, Subsystem::B) - partial_trace(x, s, Subsystem::B).transpose()), 1e-12);
    EXPECT_LT(max_abs(partial_trace(xt, s, Subsystem::A) - partial_trace(x, s, Subsystem::A)), 1e-12);
  }
}

TEST(RealignTest, ProductRuleAgainstDefinition) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = gen::complex_matrix(2, 2, rng);
    const Matrix n = gen::complex_matrix(3, 3, rng);
    EXPECT_LT(max_abs(realign(tensor(m, n), {2, 3}) - oracle::column_stack(m) * oracle::column_stack(n).transpose()),
              1e-13);
    const Matrix x = gen::complex_matrix(6, 6, rng);
    EXPECT_LT(max_abs(realign(x, {2, 3}) - oracle::realign(x, 2, 3)), 1e-14);
  }
}

TEST(RealignTest, TraceNormValues) {
  for (std::size_t d = 2; d <= 5; ++d) {
    EXPECT_NEAR(trace_norm(realign(max_entangled(d).matrix(), {d, d})), double(d), 1e-9);
    const RealVector sv = singular_values(realign(max_entangled(d).matrix(), {d, d}));
    for (Eigen::Index i = 0; i < sv.size(); ++i) EXPECT_NEAR(sv(i), 1.0 / double(d), 1e-12);
  }
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix p = random_product_pure({2, 3}, rng());
    EXPECT_NEAR(trace_norm(realign(p.matrix(), {2, 3})), 1.0, 1e-12);
  }
}

TEST(RealignTest, Linearity) {
  std::mt19937_64 rng(14);
  const Matrix x = gen::complex_matrix(9, 9, rng);
  const Matrix y = gen::complex_matrix(9, 9, rng);
  const Complex alpha(0.3, -1.2);
  const Complex beta(-2.0, 0.5);
  EXPECT_LT(max_abs(realign(alpha * x + beta * y, {3, 3}) - (alpha * realign(x, {3, 3}) + beta * realign(y, {3, 3}))),
            1e-13);
}

TEST(HermitianEigTest, KnownValues) {
  const RealVector v = hermitian_eigenvalues(diag({3, 1, 2}));
  EXPECT_NEAR(v(0), 3.0, 1e-15);
  EXPECT_NEAR(v(1), 2.0, 1e-15);
  EXPECT_NEAR(v(2), 1.0, 1e-15);
  const RealVector phi = hermitian_eigenvalues(max_entangled(2).matrix());
  EXPECT_NEAR(phi(0), 1.0, 1e-14);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(phi(i), 0.0, 1e-14);
  Matrix bad = identity(2);
  bad(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eig(bad), InvariantError);
}

TEST(HermitianEigTest, ResidualOrderTraceAndJacobiOracle) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 8;
    const Matrix h = gen::hermitian(n, rng);
    const EigenDecomposition e = hermitian_eig(h);
    const Matrix rebuilt = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LE(max_abs(h - rebuilt), 1e-9 * max_abs(h));
    for (Eigen::Index i = 1; i < e.values.size(); ++i) EXPECT_GE(e.values(i - 1), e.values(i));
    EXPECT_NEAR(e.values.sum(), h.trace().real(), 1e-9);
    const std::vector<double> ref = oracle::hermitian_eigenvalues(h);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(e.values(static_cast<Eigen::Index>(i)), ref[i], 1e-9);
  }
}

TEST(HermitianEigTest, UnitaryInvariance) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix h = gen::hermitian(5, rng);
    Rng r(rng());
    const Matrix u = random_unitary(5, r);
    Matrix conj = u * h * u.adjoint();
    conj = 0.5 * (conj + conj.adjoint());
    EXPECT_LT((hermitian_eigenvalues(h) - hermitian_eigenvalues(conj)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(SingularValuesTest, IdentityRankOneAndOracle) {
  const RealVector id = singular_values(identity(4));
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(id(i), 1.0, 1e-15);
  std::mt19937_64 rng(17);
  const Matrix u = gen::complex_matrix(4, 1, rng);
  const Matrix v = gen::complex_matrix(3, 1, rng);
  const RealVector r1 = singular_values(u * v.adjoint());
  EXPECT_NEAR(r1(0), u.norm() * v.norm(), 1e-12);
  EXPECT_NEAR(r1(1), 0.0, 1e-12);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = gen::complex_matrix(4, 4, rng);
    const RealVector sv = singular_values(m);
    const std::vector<double> ref = oracle::singular_values(m);
    for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(sv(i), ref[static_cast<std::size_t>(i)], 1e-8);
    EXPECT_NEAR(trace_norm(m), sv.sum(), 1e-12);
  }
}

TEST(TraceDistanceTest, KnownValues) {
  const DensityMatrix phi = max_entangled(2);
  EXPECT_NEAR(trace_distance(phi, phi), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(phi, maximally_mixed({2, 2})), 0.75, 1e-12);
  const DensityMatrix zero = DensityMatrix::single(diag({1, 0}));
  const DensityMatrix one = DensityMatrix::single(diag({0, 1}));
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-15);
  EXPECT_THROW(trace_distance(zero, phi), DimensionError);
}

TEST(TraceDistanceTest, MetricPropertiesOnSeededPairs) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 120; ++trial) {
    const BipartiteShape s = gen::shape(rng);
    const DensityMatrix rho = gen::density(s, rng);
    const DensityMatrix sigma = gen::density(s, rng);
    const DensityMatrix tau = gen::density(s, rng);
    const double d = trace_distance(rho, sigma);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
    EXPECT_NEAR(d, trace_distance(sigma, rho), 1e-14);
    EXPECT_NEAR(d, 0.5 * oracle::trace_norm_hermitian(rho.matrix() - sigma.matrix()), 1e-9);
    EXPECT_LE(d, trace_distance(rho, tau) + trace_distance(tau, sigma) + 1e-12);
    const Matrix u = gen::local_unitary(s, rng);
    EXPECT_NEAR(trace_distance(gen::conjugate(rho, u), gen::conjugate(sigma, u)), d, 1e-9);
    const DensityMatrix rhoA = DensityMatrix::single(partial_trace(rho.matrix(), s, Subsystem::A));
    const DensityMatrix sigmaA = DensityMatrix::single(partial_trace(sigma.matrix(), s, Subsystem::A));
    EXPECT_LE(trace_distance(rhoA, sigmaA), d + 1e-12);
  }
}

TEST(PureFidelityTest, ValuesAndFuchsVanDeGraafBounds) {
  for (std::size_t d = 2; d <= 4; ++d) {
    const Vector phi = max_entangled_vector(d);
    EXPECT_NEAR(pure_fidelity(max_entangled(d), phi), 1.0, 1e-14);
    EXPECT_NEAR(pure_fidelity(maximally_mixed({d, d}), phi), 1.0 / double(d), 1e-14);
  }
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const BipartiteShape s = gen::shape(rng);
    const DensityMatrix sigma = gen::density(s, rng);
    Rng r(rng());
    const Vector psi = random_unit_vector(s.total(), r);
    const DensityMatrix pure = pure_state(psi, s);
    const double f = pure_fidelity(sigma, psi);
    const double t = trace_distance(sigma, pure);
    EXPECT_LE(1.0 - f, t + 1e-12);
    EXPECT_LE(t, std::sqrt(1.0 - f * f) + 1e-12);
  }
  EXPECT_THROW(pure_fidelity(max_entangled(2), 2.0 * max_entangled_vector(2)), PreconditionError);
}

TEST(PsdMarginTest, KnownValuesAndRelativeTolerance) {
  EXPECT_NEAR(psd_margin(identity(3)), 1.0, 1e-15);
  EXPECT_NEAR(psd_margin(partial_transpose(max_entangled(2).matrix(), {2, 2})), -0.5, 1e-12);
  const PsdCheck tiny = check_psd(diag({1.0, -1e-12}));
  EXPECT_TRUE(tiny.accepted);
  EXPECT_NEAR(tiny.tolerance, 1e-9, 1e-15);
  EXPECT_FALSE(check_psd(diag({1.0, -1e-6})).accepted);
  // The tolerance scales with the spectral norm.
  EXPECT_TRUE(check_psd(diag({1e6, -1e-4})).accepted);
}
