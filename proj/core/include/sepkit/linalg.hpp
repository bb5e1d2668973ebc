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

// Dense complex linear algebra and the structural maps on bipartite operators.
//
// Index convention (project-wide): zero-based, basis |i>|j> of A (x) B has
// index i * dimB + j. Multi-system operators use the same big-endian rule:
// the first system is the most significant digit.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sepkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Subsystem { A, B };

struct BipartiteShape {
  std::size_t dimA = 1;
  std::size_t dimB = 1;

  std::size_t total() const { return dimA * dimB; }
  bool operator==(const BipartiteShape&) const = default;
};

/// Throws DimensionError unless `m` is square with side shape.total().
void require_shape(const Matrix& m, const BipartiteShape& shape);

// Tolerances used for the DensityMatrix invariants.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdRelTol = 1e-9;

/// PSD, unit-trace Hermitian operator on A (x) B.
///
/// The checked constructor verifies every invariant (including positivity,
/// which costs an eigendecomposition). `trusted` skips the spectral check and
/// is meant for constructions that are positive by design, e.g. Kronecker
/// products and convex mixtures of valid states.
class DensityMatrix {
 public:
  DensityMatrix(Matrix m, BipartiteShape shape);

  static DensityMatrix trusted(Matrix m, BipartiteShape shape);
  /// Single-system state, shape (n, 1).
  static DensityMatrix single(Matrix m);

  const Matrix& matrix() const { return m_; }
  const BipartiteShape& shape() const { return shape_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

 private:
  struct TrustedTag {};
  DensityMatrix(Matrix m, BipartiteShape shape, TrustedTag);

  Matrix m_;
  BipartiteShape shape_;
};

Matrix identity(std::size_t n);
double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

/// Kronecker product.
Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);

/// Reorders tensor factors: output factor i is input factor perm[i].
/// Equivalent to P m P^dagger for the factor-reordering unitary P.
Matrix permute_systems(const Matrix& m, std::span<const std::size_t> dims,
                       std::span<const std::size_t> perm);
Vector permute_systems(const Vector& v, std::span<const std::size_t> dims,
                       std::span<const std::size_t> perm);

/// Rectangular variant: row and column index spaces are factored and
/// permuted independently.
Matrix permute_factors(const Matrix& m, std::span<const std::size_t> rowDims,
                       std::span<const std::size_t> rowPerm,
                       std::span<const std::size_t> colDims,
                       std::span<const std::size_t> colPerm);

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm);

Matrix partial_trace(const Matrix& m, const BipartiteShape& shape, Subsystem keep);

/// Traces out every system not listed in `keep`. `keep` must be strictly
/// increasing; the kept systems stay in their original order.
Matrix partial_trace_systems(const Matrix& m, std::span<const std::size_t> dims,
                             std::span<const std::size_t> keep);

/// Transpose on the B factor: (M (x) N)^{T_B} = M (x) N^T.
Matrix partial_transpose(const Matrix& m, const BipartiteShape& shape);

/// Column-stacking vectorization v(X) = (col_0^T, col_1^T, ...)^T.
Vector vec(const Matrix& m);

/// The linear map with realign(M (x) N) = v(M) v(N)^T. Output is dimA^2 x dimB^2.
Matrix realign(const Matrix& m, const BipartiteShape& shape);

struct EigenDecomposition {
  RealVector values;  // non-increasing
  Matrix vectors;     // columns match `values`
};

/// Throws InvariantError for non-Hermitian input.
EigenDecomposition hermitian_eig(const Matrix& m);
RealVector hermitian_eigenvalues(const Matrix& m);

/// Non-increasing.
RealVector singular_values(const Matrix& m);
double trace_norm(const Matrix& m);
/// Trace norm of a Hermitian matrix via its spectrum.
double hermitian_trace_norm(const Matrix& m);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// sqrt(<psi|sigma|psi>). Throws PreconditionError unless |psi| = 1 within 1e-10.
double pure_fidelity(const DensityMatrix& sigma, const Vector& psi);

/// Minimum eigenvalue.
double psd_margin(const Matrix& m);

struct PsdCheck {
  double margin = 0.0;     // min eigenvalue
  double tolerance = 0.0;  // rel_tol * spectral norm
  bool accepted = false;
};

PsdCheck check_psd(const Matrix& m, double rel_tol = kPsdRelTol);

}  // namespace sepkit
