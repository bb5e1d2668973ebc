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

#include "sepkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sepkit/error.hpp"

namespace sepkit {

namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void require_permutation(std::span<const std::size_t> dims, std::span<const std::size_t> perm) {
  if (perm.size() != dims.size()) {
    throw PreconditionError("permutation length " + std::to_string(perm.size()) +
                            " does not match system count " + std::to_string(dims.size()));
  }
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || seen[p]) throw PreconditionError("invalid permutation of systems");
    seen[p] = true;
  }
}

// Position of each input basis index after reordering factors by `perm`.
std::vector<std::size_t> permutation_map(std::span<const std::size_t> dims,
                                         std::span<const std::size_t> perm) {
  require_permutation(dims, perm);
  const std::size_t k = dims.size();
  const std::size_t total = product(dims);

  // Strides of each input system inside the output index.
  std::vector<std::size_t> outStride(k, 1);
  for (std::size_t i = k; i-- > 0;) {
    // output position i holds input system perm[i]
    std::size_t stride = 1;
    for (std::size_t j = i + 1; j < k; ++j) stride *= dims[perm[j]];
    outStride[perm[i]] = stride;
  }

  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digit(k, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t out = 0;
    for (std::size_t s = 0; s < k; ++s) out += digit[s] * outStride[s];
    map[idx] = out;
    for (std::size_t s = k; s-- > 0;) {
      if (++digit[s] < dims[s]) break;
      digit[s] = 0;
    }
  }
  return map;
}

}  // namespace

void require_shape(const Matrix& m, const BipartiteShape& shape) {
  if (shape.dimA == 0 || shape.dimB == 0) throw DimensionError("bipartite dimensions must be >= 1");
  const auto n = as_index(shape.total());
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", shape " + std::to_string(shape.dimA) + "x" +
                         std::to_string(shape.dimB) + " requires " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix m, BipartiteShape shape, TrustedTag)
    : m_(std::move(m)), shape_(shape) {
  require_shape(m_, shape_);
  if (!is_hermitian(m_)) throw InvariantError("density matrix invariant violated: Hermitian");
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    throw InvariantError("density matrix invariant violated: unit trace (trace = " +
                         std::to_string(tr.real()) + ")");
  }
}

DensityMatrix::DensityMatrix(Matrix m, BipartiteShape shape)
    : DensityMatrix(std::move(m), shape, TrustedTag{}) {
  const RealVector ev = hermitian_eigenvalues(m_);
  const double scale = ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() < -kPsdRelTol * scale) {
    throw InvariantError("density matrix invariant violated: positive semidefinite (min eigenvalue " +
                         std::to_string(ev.minCoeff()) + ")");
  }
}

DensityMatrix DensityMatrix::trusted(Matrix m, BipartiteShape shape) {
  return DensityMatrix(std::move(m), shape, TrustedTag{});
}

DensityMatrix DensityMatrix::single(Matrix m) {
  const auto n = static_cast<std::size_t>(m.rows());
  return DensityMatrix(std::move(m), BipartiteShape{n, 1});
}

// ---------------------------------------------------------------------------
// Basic helpers

Matrix identity(std::size_t n) { return Matrix::Identity(as_index(n), as_index(n)); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.adjoint()) <= tol * scale;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// ---------------------------------------------------------------------------
// System permutations

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size()) throw PreconditionError("invalid permutation of systems");
    inv[perm[i]] = i;
  }
  return inv;
}

Matrix permute_factors(const Matrix& m, std::span<const std::size_t> rowDims,
                       std::span<const std::size_t> rowPerm,
                       std::span<const std::size_t> colDims,
                       std::span<const std::size_t> colPerm) {
  if (as_index(product(rowDims)) != m.rows() || as_index(product(colDims)) != m.cols()) {
    throw DimensionError("system dimensions do not multiply to the matrix size");
  }
  const auto rowMap = permutation_map(rowDims, rowPerm);
  const auto colMap = permutation_map(colDims, colPerm);
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const auto oc = as_index(colMap[static_cast<std::size_t>(c)]);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out(as_index(rowMap[static_cast<std::size_t>(r)]), oc) = m(r, c);
    }
  }
  return out;
}

Matrix permute_systems(const Matrix& m, std::span<const std::size_t> dims,
                       std::span<const std::size_t> perm) {
  if (m.rows() != m.cols()) throw DimensionError("permute_systems needs a square matrix");
  return permute_factors(m, dims, perm, dims, perm);
}

Vector permute_systems(const Vector& v, std::span<const std::size_t> dims,
                       std::span<const std::size_t> perm) {
  if (as_index(product(dims)) != v.size()) {
    throw DimensionError("system dimensions do not multiply to the vector size");
  }
  const auto map = permutation_map(dims, perm);
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(as_index(map[static_cast<std::size_t>(i)])) = v(i);
  return out;
}

// ---------------------------------------------------------------------------
// Partial trace / transpose / realignment

Matrix partial_trace(const Matrix& m, const BipartiteShape& shape, Subsystem keep) {
  require_shape(m, shape);
  const auto dA = as_index(shape.dimA);
  const auto dB = as_index(shape.dimB);
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dA, dA);
    for (Eigen::Index i = 0; i < dA; ++i)
      for (Eigen::Index j = 0; j < dA; ++j)
        out(i, j) = m.block(i * dB, j * dB, dB, dB).trace();
    return out;
  }
  Matrix out = Matrix::Zero(dB, dB);
  for (Eigen::Index i = 0; i < dA; ++i) out += m.block(i * dB, i * dB, dB, dB);
  return out;
}

Matrix partial_trace_systems(const Matrix& m, std::span<const std::size_t> dims,
                             std::span<const std::size_t> keep) {
  const std::size_t total = product(dims);
  if (m.rows() != m.cols() || as_index(total) != m.rows()) {
    throw DimensionError("system dimensions do not match the operator");
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= dims.size() || (i > 0 && keep[i] <= keep[i - 1])) {
      throw PreconditionError("kept systems must be strictly increasing valid indices");
    }
    kept[keep[i]] = true;
  }
  std::size_t keptDim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (kept[s]) keptDim *= dims[s];
  const std::size_t tracedDim = total / keptDim;

  // full[k * tracedDim + t] = full index for kept digit-string k and traced digit-string t
  std::vector<std::size_t> full(total);
  std::vector<std::size_t> digit(dims.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t k = 0;
    std::size_t t = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (kept[s]) {
        k = k * dims[s] + digit[s];
      } else {
        t = t * dims[s] + digit[s];
      }
    }
    full[k * tracedDim + t] = idx;
    for (std::size_t s = dims.size(); s-- > 0;) {
      if (++digit[s] < dims[s]) break;
      digit[s] = 0;
    }
  }

  Matrix out = Matrix::Zero(as_index(keptDim), as_index(keptDim));
  for (std::size_t kc = 0; kc < keptDim; ++kc) {
    for (std::size_t kr = 0; kr < keptDim; ++kr) {
      Complex acc(0.0, 0.0);
      for (std::size_t t = 0; t < tracedDim; ++t) {
        acc += m(as_index(full[kr * tracedDim + t]), as_index(full[kc * tracedDim + t]));
      }
      out(as_index(kr), as_index(kc)) = acc;
    }
  }
  return out;
}

Matrix partial_transpose(const Matrix& m, const BipartiteShape& shape) {
  require_shape(m, shape);
  const auto dA = as_index(shape.dimA);
  const auto dB = as_index(shape.dimB);
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < dA; ++i)
    for (Eigen::Index j = 0; j < dA; ++j)
      out.block(i * dB, j * dB, dB, dB) = m.block(i * dB, j * dB, dB, dB).transpose();
  return out;
}

Vector vec(const Matrix& m) {
  Vector out(m.size());
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.segment(c * m.rows(), m.rows()) = m.col(c);
  return out;
}

Matrix realign(const Matrix& m, const BipartiteShape& shape) {
  require_shape(m, shape);
  const auto dA = as_index(shape.dimA);
  const auto dB = as_index(shape.dimB);
  Matrix out(dA * dA, dB * dB);
  // m(i dB + k, j dB + l) = sum M(i,j) N(k,l)  ->  v(M)[j dA + i] * v(N)[l dB + k]
  for (Eigen::Index i = 0; i < dA; ++i)
    for (Eigen::Index j = 0; j < dA; ++j)
      for (Eigen::Index k = 0; k < dB; ++k)
        for (Eigen::Index l = 0; l < dB; ++l)
          out(j * dA + i, l * dB + k) = m(i * dB + k, j * dB + l);
  return out;
}

// ---------------------------------------------------------------------------
// Spectra and norms

EigenDecomposition hermitian_eig(const Matrix& m) {
  if (!is_hermitian(m)) throw InvariantError("hermitian_eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eig: solver failed");
  EigenDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  if (!is_hermitian(m)) throw InvariantError("hermitian_eigenvalues: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: solver failed");
  return solver.eigenvalues().reverse();
}

RealVector singular_values(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double trace_norm(const Matrix& m) { return singular_values(m).sum(); }

double hermitian_trace_norm(const Matrix& m) { return hermitian_eigenvalues(m).cwiseAbs().sum(); }

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("trace_distance: dimensions " + std::to_string(rho.dim()) + " and " +
                         std::to_string(sigma.dim()) + " differ");
  }
  const double d = 0.5 * hermitian_trace_norm(rho.matrix() - sigma.matrix());
  return std::clamp(d, 0.0, 1.0);
}

double pure_fidelity(const DensityMatrix& sigma, const Vector& psi) {
  if (as_index(sigma.dim()) != psi.size()) throw DimensionError("pure_fidelity: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw PreconditionError("pure_fidelity: psi is not normalized");
  const double overlap = (psi.adjoint() * sigma.matrix() * psi)(0, 0).real();
  return std::sqrt(std::clamp(overlap, 0.0, 1.0));
}

double psd_margin(const Matrix& m) { return hermitian_eigenvalues(m).minCoeff(); }

PsdCheck check_psd(const Matrix& m, double rel_tol) {
  const RealVector ev = hermitian_eigenvalues(m);
  PsdCheck out;
  out.margin = ev.minCoeff();
  out.tolerance = rel_tol * ev.cwiseAbs().maxCoeff();
  out.accepted = out.margin >= -out.tolerance;
  return out;
}

}  // namespace sepkit
