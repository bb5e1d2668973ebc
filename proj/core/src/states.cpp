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

#include "sepkit/states.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "sepkit/error.hpp"
#include "sepkit/random.hpp"

namespace sepkit {

namespace {

constexpr double kWeightTol = 1e-10;

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

void require_weights(const std::vector<double>& weights) {
  if (weights.empty()) throw InvariantError("ensemble invariant violated: at least one member");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvariantError("ensemble invariant violated: weights >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightTol) {
    throw InvariantError("ensemble invariant violated: weights sum to 1 (sum = " + std::to_string(sum) + ")");
  }
}

}  // namespace

std::size_t dimension_cap() {
  if (const char* env = std::getenv("SEPKIT_DIM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultDimensionCap;
}

// ---------------------------------------------------------------------------
// Ensembles

Ensemble::Ensemble(std::vector<WeightedState> members) : members_(std::move(members)) {
  std::vector<double> w;
  for (const auto& m : members_) w.push_back(m.weight);
  require_weights(w);
  for (const auto& m : members_) {
    if (!(m.state.shape() == members_.front().state.shape())) {
      throw InvariantError("ensemble invariant violated: members share one shape");
    }
  }
}

DensityMatrix Ensemble::mixture() const {
  Matrix acc = Matrix::Zero(members_.front().state.matrix().rows(), members_.front().state.matrix().cols());
  for (const auto& m : members_) acc += m.weight * m.state.matrix();
  return DensityMatrix::trusted(hermitize(acc), shape());
}

ProductEnsemble::ProductEnsemble(std::vector<ProductMember> members) : members_(std::move(members)) {
  std::vector<double> w;
  for (const auto& m : members_) w.push_back(m.weight);
  require_weights(w);
  const BipartiteShape s = shape();
  for (const auto& m : members_) {
    if (m.stateA.dim() != s.dimA || m.stateB.dim() != s.dimB) {
      throw InvariantError("ensemble invariant violated: members share one shape");
    }
  }
}

BipartiteShape ProductEnsemble::shape() const {
  return {members_.front().stateA.dim(), members_.front().stateB.dim()};
}

DensityMatrix ProductEnsemble::state() const {
  const auto n = static_cast<Eigen::Index>(shape().total());
  Matrix acc = Matrix::Zero(n, n);
  for (const auto& m : members_) acc += m.weight * tensor(m.stateA.matrix(), m.stateB.matrix());
  return DensityMatrix::trusted(hermitize(acc), shape());
}

Ensemble ProductEnsemble::as_ensemble() const {
  std::vector<WeightedState> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back({m.weight, product_state(m.stateA, m.stateB)});
  return Ensemble(std::move(out));
}

// ---------------------------------------------------------------------------
// Fixed states

DensityMatrix maximally_mixed(const BipartiteShape& shape) {
  const auto n = shape.total();
  return DensityMatrix::trusted(identity(n) / static_cast<double>(n), shape);
}

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(tensor(a.matrix(), b.matrix()), {a.dim(), b.dim()});
}

DensityMatrix pure_state(const Vector& psi, const BipartiteShape& shape) {
  if (static_cast<std::size_t>(psi.size()) != shape.total()) throw DimensionError("pure_state: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw PreconditionError("pure_state: vector is not normalized");
  return DensityMatrix::trusted(psi * psi.adjoint(), shape);
}

Vector max_entangled_vector(std::size_t d) {
  if (d < 2) throw PreconditionError("maximally entangled state needs d >= 2");
  const auto n = static_cast<Eigen::Index>(d);
  Vector v = Vector::Zero(n * n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < n; ++i) v(i * n + i) = amp;
  return v;
}

DensityMatrix max_entangled(std::size_t d) {
  if (d < 2) throw PreconditionError("maximally entangled state needs d >= 2");
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m = Matrix::Zero(n * n, n * n);
  const double w = 1.0 / static_cast<double>(d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i * n + i, j * n + j) = w;
  return DensityMatrix::trusted(std::move(m), {d, d});
}

Vector antisym_vector(std::size_t i, std::size_t j, std::size_t d) {
  if (!(i < j && j < d)) throw PreconditionError("antisym_vector needs 0 <= i < j < d");
  const auto n = static_cast<Eigen::Index>(d);
  Vector v = Vector::Zero(n * n);
  const double amp = 1.0 / std::sqrt(2.0);
  v(static_cast<Eigen::Index>(i) * n + static_cast<Eigen::Index>(j)) = amp;
  v(static_cast<Eigen::Index>(j) * n + static_cast<Eigen::Index>(i)) = -amp;
  return v;
}

DensityMatrix segment_state(const DensityMatrix& rho, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw PreconditionError("segment_state needs 0 <= t <= 1");
  const BipartiteShape s = rho.shape();
  if (s.dimA != s.dimB || s.dimA < 2) throw PreconditionError("segment_state needs a d x d shape with d >= 2");
  if (t == 0.0) return rho;
  if (t == 1.0) return max_entangled(s.dimA);
  return DensityMatrix::trusted((1.0 - t) * rho.matrix() + t * max_entangled(s.dimA).matrix(), s);
}

DensityMatrix isotropic_state(std::size_t d, double t) { return segment_state(maximally_mixed({d, d}), t); }

std::array<Vector, 5> tiles_vectors() {
  auto basis = [](Eigen::Index i) {
    Vector e = Vector::Zero(3);
    e(i) = 1.0;
    return e;
  };
  const double r2 = 1.0 / std::sqrt(2.0);
  const Vector e0 = basis(0), e1 = basis(1), e2 = basis(2);
  const Vector uniform = (e0 + e1 + e2) / std::sqrt(3.0);
  return {
      tensor(e0, Vector(r2 * (e0 - e1))),
      tensor(e2, Vector(r2 * (e1 - e2))),
      tensor(Vector(r2 * (e0 - e1)), e2),
      tensor(Vector(r2 * (e1 - e2)), e0),
      tensor(uniform, uniform),
  };
}

DensityMatrix tiles_upb_state() {
  Matrix m = identity(9);
  for (const Vector& v : tiles_vectors()) m -= v * v.adjoint();
  return DensityMatrix(hermitize(m / 4.0), {3, 3});
}

// ---------------------------------------------------------------------------
// Samplers

DensityMatrix random_density(const BipartiteShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix g = random_ginibre(shape.total(), shape.total(), rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix::trusted(hermitize(m), shape);
}

DensityMatrix random_density(std::size_t d, std::uint64_t seed) { return random_density(BipartiteShape{d, 1}, seed); }

DensityMatrix random_product_pure(const BipartiteShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  const Vector a = random_unit_vector(shape.dimA, rng);
  const Vector b = random_unit_vector(shape.dimB, rng);
  return DensityMatrix::trusted(tensor(Matrix(a * a.adjoint()), Matrix(b * b.adjoint())), shape);
}

SeparableSample random_separable(const BipartiteShape& shape, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw PreconditionError("random_separable needs k >= 1");
  Rng rng(seed);
  const RealVector w = random_simplex(k, rng);
  std::vector<ProductMember> members;
  members.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Vector a = random_unit_vector(shape.dimA, rng);
    const Vector b = random_unit_vector(shape.dimB, rng);
    members.push_back({w(static_cast<Eigen::Index>(i)), DensityMatrix::trusted(a * a.adjoint(), {shape.dimA, 1}),
                       DensityMatrix::trusted(b * b.adjoint(), {shape.dimB, 1})});
  }
  ProductEnsemble ens(std::move(members));
  DensityMatrix state = ens.state();
  return {std::move(state), std::move(ens)};
}

DensityMatrix tensor_power_bipartite(const DensityMatrix& rho, std::size_t n, std::size_t cap) {
  if (n < 1) throw PreconditionError("tensor_power_bipartite needs n >= 1");
  const BipartiteShape s = rho.shape();
  std::size_t total = 1;
  std::size_t dimA = 1;
  std::size_t dimB = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / s.total()) {
      throw CapExceededError("tensor power dimension exceeds cap " + std::to_string(cap));
    }
    total *= s.total();
    dimA *= s.dimA;
    dimB *= s.dimB;
  }
  if (n == 1) return rho;

  Matrix acc = rho.matrix();
  for (std::size_t i = 1; i < n; ++i) acc = tensor(acc, rho.matrix());

  std::vector<std::size_t> dims;
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < n; ++i) {
    dims.push_back(s.dimA);
    dims.push_back(s.dimB);
  }
  for (std::size_t i = 0; i < n; ++i) perm.push_back(2 * i);
  for (std::size_t i = 0; i < n; ++i) perm.push_back(2 * i + 1);
  return DensityMatrix::trusted(permute_systems(acc, dims, perm), {dimA, dimB});
}

}  // namespace sepkit
