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

#include "sepkit/product_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sepkit/error.hpp"
#include "sepkit/random.hpp"

namespace sepkit {

namespace {

constexpr int kMaxSweeps = 2000;
constexpr double kSweepTol = 1e-15;

// (a^dagger (x) I) H (a (x) I)
Matrix compress_on_b(const Matrix& h, const BipartiteShape& s, const Vector& a) {
  const auto dA = static_cast<Eigen::Index>(s.dimA);
  const auto dB = static_cast<Eigen::Index>(s.dimB);
  Matrix out = Matrix::Zero(dB, dB);
  for (Eigen::Index i = 0; i < dA; ++i)
    for (Eigen::Index j = 0; j < dA; ++j) out += std::conj(a(i)) * a(j) * h.block(i * dB, j * dB, dB, dB);
  return 0.5 * (out + out.adjoint());
}

// (I (x) b^dagger) H (I (x) b)
Matrix compress_on_a(const Matrix& h, const BipartiteShape& s, const Vector& b) {
  const auto dA = static_cast<Eigen::Index>(s.dimA);
  const auto dB = static_cast<Eigen::Index>(s.dimB);
  Matrix out(dA, dA);
  for (Eigen::Index i = 0; i < dA; ++i)
    for (Eigen::Index j = 0; j < dA; ++j)
      out(i, j) = (b.adjoint() * h.block(i * dB, j * dB, dB, dB) * b)(0, 0);
  return 0.5 * (out + out.adjoint());
}

std::pair<double, Vector> extreme_pair(const Matrix& m, Extremum which) {
  const EigenDecomposition e = hermitian_eig(m);
  const Eigen::Index k = which == Extremum::Max ? 0 : e.values.size() - 1;
  return {e.values(k), e.vectors.col(k)};
}

}  // namespace

ProductSearchResult product_expectation_search(const Matrix& h, const BipartiteShape& shape, Extremum which,
                                               std::size_t starts, std::uint64_t seed) {
  require_shape(h, shape);
  if (starts == 0) throw PreconditionError("product search needs at least one start");
  const double sign = which == Extremum::Max ? 1.0 : -1.0;

  ProductSearchResult best;
  best.value = sign * -std::numeric_limits<double>::infinity();
  best.starts = starts;
  for (std::size_t s = 0; s < starts; ++s) {
    Rng rng(derive_seed(seed, s));
    Vector a = random_unit_vector(shape.dimA, rng);
    Vector b;
    double value = sign * -std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      auto [vb, nb] = extreme_pair(compress_on_b(h, shape, a), which);
      b = std::move(nb);
      auto [va, na] = extreme_pair(compress_on_a(h, shape, b), which);
      a = std::move(na);
      const double improvement = sign * (va - value);
      value = va;
      if (sweep > 0 && improvement < kSweepTol) break;
    }
    if (sign * (value - best.value) > 0.0) {
      best.value = value;
      best.a = a;
      best.b = b;
    }
  }
  return best;
}

ProductSearchResult max_product_overlap(const Vector& psi, const BipartiteShape& shape, std::size_t starts,
                                        std::uint64_t seed) {
  if (static_cast<std::size_t>(psi.size()) != shape.total()) throw DimensionError("max_product_overlap: dimension mismatch");
  return product_expectation_search(psi * psi.adjoint(), shape, Extremum::Max, starts, seed);
}

UpbCertificate upb_certificate(const std::vector<Vector>& vectors, const BipartiteShape& shape, std::size_t starts,
                               std::uint64_t seed, double threshold) {
  const auto n = static_cast<Eigen::Index>(shape.total());
  Matrix projector = Matrix::Zero(n, n);
  UpbCertificate out;
  out.threshold = threshold;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != n) throw DimensionError("upb_certificate: vector length does not match shape");
    projector += vectors[j] * vectors[j].adjoint();
    for (std::size_t k = j + 1; k < vectors.size(); ++k)
      out.orthogonality_error = std::max(out.orthogonality_error, std::abs(vectors[j].dot(vectors[k])));
  }
  const ProductSearchResult r = product_expectation_search(projector, shape, Extremum::Min, starts, seed);
  out.min_overlap = r.value;
  out.starts = r.starts;
  out.certified = out.orthogonality_error <= kHermitianTol && out.min_overlap > threshold;
  return out;
}

}  // namespace sepkit
