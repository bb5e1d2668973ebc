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

// Multi-start alternating optimization of <a (x) b| H |a (x) b> over product
// unit vectors. Each sweep fixes one factor and solves the other exactly as an
// extreme eigenvector, so the objective is monotone along a run.

#include <cstdint>
#include <vector>

#include "sepkit/linalg.hpp"

namespace sepkit {

enum class Extremum { Min, Max };

struct ProductSearchResult {
  double value = 0.0;
  Vector a;
  Vector b;
  std::size_t starts = 0;
};

ProductSearchResult product_expectation_search(const Matrix& h, const BipartiteShape& shape, Extremum which,
                                               std::size_t starts, std::uint64_t seed);

/// max |<a (x) b|psi>|^2.
ProductSearchResult max_product_overlap(const Vector& psi, const BipartiteShape& shape, std::size_t starts,
                                        std::uint64_t seed);

inline constexpr double kUpbOverlapThreshold = 1e-2;
inline constexpr std::size_t kUpbStarts = 50;

struct UpbCertificate {
  /// min over product unit vectors of sum_k |<psi_k|a (x) b>|^2.
  double min_overlap = 0.0;
  double threshold = kUpbOverlapThreshold;
  /// max |<psi_j|psi_k>| over distinct pairs.
  double orthogonality_error = 0.0;
  std::size_t starts = 0;
  /// Orthogonal set with no product vector in its complement: the normalized
  /// projector onto the complement is entangled.
  bool certified = false;
};

UpbCertificate upb_certificate(const std::vector<Vector>& vectors, const BipartiteShape& shape,
                               std::size_t starts = kUpbStarts, std::uint64_t seed = 0,
                               double threshold = kUpbOverlapThreshold);

}  // namespace sepkit
