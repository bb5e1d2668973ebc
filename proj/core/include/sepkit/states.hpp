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

// Constructors and seeded samplers for the state families used throughout
// the toolkit.

#include <array>
#include <cstdint>
#include <vector>

#include "sepkit/linalg.hpp"

namespace sepkit {

inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// Total-dimension cap for tensor powers and extensions. SEPKIT_DIM_CAP
/// overrides the default when set to a positive integer.
std::size_t dimension_cap();

struct WeightedState {
  double weight = 0.0;
  DensityMatrix state;
};

/// Finite mixture sum_i p_i state_i. Weights are non-negative and sum to 1;
/// all members share one shape.
class Ensemble {
 public:
  explicit Ensemble(std::vector<WeightedState> members);

  const std::vector<WeightedState>& members() const { return members_; }
  const BipartiteShape& shape() const { return members_.front().state.shape(); }
  std::size_t size() const { return members_.size(); }
  DensityMatrix mixture() const;

 private:
  std::vector<WeightedState> members_;
};

struct ProductMember {
  double weight = 0.0;
  DensityMatrix stateA;
  DensityMatrix stateB;
};

/// Certificate of separability: sum_i p_i stateA_i (x) stateB_i.
class ProductEnsemble {
 public:
  explicit ProductEnsemble(std::vector<ProductMember> members);

  const std::vector<ProductMember>& members() const { return members_; }
  BipartiteShape shape() const;
  std::size_t size() const { return members_.size(); }
  DensityMatrix state() const;
  Ensemble as_ensemble() const;

 private:
  std::vector<ProductMember> members_;
};

DensityMatrix maximally_mixed(const BipartiteShape& shape);
/// rho_A (x) rho_B on shape (dim rho_A, dim rho_B).
DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix pure_state(const Vector& psi, const BipartiteShape& shape);

/// (1/sqrt d) sum_i |i,i>.
Vector max_entangled_vector(std::size_t d);
/// Phi(d) = (1/d) sum_{i,j} |i,i><j,j|.
DensityMatrix max_entangled(std::size_t d);

/// (|i>|j> - |j>|i>) / sqrt 2, for 0 <= i < j < d.
Vector antisym_vector(std::size_t i, std::size_t j, std::size_t d);

/// (1 - t) rho + t Phi(d), for square shapes d x d.
DensityMatrix segment_state(const DensityMatrix& rho, double t);
/// Segment from the maximally mixed state toward Phi(d). PPT iff t <= 1/(d+1).
DensityMatrix isotropic_state(std::size_t d, double t);

/// The five 3x3 "tiles" product vectors. They are pairwise orthogonal and
/// no product vector is orthogonal to all of them.
std::array<Vector, 5> tiles_vectors();
/// (1/4)(I - sum_k |psi_k><psi_k|) over the tiles vectors: PPT and entangled.
DensityMatrix tiles_upb_state();

/// Hilbert-Schmidt sample G G^dagger / Tr(G G^dagger).
DensityMatrix random_density(const BipartiteShape& shape, std::uint64_t seed);
DensityMatrix random_density(std::size_t d, std::uint64_t seed);

DensityMatrix random_product_pure(const BipartiteShape& shape, std::uint64_t seed);

struct SeparableSample {
  DensityMatrix state;
  ProductEnsemble ensemble;
};

/// Mixture of k Haar-random product pure states with flat-Dirichlet weights.
SeparableSample random_separable(const BipartiteShape& shape, std::size_t k, std::uint64_t seed);

/// rho^{(x) n} regrouped as a bipartite state on A^n : B^n.
DensityMatrix tensor_power_bipartite(const DensityMatrix& rho, std::size_t n,
                                     std::size_t cap = dimension_cap());

}  // namespace sepkit
