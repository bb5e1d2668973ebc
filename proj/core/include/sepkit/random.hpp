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

// Seeded sampling primitives. Every sampler takes its generator or seed
// explicitly; nothing here owns global RNG state.

#include <cstdint>
#include <random>

#include "sepkit/linalg.hpp"

namespace sepkit {

using Rng = std::mt19937_64;

/// Deterministic, well-mixed child seed for stream `stream` of `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

Matrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);
/// Haar-distributed unit vector.
Vector random_unit_vector(std::size_t d, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
Matrix random_unitary(std::size_t d, Rng& rng);
/// Uniform point on the probability simplex (flat Dirichlet).
RealVector random_simplex(std::size_t k, Rng& rng);

}  // namespace sepkit
