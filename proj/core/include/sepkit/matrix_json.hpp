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

// Matrix file schema shared by every tool:
//   {"kind": "density" | "hermitian" | "matrix",
//    "dims": [dA, dB],            (optional for non-bipartite operators)
//    "re": [[...], ...], "im": [[...], ...]}
// Rows are listed in index order. Doubles are written with round-trip precision.

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "sepkit/linalg.hpp"

namespace sepkit {

enum class MatrixKind { Density, Hermitian, General };

struct LabeledMatrix {
  MatrixKind kind = MatrixKind::General;
  std::optional<BipartiteShape> dims;
  Matrix matrix;
};

nlohmann::json matrix_to_json(const LabeledMatrix& m);
nlohmann::json density_to_json(const DensityMatrix& rho);

/// Throws InvariantError naming the schema rule that failed.
LabeledMatrix labeled_matrix_from_json(const nlohmann::json& j);

/// Requires kind "density" and validates every DensityMatrix invariant. A
/// missing "dims" means a single system of the matrix size.
DensityMatrix density_from_json(const nlohmann::json& j);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace sepkit
