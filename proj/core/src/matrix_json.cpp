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

#include "sepkit/matrix_json.hpp"

#include <fstream>
#include <stdexcept>

#include "sepkit/error.hpp"

namespace sepkit {

using nlohmann::json;

namespace {

std::string kind_name(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::Density:
      return "density";
    case MatrixKind::Hermitian:
      return "hermitian";
    case MatrixKind::General:
      return "matrix";
  }
  return "matrix";
}

MatrixKind parse_kind(const std::string& s) {
  if (s == "density") return MatrixKind::Density;
  if (s == "hermitian") return MatrixKind::Hermitian;
  if (s == "matrix") return MatrixKind::General;
  throw InvariantError("matrix schema: unknown kind \"" + s + "\"");
}

json part_rows(const Matrix& m, bool imag) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json matrix_to_json(const LabeledMatrix& m) {
  json j;
  j["kind"] = kind_name(m.kind);
  if (m.dims) j["dims"] = {m.dims->dimA, m.dims->dimB};
  j["re"] = part_rows(m.matrix, false);
  j["im"] = part_rows(m.matrix, true);
  return j;
}

json density_to_json(const DensityMatrix& rho) {
  return matrix_to_json({MatrixKind::Density, rho.shape(), rho.matrix()});
}

LabeledMatrix labeled_matrix_from_json(const json& j) {
  if (!j.is_object()) throw InvariantError("matrix schema: top level must be an object");
  for (const char* key : {"kind", "re", "im"}) {
    if (!j.contains(key)) throw InvariantError(std::string("matrix schema: missing \"") + key + "\"");
  }
  if (!j["kind"].is_string()) throw InvariantError("matrix schema: \"kind\" must be a string");

  LabeledMatrix out;
  out.kind = parse_kind(j["kind"].get<std::string>());

  const json& re = j["re"];
  const json& im = j["im"];
  if (!re.is_array() || !im.is_array() || re.empty() || re.size() != im.size()) {
    throw InvariantError("matrix schema: \"re\" and \"im\" must be non-empty arrays of equal length");
  }
  const std::size_t rows = re.size();
  if (!re[0].is_array() || re[0].empty()) throw InvariantError("matrix schema: rows must be non-empty arrays");
  const std::size_t cols = re[0].size();
  out.matrix.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!re[r].is_array() || !im[r].is_array() || re[r].size() != cols || im[r].size() != cols) {
      throw InvariantError("matrix schema: ragged rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!re[r][c].is_number() || !im[r][c].is_number()) {
        throw InvariantError("matrix schema: entries must be numbers");
      }
      out.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(re[r][c].get<double>(), im[r][c].get<double>());
    }
  }

  if (j.contains("dims")) {
    const json& d = j["dims"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_unsigned() || !d[1].is_number_unsigned()) {
      throw InvariantError("matrix schema: \"dims\" must be [dA, dB] with positive integers");
    }
    BipartiteShape shape{d[0].get<std::size_t>(), d[1].get<std::size_t>()};
    if (shape.dimA == 0 || shape.dimB == 0 || shape.total() != rows || rows != cols) {
      throw InvariantError("matrix schema: \"dims\" product does not match a square matrix size");
    }
    out.dims = shape;
  }
  if (out.kind != MatrixKind::General && rows != cols) {
    throw InvariantError("matrix schema: " + kind_name(out.kind) + " matrices must be square");
  }
  if (out.kind != MatrixKind::General && !is_hermitian(out.matrix)) {
    throw InvariantError("matrix schema: " + kind_name(out.kind) + " matrix is not Hermitian");
  }
  return out;
}

DensityMatrix density_from_json(const json& j) {
  LabeledMatrix m = labeled_matrix_from_json(j);
  if (m.kind != MatrixKind::Density) throw InvariantError("matrix schema: expected kind \"density\"");
  const BipartiteShape shape = m.dims.value_or(BipartiteShape{static_cast<std::size_t>(m.matrix.rows()), 1});
  return DensityMatrix(std::move(m.matrix), shape);
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvariantError("matrix schema: " + path.string() + " is not valid JSON (" + e.what() + ")");
  }
}

}  // namespace sepkit
