/*
 * Copyright 2026 The tabml Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Internal helpers for (de)serialising Eigen objects inside model documents.

#ifndef TABML_SRC_LEARNERS_JSON_UTIL_H_
#define TABML_SRC_LEARNERS_JSON_UTIL_H_

#include <vector>

#include <nlohmann/json.hpp>

#include "tabml/learners/model.h"

namespace tabml::internal {

inline nlohmann::ordered_json MatrixToJson(const Matrix& M) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
    j.push_back(row);
  }
  return j;
}

inline Matrix MatrixFromJson(const nlohmann::json& j, Eigen::Index cols) {
  Matrix M(static_cast<Eigen::Index>(j.size()), cols);
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) M(r, c) = j.at(r).at(c).get<double>();
  }
  return M;
}

inline nlohmann::ordered_json VectorToJson(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline Vector VectorFromJson(const nlohmann::json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace tabml::internal

#endif  // TABML_SRC_LEARNERS_JSON_UTIL_H_
