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

#include "tabml/learners/one_vs_rest.h"

#include "tabml/errors.h"

namespace tabml {

void OneVsRest::Fit(const Matrix& X, const Labels& y) {
  const int C = CheckFitInputs(X, y);
  models_.clear();
  std::vector<int> y01(y.size());
  const int first = C == 2 ? 1 : 0;
  for (int c = first; c < C; ++c) {
    for (size_t i = 0; i < y.size(); ++i) y01[i] = y[i] == c ? 1 : 0;
    BinaryLogistic m(cfg_);
    m.Fit(X, y01);
    models_.push_back(std::move(m));
  }
  SetShape(C, static_cast<int>(X.cols()));
}

Matrix OneVsRest::DecisionScores(const Matrix& X) const {
  CheckPredictInput(X);
  const int C = n_classes();
  Matrix S(X.rows(), C);
  if (C == 2) {
    const Vector s = models_[0].Decision(X);
    S.col(0) = -s;
    S.col(1) = s;
    return S;
  }
  for (int c = 0; c < C; ++c) S.col(c) = models_[c].Decision(X);
  return S;
}

Matrix OneVsRest::PredictProba(const Matrix& X) const {
  Matrix P = DecisionScores(X);
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    for (Eigen::Index c = 0; c < P.cols(); ++c) P(i, c) = Sigmoid(P(i, c));
    P.row(i) /= P.row(i).sum();
  }
  return P;
}

nlohmann::ordered_json OneVsRest::State() const {
  nlohmann::ordered_json j;
  j["n_classes"] = n_classes();
  j["models"] = nlohmann::ordered_json::array();
  for (const auto& m : models_) j["models"].push_back(m.State());
  return j;
}

void OneVsRest::LoadState(const nlohmann::json& state) {
  const int C = state.at("n_classes").get<int>();
  models_.clear();
  for (const auto& s : state.at("models")) {
    BinaryLogistic m(cfg_);
    m.LoadState(s);
    models_.push_back(std::move(m));
  }
  const size_t expected = C == 2 ? 1 : static_cast<size_t>(C);
  if (C < 2 || models_.size() != expected) throw ConfigError("malformed one-vs-rest state");
  const auto p = models_[0].weights().size();
  for (const auto& m : models_) {
    if (m.weights().size() != p) throw ConfigError("one-vs-rest models disagree on feature count");
  }
  SetShape(C, static_cast<int>(p));
}

}  // namespace tabml
