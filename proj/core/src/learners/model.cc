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

#include "tabml/learners/model.h"

#include <cmath>

#include "tabml/errors.h"
#include "tabml/learners/registry.h"

namespace tabml {

Labels Classifier::Predict(const Matrix& X) const { return ArgmaxRows(PredictProba(X)); }

void Classifier::CheckPredictInput(const Matrix& X) const {
  if (!fitted()) throw ConfigError(family() + " model is not fitted");
  if (X.cols() != n_features_) {
    throw DataError(family() + " model expects " + std::to_string(n_features_) +
                    " features, got " + std::to_string(X.cols()));
  }
}

nlohmann::ordered_json Classifier::ToJson() const {
  nlohmann::ordered_json j;
  j["format"] = "tabml-model";
  j["version"] = kModelFormatVersion;
  j["family"] = family();
  j["params"] = Params();
  j["n_classes"] = n_classes_;
  j["n_features"] = n_features_;
  j["state"] = State();
  return j;
}

int CheckFitInputs(const Matrix& X, const Labels& y) {
  if (static_cast<size_t>(X.rows()) != y.size()) {
    throw DataError("X has " + std::to_string(X.rows()) + " rows but y has " +
                    std::to_string(y.size()));
  }
  if (y.empty()) throw DataError("cannot fit on an empty sample");
  if (!X.allFinite()) throw DataError("X contains non-finite values");
  int n_classes = 0;
  for (int v : y) {
    if (v < 0) throw DataError("negative class code");
    n_classes = std::max(n_classes, v + 1);
  }
  std::vector<char> seen(n_classes, 0);
  for (int v : y) seen[v] = 1;
  for (int c = 0; c < n_classes; ++c) {
    if (!seen[c]) throw DataError("class " + std::to_string(c) + " is absent from the training data");
  }
  if (n_classes < 2) throw DataError("training data holds a single class");
  return n_classes;
}

Labels ArgmaxRows(const Matrix& M) {
  Labels out(static_cast<size_t>(M.rows()));
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < M.cols(); ++c) {
      if (M(i, c) > M(i, best)) best = c;
    }
    out[i] = static_cast<int>(best);
  }
  return out;
}

Matrix SoftmaxRows(const Matrix& Z) {
  Matrix P(Z.rows(), Z.cols());
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    const double m = Z.row(i).maxCoeff();
    double s = 0.0;
    for (Eigen::Index c = 0; c < Z.cols(); ++c) {
      P(i, c) = std::exp(Z(i, c) - m);
      s += P(i, c);
    }
    P.row(i) /= s;
  }
  return P;
}

Vector BalancedWeights(const Labels& y, int n_classes) {
  std::vector<double> counts(n_classes, 0.0);
  for (int v : y) counts[v] += 1.0;
  Vector w(static_cast<Eigen::Index>(y.size()));
  const double n = static_cast<double>(y.size());
  for (size_t i = 0; i < y.size(); ++i) w[i] = n / (n_classes * counts[y[i]]);
  return w;
}

std::unique_ptr<Classifier> ClassifierFromJson(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != "tabml-model") {
      throw ConfigError("not a tabml model document");
    }
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw ConfigError("unsupported model format version " + std::to_string(version));
    }
    auto model = MakeClassifier(doc.at("family").get<std::string>(), doc.at("params"), 0);
    model->LoadState(doc.at("state"));
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model document: ") + e.what());
  }
}

}  // namespace tabml
