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

#include "tabml/learners/logistic.h"

#include <cmath>

#include "tabml/errors.h"
#include "tabml/learners/optimizer.h"
#include "json_util.h"

namespace tabml {
namespace {

using internal::MatrixFromJson;
using internal::MatrixToJson;
using internal::VectorFromJson;
using internal::VectorToJson;

// log(1 + exp(z)) without overflow.
double Softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void LrConfig::Validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw ConfigError("C must be a positive finite number");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
}

nlohmann::ordered_json LrConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["penalty"] = penalty == Penalty::kL2 ? nlohmann::ordered_json("l2") : nlohmann::ordered_json();
  j["C"] = C;
  j["class_weight"] =
      class_weight == ClassWeight::kBalanced ? nlohmann::ordered_json("balanced") : nlohmann::ordered_json();
  j["max_iter"] = max_iter;
  j["tol"] = tol;
  return j;
}

LrConfig LrConfig::FromJson(const nlohmann::json& j) {
  LrConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "penalty") {
      if (value.is_null() || value == "none") {
        cfg.penalty = Penalty::kNone;
      } else if (value == "l2") {
        cfg.penalty = Penalty::kL2;
      } else {
        throw ConfigError("unsupported penalty " + value.dump() + " (l2, none)");
      }
    } else if (key == "C") {
      cfg.C = value.get<double>();
    } else if (key == "class_weight") {
      if (value.is_null() || value == "none" || value == "uniform") {
        cfg.class_weight = ClassWeight::kUniform;
      } else if (value == "balanced") {
        cfg.class_weight = ClassWeight::kBalanced;
      } else {
        throw ConfigError("unsupported class_weight " + value.dump());
      }
    } else if (key == "max_iter") {
      cfg.max_iter = value.get<int>();
    } else if (key == "tol") {
      cfg.tol = value.get<double>();
    } else if (key == "solver") {
      // Accepted for configuration compatibility; one solver serves all.
      if (!value.is_string()) throw ConfigError("solver must be a string");
    } else {
      throw ConfigError("unknown logistic parameter '" + key + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

SoftmaxLoss::SoftmaxLoss(const Matrix& X, const Labels& y, int n_classes, Vector weights,
                         double l2)
    : X_(X), w_(std::move(weights)), n_classes_(n_classes), l2_(l2) {
  Y_ = Matrix::Zero(X.rows(), n_classes);
  for (size_t i = 0; i < y.size(); ++i) Y_(static_cast<Eigen::Index>(i), y[i]) = 1.0;
}

double SoftmaxLoss::Value(const Vector& theta) const {
  return ValueAndGradient(theta, nullptr);
}

double SoftmaxLoss::ValueAndGradient(const Vector& theta, Vector* grad) const {
  const Eigen::Index p = X_.cols();
  const Eigen::Index n = X_.rows();
  Eigen::Map<const Matrix> T(theta.data(), p + 1, n_classes_);
  Matrix Z = X_ * T.topRows(p);
  Z.rowwise() += T.row(p);
  double loss = 0.0;
  Matrix R(n, n_classes_);  // w_i * (P - Y)
  Vector e(n_classes_);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = Z.row(i).maxCoeff();
    double s = 0.0;
    for (int c = 0; c < n_classes_; ++c) {
      e[c] = std::exp(Z(i, c) - m);
      s += e[c];
    }
    const double lse = m + std::log(s);
    double zy = 0.0;
    for (int c = 0; c < n_classes_; ++c) {
      R(i, c) = w_[i] * (e[c] / s - Y_(i, c));
      zy += Y_(i, c) * Z(i, c);
    }
    loss += w_[i] * (lse - zy);
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const auto Wt = T.topRows(p);
  loss = inv_n * (loss + 0.5 * l2_ * Wt.squaredNorm());
  if (grad) {
    grad->resize(theta.size());
    Eigen::Map<Matrix> G(grad->data(), p + 1, n_classes_);
    G.topRows(p) = inv_n * (X_.transpose() * R + l2_ * Wt);
    G.row(p) = inv_n * R.colwise().sum();
  }
  return loss;
}

void SoftmaxRegression::Fit(const Matrix& X, const Labels& y) {
  const int C = CheckFitInputs(X, y);
  const Eigen::Index p = X.cols();
  Vector w = cfg_.class_weight == ClassWeight::kBalanced
                 ? BalancedWeights(y, C)
                 : Vector::Ones(static_cast<Eigen::Index>(y.size()));
  const double l2 = cfg_.penalty == Penalty::kL2 ? 1.0 / cfg_.C : 0.0;
  SoftmaxLoss loss(X, y, C, std::move(w), l2);
  GdOptions opts;
  opts.max_iter = cfg_.max_iter;
  opts.tol = cfg_.tol;
  auto objective = [&](const Vector& theta, Vector* g) { return loss.ValueAndGradient(theta, g); };
  GdResult r = MinimizeGradientDescent(objective, Vector::Zero(loss.dim()), opts);
  Eigen::Map<const Matrix> T(r.x.data(), p + 1, C);
  W_ = T.topRows(p);
  b_ = T.row(p).transpose();
  converged_ = r.converged;
  iterations_ = r.iterations;
  SetShape(C, static_cast<int>(p));
}

Matrix SoftmaxRegression::DecisionScores(const Matrix& X) const {
  CheckPredictInput(X);
  Matrix Z = X * W_;
  Z.rowwise() += b_.transpose();
  return Z;
}

Matrix SoftmaxRegression::PredictProba(const Matrix& X) const {
  return SoftmaxRows(DecisionScores(X));
}

nlohmann::ordered_json SoftmaxRegression::State() const {
  nlohmann::ordered_json j;
  j["weights"] = MatrixToJson(W_);
  j["intercepts"] = VectorToJson(b_);
  j["converged"] = converged_;
  j["iterations"] = iterations_;
  return j;
}

void SoftmaxRegression::LoadState(const nlohmann::json& state) {
  b_ = VectorFromJson(state.at("intercepts"));
  const Eigen::Index C = b_.size();
  W_ = MatrixFromJson(state.at("weights"), C);
  const Eigen::Index p = W_.rows();
  converged_ = state.value("converged", false);
  iterations_ = state.value("iterations", 0);
  SetShape(static_cast<int>(C), static_cast<int>(p));
}

void BinaryLogistic::Fit(const Matrix& X, const std::vector<int>& y01) {
  if (static_cast<size_t>(X.rows()) != y01.size()) throw DataError("X and y differ in length");
  bool has0 = false;
  bool has1 = false;
  for (int v : y01) {
    if (v != 0 && v != 1) throw DataError("binary labels must be 0 or 1");
    (v ? has1 : has0) = true;
  }
  if (!has0 || !has1) throw DataError("binary logistic needs both labels present");
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  Vector sw = cfg_.class_weight == ClassWeight::kBalanced ? BalancedWeights(y01, 2)
                                                          : Vector::Ones(n);
  Vector s(n);
  for (Eigen::Index i = 0; i < n; ++i) s[i] = y01[i] ? 1.0 : -1.0;
  const double l2 = cfg_.penalty == Penalty::kL2 ? 1.0 / cfg_.C : 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  auto objective = [&](const Vector& theta, Vector* g) {
    const auto w = theta.head(p);
    const double b = theta[p];
    Vector z = X * w;
    z.array() += b;
    double loss = 0.0;
    Vector r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      loss += sw[i] * Softplus(-s[i] * z[i]);
      r[i] = -sw[i] * s[i] * Sigmoid(-s[i] * z[i]);
    }
    loss = inv_n * (loss + 0.5 * l2 * w.squaredNorm());
    g->resize(p + 1);
    g->head(p) = inv_n * (X.transpose() * r + l2 * w);
    (*g)[p] = inv_n * r.sum();
    return loss;
  };
  GdOptions opts;
  opts.max_iter = cfg_.max_iter;
  opts.tol = cfg_.tol;
  GdResult res = MinimizeGradientDescent(objective, Vector::Zero(p + 1), opts);
  w_ = res.x.head(p);
  b_ = res.x[p];
  converged_ = res.converged;
}

Vector BinaryLogistic::Decision(const Matrix& X) const {
  if (X.cols() != w_.size()) throw DataError("binary logistic feature count mismatch");
  Vector z = X * w_;
  z.array() += b_;
  return z;
}

Vector BinaryLogistic::Probability(const Matrix& X) const {
  Vector z = Decision(X);
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = Sigmoid(z[i]);
  return z;
}

nlohmann::ordered_json BinaryLogistic::State() const {
  nlohmann::ordered_json j;
  j["weights"] = VectorToJson(w_);
  j["intercept"] = b_;
  j["converged"] = converged_;
  return j;
}

void BinaryLogistic::LoadState(const nlohmann::json& state) {
  w_ = VectorFromJson(state.at("weights"));
  b_ = state.at("intercept").get<double>();
  converged_ = state.value("converged", false);
}

}  // namespace tabml
