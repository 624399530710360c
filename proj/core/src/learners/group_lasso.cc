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

#include "tabml/learners/group_lasso.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "json_util.h"
#include "tabml/errors.h"

namespace tabml {
namespace {

struct Standardizer {
  Vector mean;
  Vector scale;  // 0 marks a constant column.

  static Standardizer Fit(const Matrix& X, bool enabled) {
    Standardizer s;
    const Eigen::Index p = X.cols();
    s.mean = Vector::Zero(p);
    s.scale = Vector::Ones(p);
    const double n = static_cast<double>(X.rows());
    for (Eigen::Index j = 0; j < p; ++j) {
      const double m = X.col(j).mean();
      const double var = (X.col(j).array() - m).square().sum() / n;
      if (var <= 0.0) {
        s.mean[j] = m;
        s.scale[j] = 0.0;
        continue;
      }
      if (enabled) {
        s.mean[j] = m;
        s.scale[j] = std::sqrt(var);
      }
    }
    return s;
  }

  Matrix Apply(const Matrix& X) const {
    Matrix Z(X.rows(), X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      if (scale[j] == 0.0) {
        Z.col(j).setZero();
      } else {
        Z.col(j) = (X.col(j).array() - mean[j]) / scale[j];
      }
    }
    return Z;
  }

  // Converts standardised-space coefficients back to the original scale.
  void Unscale(const Matrix& Wz, const Vector& bz, Matrix* W, Vector* b) const {
    *W = Matrix::Zero(Wz.rows(), Wz.cols());
    *b = bz;
    for (Eigen::Index j = 0; j < Wz.rows(); ++j) {
      if (scale[j] == 0.0) continue;
      W->row(j) = Wz.row(j) / scale[j];
      *b -= mean[j] * W->row(j).transpose();
    }
  }
};

Vector LogPriors(const Labels& y, int n_classes) {
  Vector b = Vector::Zero(n_classes);
  for (int v : y) b[v] += 1.0;
  for (int c = 0; c < n_classes; ++c) b[c] = std::log(b[c] / static_cast<double>(y.size()));
  return b;
}

double GroupNormSum(const Matrix& W) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < W.rows(); ++j) s += W.row(j).norm();
  return s;
}

// Packs [W; b^T] column-major.
Vector Pack(const Matrix& W, const Vector& b) {
  const Eigen::Index p = W.rows();
  const Eigen::Index C = W.cols();
  Vector theta((p + 1) * C);
  Eigen::Map<Matrix> T(theta.data(), p + 1, C);
  T.topRows(p) = W;
  T.row(p) = b.transpose();
  return theta;
}

// Block soft-thresholding of the feature rows; the intercept row is left as is.
// The relative slack keeps a block at exactly lambda_max (equal up to
// rounding) at zero.
void Prox(Vector* theta, Eigen::Index p, int C, double threshold) {
  Eigen::Map<Matrix> T(theta->data(), p + 1, C);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double norm = T.row(j).norm();
    if (norm <= threshold * (1.0 + 1e-10)) {
      T.row(j).setZero();
    } else {
      T.row(j) *= 1.0 - threshold / norm;
    }
  }
}

// Mean multinomial log-loss on standardised features, evaluated through the
// linear predictor Eta = Z W + 1 b^T. FISTA's extrapolation is linear in the
// parameters, so Eta at the extrapolated point is formed from cached
// predictors and each iteration reads Z twice rather than three times.
class LinearSoftmax {
 public:
  LinearSoftmax(const Matrix& Z, const Labels& y, int C) : Z_(Z), y_(y), C_(C) {}

  Matrix Eta(const Vector& theta) const {
    const Eigen::Index p = Z_.cols();
    Eigen::Map<const Matrix> T(theta.data(), p + 1, C_);
    Matrix eta = Z_ * T.topRows(p);
    eta.rowwise() += T.row(p);
    return eta;
  }

  double Value(const Matrix& eta) const {
    double total = 0.0;
    for (Eigen::Index i = 0; i < eta.rows(); ++i) {
      const double m = eta.row(i).maxCoeff();
      total += m + std::log((eta.row(i).array() - m).exp().sum()) - eta(i, y_[i]);
    }
    return total / static_cast<double>(eta.rows());
  }

  double ValueAndGradient(const Matrix& eta, Vector* grad) const {
    const Eigen::Index n = eta.rows();
    const Eigen::Index p = Z_.cols();
    const double inv_n = 1.0 / static_cast<double>(n);
    Matrix R(n, C_);
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double m = eta.row(i).maxCoeff();
      const auto e = (eta.row(i).array() - m).exp().eval();
      const double s = e.sum();
      total += m + std::log(s) - eta(i, y_[i]);
      R.row(i) = (e / s) * inv_n;
      R(i, y_[i]) -= inv_n;
    }
    grad->resize((p + 1) * C_);
    Eigen::Map<Matrix> G(grad->data(), p + 1, C_);
    G.topRows(p).noalias() = Z_.transpose() * R;
    G.row(p) = R.colwise().sum();
    return total * inv_n;
  }

 private:
  const Matrix& Z_;
  const Labels& y_;
  int C_;
};

struct FistaResult {
  Vector theta;
  double lipschitz = 1.0;
  int iterations = 0;
  bool converged = false;
};

FistaResult Fista(const LinearSoftmax& loss, Eigen::Index p, int C, double lambda, Vector x,
                  double lipschitz, const LassoConfig& cfg) {
  auto penalty = [&](const Vector& th) {
    Eigen::Map<const Matrix> T(th.data(), p + 1, C);
    return lambda * GroupNormSum(T.topRows(p));
  };
  FistaResult res;
  Vector y = x;
  Matrix eta_x = loss.Eta(x);
  Matrix eta_y = eta_x;
  double t = 1.0;
  double F_x = loss.Value(eta_x) + penalty(x);
  Vector g;
  double L = lipschitz;
  for (res.iterations = 0; res.iterations < cfg.max_iter; ++res.iterations) {
    const double f_y = loss.ValueAndGradient(eta_y, &g);
    Vector z;
    Matrix eta_z;
    double f_z = 0.0;
    while (true) {
      z = y - g / L;
      Prox(&z, p, C, lambda / L);
      const Vector d = z - y;
      eta_z = loss.Eta(z);
      f_z = loss.Value(eta_z);
      if (f_z <= f_y + g.dot(d) + 0.5 * L * d.squaredNorm() + 1e-12 * std::fabs(f_y)) break;
      L *= 2.0;
      if (L > 1e20) throw NumericError("group lasso line search failed to find a step");
    }
    const double F_z = f_z + penalty(z);
    const double change = (z - x).cwiseAbs().maxCoeff();
    if (F_z > F_x) {
      // Momentum overshoot: restart from the last iterate.
      y = x;
      eta_y = eta_x;
      t = 1.0;
      if (change < cfg.tol) {
        res.converged = true;
        break;
      }
      continue;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / t_next;
    y = z + beta * (z - x);
    eta_y = eta_z + beta * (eta_z - eta_x);
    t = t_next;
    x = std::move(z);
    eta_x = std::move(eta_z);
    F_x = F_z;
    if (change < cfg.tol) {
      res.converged = true;
      break;
    }
  }
  res.theta = std::move(x);
  res.lipschitz = L;
  return res;
}

std::vector<LassoFit> FitPathStandardized(const Matrix& Z, const Standardizer& st,
                                          const Labels& y, int C,
                                          const std::vector<double>& lambdas,
                                          const LassoConfig& cfg, double dev_ratio_tol) {
  const Eigen::Index p = Z.cols();
  LinearSoftmax loss(Z, y, C);
  Vector theta = Pack(Matrix::Zero(p, C), LogPriors(y, C));
  // Deviance is proportional to the mean loss; only ratios are used.
  const double null_loss = loss.Value(loss.Eta(theta));
  double prev_ratio = 0.0;
  double L = 1.0;
  std::vector<LassoFit> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) {
    FistaResult r = Fista(loss, p, C, lambda, theta, L, cfg);
    theta = r.theta;
    L = std::max(1e-3, r.lipschitz * 0.5);
    Eigen::Map<const Matrix> T(theta.data(), p + 1, C);
    LassoFit fit;
    st.Unscale(T.topRows(p), T.row(p).transpose(), &fit.W, &fit.b);
    fit.iterations = r.iterations;
    fit.converged = r.converged;
    out.push_back(std::move(fit));
    if (dev_ratio_tol > 0.0 && null_loss > 0.0) {
      const double ratio = 1.0 - loss.Value(loss.Eta(theta)) / null_loss;
      // glmnet's rule, with its minimum of five path points.
      if (out.size() >= 5 && (ratio - prev_ratio < dev_ratio_tol * ratio || ratio > 0.999)) break;
      prev_ratio = ratio;
    }
  }
  return out;
}

Matrix Scores(const Matrix& X, const Matrix& W, const Vector& b) {
  Matrix S = X * W;
  S.rowwise() += b.transpose();
  return S;
}

}  // namespace

int LassoFit::nonzero() const {
  int n = 0;
  for (Eigen::Index j = 0; j < W.rows(); ++j) n += W.row(j).squaredNorm() > 0.0 ? 1 : 0;
  return n;
}

void LassoConfig::Validate() const {
  if (lambda && !(*lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
  if (n_lambda < 1) throw ConfigError("n_lambda must be at least 1");
  if (!(lambda_min_ratio > 0.0 && lambda_min_ratio < 1.0)) {
    throw ConfigError("lambda_min_ratio must lie in (0, 1)");
  }
  for (size_t i = 1; i < lambda_path.size(); ++i) {
    if (!(lambda_path[i] < lambda_path[i - 1])) throw ConfigError("lambda_path must be decreasing");
  }
  if (max_iter < 1 || !(tol > 0.0)) throw ConfigError("invalid lasso iteration settings");
  if (cv_folds < 2) throw ConfigError("cv_folds must be at least 2");
  if (!(dev_ratio_tol >= 0.0)) throw ConfigError("dev_ratio_tol must be non-negative");
}

nlohmann::ordered_json LassoConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["lambda"] = lambda ? nlohmann::ordered_json(*lambda) : nlohmann::ordered_json("auto");
  if (!lambda_path.empty()) j["lambda_path"] = lambda_path;
  j["n_lambda"] = n_lambda;
  j["lambda_min_ratio"] = lambda_min_ratio;
  j["standardize"] = standardize;
  j["max_iter"] = max_iter;
  j["tol"] = tol;
  j["cv_folds"] = cv_folds;
  j["dev_ratio_tol"] = dev_ratio_tol;
  j["rule"] = rule == LambdaRule::kMinError ? "min" : "1se";
  return j;
}

LassoConfig LassoConfig::FromJson(const nlohmann::json& j) {
  LassoConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "lambda") {
      if (value.is_null() || value == "auto") {
        cfg.lambda.reset();
      } else {
        cfg.lambda = value.get<double>();
      }
    } else if (key == "lambda_path") {
      cfg.lambda_path = value.get<std::vector<double>>();
    } else if (key == "n_lambda") {
      cfg.n_lambda = value.get<int>();
    } else if (key == "lambda_min_ratio") {
      cfg.lambda_min_ratio = value.get<double>();
    } else if (key == "standardize") {
      cfg.standardize = value.get<bool>();
    } else if (key == "max_iter") {
      cfg.max_iter = value.get<int>();
    } else if (key == "tol") {
      cfg.tol = value.get<double>();
    } else if (key == "cv_folds") {
      cfg.cv_folds = value.get<int>();
    } else if (key == "dev_ratio_tol") {
      cfg.dev_ratio_tol = value.get<double>();
    } else if (key == "rule") {
      if (value == "min") {
        cfg.rule = LambdaRule::kMinError;
      } else if (value == "1se") {
        cfg.rule = LambdaRule::kOneStandardError;
      } else {
        throw ConfigError("lasso rule must be \"min\" or \"1se\"");
      }
    } else {
      throw ConfigError("unknown lasso parameter '" + key + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

double GroupLassoLambdaMax(const Matrix& X, const Labels& y, int n_classes, bool standardize) {
  const Standardizer st = Standardizer::Fit(X, standardize);
  const Matrix Z = st.Apply(X);
  const Vector priors = LogPriors(y, n_classes).array().exp();
  Matrix R(Z.rows(), n_classes);
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    R.row(i) = priors.transpose();
    R(i, y[i]) -= 1.0;
  }
  const Matrix G = Z.transpose() * R / static_cast<double>(Z.rows());
  double lmax = 0.0;
  for (Eigen::Index j = 0; j < G.rows(); ++j) lmax = std::max(lmax, G.row(j).norm());
  return lmax;
}

std::vector<double> MakeLambdaPath(double lambda_max, int n, double ratio) {
  if (!(lambda_max > 0.0)) throw NumericError("lambda_max is zero: no feature carries signal");
  std::vector<double> path(n);
  if (n == 1) return {lambda_max};
  const double step = std::log(ratio) / (n - 1);
  for (int k = 0; k < n; ++k) path[k] = lambda_max * std::exp(step * k);
  path.back() = lambda_max * ratio;
  return path;
}

std::vector<LassoFit> FitGroupLassoPath(const Matrix& X, const Labels& y, int n_classes,
                                        const std::vector<double>& lambdas,
                                        const LassoConfig& cfg) {
  if (lambdas.empty()) throw ConfigError("empty lambda path");
  const Standardizer st = Standardizer::Fit(X, cfg.standardize);
  return FitPathStandardized(st.Apply(X), st, y, n_classes, lambdas, cfg, 0.0);
}

void GroupLassoRegression::Fit(const Matrix& X, const Labels& y) {
  const int C = CheckFitInputs(X, y);
  if (cfg_.lambda) {
    auto fits = FitGroupLassoPath(X, y, C, {*cfg_.lambda}, cfg_);
    W_ = fits[0].W;
    b_ = fits[0].b;
    lambda_ = *cfg_.lambda;
    path_ = {{lambda_, fits[0].nonzero(), 0.0, 0.0}};
    SetShape(C, static_cast<int>(X.cols()));
    return;
  }
  FitWithFolds(X, y, StratifiedKFold(y, cfg_.cv_folds, seed_, true));
}

void GroupLassoRegression::FitWithFolds(const Matrix& X, const Labels& y, const FoldPlan& folds) {
  const int C = CheckFitInputs(X, y);
  if (folds.n != y.size()) throw ConfigError("fold plan does not match the training rows");
  std::vector<double> lambdas = cfg_.lambda_path;
  if (lambdas.empty()) {
    lambdas = MakeLambdaPath(GroupLassoLambdaMax(X, y, C, cfg_.standardize), cfg_.n_lambda,
                             cfg_.lambda_min_ratio);
  }
  std::vector<LassoFit> full;
  if (cfg_.lambda_path.empty()) {
    const Standardizer st = Standardizer::Fit(X, cfg_.standardize);
    full = FitPathStandardized(st.Apply(X), st, y, C, lambdas, cfg_, cfg_.dev_ratio_tol);
    lambdas.resize(full.size());
  } else {
    full = FitGroupLassoPath(X, y, C, lambdas, cfg_);
  }
  const size_t m = lambdas.size();

  // errors_by_fold[f][k]: validation misclassification of fold f at lambda k.
  std::vector<std::vector<double>> errors_by_fold(folds.k);
  std::vector<std::exception_ptr> failures(folds.k);
  auto run_fold = [&](int f) {
    try {
      const auto train = folds.TrainIndices(f);
      const auto& val = folds.folds[f];
      Matrix Xt(static_cast<Eigen::Index>(train.size()), X.cols());
      Labels yt(train.size());
      for (size_t i = 0; i < train.size(); ++i) {
        Xt.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(train[i]));
        yt[i] = y[train[i]];
      }
      Matrix Xv(static_cast<Eigen::Index>(val.size()), X.cols());
      for (size_t i = 0; i < val.size(); ++i) {
        Xv.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(val[i]));
      }
      const auto fits = FitGroupLassoPath(Xt, yt, C, lambdas, cfg_);
      for (size_t k = 0; k < m; ++k) {
        const Labels pred = ArgmaxRows(Scores(Xv, fits[k].W, fits[k].b));
        size_t wrong = 0;
        for (size_t i = 0; i < val.size(); ++i) wrong += pred[i] != y[val[i]] ? 1 : 0;
        errors_by_fold[f].push_back(static_cast<double>(wrong) / static_cast<double>(val.size()));
      }
    } catch (...) {
      failures[f] = std::current_exception();
    }
  };
  const int workers = std::max(1, std::min<int>(folds.k, static_cast<int>(std::thread::hardware_concurrency())));
  if (workers == 1) {
    for (int f = 0; f < folds.k; ++f) run_fold(f);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int f = w; f < folds.k; f += workers) run_fold(f);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<std::vector<double>> errors(m);
  for (int f = 0; f < folds.k; ++f) {
    for (size_t k = 0; k < m; ++k) errors[k].push_back(errors_by_fold[f][k]);
  }
  path_.clear();
  for (size_t k = 0; k < m; ++k) {
    LassoPathPoint pt;
    pt.lambda = lambdas[k];
    pt.nonzero = full[k].nonzero();
    const double kf = static_cast<double>(errors[k].size());
    for (double e : errors[k]) pt.cv_error += e / kf;
    double ss = 0.0;
    for (double e : errors[k]) ss += (e - pt.cv_error) * (e - pt.cv_error);
    pt.cv_se = kf > 1 ? std::sqrt(ss / (kf - 1) / kf) : 0.0;
    path_.push_back(pt);
  }
  size_t best = 0;
  for (size_t k = 1; k < m; ++k) {
    if (path_[k].cv_error < path_[best].cv_error) best = k;
  }
  if (cfg_.rule == LambdaRule::kOneStandardError) {
    const double bound = path_[best].cv_error + path_[best].cv_se;
    for (size_t k = 0; k <= best; ++k) {
      if (path_[k].cv_error <= bound) {
        best = k;
        break;
      }
    }
  }
  W_ = full[best].W;
  b_ = full[best].b;
  lambda_ = lambdas[best];
  SetShape(C, static_cast<int>(X.cols()));
}

Matrix GroupLassoRegression::DecisionScores(const Matrix& X) const {
  CheckPredictInput(X);
  return Scores(X, W_, b_);
}

Matrix GroupLassoRegression::PredictProba(const Matrix& X) const {
  return SoftmaxRows(DecisionScores(X));
}

std::vector<int> GroupLassoRegression::nonzero_features() const {
  std::vector<int> out;
  for (Eigen::Index j = 0; j < W_.rows(); ++j) {
    if (W_.row(j).squaredNorm() > 0.0) out.push_back(static_cast<int>(j));
  }
  return out;
}

nlohmann::ordered_json GroupLassoRegression::Params() const {
  auto j = cfg_.ToJson();
  j["seed"] = seed_;
  return j;
}

nlohmann::ordered_json GroupLassoRegression::State() const {
  nlohmann::ordered_json j;
  j["lambda"] = lambda_;
  j["weights"] = internal::MatrixToJson(W_);
  j["intercepts"] = internal::VectorToJson(b_);
  j["nonzero_features"] = nonzero_features();
  j["path"] = nlohmann::ordered_json::array();
  for (const auto& pt : path_) {
    j["path"].push_back({{"lambda", pt.lambda},
                         {"nonzero", pt.nonzero},
                         {"cv_error", pt.cv_error},
                         {"cv_se", pt.cv_se}});
  }
  return j;
}

void GroupLassoRegression::LoadState(const nlohmann::json& state) {
  lambda_ = state.at("lambda").get<double>();
  b_ = internal::VectorFromJson(state.at("intercepts"));
  W_ = internal::MatrixFromJson(state.at("weights"), b_.size());
  path_.clear();
  for (const auto& pt : state.value("path", nlohmann::json::array())) {
    path_.push_back({pt.at("lambda").get<double>(), pt.at("nonzero").get<int>(),
                     pt.at("cv_error").get<double>(), pt.at("cv_se").get<double>()});
  }
  SetShape(static_cast<int>(b_.size()), static_cast<int>(W_.rows()));
}

}  // namespace tabml
