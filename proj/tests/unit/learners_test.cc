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

#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "oracles.h"
#include "tabml/errors.h"
#include "tabml/learners/binned.h"
#include "tabml/learners/decision_tree.h"
#include "tabml/learners/gradient_boosting.h"
#include "tabml/learners/grid_search.h"
#include "tabml/learners/group_lasso.h"
#include "tabml/learners/logistic.h"
#include "tabml/learners/one_vs_rest.h"
#include "tabml/learners/optimizer.h"
#include "tabml/learners/random_forest.h"
#include "tabml/learners/registry.h"
#include "tabml/rng.h"

namespace tabml {
namespace {

struct Blobs {
  Matrix X;
  Labels y;
};

// C Gaussian clusters in p dimensions; class c is shifted by `sep` along
// coordinate c % p. Extra columns are noise.
Blobs MakeBlobs(int n, int p, int C, double sep, uint64_t seed) {
  Rng rng(seed);
  Blobs b{Matrix(n, p), Labels(n)};
  for (int i = 0; i < n; ++i) {
    b.y[i] = i % C;
    for (int j = 0; j < p; ++j) b.X(i, j) = rng.Normal();
    b.X(i, b.y[i] % p) += sep;
  }
  return b;
}

double Accuracy(const Labels& a, const Labels& b) {
  int hit = 0;
  for (size_t i = 0; i < a.size(); ++i) hit += a[i] == b[i] ? 1 : 0;
  return static_cast<double>(hit) / a.size();
}

void ExpectRowsAreDistributions(const Matrix& P) {
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    EXPECT_NEAR(P.row(i).sum(), 1.0, 1e-9);
    EXPECT_GE(P.row(i).minCoeff(), 0.0);
  }
}

TEST(ModelUtilsTest, ArgmaxSoftmaxWeights) {
  Matrix M(2, 3);
  M << 1, 3, 3, 5, 0, 1;
  EXPECT_EQ(ArgmaxRows(M), (Labels{1, 0}));
  Matrix Z(1, 2);
  Z << 1000, 1000;
  EXPECT_NEAR(SoftmaxRows(Z)(0, 0), 0.5, 1e-15);
  const Vector w = BalancedWeights({0, 0, 0, 1}, 2);
  EXPECT_NEAR(w[0], 4.0 / 6.0, 1e-15);
  EXPECT_NEAR(w[3], 2.0, 1e-15);
  Matrix X = Matrix::Zero(3, 1);
  EXPECT_THROW(CheckFitInputs(X, {0, 2, 2}), DataError);
  EXPECT_THROW(CheckFitInputs(X, {0, 1}), DataError);
  X(0, 0) = NAN;
  EXPECT_THROW(CheckFitInputs(X, {0, 1, 1}), DataError);
}

TEST(SoftmaxLossTest, GradientMatchesFiniteDifferences) {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const Blobs b = MakeBlobs(40, 4, 3, 1.0, seed);
    Rng rng(seed * 7);
    Vector w(40);
    for (int i = 0; i < 40; ++i) w[i] = 0.5 + rng.UniformDouble();
    const SoftmaxLoss loss(b.X, b.y, 3, w, seed % 2 ? 1.0 : 0.0);
    Vector theta(loss.dim());
    for (Eigen::Index k = 0; k < theta.size(); ++k) theta[k] = rng.Normal() * 0.5;
    Vector grad;
    loss.ValueAndGradient(theta, &grad);
    const Vector fd = testing::CentralDifferences([&](const Vector& t) { return loss.Value(t); }, theta, 1e-5);
    EXPECT_LT((grad - fd).norm() / std::max(1e-12, fd.norm()), 1e-5) << "seed " << seed;
  }
}

TEST(OptimizerTest, MinimizesQuadratic) {
  const Objective f = [](const Vector& x, Vector* g) {
    *g = Vector(2);
    (*g)[0] = 2 * (x[0] - 3);
    (*g)[1] = 20 * (x[1] + 1);
    return (x[0] - 3) * (x[0] - 3) + 10 * (x[1] + 1) * (x[1] + 1);
  };
  const GdResult r = MinimizeGradientDescent(f, Vector::Zero(2), {});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 3, 1e-6);
  EXPECT_NEAR(r.x[1], -1, 1e-6);
}

TEST(SoftmaxRegressionTest, FitsSeparableBlobs) {
  const Blobs b = MakeBlobs(300, 3, 3, 4.0, 2);
  SoftmaxRegression lr;
  lr.Fit(b.X, b.y);
  EXPECT_TRUE(lr.converged());
  EXPECT_GT(Accuracy(lr.Predict(b.X), b.y), 0.95);
  ExpectRowsAreDistributions(lr.PredictProba(b.X));
}

TEST(SoftmaxRegressionTest, StationaryPointOfObjective) {
  const Blobs b = MakeBlobs(120, 3, 3, 1.0, 4);
  LrConfig cfg;
  cfg.tol = 1e-9;
  cfg.max_iter = 5000;
  SoftmaxRegression lr(cfg);
  lr.Fit(b.X, b.y);
  Vector theta(4 * 3);
  Matrix packed(4, 3);
  packed.topRows(3) = lr.weights();
  packed.row(3) = lr.intercepts().transpose();
  theta = Eigen::Map<const Vector>(packed.data(), packed.size());
  const SoftmaxLoss loss(b.X, b.y, 3, Vector::Ones(120), 1.0 / cfg.C);
  Vector g;
  loss.ValueAndGradient(theta, &g);
  EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-7);
}

TEST(LrConfigTest, RejectsBadValues) {
  EXPECT_THROW(LrConfig::FromJson({{"penalty", "l1"}}), ConfigError);
  EXPECT_THROW(LrConfig::FromJson({{"gamma", 1}}), ConfigError);
  LrConfig c;
  c.C = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(BinnedTest, DistinctValuesAndThresholds) {
  Matrix X(4, 1);
  X << 3, 1, 3, 2;
  const BinnedFeatures bf = BinnedFeatures::Build(X);
  EXPECT_EQ(bf.values[0], (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(bf.bins[0], (std::vector<uint32_t>{2, 0, 2, 1}));
  EXPECT_DOUBLE_EQ(bf.Threshold(0, 0, 1), 1.5);
  X(0, 0) = INFINITY;
  EXPECT_THROW(BinnedFeatures::Build(X), DataError);
}

TEST(DecisionTreeTest, Example) {
  Matrix X(4, 1);
  X << 1, 2, 3, 4;
  DecisionTree t;
  t.Fit(X, {0, 0, 1, 1});
  const TreeNode& root = t.nodes()[0];
  ASSERT_FALSE(root.is_leaf());
  EXPECT_GE(root.threshold, 2.0);
  EXPECT_LT(root.threshold, 3.0);
  EXPECT_EQ(t.Predict(X), (Labels{0, 0, 1, 1}));
  EXPECT_EQ(t.depth(), 1);
  EXPECT_EQ(t.n_leaves(), 2);
}

TEST(DecisionTreeProperty, RootSplitIsGiniOptimal) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    const Blobs b = MakeBlobs(60, 3, 3, 1.0, seed);
    // Quantise so that ties and repeated values occur.
    const Matrix X = (b.X * 2).array().round().matrix();
    TreeConfig cfg;
    cfg.max_depth = 1;
    DecisionTree t(cfg);
    t.Fit(X, b.y);
    const auto oracle = testing::BestGiniSplit(X, b.y, 3);
    const TreeNode& root = t.nodes()[0];
    ASSERT_FALSE(root.is_leaf());
    // Weighted Gini of the tree's split.
    std::vector<double> l(3, 0.0);
    std::vector<double> r(3, 0.0);
    for (Eigen::Index i = 0; i < X.rows(); ++i) (X(i, root.feature) <= root.threshold ? l : r)[b.y[i]] += 1;
    auto gn = [](const std::vector<double>& c) {
      const double n = c[0] + c[1] + c[2];
      return n - (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]) / n;
    };
    EXPECT_NEAR(gn(l) + gn(r), oracle.weighted_gini, 1e-9) << "seed " << seed;
  }
}

TEST(DecisionTreeProperty, LeavesRespectMinSamplesAndDepth) {
  const Blobs b = MakeBlobs(200, 4, 3, 0.5, 3);
  TreeConfig cfg;
  cfg.max_depth = 4;
  cfg.min_samples_leaf = 7;
  DecisionTree t(cfg, 1);
  t.Fit(b.X, b.y);
  EXPECT_LE(t.depth(), 4);
  std::map<int, int> per_leaf;
  for (Eigen::Index i = 0; i < b.X.rows(); ++i) ++per_leaf[t.Apply(b.X, i)];
  EXPECT_EQ(static_cast<int>(per_leaf.size()), t.n_leaves());
  for (const auto& [leaf, n] : per_leaf) {
    EXPECT_TRUE(t.nodes()[leaf].is_leaf());
    EXPECT_GE(n, 7) << "leaf " << leaf;
  }
  ExpectRowsAreDistributions(t.PredictProba(b.X));
}

TEST(DecisionTreeTest, SingleClassIsRejected) {
  Matrix X(3, 1);
  X << 1, 2, 3;
  DecisionTree t;
  EXPECT_THROW(t.Fit(X, {0, 0, 0}), DataError);
}

TEST(MaxFeaturesTest, Resolve) {
  EXPECT_EQ(MaxFeatures::FromJson("sqrt").Resolve(96), 9);
  EXPECT_EQ(MaxFeatures::FromJson("sqrt").Resolve(1), 1);
  EXPECT_EQ(MaxFeatures::FromJson(nullptr).Resolve(5), 5);
  EXPECT_EQ(MaxFeatures::FromJson(3).Resolve(5), 3);
  EXPECT_THROW(MaxFeatures::FromJson(0), ConfigError);
}

TEST(RandomForestTest, SingleTreeWithoutBootstrapEqualsTree) {
  const Blobs b = MakeBlobs(150, 4, 3, 1.0, 5);
  ForestConfig fc;
  fc.n_estimators = 1;
  fc.bootstrap = false;
  fc.tree.max_features = MaxFeatures{};
  fc.tree.max_depth = 5;
  RandomForest f(fc, 9);
  f.Fit(b.X, b.y);
  DecisionTree t(fc.tree, 123);
  t.Fit(b.X, b.y);
  EXPECT_TRUE(f.PredictProba(b.X).isApprox(t.PredictProba(b.X), 0.0));
  EXPECT_EQ(f.Predict(b.X), t.Predict(b.X));
}

TEST(RandomForestTest, SeedDeterminismAndAccuracy) {
  const Blobs b = MakeBlobs(300, 5, 3, 3.0, 6);
  ForestConfig fc;
  fc.n_estimators = 25;
  RandomForest a(fc, 4);
  RandomForest c(fc, 4);
  a.Fit(b.X, b.y);
  c.Fit(b.X, b.y);
  EXPECT_EQ(a.ToJson().dump(), c.ToJson().dump());
  EXPECT_GT(Accuracy(a.Predict(b.X), b.y), 0.9);
  ExpectRowsAreDistributions(a.PredictProba(b.X));
  EXPECT_THROW(ForestConfig::FromJson({{"n_trees", 4}}), ConfigError);
}

TEST(GradientBoostingTest, ZeroLearningRateGivesPriors) {
  const Blobs b = MakeBlobs(90, 3, 3, 2.0, 7);
  Labels y = b.y;
  y[0] = 1;  // Uneven priors: 29 / 31 / 30.
  BoostConfig cfg;
  cfg.learning_rate = 0.0;
  cfg.n_estimators = 5;
  GradientBoosting g(cfg, 1);
  g.Fit(b.X, y);
  const Matrix P = g.PredictProba(b.X);
  const std::vector<double> prior = {29.0 / 90, 31.0 / 90, 30.0 / 90};
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(P(i, c), prior[c], 1e-12);
}

TEST(GradientBoostingTest, TrainingLossDecreasesAndFits) {
  const Blobs b = MakeBlobs(200, 4, 3, 2.0, 8);
  BoostConfig cfg;
  cfg.n_estimators = 30;
  cfg.max_depth = 3;
  cfg.colsample_bytree = 0.8;
  GradientBoosting g(cfg, 3);
  g.Fit(b.X, b.y);
  const auto& loss = g.train_loss();
  ASSERT_EQ(loss.size(), 30u);
  for (size_t i = 1; i < loss.size(); ++i) EXPECT_LE(loss[i], loss[i - 1] + 1e-12);
  EXPECT_EQ(g.trees().size(), 90u);
  EXPECT_GT(Accuracy(g.Predict(b.X), b.y), 0.9);
}

TEST(GroupLassoTest, HugeLambdaZeroesEveryBlock) {
  const Blobs b = MakeBlobs(120, 5, 3, 2.0, 9);
  const double lmax = GroupLassoLambdaMax(b.X, b.y, 3, true);
  LassoConfig cfg;
  cfg.lambda = lmax * 1.01;
  GroupLassoRegression m(cfg);
  m.Fit(b.X, b.y);
  EXPECT_TRUE(m.nonzero_features().empty());
  const Matrix P = m.PredictProba(b.X);
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(P(0, c), 40.0 / 120, 1e-6);
  cfg.lambda = 1e6;
  GroupLassoRegression huge(cfg);
  huge.Fit(b.X, b.y);
  EXPECT_TRUE(huge.nonzero_features().empty());
}

TEST(GroupLassoTest, JustBelowLambdaMaxSelectsSomething) {
  const Blobs b = MakeBlobs(120, 5, 3, 2.0, 10);
  const double lmax = GroupLassoLambdaMax(b.X, b.y, 3, true);
  LassoConfig cfg;
  cfg.lambda = lmax * 0.8;
  GroupLassoRegression m(cfg);
  m.Fit(b.X, b.y);
  EXPECT_FALSE(m.nonzero_features().empty());
}

TEST(GroupLassoTest, PathIsDecreasingAndSparsityGrowsWithLambda) {
  const Blobs b = MakeBlobs(150, 6, 3, 1.5, 11);
  const auto path = MakeLambdaPath(1.0, 10, 1e-3);
  ASSERT_EQ(path.size(), 10u);
  EXPECT_DOUBLE_EQ(path.front(), 1.0);
  EXPECT_NEAR(path.back(), 1e-3, 1e-15);
  LassoConfig cfg;
  cfg.cv_folds = 3;
  cfg.n_lambda = 15;
  cfg.dev_ratio_tol = 0.0;
  GroupLassoRegression m(cfg, 2);
  m.Fit(b.X, b.y);
  ASSERT_EQ(m.path().size(), 15u);
  // Path runs from large to small lambda.
  for (size_t i = 1; i < m.path().size(); ++i) {
    EXPECT_GT(m.path()[i - 1].lambda, m.path()[i].lambda);
    EXPECT_LE(m.path()[i - 1].nonzero, m.path()[i].nonzero) << "at " << i;
  }
  EXPECT_EQ(m.path().front().nonzero, 0);
  EXPECT_GT(Accuracy(m.Predict(b.X), b.y), 0.7);
  EXPECT_THROW(MakeLambdaPath(0.0, 5, 1e-3), NumericError);
}

TEST(GroupLassoTest, EarlyStopKeepsAPrefixOfTheFullPath) {
  const Blobs b = MakeBlobs(150, 6, 3, 1.5, 11);
  LassoConfig full_cfg;
  full_cfg.cv_folds = 3;
  full_cfg.n_lambda = 40;
  full_cfg.dev_ratio_tol = 0.0;
  LassoConfig stop_cfg = full_cfg;
  stop_cfg.dev_ratio_tol = 1e-2;
  GroupLassoRegression full(full_cfg, 2), stopped(stop_cfg, 2);
  full.Fit(b.X, b.y);
  stopped.Fit(b.X, b.y);
  ASSERT_EQ(full.path().size(), 40u);
  ASSERT_GE(stopped.path().size(), 5u);
  ASSERT_LT(stopped.path().size(), 40u);
  for (size_t i = 0; i < stopped.path().size(); ++i) {
    EXPECT_DOUBLE_EQ(stopped.path()[i].lambda, full.path()[i].lambda);
    EXPECT_EQ(stopped.path()[i].nonzero, full.path()[i].nonzero);
  }
}

TEST(OneVsRestTest, TwoClassesUseOneBinaryModel) {
  const Blobs b = MakeBlobs(100, 3, 2, 1.5, 12);
  LrConfig cfg;
  cfg.penalty = Penalty::kNone;
  cfg.class_weight = ClassWeight::kBalanced;
  OneVsRest ovr(cfg);
  ovr.Fit(b.X, b.y);
  ASSERT_EQ(ovr.binaries().size(), 1u);
  BinaryLogistic bl(cfg);
  bl.Fit(b.X, b.y);
  const Matrix S = ovr.DecisionScores(b.X);
  const Vector d = bl.Decision(b.X);
  for (Eigen::Index i = 0; i < S.rows(); ++i) {
    EXPECT_NEAR(S(i, 1), d[i], 1e-12);
    EXPECT_NEAR(S(i, 0), -d[i], 1e-12);
  }
  const Matrix P = ovr.PredictProba(b.X);
  const Vector p = bl.Probability(b.X);
  for (Eigen::Index i = 0; i < P.rows(); ++i) EXPECT_NEAR(P(i, 1), p[i], 1e-12);
}

TEST(OneVsRestTest, ThreeClassesRenormalise) {
  const Blobs b = MakeBlobs(150, 3, 3, 2.0, 13);
  OneVsRest ovr;
  ovr.Fit(b.X, b.y);
  EXPECT_EQ(ovr.binaries().size(), 3u);
  ExpectRowsAreDistributions(ovr.PredictProba(b.X));
  EXPECT_GT(Accuracy(ovr.Predict(b.X), b.y), 0.85);
}

class RoundTrip : public ::testing::TestWithParam<std::string> {};

TEST_P(RoundTrip, SerialisedModelPredictsIdentically) {
  const Blobs b = MakeBlobs(120, 4, 3, 1.5, 14);
  nlohmann::json params = nlohmann::json::object();
  if (GetParam() == "forest") params = {{"n_estimators", 5}};
  if (GetParam() == "gbt") params = {{"n_estimators", 5}, {"max_depth", 3}};
  if (GetParam() == "lasso") params = {{"lambda", 0.01}};
  auto model = MakeClassifier(GetParam(), params, 3);
  model->Fit(b.X, b.y);
  const std::string text = model->ToJson().dump();
  auto back = ClassifierFromJson(nlohmann::json::parse(text));
  EXPECT_EQ(back->family(), model->family());
  EXPECT_TRUE(back->PredictProba(b.X) == model->PredictProba(b.X));
  EXPECT_EQ(back->ToJson().dump(), text);
}

INSTANTIATE_TEST_SUITE_P(Families, RoundTrip,
                         ::testing::Values("lr", "ovr", "lasso", "tree", "forest", "gbt"));

TEST(RegistryTest, Errors) {
  EXPECT_THROW(MakeClassifier("svm", nlohmann::json::object(), 1), ConfigError);
  EXPECT_THROW(MakeClassifier("tree", {{"depth", 3}}, 1), ConfigError);
  EXPECT_THROW(MakeClassifier("gbt", {{"learning_rate", "fast"}}, 1), ConfigError);
  EXPECT_EQ(MakeClassifier("xgboost", nlohmann::json::object(), 1)->family(), "gbt");
  EXPECT_THROW(ClassifierFromJson({{"format", "other"}}), ConfigError);
}

TEST(GridSearchTest, ExpandGridIsRowMajor) {
  nlohmann::ordered_json grid;
  grid["a"] = {1, 2};
  grid["b"] = {"x", "y", "z"};
  const auto pts = ExpandGrid(grid, {{"c", 0}});
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts[0]["a"], 1);
  EXPECT_EQ(pts[0]["b"], "x");
  EXPECT_EQ(pts[1]["b"], "y");
  EXPECT_EQ(pts[3]["a"], 2);
  EXPECT_EQ(pts[5]["c"], 0);
}

TEST(GridSearchTest, PicksTheBetterDepth) {
  const Blobs b = MakeBlobs(200, 4, 3, 2.5, 15);
  nlohmann::ordered_json grid;
  grid["max_depth"] = {1, 4};
  const FoldPlan folds = StratifiedKFold(b.y, 3, 1);
  const GridSearchReport r = GridSearchCV("tree", grid, nlohmann::ordered_json::object(), folds, b.X, b.y, 1);
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_EQ(r.best_params()["max_depth"], 4);
  EXPECT_EQ(r.points[0].fold_scores.size(), 3u);
  EXPECT_DOUBLE_EQ(r.best_score(), r.points[1].mean_score);
  nlohmann::ordered_json bad;
  bad["max_depth"] = {0};
  EXPECT_THROW(GridSearchCV("tree", bad, nlohmann::ordered_json::object(), folds, b.X, b.y, 1), ConfigError);
}

}  // namespace
}  // namespace tabml
