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
#include <fstream>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.h"
#include "tabml/errors.h"
#include "tabml/rng.h"
#include "tabml/special_functions.h"
#include "tabml/stats.h"

namespace tabml {
namespace {

using testing::ChiSquareLonghand;

TEST(SpecialFunctionsTest, MatchesBoostIncompleteGamma) {
  for (double a : {0.5, 1.0, 2.0, 4.5, 8.0, 30.0, 200.0}) {
    for (double x : {0.0, 1e-3, 0.5, 1.0, 3.0, 10.0, 50.0, 300.0}) {
      const double q = boost::math::gamma_q(a, x);
      const double p = boost::math::gamma_p(a, x);
      EXPECT_NEAR(RegularizedGammaQ(a, x), q, 1e-13 + 1e-10 * q) << a << " " << x;
      EXPECT_NEAR(RegularizedGammaP(a, x), p, 1e-13 + 1e-10 * p) << a << " " << x;
    }
  }
}

TEST(SpecialFunctionsTest, ChiSquareSurvivalMatchesBoost) {
  for (int df : {1, 2, 4, 16, 60}) {
    boost::math::chi_squared dist(df);
    for (double s : {0.1, 1.0, 3.84, 20.0, 100.0, 400.0}) {
      const double q = boost::math::cdf(boost::math::complement(dist, s));
      EXPECT_NEAR(ChiSquareSurvival(s, df), q, 1e-300 + 1e-10 * q) << df << " " << s;
    }
  }
  EXPECT_NEAR(ChiSquareSurvival(3.841458820694124, 1), 0.05, 1e-12);
}

TEST(ChiSquareTest, TwoByTwoByHand) {
  // E = 15 everywhere; sum (5^2 / 15) * 4.
  const auto ct = ContingencyTable::FromCounts({{20, 10}, {10, 20}});
  const ChiSquareResult r = ChiSquareTest(ct);
  EXPECT_NEAR(r.statistic, 20.0 / 3.0, 1e-12);
  EXPECT_EQ(r.df, 1);
  EXPECT_DOUBLE_EQ(r.min_expected, 15.0);
  EXPECT_TRUE(r.assumption_ok);
}

TEST(ChiSquareTest, IndependentTableScoresZero) {
  const ChiSquareResult r = ChiSquareTest(ContingencyTable::FromCounts({{10, 20}, {30, 60}}));
  EXPECT_NEAR(r.statistic, 0.0, 1e-12);
  EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(ChiSquareTest, FlagsSmallExpectedCounts) {
  const ChiSquareResult r = ChiSquareTest(ContingencyTable::FromCounts({{1, 2}, {3, 40}}));
  EXPECT_FALSE(r.assumption_ok);
  EXPECT_GT(r.cells_below_5, 0);
}

TEST(ChiSquareTest, DegenerateTablesThrow) {
  EXPECT_THROW(ChiSquareTest(ContingencyTable::FromCounts({{1, 2}})), NumericError);
  EXPECT_THROW(ChiSquareTest(ContingencyTable::FromCounts({{1, 0}, {2, 0}})), NumericError);
  EXPECT_THROW(ChiSquareTest(ContingencyTable::FromCounts({{0, 0}, {2, 3}})), NumericError);
}

TEST(ChiSquareProperty, MatchesLonghandOnRandomTables) {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const size_t r = 2 + rng.Uniform(5);
    const size_t c = 2 + rng.Uniform(5);
    std::vector<std::vector<int64_t>> o(r, std::vector<int64_t>(c));
    for (auto& row : o)
      for (auto& v : row) v = 1 + static_cast<int64_t>(rng.Uniform(500));
    const ChiSquareResult got = ChiSquareTest(ContingencyTable::FromCounts(o));
    const auto want = ChiSquareLonghand(o);
    EXPECT_NEAR(got.statistic, want.statistic, 1e-9 * std::max(1.0, want.statistic));
    EXPECT_EQ(got.df, want.df);
    EXPECT_NEAR(got.min_expected, want.min_expected, 1e-9 * want.min_expected);
    EXPECT_GE(got.p_value, 0.0);
    EXPECT_LE(got.p_value, 1.0);
  }
}

TEST(ChiSquareProperty, PValueDecreasesWithStatistic) {
  for (int df : {1, 3, 8}) {
    double prev = 1.0;
    for (double s = 0.0; s < 80.0; s += 0.5) {
      const double p = ChiSquareSurvival(s, df);
      EXPECT_LE(p, prev);
      prev = p;
    }
  }
}

TEST(PublishedCrosstabs, StatisticsReproduce) {
  std::ifstream in(std::string(TABML_FIXTURE_DIR) + "/published_crosstabs.json");
  ASSERT_TRUE(in.good());
  const auto doc = nlohmann::json::parse(in);
  ASSERT_EQ(doc["tables"].size(), 17u);
  for (const auto& t : doc["tables"]) {
    ContingencyTable ct = ContingencyTable::FromCounts(t["counts"].get<std::vector<std::vector<int64_t>>>());
    const ChiSquareResult r = ChiSquareTest(ct);
    const std::string v = t["variable"];
    // Published to three decimals.
    EXPECT_NEAR(r.statistic, t["chi2"].get<double>(), 5.01e-4) << v;
    EXPECT_EQ(r.df, t["df"].get<int>()) << v;
    if (t.contains("min_expected")) {
      EXPECT_NEAR(r.min_expected, t["min_expected"].get<double>(), 5.01e-3) << v;
    }
    if (t.contains("p")) EXPECT_NEAR(r.p_value, t["p"].get<double>(), 5.01e-4) << v;
  }
}

TEST(CrosstabTest, CountsSortedLabelsAndSkipsMissing) {
  const Table t({"a", "b"},
                {Column::Categorical({std::string("y"), std::string("x"), std::nullopt, std::string("x")}),
                 Column::Numeric({1, 0, 1, 1})});
  const ContingencyTable ct = Crosstab(t, "a", "b");
  EXPECT_EQ(ct.row_labels, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(ct.col_labels, (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(ct.observed, (std::vector<std::vector<int64_t>>{{1, 1}, {0, 1}}));
  EXPECT_EQ(ct.total(), 3);
  const Table frac({"a", "b"}, {Column::Numeric({0.5, 1}), Column::Numeric({1, 1})});
  EXPECT_THROW(Crosstab(frac, "a", "b"), ConfigError);
}

TEST(EntropyTest, Examples) {
  EXPECT_NEAR(Entropy(std::vector<int64_t>{3, 1}), 0.8112781244591328, 1e-12);
  EXPECT_NEAR(Entropy(std::vector<double>{1, 1}), 1.0, 1e-15);
  EXPECT_EQ(Entropy(std::vector<double>{5, 0}), 0.0);
  EXPECT_THROW(Entropy(std::vector<double>{0, 0}), NumericError);
  EXPECT_THROW(Entropy(std::vector<double>{}), NumericError);
  EXPECT_THROW(Entropy(std::vector<double>{-1, 2}), NumericError);
}

TEST(InformationGainTest, Example) {
  EXPECT_NEAR(InformationGain(std::vector<int>{0, 0, 0, 1}, std::vector<int>{0, 0, 1, 1}),
              0.31127812445913283, 1e-12);
}

TEST(InformationGainProperty, IdentityAndBounds) {
  Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    const int nx = 1 + static_cast<int>(rng.Uniform(5));
    const int ny = 2 + static_cast<int>(rng.Uniform(4));
    const size_t n = 5 + rng.Uniform(200);
    std::vector<int> x(n);
    std::vector<int> y(n);
    for (size_t i = 0; i < n; ++i) {
      x[i] = static_cast<int>(rng.Uniform(nx));
      y[i] = rng.UniformDouble() < 0.5 ? x[i] % ny : static_cast<int>(rng.Uniform(ny));
    }
    const double ig = InformationGain(x, y);
    const ContingencyTable ct = CrosstabCodes(x, nx, y, ny);
    // IG = H(X) + H(Y) - H(X, Y).
    const double via_joint = testing::EntropyOfLabels(x) + testing::EntropyOfLabels(y) - JointEntropy(ct);
    EXPECT_NEAR(ig, via_joint, 1e-12);
    EXPECT_NEAR(ig, testing::InformationGainConditional(x, y), 1e-12);
    EXPECT_NEAR(ig, InformationGain(ct), 1e-12);
    EXPECT_GE(ig, -1e-12);
    EXPECT_LE(ig, std::min(testing::EntropyOfLabels(x), testing::EntropyOfLabels(y)) + 1e-12);
  }
}

TEST(ScoreFeatureTest, ConstantFeatureScoresZero) {
  Eigen::VectorXd x = Eigen::VectorXd::Ones(6);
  const std::vector<int> y = {0, 1, 2, 0, 1, 2};
  for (Scorer s : {Scorer::kChi2, Scorer::kChi2Occurrence, Scorer::kMutualInfo}) {
    const FeatureScore f = ScoreFeature("c", x, y, 3, s);
    EXPECT_EQ(f.score, 0.0) << ScorerName(s);
    if (f.p_value) EXPECT_EQ(*f.p_value, 1.0);
  }
}

TEST(ScoreFeatureTest, OccurrenceFormByHand) {
  // Class sums of x: [2, 0]; expected by class frequency [1, 1] -> chi2 = 2.
  Eigen::VectorXd x(4);
  x << 1, 1, 0, 0;
  const FeatureScore f = ScoreFeature("x", x, {0, 0, 1, 1}, 2, Scorer::kChi2Occurrence);
  EXPECT_NEAR(f.score, 2.0, 1e-12);
  ASSERT_TRUE(f.p_value.has_value());
  EXPECT_NEAR(*f.p_value, ChiSquareSurvival(2.0, 1), 1e-15);
}

TEST(ScorerTest, Names) {
  EXPECT_EQ(ScorerFromString("chi2"), Scorer::kChi2);
  EXPECT_EQ(ScorerFromString("chi2_occurrence"), Scorer::kChi2Occurrence);
  EXPECT_EQ(ScorerFromString("mutual_info"), Scorer::kMutualInfo);
  EXPECT_THROW(ScorerFromString("anova"), ConfigError);
}

TEST(SelectKBestTest, KeepsTopKInColumnOrder) {
  Eigen::MatrixXd X(8, 3);
  const std::vector<int> y = {0, 0, 0, 0, 1, 1, 1, 1};
  for (int i = 0; i < 8; ++i) {
    X(i, 0) = i % 2;         // Unrelated.
    X(i, 1) = y[i];          // Perfect.
    X(i, 2) = i < 5 ? 0 : 1;  // Partial.
  }
  const SelectionResult r = SelectKBest(X, {"a", "b", "c"}, y, 2, Scorer::kChi2, 2);
  EXPECT_EQ(r.selected, (std::vector<std::string>{"b", "c"}));
  EXPECT_EQ(r.ranking.front().feature, "b");
  EXPECT_THROW(SelectKBest(X, {"a", "b", "c"}, y, 2, Scorer::kChi2, 0), ConfigError);
  EXPECT_THROW(SelectKBest(X, {"a", "b", "c"}, y, 2, Scorer::kChi2, 4), ConfigError);
  const SelectionResult back = SelectionResult::FromJson(r.ToJson());
  EXPECT_EQ(back.selected, r.selected);
}

TEST(AssociationTest, MaskAndCounts) {
  Eigen::MatrixXd X(60, 2);
  std::vector<int> y(60);
  for (int i = 0; i < 60; ++i) {
    y[i] = i % 3;
    X(i, 0) = y[i] == 0 ? 1 : 0;  // Tied to class 0.
    X(i, 1) = (i / 3) % 2;        // Independent of y.
  }
  const AssociationMatrix m = ClassAssociationMatrix(X, {"f0", "f1"}, y, 3);
  EXPECT_EQ(m.targets, (std::vector<std::string>{"Mortality", "Class1", "Class2", "Class3"}));
  EXPECT_LT(m.masked_p(0, 0), AssociationMatrix::kAlpha);
  EXPECT_EQ(m.masked_p(1, 0), 1.0);
  EXPECT_EQ(m.associated_count(1), 1);
  const std::string csv = m.MaskedPValuesCsv();
  EXPECT_NE(csv.find("f1,1,1,1,1"), std::string::npos) << csv;
}

}  // namespace
}  // namespace tabml
