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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.h"
#include "tabml/errors.h"
#include "tabml/metrics.h"
#include "tabml/rng.h"

namespace tabml {
namespace {

TEST(ConfusionTest, CountsAndMarginals) {
  const ConfusionMatrix cm = ComputeConfusionMatrix({0, 1, 2, 0}, {0, 2, 2, 1}, 3);
  EXPECT_EQ(cm.counts, (std::vector<std::vector<int64_t>>{{1, 1, 0}, {0, 0, 1}, {0, 0, 1}}));
  EXPECT_EQ(cm.total(), 4);
  EXPECT_EQ(cm.fn(0), 1);
  EXPECT_EQ(cm.fp(2), 1);
  EXPECT_EQ(cm.tn(0), 2);
  EXPECT_NE(cm.ToCsv({"a", "b", "c"}).find("a,1,1,0"), std::string::npos);
  EXPECT_THROW(ComputeConfusionMatrix({0, 3}, {0, 1}, 3), ConfigError);
  EXPECT_THROW(ComputeConfusionMatrix({0}, {0, 1}, 3), ConfigError);
}

TEST(ReportTest, PerClassAndAverages) {
  const ConfusionMatrix cm = ConfusionMatrix::FromCounts({{8, 2}, {4, 6}});
  const ClassificationReport r = MakeClassificationReport(cm, {"neg", "pos"});
  EXPECT_DOUBLE_EQ(r.accuracy, 0.7);
  EXPECT_DOUBLE_EQ(r.per_class[0].precision, 8.0 / 12.0);
  EXPECT_DOUBLE_EQ(r.per_class[0].recall, 0.8);
  EXPECT_DOUBLE_EQ(r.per_class[1].precision, 0.75);
  EXPECT_NEAR(r.per_class[1].f1, 2 * 0.75 * 0.6 / 1.35, 1e-15);
  EXPECT_NEAR(r.macro.recall, 0.7, 1e-15);
  EXPECT_EQ(r.weighted.support, 20);
  EXPECT_FALSE(r.zero_division);
  EXPECT_NE(r.ToText().find("0.7000"), std::string::npos);
}

TEST(ReportTest, ZeroDivisionYieldsZero) {
  const ClassificationReport r = MakeClassificationReport(ConfusionMatrix::FromCounts({{5, 0}, {3, 0}}));
  EXPECT_EQ(r.per_class[1].precision, 0.0);
  EXPECT_TRUE(r.per_class[1].zero_division);
  EXPECT_TRUE(r.zero_division);
}

TEST(KappaTest, HandExample) {
  const KappaResult k = CohenKappa(std::vector<int>{0, 1, 2, 0}, std::vector<int>{0, 2, 2, 0});
  EXPECT_NEAR(k.po, 0.75, 1e-15);
  EXPECT_NEAR(k.pe, 0.375, 1e-15);
  EXPECT_NEAR(k.kappa, 0.6, 1e-12);
  EXPECT_EQ(k.band, "moderate");
}

TEST(KappaTest, Bands) {
  EXPECT_EQ(KappaBand(-0.1), "none");
  EXPECT_EQ(KappaBand(0.0), "none");
  EXPECT_EQ(KappaBand(0.2), "slight");
  EXPECT_EQ(KappaBand(0.2755), "fair");
  EXPECT_EQ(KappaBand(0.8), "substantial");
  EXPECT_EQ(KappaBand(0.95), "almost-perfect");
}

TEST(KappaProperty, LabelRouteMatchesMatrixRoute) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const int C = 2 + static_cast<int>(rng.Uniform(4));
    const size_t n = 10 + rng.Uniform(100);
    std::vector<int> a(n);
    std::vector<int> b(n);
    for (size_t i = 0; i < n; ++i) {
      a[i] = static_cast<int>(rng.Uniform(C));
      b[i] = rng.UniformDouble() < 0.6 ? a[i] : static_cast<int>(rng.Uniform(C));
    }
    a[0] = 0;
    b[0] = 1;  // Keeps pe < 1.
    const double oracle = testing::KappaFromLabels(a, b, C);
    EXPECT_NEAR(CohenKappa(a, b).kappa, oracle, 1e-12);
    EXPECT_NEAR(CohenKappa(ComputeConfusionMatrix(a, b, C)).kappa, oracle, 1e-12);
    EXPECT_NEAR(CohenKappa(b, a).kappa, oracle, 1e-12);
  }
}

TEST(PublishedConfusion, AccuracyAndKappa) {
  std::ifstream in(std::string(TABML_FIXTURE_DIR) + "/published_confusion.json");
  ASSERT_TRUE(in.good());
  const auto doc = nlohmann::json::parse(in);
  for (const auto& [name, entry] : doc.items()) {
    auto counts = entry["counts"].get<std::vector<std::vector<int64_t>>>();
    if (entry["orientation"] == "rows_predicted") {
      for (size_t i = 0; i < counts.size(); ++i)
        for (size_t j = 0; j < i; ++j) std::swap(counts[i][j], counts[j][i]);
    }
    const ConfusionMatrix cm = ConfusionMatrix::FromCounts(counts);
    EXPECT_NEAR(MakeClassificationReport(cm).accuracy, entry["accuracy"].get<double>(), 1e-4) << name;
    if (entry.contains("kappa")) {
      EXPECT_NEAR(CohenKappa(cm).kappa, entry["kappa"].get<double>(), 5e-4) << name;
    }
  }
}

TEST(RocTest, Example) {
  const RocCurve r = ComputeRoc({0, 0, 1, 1}, {0.1, 0.4, 0.35, 0.8});
  EXPECT_DOUBLE_EQ(r.auc, 0.75);
  EXPECT_TRUE(std::isinf(r.thresholds.front()));
  EXPECT_EQ(r.fpr.front(), 0.0);
  EXPECT_EQ(r.tpr.back(), 1.0);
  EXPECT_EQ(r.fpr.back(), 1.0);
}

TEST(RocTest, TiesCountHalfAndSingleClassThrows) {
  EXPECT_DOUBLE_EQ(ComputeRoc({0, 1}, {0.5, 0.5}).auc, 0.5);
  EXPECT_THROW(ComputeRoc({1, 1}, {0.1, 0.2}), ConfigError);
}

TEST(RocProperty, AucEqualsConcordance) {
  Rng rng(17);
  for (int t = 0; t < 300; ++t) {
    const size_t n = 2 + rng.Uniform(150);
    std::vector<int> y(n);
    std::vector<double> s(n);
    for (size_t i = 0; i < n; ++i) {
      y[i] = static_cast<int>(rng.Uniform(2));
      // Coarse scores so ties occur.
      s[i] = std::round(rng.UniformDouble() * 20) / 20 + 0.1 * y[i];
    }
    y[0] = 0;
    y[1] = 1;
    const RocCurve r = ComputeRoc(y, s);
    EXPECT_NEAR(r.auc, testing::ConcordanceAuc(y, s), 1e-12);
    EXPECT_TRUE(std::is_sorted(r.fpr.begin(), r.fpr.end()));
    EXPECT_TRUE(std::is_sorted(r.tpr.begin(), r.tpr.end()));
  }
}

TEST(RocProperty, InvariantUnderIncreasingTransform) {
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> y(40);
    std::vector<double> s(40);
    std::vector<double> e(40);
    for (size_t i = 0; i < y.size(); ++i) {
      y[i] = static_cast<int>(rng.Uniform(2));
      s[i] = std::round(rng.UniformDouble() * 10) / 10 - 0.5;
      e[i] = std::exp(3 * s[i]) + 7;
    }
    y[0] = 0;
    y[1] = 1;
    const RocCurve a = ComputeRoc(y, s);
    const RocCurve b = ComputeRoc(y, e);
    EXPECT_EQ(a.fpr, b.fpr);
    EXPECT_EQ(a.tpr, b.tpr);
    EXPECT_EQ(a.auc, b.auc);
  }
}

TEST(RocTest, MicroAveragePoolsBlocks) {
  const std::vector<std::vector<int>> truths = {{1, 0, 0}, {0, 1, 0}};
  const std::vector<std::vector<double>> scores = {{0.9, 0.2, 0.1}, {0.3, 0.7, 0.4}};
  const RocCurve micro = MicroAverageRoc(truths, scores);
  EXPECT_NEAR(micro.auc, testing::ConcordanceAuc({1, 0, 0, 0, 1, 0}, {0.9, 0.2, 0.1, 0.3, 0.7, 0.4}),
              1e-12);
}

}  // namespace
}  // namespace tabml
