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

#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "tabml/errors.h"
#include "tabml/rng.h"
#include "tabml/sampling.h"

namespace tabml {
namespace {

std::vector<int> RandomLabels(Rng* rng, size_t n, int C) {
  std::vector<int> y(n);
  for (int c = 0; c < C; ++c) y[c] = c;  // Every class present.
  for (size_t i = C; i < n; ++i) y[i] = static_cast<int>(rng->Uniform(C));
  rng->Shuffle(&y);
  return y;
}

std::vector<size_t> CountClasses(const std::vector<int>& y, const std::vector<size_t>& rows, int C) {
  std::vector<size_t> c(C, 0);
  for (size_t r : rows) ++c[y[r]];
  return c;
}

TEST(RngTest, DeterministicAndSeedSensitive) {
  Rng a(42);
  Rng b(42);
  Rng c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.Next();
    EXPECT_EQ(x, b.Next());
    differs |= x != c.Next();
  }
  EXPECT_TRUE(differs);
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(2, 0));
}

TEST(RngTest, UniformStaysInRange) {
  Rng r(3);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const uint64_t u = r.Uniform(7);
    ASSERT_LT(u, 7u);
    ++hist[u];
  }
  for (int h : hist) EXPECT_GT(h, 800);
  EXPECT_THROW(r.Uniform(0), ConfigError);
  const auto s = r.SampleWithoutReplacement(10, 10);
  EXPECT_EQ(std::set<size_t>(s.begin(), s.end()).size(), 10u);
}

TEST(StratifiedSplitTest, TestCountsFollowLargestRemainder) {
  // 5 * .25 = 1.25, 3 * .25 = .75, 7 * .25 = 1.75; total ceil(3.75) = 4.
  EXPECT_EQ(StratifiedTestCounts({5, 3, 7}, 0.25), (std::vector<size_t>{1, 1, 2}));
  EXPECT_EQ(StratifiedTestCounts({100, 100}, 0.25), (std::vector<size_t>{25, 25}));
}

TEST(StratifiedSplitTest, RejectsBadInput) {
  EXPECT_THROW(StratifiedSplit({0, 0, 1, 1}, 0.0, 1), ConfigError);
  EXPECT_THROW(StratifiedSplit({0, 0, 1, 1}, 1.0, 1), ConfigError);
  EXPECT_THROW(StratifiedSplit({0, 0, 1}, 0.5, 1), ConfigError);
}

TEST(StratifiedSplitProperty, PartitionAndProportions) {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const int C = 2 + static_cast<int>(rng.Uniform(3));
    std::vector<int> y = RandomLabels(&rng, 40 + rng.Uniform(300), C);
    // Guarantee two members per class.
    for (int c = 0; c < C; ++c) y.push_back(c);
    const double frac = 0.1 + 0.5 * rng.UniformDouble();
    const SplitResult s = StratifiedSplit(y, frac, t);
    std::vector<size_t> all = s.train;
    all.insert(all.end(), s.test.begin(), s.test.end());
    std::sort(all.begin(), all.end());
    ASSERT_EQ(all.size(), y.size());
    for (size_t i = 0; i < all.size(); ++i) ASSERT_EQ(all[i], i);
    EXPECT_TRUE(std::is_sorted(s.test.begin(), s.test.end()));
    EXPECT_EQ(s.test.size(), static_cast<size_t>(std::ceil(y.size() * frac - 1e-9)));
    const auto total = CountClasses(y, all, C);
    const auto test = CountClasses(y, s.test, C);
    for (int c = 0; c < C; ++c) {
      EXPECT_LE(std::abs(static_cast<double>(test[c]) - total[c] * frac), 1.0 + 1e-9);
    }
    EXPECT_EQ(test, StratifiedTestCounts(total, frac));
  }
}

TEST(StratifiedSplitProperty, SameSeedSameSplit) {
  Rng rng(4);
  const std::vector<int> y = RandomLabels(&rng, 200, 3);
  const SplitResult a = StratifiedSplit(y, 0.25, 99);
  const SplitResult b = StratifiedSplit(y, 0.25, 99);
  const SplitResult c = StratifiedSplit(y, 0.25, 100);
  EXPECT_EQ(a.test, b.test);
  EXPECT_NE(a.test, c.test);
  EXPECT_EQ(SplitResult::FromJson(a.ToJson()).test, a.test);
}

TEST(UnderSampleTest, Example) {
  std::vector<int> y;
  for (int c = 0; c < 3; ++c) y.insert(y.end(), std::vector<size_t>{5, 3, 7}[c], c);
  const auto rows = RandomUnderSample(y, 1);
  EXPECT_EQ(CountClasses(y, rows, 3), (std::vector<size_t>{3, 3, 3}));
  // The minority class is kept whole.
  for (size_t r = 5; r < 8; ++r) EXPECT_TRUE(std::binary_search(rows.begin(), rows.end(), r));
}

TEST(UnderSampleProperty, BalancedSubsetWithoutRepeats) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const int C = 2 + static_cast<int>(rng.Uniform(3));
    const std::vector<int> y = RandomLabels(&rng, 20 + rng.Uniform(200), C);
    const auto rows = RandomUnderSample(y, t);
    EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end()));
    EXPECT_EQ(std::set<size_t>(rows.begin(), rows.end()).size(), rows.size());
    const auto full = CountClasses(y, std::vector<size_t>(rows.begin(), rows.end()), C);
    std::vector<size_t> idx(y.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const auto orig = CountClasses(y, idx, C);
    const size_t m = *std::min_element(orig.begin(), orig.end());
    for (int c = 0; c < C; ++c) EXPECT_EQ(full[c], m);
    EXPECT_EQ(rows, RandomUnderSample(y, t));
  }
}

TEST(KFoldTest, Example) {
  const FoldPlan p = StratifiedKFold({0, 0, 1, 1}, 2, 1);
  ASSERT_EQ(p.folds.size(), 2u);
  for (const auto& f : p.folds) {
    ASSERT_EQ(f.size(), 2u);
    EXPECT_NE(f[0] < 2, f[1] < 2) << "each fold holds one row of each class";
  }
  EXPECT_THROW(StratifiedKFold({0, 0, 1, 1}, 1, 1), ConfigError);
  EXPECT_THROW(StratifiedKFold({0, 1}, 3, 1), ConfigError);
}

TEST(KFoldProperty, FoldsPartitionAndStratify) {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const int C = 2 + static_cast<int>(rng.Uniform(3));
    const int k = 2 + static_cast<int>(rng.Uniform(9));
    const std::vector<int> y = RandomLabels(&rng, 10 * k + rng.Uniform(200), C);
    const FoldPlan p = StratifiedKFold(y, k, t);
    std::vector<int> seen(y.size(), 0);
    size_t lo = y.size();
    size_t hi = 0;
    for (int f = 0; f < k; ++f) {
      for (size_t r : p.folds[f]) ++seen[r];
      lo = std::min(lo, p.folds[f].size());
      hi = std::max(hi, p.folds[f].size());
      const auto tr = p.TrainIndices(f);
      EXPECT_EQ(tr.size() + p.folds[f].size(), y.size());
    }
    for (int s : seen) ASSERT_EQ(s, 1);
    EXPECT_LE(hi - lo, 1u);
    // Per class, fold counts differ by at most one.
    for (int c = 0; c < C; ++c) {
      size_t clo = y.size();
      size_t chi = 0;
      for (int f = 0; f < k; ++f) {
        const size_t n = CountClasses(y, p.folds[f], C)[c];
        clo = std::min(clo, n);
        chi = std::max(chi, n);
      }
      EXPECT_LE(chi - clo, 1u);
    }
    EXPECT_EQ(FoldPlan::FromJson(p.ToJson()).folds, p.folds);
  }
}

TEST(KFoldTest, NoShuffleIsSeedIndependent) {
  const std::vector<int> y = {0, 1, 0, 1, 0, 1, 0, 1};
  EXPECT_EQ(StratifiedKFold(y, 2, 1, false).folds, StratifiedKFold(y, 2, 2, false).folds);
}

}  // namespace
}  // namespace tabml
