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

// Independent reference computations for tests. Nothing here calls the
// library routine it checks; each follows the textbook definition by the
// most direct route available.

#ifndef TABML_TESTS_SUPPORT_ORACLES_H_
#define TABML_TESTS_SUPPORT_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace tabml::testing {

struct LonghandChi2 {
  double statistic = 0.0;
  int df = 0;
  double min_expected = 0.0;
};

// sum over cells of (O - E)^2 / E with E = row * col / N.
inline LonghandChi2 ChiSquareLonghand(const std::vector<std::vector<int64_t>>& o) {
  const size_t r = o.size();
  const size_t c = o[0].size();
  std::vector<double> rs(r, 0.0);
  std::vector<double> cs(c, 0.0);
  double n = 0.0;
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < c; ++j) {
      rs[i] += static_cast<double>(o[i][j]);
      cs[j] += static_cast<double>(o[i][j]);
      n += static_cast<double>(o[i][j]);
    }
  }
  LonghandChi2 out;
  out.min_expected = INFINITY;
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < c; ++j) {
      const double e = rs[i] * cs[j] / n;
      const double d = static_cast<double>(o[i][j]) - e;
      out.statistic += d * d / e;
      out.min_expected = std::min(out.min_expected, e);
    }
  }
  out.df = static_cast<int>((r - 1) * (c - 1));
  return out;
}

// H(X) in bits from raw labels.
inline double EntropyOfLabels(const std::vector<int>& x) {
  std::map<int, double> counts;
  for (int v : x) counts[v] += 1.0;
  double h = 0.0;
  const double n = static_cast<double>(x.size());
  for (const auto& [k, c] : counts) {
    const double p = c / n;
    h -= p * std::log2(p);
  }
  return h;
}

// H(Y) - H(Y | X), the conditional-entropy route to information gain.
inline double InformationGainConditional(const std::vector<int>& x, const std::vector<int>& y) {
  std::map<int, std::vector<int>> groups;
  for (size_t i = 0; i < x.size(); ++i) groups[x[i]].push_back(y[i]);
  double h_cond = 0.0;
  const double n = static_cast<double>(x.size());
  for (const auto& [k, ys] : groups) {
    h_cond += static_cast<double>(ys.size()) / n * EntropyOfLabels(ys);
  }
  return EntropyOfLabels(y) - h_cond;
}

// Probability that a random positive outscores a random negative, ties 1/2.
inline double ConcordanceAuc(const std::vector<int>& y, const std::vector<double>& s) {
  double num = 0.0;
  double pairs = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 1) continue;
    for (size_t j = 0; j < y.size(); ++j) {
      if (y[j] != 0) continue;
      pairs += 1.0;
      if (s[i] > s[j]) {
        num += 1.0;
      } else if (s[i] == s[j]) {
        num += 0.5;
      }
    }
  }
  return num / pairs;
}

// Cohen's kappa straight from the two label vectors.
inline double KappaFromLabels(const std::vector<int>& a, const std::vector<int>& b, int C) {
  const double n = static_cast<double>(a.size());
  double agree = 0.0;
  std::vector<double> pa(C, 0.0);
  std::vector<double> pb(C, 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i] ? 1.0 : 0.0;
    pa[a[i]] += 1.0 / n;
    pb[b[i]] += 1.0 / n;
  }
  const double po = agree / n;
  double pe = 0.0;
  for (int c = 0; c < C; ++c) pe += pa[c] * pb[c];
  return (po - pe) / (1.0 - pe);
}

// Central finite differences of f at x.
inline Eigen::VectorXd CentralDifferences(const std::function<double(const Eigen::VectorXd&)>& f,
                                          const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Eigen::VectorXd xp = x;
    Eigen::VectorXd xm = x;
    xp[k] += h;
    xm[k] -= h;
    g[k] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

struct ExhaustiveSplit {
  int feature = -1;
  double threshold = 0.0;
  double weighted_gini = INFINITY;  // Sum over children of n_child * gini.
};

// Scans every (feature, midpoint) pair and returns the lowest weighted Gini,
// first feature and lowest threshold on ties.
inline ExhaustiveSplit BestGiniSplit(const Eigen::MatrixXd& X, const std::vector<int>& y, int C) {
  ExhaustiveSplit best;
  for (Eigen::Index f = 0; f < X.cols(); ++f) {
    std::vector<double> vals(X.col(f).data(), X.col(f).data() + X.rows());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    for (size_t k = 0; k + 1 < vals.size(); ++k) {
      const double t = (vals[k] + vals[k + 1]) / 2.0;
      std::vector<double> l(C, 0.0);
      std::vector<double> r(C, 0.0);
      for (Eigen::Index i = 0; i < X.rows(); ++i) (X(i, f) <= t ? l : r)[y[i]] += 1.0;
      auto gini_n = [&](const std::vector<double>& c) {
        double n = 0.0;
        for (double v : c) n += v;
        double g = 1.0;
        for (double v : c) g -= (v / n) * (v / n);
        return n * g;
      };
      const double w = gini_n(l) + gini_n(r);
      if (w < best.weighted_gini - 1e-12) {
        best.feature = static_cast<int>(f);
        best.threshold = t;
        best.weighted_gini = w;
      }
    }
  }
  return best;
}

}  // namespace tabml::testing

#endif  // TABML_TESTS_SUPPORT_ORACLES_H_
