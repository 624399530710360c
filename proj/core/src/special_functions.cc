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

#include "tabml/special_functions.h"

#include <cmath>
#include <limits>

#include "tabml/errors.h"

namespace tabml {
namespace {

constexpr int kMaxIter = 10000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// log(x^a e^-x / Gamma(a)), the common prefactor of both expansions.
double LogPrefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

// P(a, x) by its power series; converges quickly for x < a + 1.
double SeriesP(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(LogPrefactor(a, x));
}

// Q(a, x) by the modified Lentz continued fraction; for x >= a + 1.
double ContinuedFractionQ(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(LogPrefactor(a, x)) * h;
}

void CheckArgs(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) throw NumericError("incomplete gamma needs a > 0");
  if (!(x >= 0.0) || std::isnan(x)) throw NumericError("incomplete gamma needs x >= 0");
}

}  // namespace

double RegularizedGammaP(double a, double x) {
  CheckArgs(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return SeriesP(a, x);
  return 1.0 - ContinuedFractionQ(a, x);
}

double RegularizedGammaQ(double a, double x) {
  CheckArgs(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - SeriesP(a, x);
  return ContinuedFractionQ(a, x);
}

double ChiSquareSurvival(double statistic, double df) {
  if (!(df > 0.0)) throw NumericError("chi-squared needs df > 0");
  if (statistic <= 0.0) return 1.0;
  const double q = RegularizedGammaQ(0.5 * df, 0.5 * statistic);
  return std::fmin(1.0, std::fmax(0.0, q));
}

}  // namespace tabml
