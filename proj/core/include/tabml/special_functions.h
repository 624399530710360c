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

#ifndef TABML_SPECIAL_FUNCTIONS_H_
#define TABML_SPECIAL_FUNCTIONS_H_

namespace tabml {

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double RegularizedGammaP(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly
// (series below x = a + 1, Lentz continued fraction above) so that small
// tails keep full relative precision.
double RegularizedGammaQ(double a, double x);

// Upper tail of the chi-squared distribution with `df` degrees of freedom.
double ChiSquareSurvival(double statistic, double df);

}  // namespace tabml

#endif  // TABML_SPECIAL_FUNCTIONS_H_
