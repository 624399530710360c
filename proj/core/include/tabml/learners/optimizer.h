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

#ifndef TABML_LEARNERS_OPTIMIZER_H_
#define TABML_LEARNERS_OPTIMIZER_H_

#include <functional>

#include <Eigen/Core>

namespace tabml {

// Returns f(x) and writes the gradient into *grad.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct GdOptions {
  int max_iter = 1000;
  double tol = 1e-6;  // On the max-abs gradient entry.
  double armijo = 1e-4;
};

struct GdResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double grad_max = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Gradient descent with Barzilai-Borwein trial steps and Armijo backtracking.
// Deterministic; no randomness involved.
GdResult MinimizeGradientDescent(const Objective& f, Eigen::VectorXd x0, const GdOptions& opts);

}  // namespace tabml

#endif  // TABML_LEARNERS_OPTIMIZER_H_
