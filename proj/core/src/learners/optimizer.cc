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

#include "tabml/learners/optimizer.h"

#include <algorithm>
#include <cmath>

#include "tabml/errors.h"

namespace tabml {

GdResult MinimizeGradientDescent(const Objective& f, Eigen::VectorXd x0, const GdOptions& opts) {
  GdResult res;
  res.x = std::move(x0);
  Eigen::VectorXd g(res.x.size());
  res.value = f(res.x, &g);
  if (!std::isfinite(res.value)) throw NumericError("objective is not finite at the start point");
  double step = 1.0;
  Eigen::VectorXd x_new(res.x.size());
  Eigen::VectorXd g_new(res.x.size());
  for (res.iterations = 0; res.iterations < opts.max_iter; ++res.iterations) {
    res.grad_max = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
    if (res.grad_max < opts.tol) {
      res.converged = true;
      return res;
    }
    const double g2 = g.squaredNorm();
    double f_new = 0.0;
    int backtracks = 0;
    while (true) {
      x_new = res.x - step * g;
      f_new = f(x_new, &g_new);
      if (std::isfinite(f_new) && f_new <= res.value - opts.armijo * step * g2) break;
      step *= 0.5;
      if (++backtracks > 60) {
        // No decrease is representable in double precision any more.
        res.converged = false;
        return res;
      }
    }
    const Eigen::VectorXd s = x_new - res.x;
    const Eigen::VectorXd yv = g_new - g;
    const double sy = s.dot(yv);
    step = sy > 0.0 ? s.squaredNorm() / sy : step * 2.0;
    step = std::clamp(step, 1e-12, 1e12);
    res.x.swap(x_new);
    g.swap(g_new);
    res.value = f_new;
  }
  res.grad_max = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
  res.converged = res.grad_max < opts.tol;
  return res;
}

}  // namespace tabml
