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

// Portable deterministic randomness.
//
// Generator: xoshiro256** (Blackman and Vigna) seeded by expanding a 64-bit
// seed with splitmix64. Bounded integers use rejection sampling, doubles use
// the top 53 bits, and shuffles are an explicit Fisher-Yates loop, so every
// index selection is identical across compilers and standard libraries
// (std::uniform_int_distribution and std::shuffle are not).

#ifndef TABML_RNG_H_
#define TABML_RNG_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace tabml {

uint64_t SplitMix64(uint64_t* state);

// Seed of an independent stream `stream` derived from `seed`. Used for
// per-tree and per-grid-point generators so that parallel and serial
// execution coincide.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t Next();
  // Uniform integer in [0, n). n must be > 0.
  uint64_t Uniform(uint64_t n);
  // Uniform double in [0, 1).
  double UniformDouble();
  // Standard normal via Box-Muller (used by synthetic data only).
  double Normal();

  template <typename T>
  void Shuffle(std::vector<T>* v) {
    for (size_t i = v->size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(Uniform(i));
      std::swap((*v)[i - 1], (*v)[j]);
    }
  }

  // k distinct elements of [0, n) in selection order (partial Fisher-Yates).
  std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k);

 private:
  uint64_t s_[4];
};

}  // namespace tabml

#endif  // TABML_RNG_H_
