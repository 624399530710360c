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

// Run configuration for the pipeline driver. JSON schema:
//
//   {
//     "input": "raw.csv",                 // required for prepare
//     "preset": "veterans-t2dm",          // or "preset_file": "custom.json"
//     "binning_file": "bins.json",        // optional, replaces the preset bins
//     "dummy_plan_file": "plan.json",     // optional, replaces the dummy plan
//     "test_fraction": 0.25,
//     "seeds": {"split": 1, "balance": 2, "model": 3},   // all required
//     "selector": {"method": "chi2", "k": 66},           // optional
//     "association_scorer": "chi2",       // chi2 | chi2_occurrence
//     "model": {
//       "family": "lr",
//       "params": {...},                  // base parameters
//       "grid": {"C": [0.1, 1, 10]},      // optional
//       "cv_folds": 10                    // folds for the grid search
//     },
//     "out": "out"
//   }
//
// Relative file paths resolve against the config file's directory.

#ifndef TABML_TOOLS_CLI_RUN_CONFIG_H_
#define TABML_TOOLS_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "tabml/pipeline.h"
#include "tabml/stats.h"

namespace tabml::cli {

struct SelectorConfig {
  Scorer method = Scorer::kChi2;
  int k = 0;
};

struct ModelConfig {
  std::string family = "lr";
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::optional<nlohmann::ordered_json> grid;
  int cv_folds = 10;
};

struct Seeds {
  std::optional<uint64_t> split;
  std::optional<uint64_t> balance;
  std::optional<uint64_t> model;
};

struct RunConfig {
  std::string input;
  Preset preset;
  double test_fraction = 0.25;
  Seeds seeds;
  std::optional<SelectorConfig> selector;
  Scorer association_scorer = Scorer::kChi2;
  ModelConfig model;
  std::string out = "out";

  // Throws ConfigError on missing seeds or out-of-range values.
  void Validate() const;
  uint64_t seed_split() const;
  uint64_t seed_balance() const;
  uint64_t seed_model() const;

  // Effective settings, excluding the output directory, for the manifest.
  nlohmann::ordered_json Snapshot() const;

  static RunConfig FromJson(const nlohmann::json& j, const std::string& base_dir);
  static RunConfig Load(const std::string& path);
};

}  // namespace tabml::cli

#endif  // TABML_TOOLS_CLI_RUN_CONFIG_H_
