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

// Pipeline subcommands. Each reads its inputs from, and writes its outputs
// under, the run's output directory:
//
//   manifest.json        config snapshot, stage row counts, artifact hashes
//   timing.json          wall time per command (not covered by the manifest)
//   data/                cleaned, train_raw, test_raw, train, test,
//                        train_balanced CSVs
//   reports/             JSON/CSV/text reports
//   models/model.json    fitted model with its feature list

#ifndef TABML_TOOLS_CLI_COMMANDS_H_
#define TABML_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "run_config.h"

namespace tabml::cli {

// 64-bit FNV-1a, printed as 16 lowercase hex digits.
std::string Fnv1a64Hex(std::string_view bytes);

// Throws NumericError if the counts in a manifest break raw >= deduped,
// train + test = deduped or balanced <= train (missing entries are skipped).
void CheckCountChain(const nlohmann::json& counts);

class Runner {
 public:
  explicit Runner(RunConfig cfg);

  void Prepare();
  void Split();
  void Balance();
  void Analyze();
  void FeatureAnalysis();
  void Train();
  void Evaluate();
  void RunAll();

  // Dispatches by subcommand name; ConfigError if unknown.
  void Run(const std::string& command);
  static const std::vector<std::string>& Commands();

 private:
  std::string DataPath(const std::string& name) const;
  std::string ReportPath(const std::string& name) const;
  std::string ModelPath() const;
  void WriteReport(const std::string& name, std::string_view content) const;
  void WriteJsonReport(const std::string& name, const nlohmann::ordered_json& j) const;
  void SetCount(const std::string& key, const nlohmann::ordered_json& value);
  void SaveManifest() const;
  void RecordTiming(const std::string& command, double seconds) const;

  RunConfig cfg_;
  nlohmann::ordered_json counts_;
};

}  // namespace tabml::cli

#endif  // TABML_TOOLS_CLI_COMMANDS_H_
