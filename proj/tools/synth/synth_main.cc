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

// synth_fixture --rows N --seed S --out FILE
// Writes a synthetic raw cohort CSV for exercising the pipeline.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "synthetic.h"
#include "tabml/csv.h"
#include "tabml/errors.h"

int main(int argc, char** argv) {
  CLI::App app{"synthetic cohort generator"};
  size_t rows = 500;
  uint64_t seed = 1;
  std::string out;
  app.add_option("--rows", rows, "Row count, duplicates included");
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--out", out, "Output CSV")->required();
  CLI11_PARSE(app, argc, argv);
  try {
    tabml::WriteCsv(tabml::cli::MakeSyntheticCohort(rows, seed), out);
  } catch (const tabml::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
