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

// pipeline <command> --config FILE [--seed-split N] [--seed-balance N]
//          [--seed-model N] [--out DIR] [--input PATH]
//
// Exit codes: 0 success, 2 configuration error, 3 data error,
// 4 numeric failure, 1 anything else.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.h"
#include "run_config.h"
#include "tabml/errors.h"

int main(int argc, char** argv) {
  CLI::App app{"tabml tabular pipeline driver"};
  std::string command;
  std::string config_path;
  std::optional<uint64_t> seed_split;
  std::optional<uint64_t> seed_balance;
  std::optional<uint64_t> seed_model;
  std::optional<std::string> out;
  std::optional<std::string> input;
  app.add_option("command", command, "Subcommand")
      ->required()
      ->check(CLI::IsMember(tabml::cli::Runner::Commands()));
  app.add_option("--config", config_path, "Run configuration (JSON)")->required();
  app.add_option("--seed-split", seed_split, "Override seeds.split");
  app.add_option("--seed-balance", seed_balance, "Override seeds.balance");
  app.add_option("--seed-model", seed_model, "Override seeds.model");
  app.add_option("--out", out, "Override the output directory");
  app.add_option("--input", input, "Override the raw input CSV");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    tabml::cli::RunConfig cfg = tabml::cli::RunConfig::Load(config_path);
    if (seed_split) cfg.seeds.split = *seed_split;
    if (seed_balance) cfg.seeds.balance = *seed_balance;
    if (seed_model) cfg.seeds.model = *seed_model;
    if (out) cfg.out = *out;
    if (input) cfg.input = *input;
    tabml::cli::Runner runner(std::move(cfg));
    runner.Run(command);
  } catch (const tabml::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tabml::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const tabml::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
