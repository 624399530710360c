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

#include "run_config.h"

#include <filesystem>

#include "tabml/csv.h"
#include "tabml/errors.h"

namespace tabml::cli {
namespace {

std::string Resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

nlohmann::json ParseJsonFile(const std::string& path) {
  try {
    return nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

uint64_t Require(const std::optional<uint64_t>& v, const char* name) {
  if (!v) throw ConfigError(std::string("seed '") + name + "' must be set explicitly");
  return *v;
}

}  // namespace

void RunConfig::Validate() const {
  Require(seeds.split, "split");
  Require(seeds.balance, "balance");
  Require(seeds.model, "model");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test_fraction must lie in (0, 1)");
  }
  if (selector && selector->k < 1) throw ConfigError("selector.k must be at least 1");
  if (association_scorer == Scorer::kMutualInfo) {
    throw ConfigError("association_scorer must be chi2 or chi2_occurrence");
  }
  if (model.cv_folds < 2) throw ConfigError("model.cv_folds must be at least 2");
  if (model.grid && (!model.grid->is_object() || model.grid->empty())) {
    throw ConfigError("model.grid must be a non-empty object");
  }
}

uint64_t RunConfig::seed_split() const { return Require(seeds.split, "split"); }
uint64_t RunConfig::seed_balance() const { return Require(seeds.balance, "balance"); }
uint64_t RunConfig::seed_model() const { return Require(seeds.model, "model"); }

nlohmann::ordered_json RunConfig::Snapshot() const {
  nlohmann::ordered_json j;
  j["input"] = input;
  j["preset"] = preset.ToJson();
  j["test_fraction"] = test_fraction;
  j["seeds"] = {{"split", seed_split()}, {"balance", seed_balance()}, {"model", seed_model()}};
  if (selector) {
    j["selector"] = {{"method", ScorerName(selector->method)}, {"k", selector->k}};
  } else {
    j["selector"] = nullptr;
  }
  j["association_scorer"] = ScorerName(association_scorer);
  j["model"] = {{"family", model.family}, {"params", model.params}};
  j["model"]["grid"] = model.grid ? *model.grid : nlohmann::ordered_json();
  j["model"]["cv_folds"] = model.cv_folds;
  return j;
}

RunConfig RunConfig::FromJson(const nlohmann::json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  RunConfig cfg;
  try {
    bool have_preset = false;
    for (const auto& [key, value] : j.items()) {
      if (key == "input") {
        cfg.input = Resolve(base_dir, value.get<std::string>());
      } else if (key == "preset") {
        cfg.preset = PresetByName(value.get<std::string>());
        have_preset = true;
      } else if (key == "preset_file") {
        cfg.preset = Preset::FromJson(ParseJsonFile(Resolve(base_dir, value.get<std::string>())));
        have_preset = true;
      } else if (key == "test_fraction") {
        cfg.test_fraction = value.get<double>();
      } else if (key == "seeds") {
        for (const auto& [name, seed] : value.items()) {
          if (name == "split") {
            cfg.seeds.split = seed.get<uint64_t>();
          } else if (name == "balance") {
            cfg.seeds.balance = seed.get<uint64_t>();
          } else if (name == "model") {
            cfg.seeds.model = seed.get<uint64_t>();
          } else {
            throw ConfigError("unknown seed '" + name + "'");
          }
        }
      } else if (key == "selector") {
        if (value.is_null()) continue;
        SelectorConfig s;
        s.method = ScorerFromString(value.at("method").get<std::string>());
        s.k = value.at("k").get<int>();
        cfg.selector = s;
      } else if (key == "association_scorer") {
        cfg.association_scorer = ScorerFromString(value.get<std::string>());
      } else if (key == "model") {
        for (const auto& [name, v] : value.items()) {
          if (name == "family") {
            cfg.model.family = v.get<std::string>();
          } else if (name == "params") {
            cfg.model.params = v;
          } else if (name == "grid") {
            if (!v.is_null()) cfg.model.grid = v;
          } else if (name == "cv_folds") {
            cfg.model.cv_folds = v.get<int>();
          } else {
            throw ConfigError("unknown model key '" + name + "'");
          }
        }
      } else if (key == "out") {
        cfg.out = Resolve(base_dir, value.get<std::string>());
      } else if (key != "binning_file" && key != "dummy_plan_file") {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
    if (!have_preset) cfg.preset = VeteransT2dmPreset();
    if (j.contains("binning_file")) {
      const auto bins = ParseJsonFile(Resolve(base_dir, j.at("binning_file").get<std::string>()));
      cfg.preset.bins.clear();
      for (const auto& b : bins) cfg.preset.bins.push_back(BinningSpec::FromJson(b));
    }
    if (j.contains("dummy_plan_file")) {
      cfg.preset.dummy_plan = DummyPlan::FromJson(
          ParseJsonFile(Resolve(base_dir, j.at("dummy_plan_file").get<std::string>())));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad run config: ") + e.what());
  }
  return cfg;
}

RunConfig RunConfig::Load(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path().string();
  return FromJson(ParseJsonFile(path), dir);
}

}  // namespace tabml::cli
