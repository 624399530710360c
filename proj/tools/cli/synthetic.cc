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

#include "synthetic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "tabml/errors.h"
#include "tabml/pipeline.h"
#include "tabml/rng.h"

namespace tabml::cli {
namespace {

const std::vector<std::string> kFlags = {
    "ALPHA",      "BIGUAN",     "INSULIN",     "SULF",        "TZD",        "BP_RX",
    "OTHER_MED",  "AMI",        "HIV",         "ALCOHOL",     "ABI",        "BLOODLOSS",
    "ARRHYTHMIA", "PULMONARY",  "COAG",        "CHF",         "CAD",        "CABG",
    "ANEMIA",     "DEPRESSION", "DMCX",        "FEET",        "DRUGS",      "ESLD",
    "FLUIDSLYTES", "HYPERG",    "HTNCX",       "HTN",         "HYPOTHYROID", "LIVER",
    "AMPUTATION", "LYMPHOMA",   "METS",        "OBESITY",     "NEUROOTHER", "PARALYSIS",
    "PUD",        "PCI",        "PVD",         "PSYCHOSES",   "PHTN",       "RENAL",
    "RETINOPATHY", "RETSSCREEN", "RHEUMATIC",  "SEVERE_DEP",  "SMOKER",     "TUMOR",
    "VALVULAR",   "WEIGHTLOSS"};

const std::vector<std::string> kPriorities = {"GROUP 1", "GROUP 2", "GROUP 3",
                                              "GROUP 4", "GROUP 5", "GROUP 6",
                                              "GROUP 7", "GROUP 8", "Unknown"};
const std::vector<std::string> kMarital = {"MARRIED", "SINGLE", "WIDOWED"};

// Per-variable missing rates for the lab columns.
const std::map<std::string, double> kMissingRate = {
    {"MICROALB", 0.74}, {"SERUMALB", 0.30}, {"SERUMCRE", 0.05},
    {"HDL", 0.04},      {"LDL", 0.05},      {"TRI", 0.04}};

double Round3(double v) { return std::round(v * 1000.0) / 1000.0; }

// A value strictly inside bin b of `spec`, away from both edges.
double SampleInBin(const BinningSpec& spec, int b, Rng* rng) {
  double lo = spec.edges[b];
  double hi = spec.edges[b + 1];
  if (std::isinf(lo)) {
    const double next = spec.edges.size() > static_cast<size_t>(b + 2) &&
                                std::isfinite(spec.edges[b + 2])
                            ? spec.edges[b + 2] - hi
                            : 1.0;
    lo = hi - std::max(next, 1e-3);
  }
  if (std::isinf(hi)) {
    const double prev = b > 0 && std::isfinite(spec.edges[b - 1]) ? lo - spec.edges[b - 1] : 1.0;
    hi = lo + std::max(prev, 1e-3);
  }
  return Round3(lo + (hi - lo) * (0.05 + 0.9 * rng->UniformDouble()));
}

const BinningSpec& SpecFor(const std::string& variable) {
  for (const auto& s : VeteransT2dmPreset().bins) {
    if (s.variable == variable) return s;
  }
  throw ConfigError("no bin spec for " + variable);
}

}  // namespace

const std::vector<std::string>& CohortPredictorNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = {"AGE", "SEX",     "MARRIED", "RACE", "PRIORITY",
                                  "BMI", "DIASTOLIC", "SYSTOLIC", "HDL",  "LDL",
                                  "A1C", "TRI",     "MICROALB", "SERUMALB", "SERUMCRE"};
    n.insert(n.end(), kFlags.begin(), kFlags.end());
    n.insert(n.end(), {"FRAILITY", "N_IP", "N_OP"});
    return n;
  }();
  return names;
}

Table MakeSyntheticCohort(size_t n_rows, uint64_t seed) {
  if (n_rows < 20) throw ConfigError("synthetic cohort needs at least 20 rows");
  Rng rng(seed);
  const size_t n_dup = std::max<size_t>(1, n_rows / 50);
  const size_t n_unique = n_rows - n_dup;

  std::vector<int> cls(n_unique);
  for (size_t i = 0; i < n_unique; ++i) {
    const double u = rng.UniformDouble();
    cls[i] = u < 0.24 ? 0 : (u < 0.58 ? 1 : 2);
  }
  for (size_t i = 0; i < 3 && i < n_unique; ++i) cls[i] = static_cast<int>(i);

  // Bin index for a binned variable: cycles through every label on the first
  // rows, then mixes a class-driven pick with a uniform one. `risk_up` orders
  // bins from low to high risk of the shortest mortality band.
  auto pick_bin = [&](size_t i, size_t n_labels, bool informative, bool risk_up) -> int {
    if (i < 9) return static_cast<int>(i % n_labels);
    if (informative && rng.UniformDouble() < 0.55) {
      const double pos = (2 - cls[i]) / 2.0;  // Class 1 -> 1, class 3 -> 0.
      const double centre = (risk_up ? pos : 1.0 - pos) * static_cast<double>(n_labels - 1);
      const double jitter = (rng.UniformDouble() - 0.5) * 2.0;
      const long b = std::lround(centre + jitter);
      return static_cast<int>(std::clamp<long>(b, 0, static_cast<long>(n_labels) - 1));
    }
    return static_cast<int>(rng.Uniform(n_labels));
  };

  std::vector<std::string> names;
  std::vector<Column> columns;
  auto binned = [&](const std::string& var, bool informative, bool risk_up, bool can_miss) {
    const BinningSpec& spec = SpecFor(var);
    std::vector<double> v(n_unique);
    const double miss = kMissingRate.count(var) ? kMissingRate.at(var) : 0.0;
    for (size_t i = 0; i < n_unique; ++i) {
      const int b = pick_bin(i, spec.labels.size(), informative, risk_up);
      v[i] = SampleInBin(spec, b, &rng);
      if (can_miss && i >= 9 && rng.UniformDouble() < miss) {
        v[i] = std::numeric_limits<double>::quiet_NaN();
      }
    }
    names.push_back(var);
    columns.push_back(Column::Numeric(std::move(v)));
  };
  auto categorical = [&](const std::string& var, const std::vector<std::string>& values,
                         bool informative) {
    std::vector<std::optional<std::string>> v(n_unique);
    for (size_t i = 0; i < n_unique; ++i) v[i] = values[pick_bin(i, values.size(), informative, false)];
    names.push_back(var);
    columns.push_back(Column::Categorical(v));
  };
  auto numeric = [&](const std::string& var, auto&& gen) {
    std::vector<double> v(n_unique);
    for (size_t i = 0; i < n_unique; ++i) v[i] = gen(i);
    names.push_back(var);
    columns.push_back(Column::Numeric(std::move(v)));
  };

  binned("AGE", true, true, false);
  numeric("SEX", [&](size_t) { return rng.UniformDouble() < 0.97 ? 1.0 : 0.0; });
  categorical("MARRIED", kMarital, false);
  numeric("RACE", [&](size_t i) {
    if (i < 3) return static_cast<double>(i + 1);
    const double u = rng.UniformDouble();
    return u < 0.85 ? 1.0 : (u < 0.95 ? 2.0 : 3.0);
  });
  categorical("PRIORITY", kPriorities, true);
  binned("BMI", false, false, false);
  binned("DIASTOLIC", false, false, false);
  binned("SYSTOLIC", false, false, false);
  binned("HDL", false, false, true);
  binned("LDL", false, false, true);
  binned("A1C", false, false, false);
  binned("TRI", false, false, true);
  numeric("MICROALB", [&](size_t) {
    return rng.UniformDouble() < kMissingRate.at("MICROALB")
               ? std::numeric_limits<double>::quiet_NaN()
               : Round3(5.0 + 295.0 * rng.UniformDouble());
  });
  binned("SERUMALB", true, false, true);
  binned("SERUMCRE", true, true, true);
  for (size_t f = 0; f < kFlags.size(); ++f) {
    const double base = 0.05 + 0.3 * static_cast<double>(f % 7) / 6.0;
    const bool informative = f % 5 == 0;
    numeric(kFlags[f], [&](size_t i) {
      double p = base;
      if (informative) p += 0.15 * (1 - cls[i]);
      return rng.UniformDouble() < p ? 1.0 : 0.0;
    });
  }
  binned("FRAILITY", true, true, false);
  binned("N_IP", true, true, false);
  binned("N_OP", true, true, false);
  numeric("DEATH_5", [&](size_t i) { return cls[i] == 0 ? 1.0 : 0.0; });
  numeric("DEATH_10", [&](size_t i) { return cls[i] <= 1 ? 1.0 : 0.0; });

  Table unique(names, columns);
  std::vector<size_t> rows(n_unique);
  for (size_t i = 0; i < n_unique; ++i) rows[i] = i;
  for (size_t d = 0; d < n_dup; ++d) rows.push_back(9 + rng.Uniform(n_unique - 9));
  return unique.take_rows(rows);
}

}  // namespace tabml::cli
