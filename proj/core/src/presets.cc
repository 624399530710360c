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

#include <limits>

#include "tabml/errors.h"
#include "tabml/pipeline.h"

namespace tabml {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BinningSpec Bin(std::string variable, std::string new_name, std::vector<double> edges,
                std::vector<std::string> labels) {
  BinningSpec s{std::move(variable), std::move(new_name), std::move(edges), std::move(labels),
                true};
  s.Validate();
  return s;
}

Preset BuildVeteransT2dm() {
  Preset p;
  p.name = "veterans-t2dm";
  p.bins = {
      Bin("AGE", "AGE_GROUP", {65, 69, 74, 79, 84, 89, kInf},
          {"65-69", "70-74", "75-79", "80-84", "85-89", ">=90"}),
      Bin("BMI", "BMI_RANGE", {10, 18.4, 24.9, 39.9, 49.9, kInf},
          {"<18.5", "18.5-24.9", "25-39.9", "40-49.9", ">=50"}),
      Bin("A1C", "A1C_RANGE", {-kInf, 7.9, 9.0, kInf}, {"<8", "8-9", ">9"}),
      Bin("SERUMALB", "SERUMALB_RANGE", {-kInf, 3.49, kInf}, {"<3.5", ">=3.5"}),
      Bin("SERUMCRE", "SERUMCRE_RANGE", {-kInf, 1.49, 3.00, kInf}, {"<1.5", "1.5-3.0", ">3.0"}),
      Bin("N_IP", "N_IP_RANGE", {0, 5, kInf}, {"0-5", ">5"}),
      Bin("N_OP", "N_OP_RANGE", {0, 5, 30, kInf}, {"0-5", "6-30", ">30"}),
      Bin("SYSTOLIC", "SYSTOLIC_RANGE", {-kInf, 119, 129, 139, 179, kInf},
          {"<120", "120-129", "130-139", "140-179", ">=180"}),
      Bin("DIASTOLIC", "DIASTOLIC_RANGE", {-kInf, 79, 89, kInf}, {"<80", "80-89", ">=90"}),
      Bin("TRI", "TRI_RANGE", {-kInf, 149.99, 199.99, kInf}, {"<150", "150-199.99", ">=200"}),
      Bin("LDL", "LDL_RANGE", {-kInf, 99.99, 129.99, 159.99, 189.99, kInf},
          {"<100", "100-129.99", "130-159.99", "160-189.99", ">=190"}),
      Bin("HDL", "HDL_RANGE", {-kInf, 39.99, 59.99, kInf}, {"<40", "40-59.99", ">=60"}),
      Bin("FRAILITY", "FRAILITY_GROUP", {0, 0.1, 0.2, 0.3, 0.4, kInf},
          {"Non-frail", "Pre-frail", "Mild", "Moderate", "Severe"}),
  };
  p.drop_before_binning = {"MICROALB"};
  p.fill_missing_columns = {"SERUMALB_RANGE", "LDL_RANGE", "SERUMCRE_RANGE", "HDL_RANGE",
                            "TRI_RANGE"};
  p.fill_label = "Missing";
  p.decode_column = "RACE";
  p.decode_map = {{"1", "White"}, {"2", "Black"}, {"3", "Other"}};
  p.analysis_variables = {"PRIORITY",       "MARRIED",         "SEX",
                          "RACE",           "SERUMALB_RANGE",  "FRAILITY_GROUP",
                          "AGE_GROUP",      "DIASTOLIC_RANGE", "SYSTOLIC_RANGE",
                          "N_IP_RANGE",     "N_OP_RANGE",      "BMI_RANGE",
                          "A1C_RANGE",      "SERUMCRE_RANGE",  "HDL_RANGE",
                          "LDL_RANGE",      "TRI_RANGE"};
  p.extra_pairs = {{"PRIORITY", "FRAILITY_GROUP"}, {"MARRIED", "RACE"}};
  p.drop_after_analysis = {"SEX", "RACE", "FRAILITY_GROUP"};
  p.dummy_plan.columns = {"PRIORITY",       "MARRIED",        "AGE_GROUP",  "DIASTOLIC_RANGE",
                          "SYSTOLIC_RANGE", "N_IP_RANGE",     "N_OP_RANGE", "BMI_RANGE",
                          "A1C_RANGE",      "SERUMCRE_RANGE", "HDL_RANGE",  "LDL_RANGE",
                          "TRI_RANGE",      "SERUMALB_RANGE"};
  p.dummy_plan.drop = {"PRIORITY_Unknown",    "MARRIED_MARRIED",      "N_OP_RANGE_6-30",
                       "BMI_RANGE_25-39.9",   "A1C_RANGE_<8",         "AGE_GROUP_65-69",
                       "N_IP_RANGE_0-5",      "DIASTOLIC_RANGE_<80",  "SYSTOLIC_RANGE_<120",
                       "SERUMCRE_RANGE_<1.5", "HDL_RANGE_40-59.99",   "LDL_RANGE_<100",
                       "TRI_RANGE_<150",      "SERUMALB_RANGE_>=3.5"};
  return p;
}

}  // namespace

const Preset& VeteransT2dmPreset() {
  static const Preset preset = BuildVeteransT2dm();
  return preset;
}

const Preset& PresetByName(const std::string& name) {
  if (name == "veterans-t2dm") return VeteransT2dmPreset();
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace tabml
