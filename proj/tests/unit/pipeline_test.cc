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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "tabml/errors.h"
#include "tabml/pipeline.h"
#include "tabml/rng.h"
#include "tabml/table.h"

namespace tabml {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const BinningSpec& PresetBin(const std::string& variable) {
  for (const auto& b : VeteransT2dmPreset().bins) {
    if (b.variable == variable) return b;
  }
  throw std::runtime_error("no bin for " + variable);
}

std::string BinLabel(const std::string& variable, double v) {
  const Table t({variable}, {Column::Numeric({v})});
  const BinningSpec& spec = PresetBin(variable);
  return BinColumn(t, spec).column(spec.new_name).text(0);
}

TEST(MortalityTest, TruthTable) {
  EXPECT_EQ(DeriveMortality(1, 1), MortalityClass::kClass1);
  EXPECT_EQ(DeriveMortality(0, 1), MortalityClass::kClass2);
  EXPECT_EQ(DeriveMortality(0, 0), MortalityClass::kClass3);
  EXPECT_THROW(DeriveMortality(1, 0), DataError);
  EXPECT_THROW(DeriveMortality(2, 1), DataError);
  EXPECT_EQ(MortalityLabel(MortalityClass::kClass2), "Class 2");
}

TEST(MortalityTest, ColumnReplacesDeathFlags) {
  const Table t({"X", "DEATH_5", "DEATH_10"},
                {Column::Numeric({7, 8, 9}), Column::Numeric({1, 0, 0}), Column::Numeric({1, 1, 0})});
  const Table m = DeriveMortalityColumn(t);
  EXPECT_EQ(m.names(), (std::vector<std::string>{"X", kTargetColumn}));
  EXPECT_EQ(m.column(kTargetColumn).text(0), "Class 1");
  EXPECT_EQ(m.column(kTargetColumn).text(1), "Class 2");
  EXPECT_EQ(m.column(kTargetColumn).text(2), "Class 3");
  const Table bad({"DEATH_5", "DEATH_10"}, {Column::Numeric({1}), Column::Numeric({0})});
  EXPECT_THROW(DeriveMortalityColumn(bad), DataError);
  const Table missing({"DEATH_5", "DEATH_10"}, {Column::Numeric({kNaN}), Column::Numeric({0})});
  EXPECT_THROW(DeriveMortalityColumn(missing), DataError);
}

TEST(BinningTest, PresetExamples) {
  EXPECT_EQ(BinLabel("AGE", 65), "65-69");
  EXPECT_EQ(BinLabel("AGE", 69), "65-69");
  EXPECT_EQ(BinLabel("AGE", 69.5), "70-74");
  EXPECT_EQ(BinLabel("AGE", 104), ">=90");
  EXPECT_EQ(BinLabel("A1C", 7.9), "<8");
  EXPECT_EQ(BinLabel("A1C", 7.95), "8-9");
  EXPECT_EQ(BinLabel("SERUMALB", 3.49), "<3.5");
  EXPECT_EQ(BinLabel("SERUMALB", 3.5), ">=3.5");
  EXPECT_EQ(BinLabel("FRAILITY", 0), "Non-frail");
  EXPECT_EQ(BinLabel("N_IP", 0), "0-5");
  EXPECT_THROW(BinLabel("AGE", 64), DataError);
}

TEST(BinningTest, MissingStaysMissingAndSourceIsDropped) {
  const Table t({"A1C", "Z"}, {Column::Numeric({kNaN, 6}), Column::Numeric({1, 2})});
  const Table b = BinColumn(t, PresetBin("A1C"));
  EXPECT_FALSE(b.has_column("A1C"));
  EXPECT_TRUE(b.column("A1C_RANGE").is_missing(0));
  EXPECT_EQ(b.column("A1C_RANGE").text(1), "<8");
}

TEST(BinningTest, ValidateRejectsBadSpecs) {
  BinningSpec s{"x", "x_R", {0, 1, 1}, {"a", "b"}, true};
  EXPECT_THROW(s.Validate(), ConfigError);
  s = {"x", "x_R", {0, 1, 2}, {"a"}, true};
  EXPECT_THROW(s.Validate(), ConfigError);
  s = {"x", "x_R", {0, 1, 2}, {"a", "a"}, true};
  EXPECT_THROW(s.Validate(), ConfigError);
}

TEST(BinningTest, JsonRoundTripKeepsInfiniteEdges) {
  const BinningSpec& s = PresetBin("A1C");
  const BinningSpec back = BinningSpec::FromJson(s.ToJson());
  EXPECT_EQ(back.edges, s.edges);
  EXPECT_EQ(back.labels, s.labels);
  EXPECT_EQ(back.new_name, s.new_name);
}

// Every value gets exactly the one bin whose interval contains it.
TEST(BinningProperty, EveryValueLandsInItsInterval) {
  Rng rng(11);
  for (const auto& spec : VeteransT2dmPreset().bins) {
    const double lo = std::isinf(spec.edges.front()) ? -10.0 : spec.edges.front();
    const double hi = std::isinf(spec.edges.back()) ? spec.edges[spec.edges.size() - 2] + 50 : spec.edges.back();
    for (int i = 0; i < 300; ++i) {
      const double v = lo + (hi - lo) * rng.UniformDouble();
      const int b = spec.BinOf(v);
      ASSERT_GE(b, 0) << spec.variable << " " << v;
      const bool left_ok = v > spec.edges[b] || (b == 0 && spec.include_lowest && v == spec.edges[0]);
      EXPECT_TRUE(left_ok) << spec.variable << " " << v;
      EXPECT_LE(v, spec.edges[b + 1]) << spec.variable << " " << v;
    }
    EXPECT_EQ(spec.BinOf(spec.edges[1]), 0) << spec.variable;
  }
}

Table Categorical(const std::string& name, const std::vector<std::string>& values) {
  std::vector<std::optional<std::string>> v(values.begin(), values.end());
  return Table({name}, {Column::Categorical(v)});
}

TEST(DummyTest, KMinusOneIndicators) {
  const Table t = Categorical("c", {"a", "b", "c", "a"}).with_column("n", Column::Numeric({1, 2, 3, 4}));
  DummyPlan plan{{"c"}, {"c_a"}};
  const Table d = DummyEncode(t, plan);
  EXPECT_EQ(d.names(), (std::vector<std::string>{"n", "c_b", "c_c"}));
  EXPECT_EQ(d.column("c_b").numeric(), (std::vector<double>{0, 1, 0, 0}));
  EXPECT_EQ(d.column("c_c").numeric(), (std::vector<double>{0, 0, 1, 0}));
}

TEST(DummyTest, EachRowHasAtMostOneIndicator) {
  const Table t = Categorical("c", {"x", "y", "z", "y", "x"});
  const Table d = DummyEncode(t, {{"c"}, {}});
  for (size_t i = 0; i < d.n_rows(); ++i) {
    double s = 0;
    for (size_t j = 0; j < d.n_cols(); ++j) s += d.column(j).number(i);
    EXPECT_EQ(s, 1.0);
  }
  EXPECT_THROW(DummyEncode(t, {{"c"}, {"c_q"}}), ConfigError);
  EXPECT_THROW(DummyEncode(Table({"n"}, {Column::Numeric({1})}), {{"n"}, {}}), ConfigError);
}

TEST(LabelEncodeTest, MapsClassLabels) {
  const Table t = Categorical(kTargetColumn, {"Class 3", "Class 1", "Class 2"});
  const Table e = LabelEncodeTarget(t);
  EXPECT_EQ(e.column(kTargetColumn).numeric(), (std::vector<double>{2, 0, 1}));
  EXPECT_THROW(LabelEncodeTarget(e), ConfigError);
  EXPECT_THROW(LabelEncodeTarget(Categorical(kTargetColumn, {"Class 4"})), DataError);
}

TEST(PresetTest, LookupAndJsonRoundTrip) {
  const Preset& p = PresetByName("veterans-t2dm");
  EXPECT_EQ(p.bins.size(), 13u);
  EXPECT_THROW(PresetByName("nope"), ConfigError);
  const Preset back = Preset::FromJson(p.ToJson());
  EXPECT_EQ(back.ToJson().dump(), p.ToJson().dump());
}

TEST(PresetTest, DecodeMapCoversRace) {
  const Preset& p = VeteransT2dmPreset();
  EXPECT_EQ(p.decode_column, "RACE");
  EXPECT_EQ(p.decode_map.at("1"), "White");
  EXPECT_EQ(p.decode_map.size(), 3u);
}

}  // namespace
}  // namespace tabml
