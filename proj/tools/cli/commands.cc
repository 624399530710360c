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

#include "commands.h"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <map>

#include "tabml/cleaning.h"
#include "tabml/csv.h"
#include "tabml/errors.h"
#include "tabml/learners/grid_search.h"
#include "tabml/learners/registry.h"
#include "tabml/metrics.h"
#include "tabml/sampling.h"
#include "tabml/stats.h"

namespace tabml::cli {
namespace fs = std::filesystem;
namespace {

const std::vector<std::string> kClassLabels = {"Class 1", "Class 2", "Class 3"};

// Runs `f`, prefixing any library error with the stage name.
template <typename F>
auto Stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError(name + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(name + ": " + e.what());
  } catch (const NumericError& e) {
    throw NumericError(name + ": " + e.what());
  }
}

std::string Dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

nlohmann::ordered_json ClassCounts(const std::vector<int>& y) {
  std::vector<int64_t> counts(kClassLabels.size(), 0);
  for (int v : y) {
    if (v < 0 || v >= static_cast<int>(counts.size())) throw DataError("unexpected class code");
    ++counts[v];
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (size_t c = 0; c < counts.size(); ++c) j[kClassLabels[c]] = counts[c];
  return j;
}

// Class codes 0..2 from the categorical target of a cleaned table.
std::vector<int> TargetCodesFromLabels(const Table& t) {
  const Column& c = t.column(kTargetColumn);
  std::vector<int> y(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    const auto it = std::find(kClassLabels.begin(), kClassLabels.end(), c.text(i));
    if (it == kClassLabels.end()) {
      throw DataError("unknown target label '" + c.text(i) + "' at row " + std::to_string(i));
    }
    y[i] = static_cast<int>(it - kClassLabels.begin());
  }
  return y;
}

std::vector<std::string> FeatureNames(const Table& t) {
  std::vector<std::string> names;
  for (const auto& n : t.names()) {
    if (n != kTargetColumn) names.push_back(n);
  }
  return names;
}

int NumClasses(const std::vector<int>& y) {
  return y.empty() ? 0 : *std::max_element(y.begin(), y.end()) + 1;
}

nlohmann::ordered_json ParseJson(const std::string& path) {
  try {
    return nlohmann::ordered_json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace

std::string Fnv1a64Hex(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

void CheckCountChain(const nlohmann::json& counts) {
  auto get = [&](const char* k) -> std::optional<int64_t> {
    if (!counts.contains(k)) return std::nullopt;
    return counts.at(k).get<int64_t>();
  };
  const auto raw = get("raw_rows");
  const auto deduped = get("deduped_rows");
  const auto train = get("train_rows");
  const auto test = get("test_rows");
  const auto balanced = get("balanced_rows");
  if (raw && deduped && *raw < *deduped) throw NumericError("count chain: raw < deduped");
  if (deduped && train && test && *train + *test != *deduped) {
    throw NumericError("count chain: train + test != deduped");
  }
  if (train && balanced && *balanced > *train) throw NumericError("count chain: balanced > train");
}

Runner::Runner(RunConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.Validate();
  fs::create_directories(fs::path(cfg_.out) / "data");
  fs::create_directories(fs::path(cfg_.out) / "reports");
  fs::create_directories(fs::path(cfg_.out) / "models");
  const fs::path manifest = fs::path(cfg_.out) / "manifest.json";
  counts_ = nlohmann::ordered_json::object();
  if (fs::exists(manifest)) {
    const auto j = ParseJson(manifest.string());
    if (j.contains("counts")) counts_ = j.at("counts");
  }
}

const std::vector<std::string>& Runner::Commands() {
  static const std::vector<std::string> kCommands = {
      "prepare", "split", "balance", "analyze", "train", "evaluate", "feature-analysis", "run-all"};
  return kCommands;
}

std::string Runner::DataPath(const std::string& name) const {
  return (fs::path(cfg_.out) / "data" / name).string();
}

std::string Runner::ReportPath(const std::string& name) const {
  return (fs::path(cfg_.out) / "reports" / name).string();
}

std::string Runner::ModelPath() const {
  return (fs::path(cfg_.out) / "models" / "model.json").string();
}

void Runner::WriteReport(const std::string& name, std::string_view content) const {
  WriteFile(ReportPath(name), content);
}

void Runner::WriteJsonReport(const std::string& name, const nlohmann::ordered_json& j) const {
  WriteReport(name, Dump(j));
}

void Runner::SetCount(const std::string& key, const nlohmann::ordered_json& value) {
  counts_[key] = value;
}

void Runner::SaveManifest() const {
  CheckCountChain(counts_);
  nlohmann::ordered_json m;
  m["format"] = "tabml-run-manifest";
  m["version"] = 1;
  m["config"] = cfg_.Snapshot();
  m["counts"] = counts_;
  std::vector<std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(cfg_.out)) {
    if (!entry.is_regular_file()) continue;
    const std::string rel = fs::relative(entry.path(), cfg_.out).generic_string();
    if (rel == "manifest.json" || rel == "timing.json") continue;
    files.push_back(rel);
  }
  std::sort(files.begin(), files.end());
  nlohmann::ordered_json artifacts = nlohmann::ordered_json::object();
  for (const auto& rel : files) {
    artifacts[rel] = Fnv1a64Hex(ReadFile((fs::path(cfg_.out) / rel).string()));
  }
  m["artifacts"] = std::move(artifacts);
  WriteFile((fs::path(cfg_.out) / "manifest.json").string(), Dump(m));
}

void Runner::RecordTiming(const std::string& command, double seconds) const {
  const fs::path path = fs::path(cfg_.out) / "timing.json";
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  if (fs::exists(path)) j = ParseJson(path.string());
  j[command] = seconds;
  WriteFile(path.string(), Dump(j));
}

void Runner::Prepare() {
  if (cfg_.input.empty()) throw ConfigError("prepare: 'input' is not set");
  const Preset& preset = cfg_.preset;
  Table t = Stage("prepare/read", [&] { return ReadCsv(cfg_.input); });
  SetCount("raw_rows", t.n_rows());
  SetCount("raw_columns", t.n_cols());
  t = Stage("prepare/dedup", [&] { return DeduplicateKeepLast(t); });
  SetCount("deduped_rows", t.n_rows());
  WriteJsonReport("missing_summary.json", ComputeMissingSummary(t).ToJson());
  t = Stage("prepare/target", [&] { return DeriveMortalityColumn(t); });
  SetCount("class_counts", ClassCounts(TargetCodesFromLabels(t)));
  t = Stage("prepare/drop", [&] { return DropColumns(t, preset.drop_before_binning); });
  for (const auto& spec : preset.bins) {
    t = Stage("prepare/bin " + spec.variable, [&] { return BinColumn(t, spec); });
  }
  t = Stage("prepare/fill", [&] {
    return FillMissingWithLabel(t, preset.fill_missing_columns, preset.fill_label);
  });
  if (!preset.decode_column.empty()) {
    t = Stage("prepare/decode", [&] {
      return DecodeValues(t, preset.decode_column, preset.decode_map);
    });
  }
  t = t.move_to_end(kTargetColumn);
  SetCount("cleaned_columns", t.n_cols());
  WriteCsv(t, DataPath("cleaned.csv"));
  SaveManifest();
}

void Runner::Split() {
  const Table cleaned = Stage("split/read", [&] { return ReadCsv(DataPath("cleaned.csv")); });
  const std::vector<int> y = Stage("split/target", [&] { return TargetCodesFromLabels(cleaned); });
  const SplitResult split =
      Stage("split/split", [&] { return StratifiedSplit(y, cfg_.test_fraction, cfg_.seed_split()); });
  WriteCsv(cleaned.take_rows(split.train), DataPath("train_raw.csv"));
  WriteCsv(cleaned.take_rows(split.test), DataPath("test_raw.csv"));

  const Table encoded = Stage("split/encode", [&] {
    Table t = DropColumns(cleaned, cfg_.preset.drop_after_analysis);
    t = DummyEncode(t, cfg_.preset.dummy_plan);
    return LabelEncodeTarget(t).move_to_end(kTargetColumn);
  });
  WriteCsv(encoded.take_rows(split.train), DataPath("train.csv"));
  WriteCsv(encoded.take_rows(split.test), DataPath("test.csv"));

  std::vector<int> ytr;
  std::vector<int> yte;
  for (size_t i : split.train) ytr.push_back(y[i]);
  for (size_t i : split.test) yte.push_back(y[i]);
  SetCount("train_rows", split.train.size());
  SetCount("test_rows", split.test.size());
  SetCount("train_class_counts", ClassCounts(ytr));
  SetCount("test_class_counts", ClassCounts(yte));
  SetCount("encoded_inputs", encoded.n_cols() - 1);
  nlohmann::ordered_json report;
  report["test_fraction"] = cfg_.test_fraction;
  report["seed"] = cfg_.seed_split();
  report["train_rows"] = split.train.size();
  report["test_rows"] = split.test.size();
  report["train_class_counts"] = ClassCounts(ytr);
  report["test_class_counts"] = ClassCounts(yte);
  report["encoded_inputs"] = FeatureNames(encoded);
  WriteJsonReport("split.json", report);
  SaveManifest();
}

void Runner::Balance() {
  const Table train = Stage("balance/read", [&] { return ReadCsv(DataPath("train.csv")); });
  const std::vector<int> y = ToLabels(train.column(kTargetColumn));
  const auto keep = Stage("balance/undersample", [&] { return RandomUnderSample(y, cfg_.seed_balance()); });
  std::vector<int> yb;
  for (size_t i : keep) yb.push_back(y[i]);
  WriteCsv(train.take_rows(keep), DataPath("train_balanced.csv"));
  SetCount("balanced_rows", keep.size());
  SetCount("balanced_class_counts", ClassCounts(yb));
  SaveManifest();
}

void Runner::Analyze() {
  const Table t = Stage("analyze/read", [&] { return ReadCsv(DataPath("train_raw.csv")); });
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& v : cfg_.preset.analysis_variables) pairs.emplace_back(v, kTargetColumn);
  for (const auto& p : cfg_.preset.extra_pairs) pairs.push_back(p);
  nlohmann::ordered_json tests = nlohmann::ordered_json::array();
  int failures = 0;
  for (const auto& [a, b] : pairs) {
    nlohmann::ordered_json entry;
    entry["row"] = a;
    entry["column"] = b;
    try {
      const ContingencyTable ct = Crosstab(t, a, b);
      entry["crosstab"] = ct.ToJson();
      entry["test"] = ChiSquareTest(ct).ToJson();
    } catch (const Error& e) {
      // One degenerate pair does not stop the analysis.
      entry["error"] = e.what();
      ++failures;
    }
    tests.push_back(std::move(entry));
  }
  nlohmann::ordered_json report;
  report["rows"] = t.n_rows();
  report["tests"] = std::move(tests);
  report["failures"] = failures;
  WriteJsonReport("bivariate.json", report);
  SaveManifest();
}

void Runner::FeatureAnalysis() {
  const Table t =
      Stage("feature-analysis/read", [&] { return ReadCsv(DataPath("train_balanced.csv")); });
  const auto names = FeatureNames(t);
  const std::vector<int> y = ToLabels(t.column(kTargetColumn));
  const AssociationMatrix m = Stage("feature-analysis/score", [&] {
    return ClassAssociationMatrix(ToMatrix(t, names), names, y, NumClasses(y),
                                  cfg_.association_scorer);
  });
  WriteReport("association_chi2.csv", m.ScoresCsv());
  WriteReport("association_pvalues.csv", m.MaskedPValuesCsv());
  WriteJsonReport("association.json", m.ToJson());
  SaveManifest();
}

void Runner::Train() {
  const Table t = Stage("train/read", [&] { return ReadCsv(DataPath("train_balanced.csv")); });
  std::vector<std::string> features = FeatureNames(t);
  const std::vector<int> y = ToLabels(t.column(kTargetColumn));
  const int C = NumClasses(y);
  Matrix X = Stage("train/matrix", [&] { return ToMatrix(t, features); });
  if (cfg_.selector) {
    if (cfg_.selector->k > static_cast<int>(features.size())) {
      throw ConfigError("train: selector.k = " + std::to_string(cfg_.selector->k) +
                        " exceeds the " + std::to_string(features.size()) + " encoded inputs");
    }
    const SelectionResult sel = Stage("train/select", [&] {
      return SelectKBest(X, features, y, C, cfg_.selector->method, cfg_.selector->k);
    });
    WriteJsonReport("selection.json", sel.ToJson());
    features = sel.selected;
    X = ToMatrix(t, features);
  }
  nlohmann::ordered_json params = cfg_.model.params;
  if (cfg_.model.grid) {
    const FoldPlan folds = StratifiedKFold(y, cfg_.model.cv_folds, cfg_.seed_model(), true);
    const GridSearchReport report = Stage("train/grid-search", [&] {
      return GridSearchCV(cfg_.model.family, *cfg_.model.grid, params, folds, X, y,
                          cfg_.seed_model());
    });
    WriteJsonReport("grid_search.json", report.ToJson());
    params = report.best_params();
  }
  auto model = Stage("train/fit", [&] {
    auto m = MakeClassifier(cfg_.model.family, params, cfg_.seed_model());
    m->Fit(X, y);
    return m;
  });
  nlohmann::ordered_json doc;
  doc["format"] = "tabml-pipeline-model";
  doc["features"] = features;
  doc["classes"] = std::vector<std::string>(kClassLabels.begin(), kClassLabels.begin() + C);
  doc["model"] = model->ToJson();
  WriteFile(ModelPath(), Dump(doc));
  SetCount("model_features", features.size());
  SaveManifest();
}

void Runner::Evaluate() {
  const auto doc = Stage("evaluate/model", [&] { return ParseJson(ModelPath()); });
  const auto features = doc.at("features").get<std::vector<std::string>>();
  const auto labels = doc.at("classes").get<std::vector<std::string>>();
  const auto model = Stage("evaluate/model", [&] { return ClassifierFromJson(doc.at("model")); });
  const Table test = Stage("evaluate/read", [&] { return ReadCsv(DataPath("test.csv")); });

  // Predictions are computed from the inputs alone, before the test target
  // is read.
  const Matrix X = Stage("evaluate/matrix", [&] { return ToMatrix(test, features); });
  const Matrix proba = model->PredictProba(X);
  const Labels pred = model->Predict(X);
  const Matrix scores = model->family() == "ovr" ? model->DecisionScores(X) : proba;
  const int C = model->n_classes();
  {
    std::string csv = "row,predicted";
    for (const auto& l : labels) csv += ",p_" + l;
    csv += "\n";
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      csv += std::to_string(i) + "," + labels[pred[i]];
      for (int c = 0; c < C; ++c) csv += "," + FormatNumber(proba(i, c));
      csv += "\n";
    }
    WriteReport("predictions.csv", csv);
  }

  const std::vector<int> y = ToLabels(test.column(kTargetColumn));
  const ConfusionMatrix cm = ComputeConfusionMatrix(y, pred, C);
  WriteReport("confusion_matrix.csv", cm.ToCsv(labels));
  const ClassificationReport report = MakeClassificationReport(cm, labels);
  WriteReport("classification_report.txt", report.ToText());
  WriteJsonReport("classification_report.json", report.ToJson());
  const KappaResult kappa = CohenKappa(cm);
  WriteJsonReport("kappa.json", kappa.ToJson());

  std::vector<std::vector<int>> truths(C, std::vector<int>(y.size()));
  std::vector<std::vector<double>> class_scores(C, std::vector<double>(y.size()));
  nlohmann::ordered_json auc;
  auc["scores"] = model->family() == "ovr" ? "decision" : "probability";
  auc["per_class"] = nlohmann::ordered_json::object();
  for (int c = 0; c < C; ++c) {
    for (size_t i = 0; i < y.size(); ++i) {
      truths[c][i] = y[i] == c ? 1 : 0;
      class_scores[c][i] = scores(static_cast<Eigen::Index>(i), c);
    }
    const RocCurve roc = Stage("evaluate/roc", [&] { return ComputeRoc(truths[c], class_scores[c]); });
    WriteReport("roc_class_" + std::to_string(c + 1) + ".csv", roc.ToCsv());
    auc["per_class"][labels[c]] = roc.auc;
  }
  const RocCurve micro = Stage("evaluate/roc", [&] { return MicroAverageRoc(truths, class_scores); });
  WriteReport("roc_micro.csv", micro.ToCsv());
  auc["micro"] = micro.auc;
  WriteJsonReport("auc.json", auc);

  nlohmann::ordered_json summary;
  summary["family"] = model->family();
  summary["n_features"] = features.size();
  summary["test_rows"] = y.size();
  summary["accuracy"] = report.accuracy;
  summary["kappa"] = kappa.kappa;
  summary["auc"] = auc;
  WriteJsonReport("evaluation.json", summary);
  SaveManifest();
}

void Runner::RunAll() {
  Prepare();
  Split();
  Analyze();
  Balance();
  FeatureAnalysis();
  Train();
  Evaluate();
}

void Runner::Run(const std::string& command) {
  const auto start = std::chrono::steady_clock::now();
  if (command == "prepare") {
    Prepare();
  } else if (command == "split") {
    Split();
  } else if (command == "balance") {
    Balance();
  } else if (command == "analyze") {
    Analyze();
  } else if (command == "feature-analysis") {
    FeatureAnalysis();
  } else if (command == "train") {
    Train();
  } else if (command == "evaluate") {
    Evaluate();
  } else if (command == "run-all") {
    RunAll();
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  RecordTiming(command, elapsed.count());
}

}  // namespace tabml::cli
