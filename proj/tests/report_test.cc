/*
 * Copyright 2026 The citeval Authors.
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

#include "citeval/report.h"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "citeval/errors.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace citeval {
namespace {

using testing::read_file;
using testing::TempDir;

ProtocolResult classification_row(std::string metric, double a, double b, double c) {
  ProtocolResult r;
  r.metric_name = std::move(metric);
  ClassificationResult cls;
  cls.settings = {{"FS_vs_NS", a, 10, 10}, {"FS_vs_PS", b, 10, 10}, {"PS_vs_NS", c, 10, 10}};
  const std::vector<std::optional<double>> aucs = {a, b, c};
  cls.overall = macro_average(aucs);
  r.classification = cls;
  return r;
}

ProtocolResult full_result(std::string metric, const EvaluationConfig& config) {
  ProtocolResult r = classification_row(std::move(metric), 0.9, 0.7, 0.8);
  r.correlation = CorrelationResult{0.5, std::nullopt, -0.25, 40};
  RetrievalResult ret;
  ret.cutoffs = config.ndcg_cutoffs;
  ret.mean_ndcg = {0.91, std::nullopt, 0.875};
  ret.per_statement = {{"s1", 3, false, {1.0, 1.0, 1.0}}, {"s2", 2, true, {0.0, 0.0, 0.0}}};
  ret.evaluated = 1;
  ret.zero_ideal_excluded = 1;
  r.retrieval = ret;
  r.config_fingerprint = config_fingerprint(config);
  return r;
}

RunManifest manifest_for(const EvaluationConfig& config, std::vector<std::string> metrics) {
  RunManifest m;
  m.harness_version = harness_version();
  m.corpus_fingerprint = std::string(64, 'a');
  m.scores_fingerprint = std::string(64, 'b');
  m.config_fingerprint = config_fingerprint(config);
  m.metric_names = std::move(metrics);
  m.config = config;
  return m;
}

TEST(RenderTest, ReportedRowsReproduce) {
  const std::vector<ProtocolResult> rows = {classification_row("metric_a", 0.9261, 0.8231, 0.7390),
                                            classification_row("metric_b", 0.9155, 0.7594, 0.7872)};
  const std::string csv = render_table(rows, Protocol::kClassification, TableFormat::kCsv);
  EXPECT_EQ(csv,
            "Metric,FS-vs-NS,FS-vs-PS,PS-vs-NS,Overall\n"
            "metric_a,92.61,82.31,73.90,82.94\n"
            "metric_b,91.55,75.94,78.72,82.07\n");
}

TEST(RenderTest, CorrelationCsvHasFourColumnsAndNa) {
  EvaluationConfig config;
  const std::vector<ProtocolResult> rows = {full_result("m", config)};
  const std::string csv = render_table(rows, Protocol::kCorrelation, TableFormat::kCsv);
  EXPECT_EQ(csv, "Metric,Pearson,Spearman,Kendall\nm,0.500,n/a,-0.250\n");
}

TEST(RenderTest, MarkdownRetrievalAndSorting) {
  EvaluationConfig config;
  const std::vector<ProtocolResult> rows = {full_result("zz", config), full_result("aa", config)};
  const std::string md = render_table(rows, Protocol::kRetrieval, TableFormat::kMarkdown);
  EXPECT_EQ(md,
            "| Metric | NDCG@5 | NDCG@10 | NDCG@20 |\n"
            "|---|---:|---:|---:|\n"
            "| aa | 0.910 | n/a | 0.875 |\n"
            "| zz | 0.910 | n/a | 0.875 |\n");
}

TEST(RenderTest, JsonUsesNullForUndefined) {
  EvaluationConfig config;
  const std::vector<ProtocolResult> rows = {full_result("m", config)};
  const std::string js = render_table(rows, Protocol::kCorrelation, TableFormat::kJson);
  EXPECT_NE(js.find("\"Spearman\": null"), std::string::npos) << js;
  EXPECT_NE(js.find("\"Pearson\": 0.5"), std::string::npos) << js;
}

TEST(RenderTest, NegativeZeroIsNormalized) {
  ProtocolResult r;
  r.metric_name = "m";
  r.correlation = CorrelationResult{-1e-9, 0.0, -0.0004, 3};
  EXPECT_EQ(render_row(r, Protocol::kCorrelation),
            (std::vector<std::string>{"0.000", "0.000", "0.000"}));
}

TEST(RenderTest, ParseErrors) {
  EXPECT_EQ(parse_table_format("csv"), TableFormat::kCsv);
  EXPECT_THROW(parse_table_format("xlsx"), std::invalid_argument);
  EXPECT_EQ(parse_protocol("retrieval"), Protocol::kRetrieval);
  EXPECT_THROW(parse_protocol("ranking"), std::invalid_argument);
  EXPECT_THROW(render_table({}, Protocol::kCorrelation, TableFormat::kCsv), std::invalid_argument);
}

TEST(ExportTest, RoundTripAndByteIdenticalReexport) {
  EvaluationConfig config;
  config.seed = 5;
  const std::vector<ProtocolResult> results = {full_result("a", config), full_result("b", config)};
  const RunManifest manifest = manifest_for(config, {"a", "b"});
  TempDir dir;
  export_run(results, manifest, dir / "one");
  const LoadedRun loaded = load_run(dir / "one");
  EXPECT_EQ(loaded.results, results);
  EXPECT_EQ(loaded.manifest, manifest);
  export_run(loaded.results, loaded.manifest, dir / "two");
  EXPECT_EQ(read_file(dir / "one" / "results.jsonl"), read_file(dir / "two" / "results.jsonl"));
  EXPECT_EQ(read_file(dir / "one" / "manifest.json"), read_file(dir / "two" / "manifest.json"));
}

TEST(ExportTest, ManifestFields) {
  EvaluationConfig config;
  RunManifest manifest = manifest_for(config, {"m"});
  manifest.created = "2026-01-01T00:00:00Z";
  const std::string js = manifest_to_json(manifest);
  for (const char* key : {"harness_version", "corpus_sha256", "config_sha256", "scores_sha256",
                          "metrics", "created", "config"}) {
    EXPECT_NE(js.find(std::string("\"") + key + "\""), std::string::npos) << key;
  }
}

TEST(ExportTest, FingerprintMismatchRejected) {
  EvaluationConfig config;
  EvaluationConfig other = config;
  other.seed = 1;
  const std::vector<ProtocolResult> results = {full_result("m", other)};
  TempDir dir;
  EXPECT_THROW(export_run(results, manifest_for(config, {"m"}), dir / "out"), DataError);

  RunManifest tampered = manifest_for(config, {"m"});
  tampered.config_fingerprint = std::string(64, '0');
  const std::vector<ProtocolResult> ok = {full_result("m", config)};
  EXPECT_THROW(export_run(ok, tampered, dir / "out2"), DataError);
}

TEST(ExportTest, LoadRejectsEditedConfig) {
  EvaluationConfig config;
  const std::vector<ProtocolResult> results = {full_result("m", config)};
  TempDir dir;
  export_run(results, manifest_for(config, {"m"}), dir.path());
  std::string manifest = read_file(dir / "manifest.json");
  const auto pos = manifest.find("\"seed\": 0");
  ASSERT_NE(pos, std::string::npos) << manifest;
  manifest.replace(pos, 9, "\"seed\": 3");
  testing::write_file(dir / "manifest.json", manifest);
  EXPECT_THROW(load_run(dir.path()), DataError);
}

}  // namespace
}  // namespace citeval
