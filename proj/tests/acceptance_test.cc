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

// Acceptance suite. Prints one line per criterion and exits non-zero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "citeval/chunker.h"
#include "citeval/corpus.h"
#include "citeval/protocols.h"
#include "citeval/report.h"
#include "citeval/stats.h"
#include "citeval/text.h"
#include "cli.h"
#include "oracles.h"
#include "test_util.h"

namespace citeval::acceptance {
namespace {

using Clock = std::chrono::steady_clock;
using testing::make_study;
using testing::oracle_scorer;
using testing::score_required;

struct Verdict {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), pattern, v);
  return buffer;
}

Verdict macro_average_rows() {
  Verdict v;
  struct Row {
    double a, b, c;
    const char* expected;
  };
  const Row rows[] = {{92.61, 82.31, 73.90, "82.94"}, {91.55, 75.94, 78.72, "82.07"}};
  const auto start = Clock::now();
  std::vector<std::string> got;
  for (const Row& row : rows) {
    ProtocolResult r;
    r.metric_name = "m";
    ClassificationResult c;
    c.settings = {{"FS_vs_NS", row.a / 100, 1, 1},
                  {"FS_vs_PS", row.b / 100, 1, 1},
                  {"PS_vs_NS", row.c / 100, 1, 1}};
    const std::vector<std::optional<double>> aucs = {row.a / 100, row.b / 100, row.c / 100};
    c.overall = macro_average(aucs);
    r.classification = c;
    got.push_back(render_row(r, Protocol::kClassification).back());
  }
  const double ms = millis_since(start);
  for (std::size_t i = 0; i < got.size(); ++i) {
    v.check(got[i] == rows[i].expected, "got " + got[i] + ", want " + rows[i].expected);
  }
  v.check(ms < 1.0, "took " + fmt("%.3f", ms) + " ms");
  if (v.pass) v.detail = got[0] + ", " + got[1] + " in " + fmt("%.3f", ms) + " ms";
  return v;
}

Verdict support_counts() {
  Verdict v;
  std::mt19937_64 rng(0);
  const auto study =
      make_study(testing::reference_proportioned_labels(testing::kReferenceTotal, rng));
  testing::TempDir dir;
  {
    std::ofstream file(dir / "corpus.jsonl");
    write_corpus(study.corpus, file);
  }
  std::ostringstream out, err;
  const int code = cli::run({"ingest", "--corpus", (dir / "corpus.jsonl").string()}, out, err);
  v.check(code == cli::kExitOk, "exit " + std::to_string(code) + ": " + err.str());
  for (const char* row : {"| Full Support | 6,616 |", "| Partial Support | 1,445 |",
                          "| No Support | 4,620 |", "| Total | 12,681 |"}) {
    v.check(out.str().find(row) != std::string::npos, std::string("missing row ") + row);
  }
  if (v.pass) v.detail = "6,616 / 1,445 / 4,620 / 12,681 (synthetic corpus)";
  return v;
}

// Evaluates all metrics on a synthetic study with reference label proportions.
std::vector<ProtocolResult> evaluate_study(const testing::SyntheticStudy& study,
                                           const ScoreTable& table,
                                           const EvaluationConfig& config) {
  const std::vector<std::string> metrics(table.metric_names().begin(), table.metric_names().end());
  return evaluate(study.corpus, study.chunks, table, metrics, {}, config);
}

Verdict oracle_suite() {
  Verdict v;
  std::mt19937_64 rng(0);
  const auto study = make_study(testing::reference_proportioned_labels(10000, rng));
  EvaluationConfig config;
  const auto start = Clock::now();
  const ScoreTable table = score_required(study, config, "oracle", oracle_scorer(study, config));
  const ProtocolResult r = evaluate_study(study, table, config).at(0);
  const double ms = millis_since(start);
  auto near_one = [&](const std::optional<double>& x, const std::string& what) {
    v.check(x.has_value() && std::abs(*x - 1.0) <= 1e-9,
            what + " = " + (x ? fmt("%.12f", *x) : std::string("undefined")));
  };
  near_one(r.correlation->pearson, "pearson");
  near_one(r.correlation->spearman, "spearman");
  near_one(r.correlation->kendall, "kendall");
  for (const SettingResult& s : r.classification->settings) near_one(s.auc, s.setting);
  for (std::size_t i = 0; i < r.retrieval->cutoffs.size(); ++i) {
    near_one(r.retrieval->mean_ndcg[i], "NDCG@" + std::to_string(r.retrieval->cutoffs[i]));
  }
  v.check(ms < 1000.0, "took " + fmt("%.1f", ms) + " ms");
  if (v.pass) v.detail = "10000 pairs, all 1.0, " + fmt("%.1f", ms) + " ms";
  return v;
}

Verdict null_suite() {
  Verdict v;
  std::mt19937_64 rng(0);
  const auto study = make_study(testing::reference_proportioned_labels(10000, rng));
  EvaluationConfig config;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ScoreTable table =
      score_required(study, config, "random", [&](const PairKey&) { return u(rng); });
  const ProtocolResult r = evaluate_study(study, table, config).at(0);
  std::ostringstream summary;
  auto within = [&](const std::optional<double>& x, double lo, double hi, const std::string& what) {
    summary << what << '=' << (x ? fmt("%.4f", *x) : std::string("n/a")) << ' ';
    v.check(x.has_value() && *x >= lo && *x <= hi,
            what + " = " + (x ? fmt("%.4f", *x) : std::string("undefined")) + " outside [" +
                fmt("%.2f", lo) + ", " + fmt("%.2f", hi) + "]");
  };
  within(r.correlation->pearson, -0.03, 0.03, "pearson");
  within(r.correlation->spearman, -0.03, 0.03, "spearman");
  within(r.correlation->kendall, -0.03, 0.03, "kendall");
  for (const SettingResult& s : r.classification->settings) within(s.auc, 0.48, 0.52, s.setting);
  if (v.pass) v.detail = summary.str();
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t np = 1 + rng() % 200;
    const std::size_t nn = 1 + rng() % 200;
    const std::size_t levels = 2 + rng() % 20;
    std::vector<double> pos(np), neg(nn);
    for (double& x : pos) x = static_cast<double>(rng() % levels);
    for (double& x : neg) x = static_cast<double>(rng() % levels);
    const double got = stats::roc_auc(pos, neg);
    const double want = oracle::roc_auc_bruteforce(pos, neg);
    v.check(got == want, "roc_auc trial " + std::to_string(trial) + ": " + fmt("%.17g", got) +
                             " vs " + fmt("%.17g", want));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 49;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng() % 3);
      y[i] = static_cast<double>(rng() % 8);
    }
    const auto got = stats::kendall_tau_b(x, y);
    const auto want = oracle::kendall_tau_b_bruteforce(x, y);
    v.check(got.has_value() == want.has_value() && (!got || *got == *want),
            "kendall trial " + std::to_string(trial));
    const auto rho = stats::spearman(x, y);
    const double direct =
        oracle::pearson_direct(oracle::ranks_by_counting(x), oracle::ranks_by_counting(y));
    if (rho) {
      v.check(std::abs(*rho - direct) <= 1e-12, "spearman trial " + std::to_string(trial));
    }
  }
  if (v.pass) v.detail = "200 AUC, 200 Kendall, 200 Spearman instances";
  return v;
}

Verdict ndcg_hand_check() {
  Verdict v;
  const std::vector<int> backwards = {0, 1, 2};
  const double got = stats::ndcg_at_n(backwards, 5);
  v.check(std::abs(got - oracle::ndcg_direct(backwards, 5)) <= 1e-9, "oracle mismatch");
  v.check(std::abs(got - 0.58688267143572) <= 1e-9, "got " + fmt("%.14f", got));
  std::mt19937_64 rng(0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> labels(1 + rng() % 30);
    for (int& l : labels) l = static_cast<int>(rng() % 3);
    if (std::none_of(labels.begin(), labels.end(), [](int l) { return l > 0; })) continue;
    std::sort(labels.rbegin(), labels.rend());
    for (std::size_t n : {1, 5, 10, 20}) {
      v.check(stats::ndcg_at_n(labels, n) == 1.0, "non-increasing ranking below 1.0");
      v.check(stats::ndcg_at_n(labels, n, stats::Gain::kLinear) == 1.0,
              "non-increasing ranking below 1.0 (linear gain)");
    }
  }
  if (v.pass) v.detail = "NDCG@5([0,1,2]) = " + fmt("%.14f", got);
  return v;
}

Verdict monotone_invariance() {
  Verdict v;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<SupportLevel> labels(20 + rng() % 200);
    for (SupportLevel& l : labels) l = kAllSupportLevels[rng() % 3];
    const auto study = make_study(labels, 2 + rng() % 6);
    EvaluationConfig config;
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    // Coarse grid so ties occur.
    ScoreTable base, transformed;
    for (const PairKey& key : required_score_keys(study.corpus, study.chunks, config)) {
      const double x = std::round(u(rng) * 4) / 4;
      base.insert("m", key, x);
      transformed.insert("m", key, std::exp(x));
    }
    const ProtocolResult a = evaluate_study(study, base, config).at(0);
    const ProtocolResult b = evaluate_study(study, transformed, config).at(0);
    auto same = [&](const std::optional<double>& x, const std::optional<double>& y,
                    const std::string& what) {
      v.check(x.has_value() == y.has_value() && (!x || std::abs(*x - *y) <= 1e-12),
              what + " changed on seed " + std::to_string(seed));
    };
    same(a.correlation->spearman, b.correlation->spearman, "spearman");
    same(a.correlation->kendall, b.correlation->kendall, "kendall");
    for (std::size_t s = 0; s < a.classification->settings.size(); ++s) {
      same(a.classification->settings[s].auc, b.classification->settings[s].auc,
           a.classification->settings[s].setting);
    }
    const auto& pa = a.retrieval->per_statement;
    const auto& pb = b.retrieval->per_statement;
    v.check(pa.size() == pb.size(), "retrieval pool count changed");
    for (std::size_t i = 0; i < pa.size() && i < pb.size(); ++i) {
      for (std::size_t c = 0; c < pa[i].ndcg.size(); ++c) {
        same(pa[i].ndcg[c], pb[i].ndcg[c], "NDCG of " + pa[i].statement_id);
      }
    }
  }
  if (v.pass) v.detail = "50 seeded corpora";
  return v;
}

std::string make_sentence(std::mt19937_64& rng, std::size_t words) {
  static const char* vocab[] = {"colony", "forager",  "nectar", "hive",   "queen", "pollen",
                                "wax",    "drone",    "brood",  "signal", "dance", "field",
                                "flower", "distance", "angle",  "sun"};
  std::string s = "The";
  for (std::size_t i = 1; i < words; ++i) {
    s += ' ';
    s += vocab[rng() % 16];
    if (rng() % 13 == 0) s += std::to_string(rng() % 1000);
  }
  s += (rng() % 5 == 0) ? "!" : ".";
  return s;
}

Verdict chunker_property() {
  Verdict v;
  std::mt19937_64 rng(0);
  std::size_t chunks_seen = 0;
  for (int doc = 0; doc < 100; ++doc) {
    std::vector<std::string> sentences;
    std::string text;
    const std::size_t count = 1 + rng() % 40;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t words = (rng() % 12 == 0) ? 151 + rng() % 120 : 2 + rng() % 45;
      sentences.push_back(make_sentence(rng, words));
      text += sentences.back();
      text += (rng() % 4 == 0) ? "\n\n" : (rng() % 2 ? " " : "  ");
    }
    Corpus corpus;
    const std::string cid = "c" + std::to_string(doc);
    corpus.citations.push_back({cid, text, std::nullopt});
    corpus.statements.push_back({"s_full", "r", "full"});
    corpus.statements.push_back({"s_partial", "r", "partial"});
    corpus.statements.push_back({"s_none", "r", "none"});
    const std::string& a = sentences[rng() % count];
    const std::string& b = sentences[rng() % count];
    // A reworded evidence sentence exercises the best-match fallback.
    corpus.pairs.push_back({"s_full", cid, SupportLevel::kFull, {a, "reworded " + b}});
    corpus.pairs.push_back({"s_partial", cid, SupportLevel::kPartial, {"something unrelated"}});
    corpus.pairs.push_back({"s_none", cid, SupportLevel::kNone, {}});

    const auto chunks = chunk_document(corpus.citations[0], kDefaultMaxWords);
    chunks_seen += chunks.size();
    std::string joined;
    for (const Chunk& c : chunks) {
      v.check(c.word_count <= kDefaultMaxWords || split_sentences(c.text).size() == 1,
              "oversize multi-sentence chunk in document " + std::to_string(doc));
      joined += c.text + ' ';
    }
    v.check(normalize_whitespace(joined) == normalize_whitespace(text),
            "round trip failed on document " + std::to_string(doc));

    const auto labeled = label_corpus(corpus);
    std::map<std::string, std::size_t> positives;
    for (const LabeledChunk& lc : labeled) {
      if (lc.label != SupportLevel::kNone) ++positives[lc.statement_id];
    }
    v.check(positives["s_full"] >= 1, "FULL pair without labeled chunk in " + cid);
    v.check(positives["s_partial"] >= 1, "PARTIAL pair without labeled chunk in " + cid);
    v.check(positives["s_none"] == 0, "NONE pair labeled in " + cid);
  }
  if (v.pass) v.detail = "100 documents, " + std::to_string(chunks_seen) + " chunks";
  return v;
}

Verdict determinism() {
  Verdict v;
  const std::string corpus =
      (std::filesystem::path(CITEVAL_DATA_DIR) / "toy_corpus.jsonl").string();
  testing::TempDir dir;
  std::vector<std::string> exported;
  for (const char* run : {"a", "b"}) {
    const std::filesystem::path root = dir / run;
    std::filesystem::create_directories(root);
    const std::vector<std::vector<std::string>> steps = {
        {"chunk", "--corpus", corpus, "--out", (root / "chunks.jsonl").string()},
        {"score", "--corpus", corpus, "--chunks", (root / "chunks.jsonl").string(), "--out",
         (root / "scores.jsonl").string()},
        {"eval", "--corpus", corpus, "--chunks", (root / "chunks.jsonl").string(), "--scores",
         (root / "scores.jsonl").string(), "--out", (root / "run").string()}};
    for (const auto& step : steps) {
      std::ostringstream out, err;
      const int code = cli::run(step, out, err);
      v.check(code == cli::kExitOk, step[0] + " failed: " + err.str());
    }
    exported.push_back(testing::read_file(root / "chunks.jsonl") +
                       testing::read_file(root / "scores.jsonl") +
                       testing::read_file(root / "run" / "results.jsonl") +
                       testing::read_file(root / "run" / "manifest.json"));
  }
  v.check(!exported[0].empty() && exported[0] == exported[1], "exports differ");
  if (v.pass) v.detail = std::to_string(exported[0].size()) + " bytes identical";
  return v;
}

}  // namespace
}  // namespace citeval::acceptance

int main() {
  using citeval::acceptance::Verdict;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"macro-average reproduction", citeval::acceptance::macro_average_rows},
      {"support-level counts", citeval::acceptance::support_counts},
      {"oracle suite", citeval::acceptance::oracle_suite},
      {"null suite", citeval::acceptance::null_suite},
      {"oracle equivalence", citeval::acceptance::oracle_equivalence},
      {"NDCG hand-check", citeval::acceptance::ndcg_hand_check},
      {"monotone invariance", citeval::acceptance::monotone_invariance},
      {"chunker property", citeval::acceptance::chunker_property},
      {"determinism", citeval::acceptance::determinism},
  };
  int failures = 0;
  for (const auto& [name, criterion] : criteria) {
    Verdict v;
    try {
      v = criterion();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << name << ": " << v.detail << '\n';
  }
  std::cout << (criteria.size() - failures) << '/' << criteria.size() << " criteria passed\n";
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
