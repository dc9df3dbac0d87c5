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

#include "cli.h"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "CLI11.hpp"
#include "citeval/chunker.h"
#include "citeval/corpus.h"
#include "citeval/errors.h"
#include "citeval/protocols.h"
#include "citeval/report.h"
#include "citeval/scoring.h"
#include "json.hpp"

namespace citeval::cli {
namespace {

using json = nlohmann::json;

// Thrown for bad flag values detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string corpus;
  std::string chunks;
  std::string scores;
  std::string out;
  std::string requests;
  std::string results;
  std::vector<std::string> metrics;
  std::string protocol = "all";
  std::size_t max_words = kDefaultMaxWords;
  double jaccard_threshold = kDefaultJaccardThreshold;
  std::vector<std::size_t> cutoffs{5, 10, 20};
  std::string pool_policy = "cited_docs";
  std::size_t distractors = 0;
  std::uint64_t seed = 0;
  std::string aggregation = "chunk_level";
  std::string gain = "exponential";
  std::string kendall = "tau_b";
  bool include_zero_ideal = false;
  std::string format = "markdown";
};

EvaluationConfig make_config(const Options& o) {
  EvaluationConfig config;
  try {
    config.ndcg_cutoffs = o.cutoffs;
    config.gain = stats::parse_gain(o.gain);
    config.kendall_variant = stats::parse_kendall_variant(o.kendall);
    config.jaccard_threshold = o.jaccard_threshold;
    config.chunk_max_words = o.max_words;
    config.aggregation = parse_aggregation_level(o.aggregation);
    config.pool_policy = parse_pool_policy(o.pool_policy);
    config.distractors = o.distractors;
    config.seed = o.seed;
    config.include_zero_ideal = o.include_zero_ideal;
    validate_config(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

TableFormat format_of(const Options& o) {
  try {
    return parse_table_format(o.format);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

std::string with_thousands(std::size_t value) {
  std::string digits = std::to_string(value);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

void render_counts(const CountsBySupportLevel& counts, TableFormat format, std::ostream& out) {
  const std::vector<std::pair<std::string, std::size_t>> rows = {
      {"Full Support", counts.full},
      {"Partial Support", counts.partial},
      {"No Support", counts.none},
      {"Total", counts.total}};
  switch (format) {
    case TableFormat::kMarkdown:
      out << "| Human Judgment | # Statement-Citation Pair |\n|---|---:|\n";
      for (const auto& [name, n] : rows)
        out << "| " << name << " | " << with_thousands(n) << " |\n";
      break;
    case TableFormat::kCsv:
      out << "judgment,pairs\n";
      for (const auto& [name, n] : rows) out << name << ',' << n << '\n';
      break;
    case TableFormat::kJson:
      out << json{{"full", counts.full},
                  {"partial", counts.partial},
                  {"none", counts.none},
                  {"total", counts.total}}
                 .dump(2)
          << '\n';
      break;
  }
}

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  const TableFormat format = format_of(o);
  const Corpus corpus = read_corpus(std::filesystem::path(o.corpus));
  const ValidationReport report = validate(corpus);
  if (!report.ok()) {
    for (const Violation& v : report.violations) {
      err << "violation: " << v.locator << ": " << v.message << '\n';
    }
    err << report.violations.size() << " violation(s)\n";
    return kExitData;
  }
  out << "statements: " << corpus.statements.size() << ", citations: " << corpus.citations.size()
      << ", pairs: " << corpus.pairs.size() << "\n\n";
  render_counts(corpus_stats(corpus), format, out);
  return kExitOk;
}

// Rows of the score request file: the chunk dump schema plus the statement
// the chunk must be scored against.
void write_requests(const Corpus& corpus, std::span<const LabeledChunk> chunks,
                    const std::set<PairKey>& keys, std::ostream& out) {
  const CorpusIndex index(corpus);
  std::map<std::pair<std::string_view, std::size_t>, const Chunk*> by_unit;
  for (const LabeledChunk& lc : chunks)
    by_unit.emplace(std::pair<std::string_view, std::size_t>{lc.chunk.citation_id, lc.chunk.index},
                    &lc.chunk);
  for (const PairKey& key : keys) {
    const Statement* statement = index.find_statement(key.statement_id);
    auto chunk = by_unit.find({key.citation_id, key.chunk_index});
    if (statement == nullptr || chunk == by_unit.end()) {
      throw DataError("cannot resolve score request " + to_string(key));
    }
    json record = {{"citation_id", key.citation_id},   {"index", key.chunk_index},
                   {"text", chunk->second->text},      {"word_count", chunk->second->word_count},
                   {"statement_id", key.statement_id}, {"statement_text", statement->text}};
    out << record.dump() << '\n';
  }
}

int cmd_chunk(const Options& o, std::ostream& out, std::ostream&) {
  const EvaluationConfig config = make_config(o);
  const Corpus corpus = load_corpus(std::filesystem::path(o.corpus));
  const std::vector<LabeledChunk> labeled =
      label_corpus(corpus, config.chunk_max_words, config.jaccard_threshold);
  {
    std::ofstream file = open_output(o.out);
    write_labeled_chunks(labeled, file);
  }
  std::map<SupportLevel, std::size_t> by_label;
  for (const LabeledChunk& lc : labeled) ++by_label[lc.label];
  out << "labeled chunks: " << labeled.size() << " (full " << by_label[SupportLevel::kFull]
      << ", partial " << by_label[SupportLevel::kPartial] << ", none "
      << by_label[SupportLevel::kNone] << ")\n";
  if (!o.requests.empty()) {
    const std::set<PairKey> keys = required_score_keys(corpus, labeled, config);
    std::ofstream file = open_output(o.requests);
    write_requests(corpus, labeled, keys, file);
    out << "score requests: " << keys.size() << '\n';
  }
  return kExitOk;
}

int cmd_score(const Options& o, std::ostream& out, std::ostream&) {
  const EvaluationConfig config = make_config(o);
  std::vector<std::string> metrics = o.metrics;
  if (metrics.empty()) metrics = baseline_names();
  std::vector<std::pair<std::string, BaselineFn>> baselines;
  for (const std::string& name : metrics) {
    auto fn = find_baseline(name);
    if (!fn)
      throw UsageError("unknown baseline metric '" + name + "' (built-in: jaccard, token_f1)");
    baselines.emplace_back(name, *fn);
  }
  const Corpus corpus = load_corpus(std::filesystem::path(o.corpus));
  const std::vector<LabeledChunk> labeled = read_labeled_chunks(std::filesystem::path(o.chunks));
  const std::set<PairKey> keys = required_score_keys(corpus, labeled, config);

  const CorpusIndex index(corpus);
  std::map<std::pair<std::string_view, std::size_t>, std::string_view> chunk_text;
  for (const LabeledChunk& lc : labeled) {
    chunk_text.emplace(
        std::pair<std::string_view, std::size_t>{lc.chunk.citation_id, lc.chunk.index},
        lc.chunk.text);
  }
  ScoreTable table;
  for (const PairKey& key : keys) {
    const Statement* statement = index.find_statement(key.statement_id);
    if (statement == nullptr) throw DataError("dangling statement_id " + key.statement_id);
    const std::string_view text = chunk_text.at({key.citation_id, key.chunk_index});
    for (const auto& [name, fn] : baselines) table.insert(name, key, fn(statement->text, text));
  }
  std::ofstream file = open_output(o.out);
  write_scores(table, file);
  out << "scores written: " << table.size() << " (" << keys.size() << " pairs x "
      << baselines.size() << " metric(s))\n";
  return kExitOk;
}

void render_results(std::span<const ProtocolResult> results, ProtocolSelection selection,
                    TableFormat format, std::ostream& out) {
  const std::vector<std::pair<Protocol, bool>> protocols = {
      {Protocol::kCorrelation, selection.correlation},
      {Protocol::kClassification, selection.classification},
      {Protocol::kRetrieval, selection.retrieval}};
  bool first = true;
  for (const auto& [protocol, enabled] : protocols) {
    if (!enabled) continue;
    if (!first) out << '\n';
    first = false;
    if (format == TableFormat::kMarkdown) out << "## " << to_string(protocol) << "\n\n";
    out << render_table(results, protocol, format);
  }
}

ProtocolSelection selection_of(const Options& o) {
  try {
    return parse_protocol_selection(o.protocol);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::optional<std::string> pinned_timestamp() {
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (epoch == nullptr || *epoch == '\0') return std::nullopt;
  char* end = nullptr;
  const long long seconds = std::strtoll(epoch, &end, 10);
  if (end == nullptr || *end != '\0') return std::nullopt;
  const std::time_t t = static_cast<std::time_t>(seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buffer);
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const EvaluationConfig config = make_config(o);
  const ProtocolSelection selection = selection_of(o);
  const TableFormat format = format_of(o);
  const Corpus corpus = load_corpus(std::filesystem::path(o.corpus));
  const std::vector<LabeledChunk> labeled = read_labeled_chunks(std::filesystem::path(o.chunks));
  const LoadedScores scores = load_scores(std::filesystem::path(o.scores));

  std::vector<std::string> metrics = o.metrics;
  if (metrics.empty()) {
    metrics.assign(scores.table.metric_names().begin(), scores.table.metric_names().end());
  }
  if (metrics.empty()) throw DataError("score file contains no metrics");

  std::vector<ProtocolResult> results;
  try {
    results = evaluate(corpus, labeled, scores.table, metrics, selection, config);
  } catch (const MissingScoresError& e) {
    err << "error: metric " << e.metric() << " has " << e.missing().size() << " missing score(s)\n";
    for (const PairKey& key : e.missing())
      err << "missing: " << e.metric() << ' ' << to_string(key) << '\n';
    return kExitData;
  }
  render_results(results, selection, format, out);
  if (!o.out.empty()) {
    const RunManifest manifest =
        make_manifest(corpus, config, scores.table, results, pinned_timestamp());
    export_run(results, manifest, o.out);
  }
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream&) {
  const ProtocolSelection selection = selection_of(o);
  const TableFormat format = format_of(o);
  const LoadedRun run = load_run(o.results);
  if (run.results.empty()) throw DataError("no results in " + o.results);
  ProtocolSelection available = selection;
  available.correlation = selection.correlation && run.results.front().correlation.has_value();
  available.classification =
      selection.classification && run.results.front().classification.has_value();
  available.retrieval = selection.retrieval && run.results.front().retrieval.has_value();
  render_results(run.results, available, format, out);
  if (!o.out.empty()) export_run(run.results, run.manifest, o.out);
  return kExitOk;
}

void add_eval_config_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--max-words", o.max_words, "Maximum words per chunk")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--jaccard-threshold", o.jaccard_threshold, "Evidence-to-chunk Jaccard threshold")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--cutoffs", o.cutoffs, "NDCG cutoffs, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  cmd.add_option("--pool-policy", o.pool_policy,
                 "Retrieval pool: cited_docs | cited_docs_plus_distractors")
      ->capture_default_str();
  cmd.add_option("--distractors", o.distractors,
                 "Distractor chunks per statement (cited_docs_plus_distractors)")
      ->capture_default_str();
  cmd.add_option("--seed", o.seed, "Random seed for distractor sampling")->capture_default_str();
  cmd.add_option("--aggregation", o.aggregation,
                 "Evaluation unit: chunk_level | citation_max | citation_mean")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "citeval: meta-evaluation of faithfulness metrics against "
      "fine-grained citation support judgments",
      "citeval"};
  app.require_subcommand(1);
  Options o;

  CLI::App* ingest =
      app.add_subcommand("ingest", "Validate a corpus and print support-level counts");
  ingest->add_option("--corpus", o.corpus, "Corpus file (JSON lines)")->required();
  ingest->add_option("--format", o.format, "markdown | csv | json")->capture_default_str();

  CLI::App* chunk = app.add_subcommand("chunk", "Chunk cited documents and propagate labels");
  chunk->add_option("--corpus", o.corpus, "Corpus file (JSON lines)")->required();
  chunk->add_option("--out", o.out, "Labeled chunk dump to write")->required();
  chunk->add_option("--requests", o.requests,
                    "Also write every (statement, chunk) pair that needs a score");
  add_eval_config_flags(*chunk, o);

  CLI::App* score = app.add_subcommand("score", "Score required pairs with built-in baselines");
  score->add_option("--corpus", o.corpus, "Corpus file (JSON lines)")->required();
  score->add_option("--chunks", o.chunks, "Labeled chunk dump")->required();
  score->add_option("--out", o.out, "Score file to write")->required();
  score->add_option("--metric", o.metrics, "Baseline metric (repeatable): token_f1 | jaccard");
  add_eval_config_flags(*score, o);

  CLI::App* eval = app.add_subcommand("eval", "Run evaluation protocols");
  eval->add_option("--corpus", o.corpus, "Corpus file (JSON lines)")->required();
  eval->add_option("--chunks", o.chunks, "Labeled chunk dump")->required();
  eval->add_option("--scores", o.scores, "Score file")->required();
  eval->add_option("--out", o.out, "Directory for results.jsonl and manifest.json");
  eval->add_option("--metric", o.metrics, "Metric to evaluate (repeatable; default: all)");
  eval->add_option("--protocol", o.protocol, "correlation | classification | retrieval | all")
      ->capture_default_str();
  eval->add_option("--format", o.format, "markdown | csv | json")->capture_default_str();
  eval->add_option("--gain", o.gain, "NDCG gain: exponential | linear")->capture_default_str();
  eval->add_option("--kendall", o.kendall, "Kendall variant: tau_b | tau_a")->capture_default_str();
  eval->add_flag("--include-zero-ideal", o.include_zero_ideal,
                 "Count statements without relevant chunks as NDCG 0");
  add_eval_config_flags(*eval, o);

  CLI::App* report = app.add_subcommand("report", "Render or re-export an exported run");
  report->add_option("--results", o.results, "Directory written by eval --out")->required();
  report->add_option("--protocol", o.protocol, "correlation | classification | retrieval | all")
      ->capture_default_str();
  report->add_option("--format", o.format, "markdown | csv | json")->capture_default_str();
  report->add_option("--out", o.out, "Re-export the run to this directory");

  std::vector<std::string> argv_storage{"citeval"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(o, out, err);
    if (chunk->parsed()) return cmd_chunk(o, out, err);
    if (score->parsed()) return cmd_score(o, out, err);
    if (eval->parsed()) return cmd_eval(o, out, err);
    if (report->parsed()) return cmd_report(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace citeval::cli
