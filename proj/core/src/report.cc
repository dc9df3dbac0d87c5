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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "citeval/hashing.h"
#include "json_util.h"

#ifndef CITEVAL_VERSION
#define CITEVAL_VERSION "0.0.0"
#endif

namespace citeval {
namespace {

using internal::json;

constexpr std::string_view kNotAvailable = "n/a";

std::string fixed(std::optional<double> value, int decimals, double scale = 1.0) {
  if (!value) return std::string(kNotAvailable);
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, *value * scale);
  std::string out(buffer);
  if (out == "-0.000" || out == "-0.00") out.erase(0, 1);
  return out;
}

std::vector<std::string> header_for(Protocol protocol, std::span<const ProtocolResult> results) {
  switch (protocol) {
    case Protocol::kCorrelation:
      return {"Metric", "Pearson", "Spearman", "Kendall"};
    case Protocol::kClassification:
      return {"Metric", "FS-vs-NS", "FS-vs-PS", "PS-vs-NS", "Overall"};
    case Protocol::kRetrieval: {
      std::vector<std::string> header{"Metric"};
      for (const ProtocolResult& r : results) {
        if (!r.retrieval) continue;
        for (std::size_t cutoff : r.retrieval->cutoffs) {
          header.push_back("NDCG@" + std::to_string(cutoff));
        }
        break;
      }
      return header;
    }
  }
  return {};
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json correlation_json(const CorrelationResult& c) {
  return {{"pearson", optional_json(c.pearson)},
          {"spearman", optional_json(c.spearman)},
          {"kendall", optional_json(c.kendall)},
          {"count", c.count}};
}

json classification_json(const ClassificationResult& c) {
  json settings = json::array();
  for (const SettingResult& s : c.settings) {
    settings.push_back({{"setting", s.setting},
                        {"auc", optional_json(s.auc)},
                        {"positives", s.positives},
                        {"negatives", s.negatives}});
  }
  return {{"settings", settings}, {"overall", optional_json(c.overall)}};
}

json retrieval_json(const RetrievalResult& r) {
  json means = json::array();
  for (const auto& m : r.mean_ndcg) means.push_back(optional_json(m));
  json per_statement = json::array();
  for (const StatementNdcg& s : r.per_statement) {
    per_statement.push_back({{"statement_id", s.statement_id},
                             {"pool_size", s.pool_size},
                             {"zero_ideal", s.zero_ideal},
                             {"ndcg", s.ndcg}});
  }
  return {{"cutoffs", r.cutoffs},
          {"mean_ndcg", means},
          {"per_statement", per_statement},
          {"evaluated", r.evaluated},
          {"zero_ideal_excluded", r.zero_ideal_excluded},
          {"empty_pool_excluded", r.empty_pool_excluded}};
}

CorrelationResult correlation_from(const json& j) {
  return {optional_from(j.at("pearson")), optional_from(j.at("spearman")),
          optional_from(j.at("kendall")), j.at("count").get<std::size_t>()};
}

ClassificationResult classification_from(const json& j) {
  ClassificationResult c;
  for (const json& s : j.at("settings")) {
    c.settings.push_back({s.at("setting").get<std::string>(), optional_from(s.at("auc")),
                          s.at("positives").get<std::size_t>(),
                          s.at("negatives").get<std::size_t>()});
  }
  c.overall = optional_from(j.at("overall"));
  return c;
}

RetrievalResult retrieval_from(const json& j) {
  RetrievalResult r;
  r.cutoffs = j.at("cutoffs").get<std::vector<std::size_t>>();
  for (const json& m : j.at("mean_ndcg")) r.mean_ndcg.push_back(optional_from(m));
  for (const json& s : j.at("per_statement")) {
    r.per_statement.push_back({s.at("statement_id").get<std::string>(),
                               s.at("pool_size").get<std::size_t>(), s.at("zero_ideal").get<bool>(),
                               s.at("ndcg").get<std::vector<double>>()});
  }
  r.evaluated = j.at("evaluated").get<std::size_t>();
  r.zero_ideal_excluded = j.at("zero_ideal_excluded").get<std::size_t>();
  r.empty_pool_excluded = j.at("empty_pool_excluded").get<std::size_t>();
  return r;
}

json manifest_json(const RunManifest& m) {
  return {{"harness_version", m.harness_version},
          {"corpus_sha256", m.corpus_fingerprint},
          {"config_sha256", m.config_fingerprint},
          {"scores_sha256", m.scores_fingerprint},
          {"metrics", m.metric_names},
          {"created", m.created ? json(*m.created) : json(nullptr)},
          {"config", json::parse(config_to_json(m.config))}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw DataError("cannot write " + path.string());
}

}  // namespace

std::string_view to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::kCorrelation:
      return "correlation";
    case Protocol::kClassification:
      return "classification";
    case Protocol::kRetrieval:
      return "retrieval";
  }
  return "correlation";
}

Protocol parse_protocol(std::string_view name) {
  if (name == "correlation") return Protocol::kCorrelation;
  if (name == "classification") return Protocol::kClassification;
  if (name == "retrieval") return Protocol::kRetrieval;
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

TableFormat parse_table_format(std::string_view name) {
  if (name == "markdown") return TableFormat::kMarkdown;
  if (name == "csv") return TableFormat::kCsv;
  if (name == "json") return TableFormat::kJson;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

std::vector<std::string> render_row(const ProtocolResult& result, Protocol protocol) {
  switch (protocol) {
    case Protocol::kCorrelation: {
      if (!result.correlation) return {"n/a", "n/a", "n/a"};
      const CorrelationResult& c = *result.correlation;
      return {fixed(c.pearson, 3), fixed(c.spearman, 3), fixed(c.kendall, 3)};
    }
    case Protocol::kClassification: {
      if (!result.classification) return {"n/a", "n/a", "n/a", "n/a"};
      std::vector<std::string> row;
      for (const SettingResult& s : result.classification->settings) {
        row.push_back(fixed(s.auc, 2, 100.0));
      }
      row.push_back(fixed(result.classification->overall, 2, 100.0));
      return row;
    }
    case Protocol::kRetrieval: {
      std::vector<std::string> row;
      if (!result.retrieval) return row;
      for (const auto& mean : result.retrieval->mean_ndcg) row.push_back(fixed(mean, 3));
      return row;
    }
  }
  return {};
}

std::string render_table(std::span<const ProtocolResult> results, Protocol protocol,
                         TableFormat format) {
  if (results.empty()) throw std::invalid_argument("no results to render");
  std::vector<const ProtocolResult*> rows;
  for (const ProtocolResult& r : results) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto* a, const auto* b) { return a->metric_name < b->metric_name; });
  const std::vector<std::string> header = header_for(protocol, results);

  std::ostringstream out;
  switch (format) {
    case TableFormat::kCsv: {
      for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
      out << '\n';
      for (const ProtocolResult* r : rows) {
        out << csv_escape(r->metric_name);
        for (const std::string& cell : render_row(*r, protocol)) out << ',' << cell;
        out << '\n';
      }
      break;
    }
    case TableFormat::kMarkdown: {
      out << '|';
      for (const std::string& h : header) out << ' ' << h << " |";
      out << "\n|";
      for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "---:|" : "---|");
      out << '\n';
      for (const ProtocolResult* r : rows) {
        out << "| " << r->metric_name << " |";
        for (const std::string& cell : render_row(*r, protocol)) out << ' ' << cell << " |";
        out << '\n';
      }
      break;
    }
    case TableFormat::kJson: {
      json table = json::array();
      for (const ProtocolResult* r : rows) {
        json row = {{header[0], r->metric_name}};
        const std::vector<std::string> cells = render_row(*r, protocol);
        for (std::size_t i = 0; i < cells.size() && i + 1 < header.size(); ++i) {
          row[header[i + 1]] =
              cells[i] == kNotAvailable ? json(nullptr) : json(std::stod(cells[i]));
        }
        table.push_back(std::move(row));
      }
      out << table.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

std::string harness_version() { return CITEVAL_VERSION; }

RunManifest make_manifest(const Corpus& corpus, const EvaluationConfig& config,
                          const ScoreTable& scores, std::span<const ProtocolResult> results,
                          std::optional<std::string> created) {
  RunManifest m;
  m.harness_version = harness_version();
  m.corpus_fingerprint = sha256_hex(serialize_corpus(corpus));
  m.config_fingerprint = config_fingerprint(config);
  std::ostringstream serialized;
  write_scores(scores, serialized);
  m.scores_fingerprint = sha256_hex(serialized.str());
  for (const ProtocolResult& r : results) m.metric_names.push_back(r.metric_name);
  std::sort(m.metric_names.begin(), m.metric_names.end());
  m.metric_names.erase(std::unique(m.metric_names.begin(), m.metric_names.end()),
                       m.metric_names.end());
  m.created = std::move(created);
  m.config = config;
  return m;
}

std::string results_to_jsonl(std::span<const ProtocolResult> results) {
  std::vector<const ProtocolResult*> rows;
  for (const ProtocolResult& r : results) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto* a, const auto* b) { return a->metric_name < b->metric_name; });
  std::string out;
  auto emit = [&out](const ProtocolResult& r, Protocol protocol, json payload) {
    json line = {{"metric", r.metric_name},
                 {"protocol", std::string(to_string(protocol))},
                 {"config_fingerprint", r.config_fingerprint},
                 {"result", std::move(payload)}};
    out += line.dump();
    out += '\n';
  };
  for (const ProtocolResult* r : rows) {
    if (r->correlation) emit(*r, Protocol::kCorrelation, correlation_json(*r->correlation));
    if (r->classification) {
      emit(*r, Protocol::kClassification, classification_json(*r->classification));
    }
    if (r->retrieval) emit(*r, Protocol::kRetrieval, retrieval_json(*r->retrieval));
  }
  return out;
}

std::string manifest_to_json(const RunManifest& manifest) {
  return manifest_json(manifest).dump(2) + "\n";
}

void export_run(std::span<const ProtocolResult> results, const RunManifest& manifest,
                const std::filesystem::path& dir) {
  if (manifest.config_fingerprint != config_fingerprint(manifest.config)) {
    throw DataError("fingerprint mismatch: manifest config does not hash to " +
                    manifest.config_fingerprint);
  }
  for (const ProtocolResult& r : results) {
    if (r.config_fingerprint != manifest.config_fingerprint) {
      throw DataError("fingerprint mismatch: result for " + r.metric_name + " has config " +
                      r.config_fingerprint + ", manifest has " + manifest.config_fingerprint);
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "results.jsonl", results_to_jsonl(results));
  write_file(dir / "manifest.json", manifest_to_json(manifest));
}

LoadedRun load_run(const std::filesystem::path& dir) {
  LoadedRun run;
  try {
    const json m = json::parse(read_file(dir / "manifest.json"));
    run.manifest.harness_version = m.at("harness_version").get<std::string>();
    run.manifest.corpus_fingerprint = m.at("corpus_sha256").get<std::string>();
    run.manifest.config_fingerprint = m.at("config_sha256").get<std::string>();
    run.manifest.scores_fingerprint = m.at("scores_sha256").get<std::string>();
    run.manifest.metric_names = m.at("metrics").get<std::vector<std::string>>();
    if (!m.at("created").is_null()) run.manifest.created = m.at("created").get<std::string>();
    run.manifest.config = config_from_json(m.at("config").dump());
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
  if (run.manifest.config_fingerprint != config_fingerprint(run.manifest.config)) {
    throw DataError("fingerprint mismatch: manifest config does not hash to " +
                    run.manifest.config_fingerprint);
  }

  std::map<std::string, ProtocolResult> by_metric;
  std::istringstream lines(read_file(dir / "results.jsonl"));
  std::string text;
  std::size_t line = 0;
  while (std::getline(lines, text)) {
    ++line;
    if (internal::is_blank(text)) continue;
    const json record = internal::parse_line(text, line);
    try {
      const std::string metric = record.at("metric").get<std::string>();
      ProtocolResult& r = by_metric[metric];
      r.metric_name = metric;
      r.config_fingerprint = record.at("config_fingerprint").get<std::string>();
      if (r.config_fingerprint != run.manifest.config_fingerprint) {
        throw internal::line_error(line, "fingerprint mismatch");
      }
      const json& payload = record.at("result");
      switch (parse_protocol(record.at("protocol").get<std::string>())) {
        case Protocol::kCorrelation:
          r.correlation = correlation_from(payload);
          break;
        case Protocol::kClassification:
          r.classification = classification_from(payload);
          break;
        case Protocol::kRetrieval:
          r.retrieval = retrieval_from(payload);
          break;
      }
    } catch (const json::exception& e) {
      throw internal::line_error(line, e.what());
    } catch (const std::invalid_argument& e) {
      throw internal::line_error(line, e.what());
    }
  }
  for (auto& [metric, result] : by_metric) run.results.push_back(std::move(result));
  return run;
}

}  // namespace citeval
