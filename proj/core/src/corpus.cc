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

#include "citeval/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "citeval/errors.h"
#include "json_util.h"

namespace citeval {
namespace {

using internal::json;
using internal::line_error;
using internal::require_field;
using internal::require_string;

std::string pair_locator(std::size_t index, const AnnotatedPair& pair) {
  return "pair #" + std::to_string(index) + " (" + pair.statement_id + ", " + pair.citation_id +
         ")";
}

void parse_record(const json& record, std::size_t line, Corpus& corpus) {
  const std::string kind = require_string(record, "kind", line);
  if (kind == "statement") {
    corpus.statements.push_back(Statement{
        require_string(record, "id", line),
        require_string(record, "response_id", line),
        require_string(record, "text", line),
    });
  } else if (kind == "citation") {
    Citation citation{require_string(record, "id", line),
                      require_string(record, "document_text", line), std::nullopt};
    if (auto it = record.find("source_url"); it != record.end() && !it->is_null()) {
      if (!it->is_string()) {
        throw line_error(line, "field 'source_url' must be a string");
      }
      citation.source_url = it->get<std::string>();
    }
    corpus.citations.push_back(std::move(citation));
  } else if (kind == "pair") {
    AnnotatedPair pair;
    pair.statement_id = require_string(record, "statement_id", line);
    pair.citation_id = require_string(record, "citation_id", line);
    const std::string judgment = require_string(record, "judgment", line);
    auto level = parse_support_level(judgment);
    if (!level) {
      throw line_error(line,
                       "field 'judgment' must be one of full|partial|none, got '" + judgment + "'");
    }
    pair.judgment = *level;
    const json& evidence = require_field(record, "evidence_sentences", line);
    if (!evidence.is_array()) {
      throw line_error(line, "field 'evidence_sentences' must be an array");
    }
    for (const json& sentence : evidence) {
      if (!sentence.is_string()) {
        throw line_error(line, "field 'evidence_sentences' must contain only strings");
      }
      pair.evidence_sentences.push_back(sentence.get<std::string>());
    }
    corpus.pairs.push_back(std::move(pair));
  } else {
    throw line_error(line,
                     "field 'kind' must be one of statement|citation|pair, "
                     "got '" +
                         kind + "'");
  }
}

}  // namespace

CorpusIndex::CorpusIndex(const Corpus& corpus) {
  for (const Statement& s : corpus.statements) statements_.emplace(s.id, &s);
  for (const Citation& c : corpus.citations) citations_.emplace(c.id, &c);
}

const Statement* CorpusIndex::find_statement(std::string_view id) const {
  auto it = statements_.find(id);
  return it == statements_.end() ? nullptr : it->second;
}

const Citation* CorpusIndex::find_citation(std::string_view id) const {
  auto it = citations_.find(id);
  return it == citations_.end() ? nullptr : it->second;
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (internal::is_blank(text)) continue;
    parse_record(internal::parse_line(text, line), line, corpus);
  }
  if (in.bad()) throw DataError("I/O error while reading corpus");
  return corpus;
}

Corpus read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  return read_corpus(in);
}

Corpus load_corpus(std::istream& in) {
  Corpus corpus = read_corpus(in);
  ValidationReport report = validate(corpus);
  if (!report.ok()) {
    const Violation& first = report.violations.front();
    std::string message = first.message + " at " + first.locator;
    if (report.violations.size() > 1) {
      message += " (+" + std::to_string(report.violations.size() - 1) + " more violations)";
    }
    throw DataError(message);
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  return load_corpus(in);
}

ValidationReport validate(const Corpus& corpus) {
  ValidationReport report;
  auto add = [&report](std::string locator, std::string message) {
    report.violations.push_back({std::move(locator), std::move(message)});
  };

  std::set<std::string_view> statement_ids;
  for (std::size_t i = 0; i < corpus.statements.size(); ++i) {
    const Statement& s = corpus.statements[i];
    const std::string locator = "statement #" + std::to_string(i) + " (" + s.id + ")";
    if (s.id.empty()) add(locator, "empty statement id");
    if (!statement_ids.insert(s.id).second) add(locator, "duplicate statement id " + s.id);
    if (s.text.empty()) add(locator, "empty statement text");
  }

  std::set<std::string_view> citation_ids;
  for (std::size_t i = 0; i < corpus.citations.size(); ++i) {
    const Citation& c = corpus.citations[i];
    const std::string locator = "citation #" + std::to_string(i) + " (" + c.id + ")";
    if (c.id.empty()) add(locator, "empty citation id");
    if (!citation_ids.insert(c.id).second) add(locator, "duplicate citation id " + c.id);
    if (c.document_text.empty()) add(locator, "empty document_text");
  }

  std::set<std::pair<std::string_view, std::string_view>> seen_pairs;
  for (std::size_t i = 0; i < corpus.pairs.size(); ++i) {
    const AnnotatedPair& p = corpus.pairs[i];
    const std::string locator = pair_locator(i, p);
    if (!statement_ids.contains(p.statement_id)) {
      add(locator, "dangling statement_id " + p.statement_id);
    }
    if (!citation_ids.contains(p.citation_id)) {
      add(locator, "dangling citation_id " + p.citation_id);
    }
    if (!seen_pairs.emplace(p.statement_id, p.citation_id).second) {
      add(locator, "duplicate (statement_id, citation_id) pair");
    }
    const bool supported = p.judgment != SupportLevel::kNone;
    if (supported && p.evidence_sentences.empty()) {
      add(locator, "evidence invariant: " + std::string(to_string(p.judgment)) +
                       " pair requires at least one evidence sentence");
    } else if (!supported && !p.evidence_sentences.empty()) {
      add(locator, "evidence invariant: none pair must not carry evidence sentences");
    }
  }
  return report;
}

CountsBySupportLevel corpus_stats(const Corpus& corpus) {
  CountsBySupportLevel counts;
  for (const AnnotatedPair& p : corpus.pairs) {
    switch (p.judgment) {
      case SupportLevel::kFull:
        ++counts.full;
        break;
      case SupportLevel::kPartial:
        ++counts.partial;
        break;
      case SupportLevel::kNone:
        ++counts.none;
        break;
    }
  }
  counts.total = counts.full + counts.partial + counts.none;
  return counts;
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const Statement& s : corpus.statements) {
    json record = {
        {"kind", "statement"}, {"id", s.id}, {"response_id", s.response_id}, {"text", s.text}};
    out << record.dump() << '\n';
  }
  for (const Citation& c : corpus.citations) {
    json record = {{"kind", "citation"}, {"id", c.id}, {"document_text", c.document_text}};
    if (c.source_url) record["source_url"] = *c.source_url;
    out << record.dump() << '\n';
  }
  for (const AnnotatedPair& p : corpus.pairs) {
    json record = {{"kind", "pair"},
                   {"statement_id", p.statement_id},
                   {"citation_id", p.citation_id},
                   {"judgment", std::string(to_string(p.judgment))},
                   {"evidence_sentences", p.evidence_sentences}};
    out << record.dump() << '\n';
  }
}

std::string serialize_corpus(const Corpus& corpus) {
  std::ostringstream out;
  write_corpus(corpus, out);
  return out.str();
}

}  // namespace citeval
