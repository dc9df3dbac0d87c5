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

#include "citeval/chunker.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "citeval/text.h"
#include "json_util.h"

namespace citeval {
namespace {

using internal::json;
using internal::line_error;
using internal::require_field;
using internal::require_string;

std::size_t require_index(const json& record, const char* field, std::size_t line) {
  const json& value = require_field(record, field, line);
  if (!value.is_number_unsigned()) {
    throw line_error(line, std::string("field '") + field + "' must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

Chunk parse_chunk(const json& record, std::size_t line) {
  return Chunk{require_string(record, "citation_id", line), require_index(record, "index", line),
               require_string(record, "text", line), require_index(record, "word_count", line)};
}

json chunk_json(const Chunk& chunk) {
  return json{{"citation_id", chunk.citation_id},
              {"index", chunk.index},
              {"text", chunk.text},
              {"word_count", chunk.word_count}};
}

template <typename T, typename Parse>
std::vector<T> read_lines(std::istream& in, Parse parse) {
  std::vector<T> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (internal::is_blank(text)) continue;
    out.push_back(parse(internal::parse_line(text, line), line));
  }
  if (in.bad()) throw DataError("I/O error while reading chunk dump");
  return out;
}

}  // namespace

std::vector<Chunk> chunk_document(const Citation& citation, std::size_t max_words) {
  if (max_words == 0) throw std::invalid_argument("max_words must be >= 1");
  std::vector<Chunk> chunks;
  std::string current;
  std::size_t current_words = 0;
  // Word-less sentences seen before the first worded sentence of a chunk.
  std::string carried;

  auto flush = [&] {
    if (current_words == 0) return;
    chunks.push_back(Chunk{citation.id, chunks.size(), std::move(current), current_words});
    current.clear();
    current_words = 0;
  };
  auto append = [](std::string& to, const std::string& sentence) {
    if (!to.empty()) to.push_back('\n');
    to += sentence;
  };

  for (const std::string& sentence : split_sentences(citation.document_text)) {
    const std::size_t words = word_count(sentence);
    if (words == 0) {
      append(current_words > 0 ? current : carried, sentence);
      continue;
    }
    if (current_words > 0 && current_words + words > max_words) flush();
    if (!carried.empty()) {
      append(current, carried);
      carried.clear();
    }
    append(current, sentence);
    current_words += words;
  }
  if (!carried.empty() && !chunks.empty() && current_words == 0) {
    append(chunks.back().text, carried);
  }
  flush();
  return chunks;
}

std::vector<LabeledChunk> propagate_labels(const AnnotatedPair& pair, std::span<const Chunk> chunks,
                                           double threshold) {
  for (const Chunk& chunk : chunks) {
    if (chunk.citation_id != pair.citation_id) {
      throw std::invalid_argument("chunk of citation " + chunk.citation_id +
                                  " passed for pair citation " + pair.citation_id);
    }
  }
  std::vector<LabeledChunk> labeled;
  labeled.reserve(chunks.size());
  for (const Chunk& chunk : chunks) {
    labeled.push_back(LabeledChunk{chunk, pair.statement_id, SupportLevel::kNone, 0.0});
  }
  if (pair.judgment == SupportLevel::kNone) return labeled;
  if (chunks.empty()) {
    throw std::invalid_argument("pair (" + pair.statement_id + ", " + pair.citation_id +
                                ") has evidence but its citation has no chunks");
  }

  // best[e][k]: best Jaccard of evidence sentence e against chunk k.
  std::vector<std::vector<std::string>> chunk_sentences;
  chunk_sentences.reserve(chunks.size());
  for (const Chunk& chunk : chunks) chunk_sentences.push_back(split_sentences(chunk.text));

  bool any_above = false;
  for (const std::string& evidence : pair.evidence_sentences) {
    std::size_t best_chunk = 0;
    double best_score = -1.0;
    for (std::size_t k = 0; k < chunks.size(); ++k) {
      double score = 0.0;
      for (const std::string& sentence : chunk_sentences[k]) {
        score = std::max(score, jaccard(evidence, sentence));
      }
      labeled[k].match_score = std::max(labeled[k].match_score, score);
      if (score > best_score) {
        best_score = score;
        best_chunk = k;
      }
    }
    if (best_score >= threshold) {
      labeled[best_chunk].label = pair.judgment;
      any_above = true;
    }
  }
  if (!any_above) {
    std::size_t fallback = 0;
    for (std::size_t k = 1; k < labeled.size(); ++k) {
      if (labeled[k].match_score > labeled[fallback].match_score) fallback = k;
    }
    labeled[fallback].label = pair.judgment;
  }
  return labeled;
}

std::vector<LabeledChunk> label_corpus(const Corpus& corpus, std::size_t max_words,
                                       double threshold) {
  std::unordered_map<std::string_view, std::vector<Chunk>> chunks_by_citation;
  for (const Citation& citation : corpus.citations) {
    chunks_by_citation.emplace(citation.id, chunk_document(citation, max_words));
  }
  std::vector<LabeledChunk> out;
  for (const AnnotatedPair& pair : corpus.pairs) {
    auto it = chunks_by_citation.find(pair.citation_id);
    if (it == chunks_by_citation.end()) {
      throw DataError("dangling citation_id " + pair.citation_id);
    }
    std::vector<LabeledChunk> labeled = propagate_labels(pair, it->second, threshold);
    out.insert(out.end(), std::make_move_iterator(labeled.begin()),
               std::make_move_iterator(labeled.end()));
  }
  return out;
}

void write_chunks(std::span<const Chunk> chunks, std::ostream& out) {
  for (const Chunk& chunk : chunks) out << chunk_json(chunk).dump() << '\n';
}

void write_labeled_chunks(std::span<const LabeledChunk> chunks, std::ostream& out) {
  for (const LabeledChunk& lc : chunks) {
    json record = chunk_json(lc.chunk);
    record["statement_id"] = lc.statement_id;
    record["label"] = std::string(to_string(lc.label));
    record["match_score"] = lc.match_score;
    out << record.dump() << '\n';
  }
}

std::vector<Chunk> read_chunks(std::istream& in) { return read_lines<Chunk>(in, parse_chunk); }

std::vector<LabeledChunk> read_labeled_chunks(std::istream& in) {
  return read_lines<LabeledChunk>(in, [](const json& record, std::size_t line) {
    LabeledChunk lc;
    lc.chunk = parse_chunk(record, line);
    lc.statement_id = require_string(record, "statement_id", line);
    const std::string label = require_string(record, "label", line);
    auto level = parse_support_level(label);
    if (!level) {
      throw line_error(line, "field 'label' must be one of full|partial|none");
    }
    lc.label = *level;
    const json& score = require_field(record, "match_score", line);
    if (!score.is_number()) throw line_error(line, "field 'match_score' must be a number");
    lc.match_score = score.get<double>();
    return lc;
  });
}

std::vector<LabeledChunk> read_labeled_chunks(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open chunk file " + path.string());
  return read_labeled_chunks(in);
}

}  // namespace citeval
