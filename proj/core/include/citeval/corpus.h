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

#ifndef CITEVAL_CORPUS_H_
#define CITEVAL_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "citeval/support_level.h"

namespace citeval {

struct Statement {
  std::string id;
  // Groups the statements of one generated response.
  std::string response_id;
  std::string text;

  bool operator==(const Statement&) const = default;
};

struct Citation {
  std::string id;
  std::string document_text;
  std::optional<std::string> source_url;

  bool operator==(const Citation&) const = default;
};

struct AnnotatedPair {
  std::string statement_id;
  std::string citation_id;
  SupportLevel judgment = SupportLevel::kNone;
  // Non-empty for FULL/PARTIAL, empty for NONE.
  std::vector<std::string> evidence_sentences;

  bool operator==(const AnnotatedPair&) const = default;
};

// Records in ingestion order. Immutable once loaded.
struct Corpus {
  std::vector<Statement> statements;
  std::vector<Citation> citations;
  std::vector<AnnotatedPair> pairs;

  bool operator==(const Corpus&) const = default;
};

// Id -> position lookup over a corpus. Holds pointers into the corpus, which
// must outlive it.
class CorpusIndex {
 public:
  explicit CorpusIndex(const Corpus& corpus);

  const Statement* find_statement(std::string_view id) const;
  const Citation* find_citation(std::string_view id) const;

 private:
  std::unordered_map<std::string_view, const Statement*> statements_;
  std::unordered_map<std::string_view, const Citation*> citations_;
};

struct Violation {
  // Human-readable position of the offending record, e.g. "pair #3 (s1, c2)".
  std::string locator;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

struct CountsBySupportLevel {
  std::size_t full = 0;
  std::size_t partial = 0;
  std::size_t none = 0;
  std::size_t total = 0;

  bool operator==(const CountsBySupportLevel&) const = default;
};

// Parses line-delimited corpus records without checking cross-record
// invariants. Throws DataError naming the line and field on malformed input.
Corpus read_corpus(std::istream& in);
Corpus read_corpus(const std::filesystem::path& path);

// read_corpus followed by validate(). Throws DataError carrying the first
// violation (e.g. "dangling citation_id c99") when the corpus is invalid.
Corpus load_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);

ValidationReport validate(const Corpus& corpus);

CountsBySupportLevel corpus_stats(const Corpus& corpus);

// Writes the corpus in the same line-delimited format read_corpus accepts:
// statements, then citations, then pairs.
void write_corpus(const Corpus& corpus, std::ostream& out);
std::string serialize_corpus(const Corpus& corpus);

}  // namespace citeval

#endif  // CITEVAL_CORPUS_H_
