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

#ifndef CITEVAL_CHUNKER_H_
#define CITEVAL_CHUNKER_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "citeval/corpus.h"
#include "citeval/support_level.h"

namespace citeval {

inline constexpr std::size_t kDefaultMaxWords = 150;
inline constexpr double kDefaultJaccardThreshold = 0.7;

// A sentence-aligned segment of a cited document.
struct Chunk {
  std::string citation_id;
  std::size_t index = 0;
  std::string text;
  std::size_t word_count = 0;

  bool operator==(const Chunk&) const = default;
};

// A chunk viewed from one statement, carrying the label propagated from the
// statement-citation judgment.
struct LabeledChunk {
  Chunk chunk;
  std::string statement_id;
  SupportLevel label = SupportLevel::kNone;
  // Best Jaccard between any evidence sentence and any sentence of the chunk.
  double match_score = 0.0;

  bool operator==(const LabeledChunk&) const = default;
};

// Greedy sentence packing: sentences are appended while the chunk stays
// within max_words; a sentence longer than max_words forms its own chunk.
// Sentences are never split. Chunk texts are the sentences joined by '\n',
// so split_sentences() on a chunk recovers the same sentences. Sentences without any word attach to
// a neighbouring chunk, so a document without words yields no chunks.
std::vector<Chunk> chunk_document(const Citation& citation,
                                  std::size_t max_words = kDefaultMaxWords);

// Labels each chunk of the pair's citation. Every chunk is NONE for a NONE
// pair. Otherwise each evidence sentence selects its best-matching chunk
// (first on ties) when that match reaches the threshold; if no evidence
// sentence reaches it, the chunk with the overall best match is labeled.
// Throws std::invalid_argument for a FULL/PARTIAL pair with no chunks or
// when a chunk belongs to another citation.
std::vector<LabeledChunk> propagate_labels(const AnnotatedPair& pair, std::span<const Chunk> chunks,
                                           double threshold = kDefaultJaccardThreshold);

// Chunks every cited document and labels it for every annotated pair, in
// corpus pair order.
std::vector<LabeledChunk> label_corpus(const Corpus& corpus,
                                       std::size_t max_words = kDefaultMaxWords,
                                       double threshold = kDefaultJaccardThreshold);

// Chunk dump: one JSON object per line {citation_id, index, text,
// word_count}. The labeled variant adds {statement_id, label, match_score}.
void write_chunks(std::span<const Chunk> chunks, std::ostream& out);
void write_labeled_chunks(std::span<const LabeledChunk> chunks, std::ostream& out);
std::vector<Chunk> read_chunks(std::istream& in);
std::vector<LabeledChunk> read_labeled_chunks(std::istream& in);
std::vector<LabeledChunk> read_labeled_chunks(const std::filesystem::path& path);

}  // namespace citeval

#endif  // CITEVAL_CHUNKER_H_
