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

#ifndef CITEVAL_TEXT_H_
#define CITEVAL_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace citeval {

// Lowercased tokens: maximal runs of alphanumeric characters. ASCII letters
// are lowercased; bytes >= 0x80 count as alphanumeric so UTF-8 words stay
// whole.
std::vector<std::string> tokenize(std::string_view text);

// Number of tokens as produced by tokenize().
std::size_t word_count(std::string_view text);

// Collapses every whitespace run to one space and trims both ends.
std::string normalize_whitespace(std::string_view text);

// Rule-based splitter. A sentence ends after a run of '.', '!' or '?'
// (plus any closing quotes/brackets) when followed by whitespace and either
// an uppercase letter, a digit, an opening quote/bracket, or a line break.
// A '.' ending a known abbreviation ("Dr.", "Mr.", "e.g.", ...) never ends a
// sentence. Returned sentences are trimmed and never empty.
std::vector<std::string> split_sentences(std::string_view text);

// Intersection over union of the token sets; 1.0 when both are empty.
double jaccard(std::string_view a, std::string_view b);

}  // namespace citeval

#endif  // CITEVAL_TEXT_H_
