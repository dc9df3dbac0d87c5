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

#include "citeval/text.h"

#include <algorithm>
#include <array>
#include <set>

namespace citeval {
namespace {

bool is_token_char(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}'; }

bool is_opener(char c) { return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{'; }

// Compared case-insensitively against the word that ends with the period.
constexpr std::array<std::string_view, 14> kAbbreviations = {"dr.",  "mr.",  "mrs.", "ms.", "prof.",
                                                             "sr.",  "jr.",  "st.",  "vs.", "e.g.",
                                                             "i.e.", "etc.", "no.",  "fig."};

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool ends_with_abbreviation(std::string_view text, std::size_t period_pos) {
  std::size_t begin = period_pos;
  while (begin > 0 && !is_space(static_cast<unsigned char>(text[begin - 1]))) {
    --begin;
  }
  // Strip leading openers such as "(" from "(e.g."
  while (begin < period_pos && is_opener(text[begin])) ++begin;
  std::string word;
  for (std::size_t i = begin; i <= period_pos; ++i) word.push_back(lower(text[i]));
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_token_char(c)) {
      current.push_back(lower(ch));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::size_t word_count(std::string_view text) {
  std::size_t count = 0;
  bool in_token = false;
  for (char ch : text) {
    const bool token_char = is_token_char(static_cast<unsigned char>(ch));
    if (token_char && !in_token) ++count;
    in_token = token_char;
  }
  return count;
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    if (is_space(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ch);
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    std::size_t last_terminator = i;
    std::size_t end = i + 1;
    while (end < n && is_terminator(text[end])) last_terminator = end++;
    while (end < n && is_closer(text[end])) ++end;
    // end is one past the candidate sentence.
    if (end >= n || !is_space(static_cast<unsigned char>(text[end]))) {
      i = end;
      continue;
    }
    std::size_t next = end;
    bool line_break = false;
    while (next < n && is_space(static_cast<unsigned char>(text[next]))) {
      line_break = line_break || text[next] == '\n';
      ++next;
    }
    bool boundary = line_break || next >= n;
    if (!boundary) {
      const char c = text[next];
      boundary = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || is_opener(c);
    }
    if (boundary && text[last_terminator] == '.' && last_terminator == i &&
        ends_with_abbreviation(text, last_terminator)) {
      boundary = false;
    }
    if (boundary) {
      std::string_view sentence = trim(text.substr(start, end - start));
      if (!sentence.empty()) sentences.emplace_back(sentence);
      start = end;
    }
    i = next;
  }
  std::string_view tail = trim(text.substr(start));
  if (!tail.empty()) sentences.emplace_back(tail);
  return sentences;
}

double jaccard(std::string_view a, std::string_view b) {
  const std::vector<std::string> ta = tokenize(a);
  const std::vector<std::string> tb = tokenize(b);
  const std::set<std::string> sa(ta.begin(), ta.end());
  const std::set<std::string> sb(tb.begin(), tb.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t intersection = 0;
  auto ia = sa.begin();
  auto ib = sb.begin();
  while (ia != sa.end() && ib != sb.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++intersection;
      ++ia;
      ++ib;
    }
  }
  const std::size_t union_size = sa.size() + sb.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(union_size);
}

}  // namespace citeval
