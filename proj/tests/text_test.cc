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

#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace citeval {
namespace {

using Strings = std::vector<std::string>;

TEST(TokenizeTest, LowercasesAndSplitsOnNonAlphanumeric) {
  EXPECT_EQ(tokenize("Hello, World! It's 2024."), (Strings{"hello", "world", "it", "s", "2024"}));
  EXPECT_EQ(tokenize("  --  "), Strings{});
  EXPECT_EQ(tokenize("caf\xc3\xa9 au lait"), (Strings{"caf\xc3\xa9", "au", "lait"}));
  EXPECT_EQ(word_count("Hello, World! It's 2024."), 5u);
  EXPECT_EQ(word_count(""), 0u);
}

TEST(NormalizeWhitespaceTest, CollapsesAndTrims) {
  EXPECT_EQ(normalize_whitespace("  a\n\tb   c \n"), "a b c");
  EXPECT_EQ(normalize_whitespace(""), "");
}

TEST(SplitSentencesTest, Basics) {
  EXPECT_EQ(split_sentences(""), Strings{});
  EXPECT_EQ(split_sentences("A b. C d!"), (Strings{"A b.", "C d!"}));
  EXPECT_EQ(split_sentences("Dr. Smith arrived. He left."),
            (Strings{"Dr. Smith arrived.", "He left."}));
}

TEST(SplitSentencesTest, ContinuationRules) {
  // Lowercase continuation does not end a sentence.
  EXPECT_EQ(split_sentences("It costs 3 dollars. and more."),
            (Strings{"It costs 3 dollars. and more."}));
  // Decimal points and abbreviations.
  EXPECT_EQ(split_sentences("Growth was 3.5 percent. Next year too."),
            (Strings{"Growth was 3.5 percent.", "Next year too."}));
  EXPECT_EQ(split_sentences("Use tools, e.g. Hammers. Then stop."),
            (Strings{"Use tools, e.g. Hammers.", "Then stop."}));
  // Line breaks, digits and quotes start new sentences.
  EXPECT_EQ(split_sentences("first part.\nsecond part"), (Strings{"first part.", "second part"}));
  EXPECT_EQ(split_sentences("Really?! 2020 was odd."), (Strings{"Really?!", "2020 was odd."}));
  EXPECT_EQ(split_sentences("He said \"stop.\" Then left."),
            (Strings{"He said \"stop.\"", "Then left."}));
  EXPECT_EQ(split_sentences("No terminator at all"), (Strings{"No terminator at all"}));
}

TEST(SplitSentencesTest, ConcatenationRoundTripsModuloWhitespace) {
  std::mt19937_64 rng(1);
  const std::vector<std::string> pieces = {"Alpha", "beta", "Dr.", "e.g.", "x.",     "Y!",
                                           "z?",    "\n",   "  ",  "3.5",  "\"Q.\"", "end."};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const std::size_t n = rng() % 40;
    for (std::size_t i = 0; i < n; ++i) {
      text += pieces[rng() % pieces.size()];
      text += (rng() % 4 == 0) ? "\n" : " ";
    }
    std::string joined;
    for (const std::string& s : split_sentences(text)) {
      EXPECT_FALSE(s.empty());
      joined += s + " ";
    }
    EXPECT_EQ(normalize_whitespace(joined), normalize_whitespace(text));
  }
}

TEST(JaccardTest, Examples) {
  EXPECT_EQ(jaccard("the cat sat", "the cat sat"), 1.0);
  EXPECT_EQ(jaccard("a b", "c d"), 0.0);
  EXPECT_EQ(jaccard("a b c", "b c d"), 0.5);
  EXPECT_EQ(jaccard("", ""), 1.0);
  EXPECT_EQ(jaccard("", "a"), 0.0);
  // Case and punctuation are normalized away; duplicates collapse.
  EXPECT_EQ(jaccard("A, b! b", "a b"), 1.0);
}

TEST(JaccardTest, SymmetricAndBounded) {
  std::mt19937_64 rng(2);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string x, y;
    for (std::size_t i = rng() % 6; i > 0; --i) x += vocab[rng() % vocab.size()] + " ";
    for (std::size_t i = rng() % 6; i > 0; --i) y += vocab[rng() % vocab.size()] + " ";
    const double j = jaccard(x, y);
    EXPECT_GE(j, 0.0);
    EXPECT_LE(j, 1.0);
    EXPECT_EQ(j, jaccard(y, x));
    EXPECT_EQ(jaccard(x, x), 1.0);
    // Set-enumeration oracle.
    const auto tx = tokenize(x);
    const auto ty = tokenize(y);
    std::set<std::string> sx(tx.begin(), tx.end()), sy(ty.begin(), ty.end()), all = sx;
    all.insert(sy.begin(), sy.end());
    std::size_t common = 0;
    for (const auto& t : sx) common += sy.count(t);
    if (!all.empty()) {
      EXPECT_EQ(j, static_cast<double>(common) / static_cast<double>(all.size()));
    }
  }
}

}  // namespace
}  // namespace citeval
