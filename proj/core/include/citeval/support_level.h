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

#ifndef CITEVAL_SUPPORT_LEVEL_H_
#define CITEVAL_SUPPORT_LEVEL_H_

#include <array>
#include <optional>
#include <string_view>

namespace citeval {

// Human judgment of how well a citation backs a statement. The enumerator
// values are the ordinal encoding, so NONE < PARTIAL < FULL compares as
// expected.
enum class SupportLevel : int {
  kNone = 0,
  kPartial = 1,
  kFull = 2,
};

inline constexpr std::array<SupportLevel, 3> kAllSupportLevels = {
    SupportLevel::kNone, SupportLevel::kPartial, SupportLevel::kFull};

constexpr int ordinal_value(SupportLevel level) { return static_cast<int>(level); }

// Graded relevance used for NDCG. Identical to the ordinal value.
constexpr int relevance_label(SupportLevel level) { return static_cast<int>(level); }

// Wire names: "full", "partial", "none".
std::string_view to_string(SupportLevel level);
std::optional<SupportLevel> parse_support_level(std::string_view name);

// Short tags used in tables: "FS", "PS", "NS".
std::string_view short_name(SupportLevel level);

}  // namespace citeval

#endif  // CITEVAL_SUPPORT_LEVEL_H_
