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

#include "citeval/support_level.h"

namespace citeval {

std::string_view to_string(SupportLevel level) {
  switch (level) {
    case SupportLevel::kFull:
      return "full";
    case SupportLevel::kPartial:
      return "partial";
    case SupportLevel::kNone:
      return "none";
  }
  return "none";
}

std::optional<SupportLevel> parse_support_level(std::string_view name) {
  if (name == "full") return SupportLevel::kFull;
  if (name == "partial") return SupportLevel::kPartial;
  if (name == "none") return SupportLevel::kNone;
  return std::nullopt;
}

std::string_view short_name(SupportLevel level) {
  switch (level) {
    case SupportLevel::kFull:
      return "FS";
    case SupportLevel::kPartial:
      return "PS";
    case SupportLevel::kNone:
      return "NS";
  }
  return "NS";
}

}  // namespace citeval
