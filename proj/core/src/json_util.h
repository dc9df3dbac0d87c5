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

#ifndef CITEVAL_SRC_JSON_UTIL_H_
#define CITEVAL_SRC_JSON_UTIL_H_

// Internal helpers for the line-delimited JSON formats. Not installed.

#include <cstddef>
#include <string>
#include <string_view>

#include "citeval/errors.h"
#include "json.hpp"

namespace citeval::internal {

using json = nlohmann::json;

inline DataError line_error(std::size_t line, std::string_view what) {
  return DataError("line " + std::to_string(line) + ": " + std::string(what));
}

inline json parse_line(std::string_view text, std::size_t line) {
  json record;
  try {
    record = json::parse(text);
  } catch (const json::parse_error& e) {
    throw line_error(line, std::string("invalid JSON (") + e.what() + ")");
  }
  if (!record.is_object()) throw line_error(line, "record is not a JSON object");
  return record;
}

inline const json& require_field(const json& record, const char* field, std::size_t line) {
  auto it = record.find(field);
  if (it == record.end()) {
    throw line_error(line, std::string("missing field '") + field + "'");
  }
  return *it;
}

inline std::string require_string(const json& record, const char* field, std::size_t line) {
  const json& value = require_field(record, field, line);
  if (!value.is_string()) {
    throw line_error(line, std::string("field '") + field + "' must be a string");
  }
  return value.get<std::string>();
}

// True for lines that are empty or contain only whitespace.
inline bool is_blank(std::string_view text) {
  return text.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

}  // namespace citeval::internal

#endif  // CITEVAL_SRC_JSON_UTIL_H_
