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

#ifndef CITEVAL_ERRORS_H_
#define CITEVAL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace citeval {

// Raised for malformed or inconsistent input data (corpus, chunk dumps,
// score files, exported runs). The CLI maps it to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace citeval

#endif  // CITEVAL_ERRORS_H_
