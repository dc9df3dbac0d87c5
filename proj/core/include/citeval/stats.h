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

#ifndef CITEVAL_STATS_H_
#define CITEVAL_STATS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace citeval::stats {

// Average (fractional) ranks starting at 1; tied values share the mean of the
// ranks they occupy. The ranks always sum to n(n+1)/2.
std::vector<double> average_ranks(std::span<const double> values);

// The correlation kernels below share preconditions: equal lengths, at least
// two points, all values finite. Violations throw std::invalid_argument.
// A zero-variance input makes the coefficient undefined (nullopt).

// Sample Pearson correlation.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

// Pearson correlation of the average-rank vectors.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

enum class KendallVariant { kTauB, kTauA };

std::string_view to_string(KendallVariant variant);
// Accepts "tau_b" / "tau_a"; throws std::invalid_argument otherwise.
KendallVariant parse_kendall_variant(std::string_view name);

// Kendall rank correlation in O(n log n).
//   tau_b = (C - D) / sqrt((C + D + Tx) * (C + D + Ty))
//   tau_a = (C - D) / (n (n - 1) / 2)
// where Tx / Ty count pairs tied only in x / only in y.
std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y,
                                  KendallVariant variant = KendallVariant::kTauB);

inline std::optional<double> kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  return kendall_tau(x, y, KendallVariant::kTauB);
}

// Mann-Whitney ROC-AUC: the fraction of positive/negative pairs where the
// positive scores higher, ties counted as one half. Computed from rank sums.
// Throws std::invalid_argument naming an empty class or a non-finite score.
double roc_auc(std::span<const double> positive_scores, std::span<const double> negative_scores);

enum class Gain { kExponential, kLinear };

std::string_view to_string(Gain gain);
// Accepts "exponential" / "linear"; throws std::invalid_argument otherwise.
Gain parse_gain(std::string_view name);

// Relevance labels must lie in {0, 1, 2}; n >= 1.
// DCG@n = sum over the first n ranks of gain(rel) / log2(rank + 1), with gain
// 2^rel - 1 (exponential) or rel (linear).
double dcg_at_n(std::span<const int> ranking, std::size_t n, Gain gain = Gain::kExponential);
double ideal_dcg_at_n(std::span<const int> ranking, std::size_t n, Gain gain = Gain::kExponential);
// DCG@n over the ideal DCG@n of the same labels; 0 when the ideal is 0.
// Throws std::invalid_argument on an empty ranking, n == 0 or a bad label.
double ndcg_at_n(std::span<const int> ranking, std::size_t n, Gain gain = Gain::kExponential);

}  // namespace citeval::stats

#endif  // CITEVAL_STATS_H_
