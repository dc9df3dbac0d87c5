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

#include "citeval/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace citeval::stats {
namespace {

void check_paired(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("length mismatch: " + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()));
  }
  if (x.size() < 2) throw std::invalid_argument("need at least 2 points");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(x.begin(), x.end(), finite) || !std::all_of(y.begin(), y.end(), finite)) {
    throw std::invalid_argument("non-finite input");
  }
}

double clamp_unit(double r) { return std::clamp(r, -1.0, 1.0); }

// Number of pairs within runs of equal values in a sorted range.
template <typename It, typename Eq>
std::int64_t tied_pairs(It begin, It end, Eq eq) {
  std::int64_t total = 0;
  It run = begin;
  while (run != end) {
    It next = run;
    std::int64_t len = 0;
    while (next != end && eq(*run, *next)) {
      ++next;
      ++len;
    }
    total += len * (len - 1) / 2;
    run = next;
  }
  return total;
}

// Sorts values ascending with a stable merge sort and returns the number of
// inversions (swaps) it took.
std::int64_t merge_sort_swaps(std::vector<double>& values) {
  std::vector<double> buffer(values.size());
  std::int64_t swaps = 0;
  for (std::size_t width = 1; width < values.size(); width *= 2) {
    for (std::size_t lo = 0; lo < values.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, values.size());
      const std::size_t hi = std::min(lo + 2 * width, values.size());
      std::size_t i = lo;
      std::size_t j = mid;
      std::size_t k = lo;
      while (i < mid && j < hi) {
        if (values[j] < values[i]) {
          buffer[k++] = values[j++];
          swaps += static_cast<std::int64_t>(mid - i);
        } else {
          buffer[k++] = values[i++];
        }
      }
      while (i < mid) buffer[k++] = values[i++];
      while (j < hi) buffer[k++] = values[j++];
    }
    values.swap(buffer);
  }
  return swaps;
}

int checked_label(int label) {
  if (label < 0 || label > 2) {
    throw std::invalid_argument("invalid relevance label " + std::to_string(label) +
                                " (expected 0, 1 or 2)");
  }
  return label;
}

double gain_of(int label, Gain gain) {
  return gain == Gain::kExponential ? static_cast<double>((1 << label) - 1)
                                    : static_cast<double>(label);
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) hold ranks i+1..j+1.
    const double rank = static_cast<double>(i + j + 2) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  check_paired(x, y);
  const double n = static_cast<double>(x.size());
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return clamp_unit(sxy / std::sqrt(sxx * syy));
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  check_paired(x, y);
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  return pearson(rx, ry);
}

std::string_view to_string(KendallVariant variant) {
  return variant == KendallVariant::kTauB ? "tau_b" : "tau_a";
}

KendallVariant parse_kendall_variant(std::string_view name) {
  if (name == "tau_b") return KendallVariant::kTauB;
  if (name == "tau_a") return KendallVariant::kTauA;
  throw std::invalid_argument("unknown Kendall variant '" + std::string(name) +
                              "' (expected tau_b or tau_a)");
}

std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y,
                                  KendallVariant variant) {
  check_paired(x, y);
  const auto n = static_cast<std::int64_t>(x.size());
  std::vector<std::pair<double, double>> points(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) points[i] = {x[i], y[i]};
  std::sort(points.begin(), points.end());

  const std::int64_t total_pairs = n * (n - 1) / 2;
  const std::int64_t tied_x =
      tied_pairs(points.begin(), points.end(),
                 [](const auto& a, const auto& b) { return a.first == b.first; });
  const std::int64_t tied_xy =
      tied_pairs(points.begin(), points.end(), [](const auto& a, const auto& b) { return a == b; });

  std::vector<double> ys(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) ys[i] = points[i].second;
  // Points are sorted by (x, y), so pairs tied in x are never inversions.
  const std::int64_t discordant = merge_sort_swaps(ys);
  const std::int64_t tied_y =
      tied_pairs(ys.begin(), ys.end(), [](double a, double b) { return a == b; });

  // C + D = pairs tied in neither coordinate.
  const std::int64_t untied = total_pairs - tied_x - tied_y + tied_xy;
  const std::int64_t concordant = untied - discordant;
  const double numerator = static_cast<double>(concordant - discordant);

  if (variant == KendallVariant::kTauA) {
    return clamp_unit(numerator / static_cast<double>(total_pairs));
  }
  const std::int64_t only_x = tied_x - tied_xy;
  const std::int64_t only_y = tied_y - tied_xy;
  const std::int64_t denom_x = untied + only_x;
  const std::int64_t denom_y = untied + only_y;
  if (denom_x == 0 || denom_y == 0) return std::nullopt;
  return clamp_unit(numerator /
                    std::sqrt(static_cast<double>(denom_x) * static_cast<double>(denom_y)));
}

double roc_auc(std::span<const double> positive_scores, std::span<const double> negative_scores) {
  if (positive_scores.empty()) throw std::invalid_argument("empty positive class");
  if (negative_scores.empty()) throw std::invalid_argument("empty negative class");
  std::vector<double> all;
  all.reserve(positive_scores.size() + negative_scores.size());
  all.insert(all.end(), positive_scores.begin(), positive_scores.end());
  all.insert(all.end(), negative_scores.begin(), negative_scores.end());
  if (!std::all_of(all.begin(), all.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("non-finite score");
  }
  const std::vector<double> ranks = average_ranks(all);
  const double m = static_cast<double>(positive_scores.size());
  const double k = static_cast<double>(negative_scores.size());
  const double rank_sum = std::accumulate(
      ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(positive_scores.size()), 0.0);
  return (rank_sum - m * (m + 1.0) / 2.0) / (m * k);
}

std::string_view to_string(Gain gain) {
  return gain == Gain::kExponential ? "exponential" : "linear";
}

Gain parse_gain(std::string_view name) {
  if (name == "exponential") return Gain::kExponential;
  if (name == "linear") return Gain::kLinear;
  throw std::invalid_argument("unknown gain '" + std::string(name) +
                              "' (expected exponential or linear)");
}

double dcg_at_n(std::span<const int> ranking, std::size_t n, Gain gain) {
  if (n == 0) throw std::invalid_argument("cutoff n must be >= 1");
  double dcg = 0.0;
  const std::size_t limit = std::min(n, ranking.size());
  for (std::size_t i = 0; i < limit; ++i) {
    dcg += gain_of(checked_label(ranking[i]), gain) / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

double ideal_dcg_at_n(std::span<const int> ranking, std::size_t n, Gain gain) {
  std::vector<int> ideal(ranking.begin(), ranking.end());
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  return dcg_at_n(ideal, n, gain);
}

double ndcg_at_n(std::span<const int> ranking, std::size_t n, Gain gain) {
  if (ranking.empty()) throw std::invalid_argument("empty ranking");
  for (int label : ranking) checked_label(label);
  const double ideal = ideal_dcg_at_n(ranking, n, gain);
  if (ideal == 0.0) return 0.0;
  return dcg_at_n(ranking, n, gain) / ideal;
}

}  // namespace citeval::stats
