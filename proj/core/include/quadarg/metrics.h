// Copyright 2026 The QuadArg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUADARG_METRICS_H_
#define QUADARG_METRICS_H_

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadarg/graph.h"
#include "quadarg/quad.h"

namespace quadarg {

// Fractional ranks: position 1 is best, tied arguments share the mean of the
// positions they occupy. The ranks sum to n(n+1)/2.
using RankVector = std::map<ArgumentId, double>;

RankVector fractional_ranks(const Ranking& ranking);

enum class TauVariant { kB, kA };

// Correlations return std::nullopt when undefined: fewer than two arguments,
// or a rank vector without variation. Both throw kMismatchedArgumentSets when
// the rankings cover different arguments.
std::optional<double> spearman_rho(const Ranking& gold, const Ranking& predicted);
std::optional<double> kendall_tau(const Ranking& gold, const Ranking& predicted,
                                  TauVariant variant = TauVariant::kB);

// Tie-corrected Kendall tau over paired observations, O(n log n) (Knight's
// algorithm). Exposed for callers that already hold numeric ranks.
std::optional<double> kendall_tau_b(std::span<const double> x,
                                    std::span<const double> y);

struct Edge {
  ArgumentId source;
  ArgumentId target;
  RelationKind kind = RelationKind::kAttack;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeSet = std::set<Edge>;

EdgeSet edge_set(const DebateGraph& graph);

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// An edge counts only when source, target and kind all match.
PrfScore edge_prf(const EdgeSet& gold, const EdgeSet& predicted);

struct MetricAverage {
  double mean = 0.0;
  std::size_t defined = 0;
  std::size_t excluded = 0;  // undefined entries left out of the mean
};

// Unweighted mean of the defined values. Throws kAllUndefined when there are
// none.
MetricAverage macro_average(std::span<const std::optional<double>> values);

// Per-metric macro average over records mapping metric name to value. A
// metric absent from a record is ignored for that record; a metric with no
// defined value anywhere throws kAllUndefined.
using MetricRecord = std::map<std::string, std::optional<double>>;
std::map<std::string, MetricAverage> macro_average(
    std::span<const MetricRecord> records);

enum class QuartileKey { kLengthTokens, kPosition };

std::string_view quartile_key_name(QuartileKey key);  // "length" / "position"

// Whitespace-delimited token count.
std::size_t whitespace_tokens(std::string_view text);

struct QuartileBuckets {
  QuartileKey key = QuartileKey::kLengthTokens;
  // Q1..Q4: shortest/earliest first. Sizes differ by at most one; the
  // n mod 4 leftover arguments go to the first buckets.
  std::array<std::vector<ArgumentId>, 4> buckets;
};

// Sorts by token count (or chronological index), ties by ascending id, and
// cuts into four nearly equal buckets. `tokenizer` defaults to
// whitespace_tokens.
QuartileBuckets quartile_split(
    const DebateGraph& graph, QuartileKey key,
    const std::function<std::size_t(std::string_view)>& tokenizer = {});

// Keeps the arguments in `keep`, preserving order and the tie groups that
// still have two or more members.
Ranking restrict_ranking(const Ranking& ranking, std::span<const ArgumentId> keep);

struct BucketCorrelation {
  std::size_t size = 0;
  std::optional<double> rho;
  std::optional<double> tau;
};

// Correlations recomputed inside each bucket after re-ranking the restricted
// rankings.
std::array<BucketCorrelation, 4> quartile_correlations(
    const Ranking& gold, const Ranking& predicted, const QuartileBuckets& buckets);

}  // namespace quadarg

#endif  // QUADARG_METRICS_H_
