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

#include "quadarg/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_set>

#include "quadarg/error.h"

namespace quadarg {
namespace {

void require_same_arguments(const Ranking& gold, const Ranking& predicted) {
  auto sorted = [](const Ranking& r) {
    std::vector<ArgumentId> ids = r.ordered_ids;
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  const auto a = sorted(gold);
  const auto b = sorted(predicted);
  const bool duplicates = std::adjacent_find(a.begin(), a.end()) != a.end() ||
                          std::adjacent_find(b.begin(), b.end()) != b.end();
  if (a != b || duplicates) {
    throw Error(ErrorCode::kMismatchedArgumentSets,
                "rankings cover different arguments (" +
                    std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  }
}

// Paired rank observations in gold order.
std::pair<std::vector<double>, std::vector<double>> paired_ranks(
    const Ranking& gold, const Ranking& predicted) {
  require_same_arguments(gold, predicted);
  const RankVector g = fractional_ranks(gold);
  const RankVector p = fractional_ranks(predicted);
  std::vector<double> x, y;
  x.reserve(g.size());
  y.reserve(g.size());
  for (const auto& [id, rank] : g) {
    x.push_back(rank);
    y.push_back(p.at(id));
  }
  return {std::move(x), std::move(y)};
}

std::int64_t tie_pairs(std::span<const double> sorted_values) {
  std::int64_t total = 0;
  std::int64_t run = 1;
  for (std::size_t i = 1; i <= sorted_values.size(); ++i) {
    if (i < sorted_values.size() && sorted_values[i] == sorted_values[i - 1]) {
      ++run;
    } else {
      total += run * (run - 1) / 2;
      run = 1;
    }
  }
  return total;
}

// Sorts `v` ascending and returns the number of strictly inverted pairs.
std::int64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = count_inversions(v, scratch, lo, mid) +
                       count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

struct TauCounts {
  std::int64_t total_pairs = 0;
  std::int64_t x_ties = 0;
  std::int64_t y_ties = 0;
  std::int64_t concordant_minus_discordant = 0;
};

TauCounts knight_counts(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[idx[i]];
    ys[i] = y[idx[i]];
  }

  TauCounts c;
  c.total_pairs = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  c.x_ties = tie_pairs(xs);
  std::int64_t joint_ties = 0;
  std::int64_t run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && xs[i] == xs[i - 1] && ys[i] == ys[i - 1]) {
      ++run;
    } else {
      joint_ties += run * (run - 1) / 2;
      run = 1;
    }
  }
  std::vector<double> scratch(n);
  const std::int64_t swaps = count_inversions(ys, scratch, 0, n);
  c.y_ties = tie_pairs(ys);
  c.concordant_minus_discordant =
      c.total_pairs - c.x_ties - c.y_ties + joint_ties - 2 * swaps;
  return c;
}

}  // namespace

RankVector fractional_ranks(const Ranking& ranking) {
  RankVector ranks;
  for (std::size_t i = 0; i < ranking.ordered_ids.size(); ++i) {
    ranks[ranking.ordered_ids[i]] = static_cast<double>(i + 1);
  }
  for (const auto& group : ranking.tie_groups) {
    if (group.empty()) continue;
    double sum = 0.0;
    for (ArgumentId id : group) sum += ranks.at(id);
    const double shared = sum / static_cast<double>(group.size());
    for (ArgumentId id : group) ranks[id] = shared;
  }
  return ranks;
}

std::optional<double> spearman_rho(const Ranking& gold, const Ranking& predicted) {
  const auto [x, y] = paired_ranks(gold, predicted);
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  // Doubled, centred fractional ranks are integers, so the sums are exact.
  const auto n1 = static_cast<std::int64_t>(n + 1);
  std::int64_t sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto dx = static_cast<std::int64_t>(std::llround(2 * x[i])) - n1;
    const auto dy = static_cast<std::int64_t>(std::llround(2 * y[i])) - n1;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  const double rho = static_cast<double>(sxy) /
                     std::sqrt(static_cast<double>(sxx) * static_cast<double>(syy));
  return std::clamp(rho, -1.0, 1.0);
}

std::optional<double> kendall_tau_b(std::span<const double> x,
                                    std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kMismatchedArgumentSets,
                "kendall_tau_b needs paired observations");
  }
  if (x.size() < 2) return std::nullopt;
  const TauCounts c = knight_counts(x, y);
  const std::int64_t dx = c.total_pairs - c.x_ties;
  const std::int64_t dy = c.total_pairs - c.y_ties;
  if (dx == 0 || dy == 0) return std::nullopt;
  const double tau = static_cast<double>(c.concordant_minus_discordant) /
                     std::sqrt(static_cast<double>(dx) * static_cast<double>(dy));
  return std::clamp(tau, -1.0, 1.0);
}

std::optional<double> kendall_tau(const Ranking& gold, const Ranking& predicted,
                                  TauVariant variant) {
  const auto [x, y] = paired_ranks(gold, predicted);
  if (variant == TauVariant::kB) return kendall_tau_b(x, y);
  if (x.size() < 2) return std::nullopt;
  const TauCounts c = knight_counts(x, y);
  if (c.x_ties == c.total_pairs || c.y_ties == c.total_pairs) return std::nullopt;
  return static_cast<double>(c.concordant_minus_discordant) /
         static_cast<double>(c.total_pairs);
}

EdgeSet edge_set(const DebateGraph& graph) {
  EdgeSet edges;
  for (const Relation& rel : graph.relations()) {
    edges.insert(Edge{rel.source, rel.target, rel.kind});
  }
  return edges;
}

PrfScore edge_prf(const EdgeSet& gold, const EdgeSet& predicted) {
  std::size_t hits = 0;
  for (const Edge& e : predicted) hits += gold.contains(e);
  PrfScore s;
  if (!predicted.empty()) {
    s.precision = static_cast<double>(hits) / static_cast<double>(predicted.size());
  }
  if (!gold.empty()) {
    s.recall = static_cast<double>(hits) / static_cast<double>(gold.size());
  }
  if (s.precision + s.recall > 0.0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

MetricAverage macro_average(std::span<const std::optional<double>> values) {
  MetricAverage avg;
  double sum = 0.0;
  for (const auto& v : values) {
    if (v.has_value()) {
      sum += *v;
      ++avg.defined;
    } else {
      ++avg.excluded;
    }
  }
  if (avg.defined == 0) {
    throw Error(ErrorCode::kAllUndefined, "no defined value to average");
  }
  avg.mean = sum / static_cast<double>(avg.defined);
  return avg;
}

std::map<std::string, MetricAverage> macro_average(
    std::span<const MetricRecord> records) {
  std::map<std::string, std::vector<std::optional<double>>> columns;
  for (const MetricRecord& r : records) {
    for (const auto& [name, value] : r) columns[name].push_back(value);
  }
  std::map<std::string, MetricAverage> out;
  for (const auto& [name, values] : columns) {
    try {
      out[name] = macro_average(std::span<const std::optional<double>>(values));
    } catch (const Error& e) {
      throw Error(ErrorCode::kAllUndefined,
                  "metric '" + name + "' is undefined for every record");
    }
  }
  return out;
}

std::string_view quartile_key_name(QuartileKey key) {
  return key == QuartileKey::kLengthTokens ? "length" : "position";
}

std::size_t whitespace_tokens(std::string_view text) {
  std::size_t count = 0;
  bool in_token = false;
  for (unsigned char c : text) {
    const bool space = std::isspace(c) != 0;
    if (!space && !in_token) ++count;
    in_token = !space;
  }
  return count;
}

QuartileBuckets quartile_split(
    const DebateGraph& graph, QuartileKey key,
    const std::function<std::size_t(std::string_view)>& tokenizer) {
  struct Keyed {
    std::size_t key;
    ArgumentId id;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(graph.size());
  for (const Argument& arg : graph.arguments()) {
    std::size_t k = arg.chronological_index;
    if (key == QuartileKey::kLengthTokens) {
      k = tokenizer ? tokenizer(arg.text) : whitespace_tokens(arg.text);
    }
    keyed.push_back({k, arg.id});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return a.key != b.key ? a.key < b.key : a.id < b.id;
  });

  QuartileBuckets out;
  out.key = key;
  const std::size_t base = keyed.size() / 4;
  const std::size_t extra = keyed.size() % 4;
  std::size_t next = 0;
  for (std::size_t b = 0; b < 4; ++b) {
    const std::size_t size = base + (b < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) out.buckets[b].push_back(keyed[next++].id);
  }
  return out;
}

Ranking restrict_ranking(const Ranking& ranking, std::span<const ArgumentId> keep) {
  const std::unordered_set<ArgumentId> wanted(keep.begin(), keep.end());
  Ranking out;
  for (ArgumentId id : ranking.ordered_ids) {
    if (wanted.contains(id)) out.ordered_ids.push_back(id);
  }
  for (const auto& group : ranking.tie_groups) {
    std::vector<ArgumentId> kept;
    for (ArgumentId id : group) {
      if (wanted.contains(id)) kept.push_back(id);
    }
    if (kept.size() >= 2) out.tie_groups.push_back(std::move(kept));
  }
  return out;
}

std::array<BucketCorrelation, 4> quartile_correlations(
    const Ranking& gold, const Ranking& predicted, const QuartileBuckets& buckets) {
  require_same_arguments(gold, predicted);
  std::array<BucketCorrelation, 4> out;
  for (std::size_t b = 0; b < 4; ++b) {
    const auto& members = buckets.buckets[b];
    out[b].size = members.size();
    if (members.size() < 2) continue;
    const Ranking g = restrict_ranking(gold, members);
    const Ranking p = restrict_ranking(predicted, members);
    out[b].rho = spearman_rho(g, p);
    out[b].tau = kendall_tau(g, p);
  }
  return out;
}

}  // namespace quadarg
