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

#include "quadarg/quad.h"

#include <algorithm>
#include <sstream>
#include <utility>

#include "quadarg/error.h"

namespace quadarg {
namespace {

void check_unit(double value, const char* what) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream msg;
    msg << what << " " << value << " is outside [0, 1]";
    throw Error(ErrorCode::kOutOfRangeInput, msg.str());
  }
}

double complement_product(std::span<const double> scores) {
  double product = 1.0;
  for (double s : scores) {
    check_unit(s, "score");
    product *= 1.0 - s;
  }
  return product;
}

}  // namespace

double aggregate_attack(double theta, std::span<const double> attacker_scores) {
  check_unit(theta, "base weight");
  return theta * complement_product(attacker_scores);
}

double aggregate_support(double theta,
                         std::span<const double> supporter_scores) {
  check_unit(theta, "base weight");
  return 1.0 - (1.0 - theta) * complement_product(supporter_scores);
}

double ScoreMap::at(ArgumentId id) const {
  auto it = scores.find(id);
  if (it == scores.end()) {
    throw Error(ErrorCode::kUnknownArgument,
                "no score for argument " + to_string(id) + " in '" +
                    graph_name + "'");
  }
  return it->second;
}

ScoreMap acceptability(const DebateGraph& graph) {
  const auto args = graph.arguments();
  std::vector<double> sigma(args.size(), 0.0);
  std::vector<double> buffer;
  for (std::size_t node : graph.evaluation_order()) {
    const double theta = graph.base_weight(args[node].id);
    const auto att = graph.attacker_indices(node);
    const auto sup = graph.supporter_indices(node);

    auto gather = [&](std::span<const std::size_t> from) {
      buffer.clear();
      for (std::size_t i : from) buffer.push_back(sigma[i]);
      return std::span<const double>(buffer);
    };

    if (att.empty() && sup.empty()) {
      sigma[node] = theta;
    } else if (sup.empty()) {
      sigma[node] = aggregate_attack(theta, gather(att));
    } else if (att.empty()) {
      sigma[node] = aggregate_support(theta, gather(sup));
    } else {
      const double va = aggregate_attack(theta, gather(att));
      const double vs = aggregate_support(theta, gather(sup));
      sigma[node] = (va + vs) / 2.0;
    }
  }

  ScoreMap out;
  out.graph_name = graph.name();
  for (std::size_t i = 0; i < args.size(); ++i) {
    out.scores.emplace(args[i].id, sigma[i]);
  }
  return out;
}

Ranking Ranking::strict(std::vector<ArgumentId> ordered_ids) {
  Ranking r;
  r.ordered_ids = std::move(ordered_ids);
  return r;
}

Ranking gold_ranking(const ScoreMap& scores) {
  std::vector<std::pair<ArgumentId, double>> entries(scores.scores.begin(),
                                                     scores.scores.end());
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  Ranking ranking;
  ranking.ordered_ids.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    while (j < entries.size() && entries[j].second == entries[i].second) ++j;
    if (j - i >= 2) {
      auto& group = ranking.tie_groups.emplace_back();
      for (std::size_t k = i; k < j; ++k) group.push_back(entries[k].first);
    }
    for (std::size_t k = i; k < j; ++k) {
      ranking.ordered_ids.push_back(entries[k].first);
    }
    i = j;
  }
  return ranking;
}

}  // namespace quadarg
