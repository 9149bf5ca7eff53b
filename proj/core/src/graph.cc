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

#include "quadarg/graph.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include "quadarg/error.h"

namespace quadarg {
namespace {

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

// Walks backwards along unprocessed predecessors until a node repeats. Every
// node left over by Kahn's algorithm has such a predecessor.
std::vector<std::size_t> find_cycle(
    const std::vector<std::vector<std::size_t>>& predecessors,
    const std::vector<std::size_t>& remaining_in_degree) {
  std::size_t start = 0;
  while (remaining_in_degree[start] == 0) ++start;
  std::vector<std::size_t> path;
  std::vector<std::ptrdiff_t> seen_at(remaining_in_degree.size(), -1);
  std::size_t node = start;
  while (seen_at[node] < 0) {
    seen_at[node] = static_cast<std::ptrdiff_t>(path.size());
    path.push_back(node);
    for (std::size_t pred : predecessors[node]) {
      if (remaining_in_degree[pred] > 0) {
        node = pred;
        break;
      }
    }
  }
  std::vector<std::size_t> cycle(path.begin() + seen_at[node], path.end());
  // The walk followed edges backwards; report them source -> target.
  std::reverse(cycle.begin(), cycle.end());
  cycle.push_back(cycle.front());
  return cycle;
}

}  // namespace

std::string to_string(ArgumentId id) { return std::to_string(id.value); }

std::string_view relation_kind_name(RelationKind kind) {
  return kind == RelationKind::kAttack ? "attack" : "support";
}

DebateGraph build_graph(std::string name, std::vector<Argument> arguments,
                        std::vector<Relation> relations,
                        std::optional<WeightMap> base_weights) {
  DebateGraph graph;
  graph.name_ = std::move(name);

  std::set<std::size_t> chronology;
  for (const Argument& arg : arguments) {
    if (arg.id.value < 1) {
      throw Error(ErrorCode::kInvalidId,
                  "argument id must be >= 1, got " + to_string(arg.id));
    }
    if (is_blank(arg.text)) {
      throw Error(ErrorCode::kEmptyText,
                  "argument " + to_string(arg.id) + " has empty text");
    }
    if (!chronology.insert(arg.chronological_index).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "chronological index " +
                      std::to_string(arg.chronological_index) +
                      " used twice in graph '" + graph.name_ + "'");
    }
  }
  std::stable_sort(arguments.begin(), arguments.end(),
                   [](const Argument& a, const Argument& b) {
                     return a.chronological_index < b.chronological_index;
                   });
  for (std::size_t i = 0; i < arguments.size(); ++i) {
    if (!graph.index_.emplace(arguments[i].id, i).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate argument id " + to_string(arguments[i].id) +
                      " in graph '" + graph.name_ + "'");
    }
  }
  graph.arguments_ = std::move(arguments);
  const std::size_t n = graph.arguments_.size();

  graph.attackers_.assign(n, {});
  graph.supporters_.assign(n, {});
  std::vector<std::vector<std::size_t>> successors(n);
  std::vector<std::vector<std::size_t>> predecessors(n);
  std::set<std::pair<ArgumentId, ArgumentId>> seen_pairs;
  for (const Relation& rel : relations) {
    if (rel.source == rel.target) {
      throw Error(ErrorCode::kSelfRelation,
                  "argument " + to_string(rel.source) + " relates to itself");
    }
    for (ArgumentId endpoint : {rel.source, rel.target}) {
      if (!graph.contains(endpoint)) {
        throw Error(ErrorCode::kDanglingEndpoint,
                    "relation " + to_string(rel.source) + " -> " +
                        to_string(rel.target) + " references unknown argument " +
                        to_string(endpoint));
      }
    }
    if (!seen_pairs.emplace(rel.source, rel.target).second) {
      throw Error(ErrorCode::kDuplicateRelation,
                  "more than one relation " + to_string(rel.source) + " -> " +
                      to_string(rel.target));
    }
    const std::size_t s = graph.index_.at(rel.source);
    const std::size_t t = graph.index_.at(rel.target);
    (rel.kind == RelationKind::kAttack ? graph.attackers_ : graph.supporters_)[t]
        .push_back(s);
    successors[s].push_back(t);
    predecessors[t].push_back(s);
  }
  for (auto* lists : {&graph.attackers_, &graph.supporters_}) {
    for (auto& list : *lists) std::sort(list.begin(), list.end());
  }
  graph.relations_ = std::move(relations);

  graph.weights_.assign(n, kDefaultBaseWeight);
  if (base_weights.has_value()) {
    for (const auto& [id, weight] : *base_weights) {
      if (!graph.contains(id)) {
        throw Error(ErrorCode::kUnknownArgument,
                    "weight given for unknown argument " + to_string(id));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto it = base_weights->find(graph.arguments_[i].id);
      if (it == base_weights->end()) {
        throw Error(ErrorCode::kMissingWeight,
                    "no base weight for argument " +
                        to_string(graph.arguments_[i].id));
      }
      if (!(it->second >= 0.0 && it->second <= 1.0)) {
        std::ostringstream msg;
        msg << "base weight " << it->second << " of argument "
            << to_string(it->first) << " is outside [0, 1]";
        throw Error(ErrorCode::kWeightOutOfRange, msg.str());
      }
      graph.weights_[i] = it->second;
    }
  }

  // Kahn's algorithm, earliest argument first.
  std::vector<std::size_t> in_degree(n, 0);
  for (std::size_t t = 0; t < n; ++t) in_degree[t] = predecessors[t].size();
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>
      ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_degree[i] == 0) ready.push(i);
  }
  graph.topo_.reserve(n);
  while (!ready.empty()) {
    const std::size_t node = ready.top();
    ready.pop();
    graph.topo_.push_back(node);
    for (std::size_t succ : successors[node]) {
      if (--in_degree[succ] == 0) ready.push(succ);
    }
  }
  if (graph.topo_.size() != n) {
    std::ostringstream msg;
    msg << "graph '" << graph.name_ << "' contains a cycle: ";
    const auto cycle = find_cycle(predecessors, in_degree);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i > 0) msg << " -> ";
      msg << to_string(graph.arguments_[cycle[i]].id);
    }
    throw Error(ErrorCode::kCycleDetected, msg.str());
  }
  return graph;
}

const Argument& DebateGraph::argument(ArgumentId id) const {
  return arguments_[index_of(id)];
}

double DebateGraph::base_weight(ArgumentId id) const {
  return weights_[index_of(id)];
}

WeightMap DebateGraph::base_weights() const {
  WeightMap weights;
  for (std::size_t i = 0; i < arguments_.size(); ++i) {
    weights.emplace(arguments_[i].id, weights_[i]);
  }
  return weights;
}

std::vector<ArgumentId> DebateGraph::ids() const {
  std::vector<ArgumentId> out;
  out.reserve(arguments_.size());
  for (const Argument& arg : arguments_) out.push_back(arg.id);
  return out;
}

std::size_t DebateGraph::index_of(ArgumentId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorCode::kUnknownArgument,
                "argument " + to_string(id) + " is not in graph '" + name_ +
                    "'");
  }
  return it->second;
}

namespace {

std::vector<ArgumentId> sorted_ids(const DebateGraph& graph,
                                   std::span<const std::size_t> indices) {
  std::vector<ArgumentId> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(graph.arguments()[i].id);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<ArgumentId> attackers(const DebateGraph& graph, ArgumentId a) {
  return sorted_ids(graph, graph.attacker_indices(graph.index_of(a)));
}

std::vector<ArgumentId> supporters(const DebateGraph& graph, ArgumentId a) {
  return sorted_ids(graph, graph.supporter_indices(graph.index_of(a)));
}

std::vector<ArgumentId> topological_order(const DebateGraph& graph) {
  std::vector<ArgumentId> out;
  out.reserve(graph.size());
  for (std::size_t i : graph.evaluation_order()) {
    out.push_back(graph.arguments()[i].id);
  }
  return out;
}

std::uint64_t pair_count(std::span<const DebateGraph> graphs) {
  std::uint64_t total = 0;
  for (const DebateGraph& g : graphs) {
    const std::uint64_t n = g.size();
    if (n >= 2) total += n * (n - 1) / 2;
  }
  return total;
}

}  // namespace quadarg
