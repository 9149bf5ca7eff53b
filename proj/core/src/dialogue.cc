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

#include "quadarg/dialogue.h"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "quadarg/error.h"
#include "quadarg/node_xml.h"

namespace quadarg {
namespace {

// prerequisites[i]: dense indices that must be placed before i.
std::vector<std::vector<std::size_t>> prerequisites(const DebateGraph& graph,
                                                    OrderConstraint constraint) {
  std::vector<std::vector<std::size_t>> pre(graph.size());
  for (const Relation& rel : graph.relations()) {
    const std::size_t s = graph.index_of(rel.source);
    const std::size_t t = graph.index_of(rel.target);
    if (constraint == OrderConstraint::kClaimBeforeReply) {
      pre[s].push_back(t);
    } else {
      pre[t].push_back(s);
    }
  }
  return pre;
}

std::vector<std::vector<std::size_t>> dependents_of(
    const std::vector<std::vector<std::size_t>>& pre) {
  std::vector<std::vector<std::size_t>> dependents(pre.size());
  for (std::size_t i = 0; i < pre.size(); ++i) {
    for (std::size_t p : pre[i]) dependents[p].push_back(i);
  }
  return dependents;
}

std::vector<std::size_t> random_order(
    const std::vector<std::vector<std::size_t>>& pre,
    const std::vector<std::vector<std::size_t>>& dependents,
    std::mt19937_64& rng) {
  const std::size_t n = pre.size();
  std::vector<std::size_t> missing(n);
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    missing[i] = pre[i].size();
    if (missing[i] == 0) ready.push_back(i);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    // Plain modulo keeps the draw identical across standard libraries.
    const std::size_t pick = static_cast<std::size_t>(rng() % ready.size());
    const std::size_t node = ready[pick];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
    order.push_back(node);
    for (std::size_t d : dependents[node]) {
      if (--missing[d] == 0) ready.push_back(d);
    }
  }
  return order;
}

// Depth-first enumeration of linear extensions, stopping once `limit` have
// been produced.
void enumerate_orders(const std::vector<std::vector<std::size_t>>& dependents,
                      std::vector<std::size_t>& missing,
                      std::vector<bool>& placed,
                      std::vector<std::size_t>& prefix, std::size_t limit,
                      std::vector<std::vector<std::size_t>>& out) {
  const std::size_t n = missing.size();
  if (prefix.size() == n) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t i = 0; i < n && out.size() < limit; ++i) {
    if (placed[i] || missing[i] != 0) continue;
    placed[i] = true;
    prefix.push_back(i);
    for (std::size_t d : dependents[i]) --missing[d];
    enumerate_orders(dependents, missing, placed, prefix, limit, out);
    for (std::size_t d : dependents[i]) ++missing[d];
    prefix.pop_back();
    placed[i] = false;
  }
}

}  // namespace

std::string OrderingLabel::to_string() const {
  if (kind == Kind::kChronological) return "chronological";
  std::ostringstream out;
  out << "toposort(seed=" << seed << ",index=" << index << ")";
  return out.str();
}

std::vector<ArgumentId> Dialogue::order() const {
  std::vector<ArgumentId> ids;
  ids.reserve(lines.size());
  for (const DialogueLine& l : lines) ids.push_back(l.id);
  return ids;
}

std::string Dialogue::render() const {
  std::string out;
  for (const DialogueLine& l : lines) {
    out += l.line;
    out += '\n';
  }
  return out;
}

std::vector<ArgumentId> chronological_order(const DebateGraph& graph) {
  return graph.ids();
}

Dialogue flatten(const DebateGraph& graph, std::span<const ArgumentId> order,
                 OrderingLabel label) {
  if (order.size() != graph.size()) {
    throw Error(ErrorCode::kNotAPermutation,
                "order lists " + std::to_string(order.size()) +
                    " arguments, graph '" + graph.name() + "' has " +
                    std::to_string(graph.size()));
  }
  std::vector<bool> used(graph.size(), false);
  Dialogue dialogue;
  dialogue.graph_name = graph.name();
  dialogue.ordering = label;
  dialogue.lines.reserve(order.size());
  for (ArgumentId id : order) {
    if (!graph.contains(id)) {
      throw Error(ErrorCode::kNotAPermutation,
                  "argument " + to_string(id) + " is not in graph '" +
                      graph.name() + "'");
    }
    const std::size_t i = graph.index_of(id);
    if (used[i]) {
      throw Error(ErrorCode::kNotAPermutation,
                  "argument " + to_string(id) + " listed twice");
    }
    used[i] = true;
    dialogue.lines.push_back(
        {id, "Argument " + to_string(id) + ": " +
                 canonical_text(graph.arguments()[i].text)});
  }
  return dialogue;
}

bool satisfies_constraint(const DebateGraph& graph,
                          std::span<const ArgumentId> order,
                          OrderConstraint constraint) {
  if (order.size() != graph.size()) return false;
  std::vector<std::size_t> position(graph.size(), graph.size());
  for (std::size_t p = 0; p < order.size(); ++p) {
    if (!graph.contains(order[p])) return false;
    const std::size_t i = graph.index_of(order[p]);
    if (position[i] != graph.size()) return false;
    position[i] = p;
  }
  for (const Relation& rel : graph.relations()) {
    const std::size_t s = position[graph.index_of(rel.source)];
    const std::size_t t = position[graph.index_of(rel.target)];
    if (constraint == OrderConstraint::kClaimBeforeReply ? t > s : s > t) {
      return false;
    }
  }
  return true;
}

OrderSample sample_topological_orders(const DebateGraph& graph, std::size_t k,
                                      std::uint64_t seed,
                                      OrderConstraint constraint,
                                      std::size_t max_attempts) {
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  }
  if (max_attempts == 0) max_attempts = 100 * k;

  const auto pre = prerequisites(graph, constraint);
  const auto dependents = dependents_of(pre);
  std::mt19937_64 rng(seed);

  std::vector<std::vector<std::size_t>> found;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t attempt = 0; attempt < max_attempts && found.size() < k;
       ++attempt) {
    auto order = random_order(pre, dependents, rng);
    if (seen.insert(order).second) found.push_back(std::move(order));
  }

  OrderSample sample;
  sample.seed = seed;
  if (found.size() < k) {
    std::vector<std::size_t> missing(graph.size());
    for (std::size_t i = 0; i < graph.size(); ++i) missing[i] = pre[i].size();
    std::vector<bool> placed(graph.size(), false);
    std::vector<std::size_t> prefix;
    std::vector<std::vector<std::size_t>> all;
    // Enough to either fill the sample or prove it cannot be filled.
    enumerate_orders(dependents, missing, placed, prefix, k + found.size(), all);
    for (auto& order : all) {
      if (found.size() >= k) break;
      if (seen.insert(order).second) found.push_back(std::move(order));
    }
    sample.not_enough_orders = found.size() < k;
  }

  const auto args = graph.arguments();
  for (const auto& order : found) {
    std::vector<ArgumentId> ids;
    ids.reserve(order.size());
    for (std::size_t i : order) ids.push_back(args[i].id);
    sample.orders.push_back(std::move(ids));
  }
  return sample;
}

}  // namespace quadarg
