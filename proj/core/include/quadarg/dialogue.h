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

#ifndef QUADARG_DIALOGUE_H_
#define QUADARG_DIALOGUE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quadarg/graph.h"

namespace quadarg {

struct OrderingLabel {
  enum class Kind { kChronological, kTopoSort } kind = Kind::kChronological;
  std::uint64_t seed = 0;
  std::size_t index = 0;

  static OrderingLabel chronological() { return {}; }
  static OrderingLabel toposort(std::uint64_t seed, std::size_t index) {
    return {Kind::kTopoSort, seed, index};
  }
  // "chronological" or "toposort(seed=42,index=3)".
  std::string to_string() const;
};

struct DialogueLine {
  ArgumentId id;
  std::string line;  // "Argument <id>: <text>"
};

// A debate with all relations removed: only numbered argument texts remain.
struct Dialogue {
  std::string graph_name;
  std::vector<DialogueLine> lines;
  OrderingLabel ordering;

  std::vector<ArgumentId> order() const;
  // One line per argument, each terminated by '\n'.
  std::string render() const;
};

std::vector<ArgumentId> chronological_order(const DebateGraph& graph);

// Throws kNotAPermutation unless `order` lists every argument exactly once.
Dialogue flatten(const DebateGraph& graph, std::span<const ArgumentId> order,
                 OrderingLabel label = OrderingLabel::chronological());

inline Dialogue flatten_chronological(const DebateGraph& graph) {
  const auto order = chronological_order(graph);
  return flatten(graph, order);
}

// Which endpoint of a relation must come first in a shuffled dialogue.
enum class OrderConstraint {
  kClaimBeforeReply,  // target precedes source (default)
  kReplyBeforeClaim,  // source precedes target
};

bool satisfies_constraint(const DebateGraph& graph,
                          std::span<const ArgumentId> order,
                          OrderConstraint constraint);

struct OrderSample {
  std::vector<std::vector<ArgumentId>> orders;
  std::uint64_t seed = 0;
  // Set when the graph admits fewer than k orders; `orders` is then the
  // complete set.
  bool not_enough_orders = false;
};

// Up to k pairwise distinct orders consistent with `constraint`, drawn by
// repeatedly picking a uniformly random argument among those whose
// prerequisites are already placed. Deterministic for a given seed.
// Rejection sampling stops after `max_attempts` draws (0 means 100 * k), at
// which point the remaining orders, if any exist, are found by enumeration.
OrderSample sample_topological_orders(
    const DebateGraph& graph, std::size_t k, std::uint64_t seed,
    OrderConstraint constraint = OrderConstraint::kClaimBeforeReply,
    std::size_t max_attempts = 0);

}  // namespace quadarg

#endif  // QUADARG_DIALOGUE_H_
