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

#ifndef QUADARG_GRAPH_H_
#define QUADARG_GRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace quadarg {

// Identifier of an argument. Positive, and unique only within one graph.
struct ArgumentId {
  std::int64_t value = 0;

  constexpr ArgumentId() = default;
  constexpr explicit ArgumentId(std::int64_t v) : value(v) {}

  friend constexpr auto operator<=>(ArgumentId, ArgumentId) = default;
};

std::string to_string(ArgumentId id);

}  // namespace quadarg

template <>
struct std::hash<quadarg::ArgumentId> {
  std::size_t operator()(quadarg::ArgumentId id) const noexcept {
    return std::hash<std::int64_t>{}(id.value);
  }
};

namespace quadarg {

enum class RelationKind { kAttack, kSupport };

std::string_view relation_kind_name(RelationKind kind);  // "attack" / "support"

struct Argument {
  ArgumentId id;
  std::string text;
  // 0-based position in the original debate order.
  std::size_t chronological_index = 0;
};

// `source` acts on `target`: (b, a) with b attacking or supporting a.
struct Relation {
  ArgumentId source;
  ArgumentId target;
  RelationKind kind = RelationKind::kAttack;

  friend auto operator<=>(const Relation&, const Relation&) = default;
};

using WeightMap = std::map<ArgumentId, double>;

inline constexpr double kDefaultBaseWeight = 0.5;

class DebateGraph;

// Validates the inputs and returns an immutable graph. `base_weights` of
// std::nullopt assigns kDefaultBaseWeight to every argument. Throws Error
// with kInvalidId, kDuplicateId, kEmptyText, kDanglingEndpoint,
// kSelfRelation, kDuplicateRelation, kUnknownArgument, kMissingWeight,
// kWeightOutOfRange or kCycleDetected.
DebateGraph build_graph(std::string name, std::vector<Argument> arguments,
                        std::vector<Relation> relations,
                        std::optional<WeightMap> base_weights = std::nullopt);

// Acyclic quantitative bipolar argumentation framework. Immutable once built,
// so it can be shared freely between threads.
class DebateGraph {
 public:
  const std::string& name() const { return name_; }
  std::size_t size() const { return arguments_.size(); }

  // Arguments sorted by chronological_index.
  std::span<const Argument> arguments() const { return arguments_; }
  std::span<const Relation> relations() const { return relations_; }

  bool contains(ArgumentId id) const { return index_.contains(id); }
  const Argument& argument(ArgumentId id) const;
  double base_weight(ArgumentId id) const;
  WeightMap base_weights() const;

  std::vector<ArgumentId> ids() const;  // chronological

  // Dense index in [0, size()) matching arguments(); throws kUnknownArgument.
  std::size_t index_of(ArgumentId id) const;

  // Incoming relations as dense indices of the acting arguments.
  std::span<const std::size_t> attacker_indices(std::size_t target) const {
    return attackers_[target];
  }
  std::span<const std::size_t> supporter_indices(std::size_t target) const {
    return supporters_[target];
  }

  // Dense indices with every relation source placed before its target.
  std::span<const std::size_t> evaluation_order() const { return topo_; }

 private:
  friend DebateGraph build_graph(std::string, std::vector<Argument>,
                                 std::vector<Relation>,
                                 std::optional<WeightMap>);
  DebateGraph() = default;

  std::string name_;
  std::vector<Argument> arguments_;
  std::vector<Relation> relations_;
  std::vector<double> weights_;
  std::unordered_map<ArgumentId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> attackers_;
  std::vector<std::vector<std::size_t>> supporters_;
  std::vector<std::size_t> topo_;
};

// Att(a): sources of attack relations targeting `a`, ascending. Throws
// kUnknownArgument when `a` is not in the graph.
std::vector<ArgumentId> attackers(const DebateGraph& graph, ArgumentId a);

// Sup(a): sources of support relations targeting `a`, ascending.
std::vector<ArgumentId> supporters(const DebateGraph& graph, ArgumentId a);

// Every relation's source precedes its target. Deterministic: among ready
// arguments the chronologically earliest is emitted first.
std::vector<ArgumentId> topological_order(const DebateGraph& graph);

// Sum over graphs of C(|A_g|, 2).
std::uint64_t pair_count(std::span<const DebateGraph> graphs);

}  // namespace quadarg

#endif  // QUADARG_GRAPH_H_
