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

#ifndef QUADARG_QUAD_H_
#define QUADARG_QUAD_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "quadarg/graph.h"

namespace quadarg {

// Attack aggregation: theta * prod(1 - s). An empty set leaves theta
// unchanged. Throws kOutOfRangeInput for values outside [0, 1].
double aggregate_attack(double theta, std::span<const double> attacker_scores);

// Support aggregation: 1 - (1 - theta) * prod(1 - s).
double aggregate_support(double theta, std::span<const double> supporter_scores);

// Final acceptability degree of every argument of one graph.
struct ScoreMap {
  std::string graph_name;
  std::map<ArgumentId, double> scores;

  double at(ArgumentId id) const;
};

// QuAD acceptability degrees.
//
//   sigma(a) = v_a(a)                 if only attackers
//            = v_s(a)                 if only supporters
//            = theta(a)               if neither
//            = (v_a(a) + v_s(a)) / 2  otherwise
//
// with v_a and v_s the attack and support aggregations over the degrees of
// the acting arguments. On an acyclic graph one pass in topological order
// reaches the fixed point exactly.
ScoreMap acceptability(const DebateGraph& graph);

// An ordering of arguments, best first. `tie_groups` lists each maximal set
// of two or more arguments that share a score; members of a group are
// contiguous in `ordered_ids` and ascend by id. Rankings parsed from model
// output carry no ties.
struct Ranking {
  std::vector<ArgumentId> ordered_ids;
  std::vector<std::vector<ArgumentId>> tie_groups;

  static Ranking strict(std::vector<ArgumentId> ordered_ids);

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

// Descending by score; equal scores (exact comparison) ordered by ascending
// id and recorded as a tie group.
Ranking gold_ranking(const ScoreMap& scores);

}  // namespace quadarg

#endif  // QUADARG_QUAD_H_
