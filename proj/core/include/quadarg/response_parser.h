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


#ifndef QUADARG_RESPONSE_PARSER_H_
#define QUADARG_RESPONSE_PARSER_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "quadarg/graph.h"
#include "quadarg/metrics.h"
#include "quadarg/quad.h"

namespace quadarg {

// Reads the last "Ranking:" block of a model answer. The header may carry a
// "Final" prefix and markdown decoration. References ("Argument <id>") are
// taken from the header line in order, whatever separates them (">", ",",
// ...), except that "=" between two references marks a tie. When the header
// line holds none, the numbered or bulleted list that follows is read, one
// reference (or one "="-joined tie) per item. Throws kMissingRanking,
// kUnknownArgumentId, or kNotAPermutation on duplicates and omissions.
Ranking parse_ranking(std::string_view response,
                      const std::set<ArgumentId>& expected_ids);

struct AdjacencyParse {
  EdgeSet edges;
  std::size_t rejected = 0;
  std::vector<std::string> diagnostics;  // one entry per rejected tuple
};

// Reads "'Argument 2': [('Argument 6', 'attack'), ...]" entries; the key is
// the target and every tuple names a source and a relation kind. Uses the
// block after the last "Adjacency list" header when there is one. Tuples
// with unknown ids, self references, or unrecognised kinds are rejected and
// tallied. Throws kMissingAdjacency when no list is present and
// kEmptyAfterRejection when every tuple was rejected. An explicit empty list
// ("{}") yields an empty set.
AdjacencyParse parse_adjacency(std::string_view response,
                               const std::set<ArgumentId>& expected_ids);

// Maps "attack", "attacks", "Con", "-", "supported", "pro", "+", ... onto a
// kind; std::nullopt for anything else.
std::optional<RelationKind> normalize_kind(std::string_view word);

}  // namespace quadarg

#endif  // QUADARG_RESPONSE_PARSER_H_
