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

#ifndef QUADARG_CORPUS_H_
#define QUADARG_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadarg/graph.h"

namespace quadarg {

struct Corpus {
  std::string id;
  std::vector<DebateGraph> graphs;
};

struct CorpusStats {
  std::size_t graph_count = 0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t support_edges = 0;
  std::size_t attack_edges = 0;
  std::map<std::string, std::size_t> per_graph_nodes;
  // Degree moments over all arguments of the corpus (population sd).
  double mean_in_degree = 0.0;
  double mean_out_degree = 0.0;
  double sd_in_degree = 0.0;
  double sd_out_degree = 0.0;
  std::size_t max_in_degree = 0;
  std::size_t max_out_degree = 0;
  // Graphs with at least one argument of in-degree >= 2.
  std::size_t graphs_with_fan_in = 0;
  std::uint64_t pair_count = 0;
};

// Independent of the order of `graphs`.
CorpusStats corpus_stats(std::span<const DebateGraph> graphs);

struct CorpusSplit {
  std::vector<DebateGraph> exemplars;
  std::vector<DebateGraph> evaluation;
};

// Exemplars in the order named, evaluation graphs in corpus order. Throws
// kDuplicateExemplar or kUnknownGraphName.
CorpusSplit split_corpus(std::span<const DebateGraph> graphs,
                         std::span<const std::string> exemplar_names);

// Names of three structurally different graphs for in-context exemplars:
// the one whose support fraction is closest to one half, the most
// attack-heavy, and the most support-heavy (ties go to the earlier graph).
// Needs at least three graphs with relations.
std::vector<std::string> select_exemplars(std::span<const DebateGraph> graphs);

// Canonical JSON graph file:
//   {"name": ..., "arguments": [{"id", "text", "chronological_index",
//    "base_weight"}], "relations": [{"source", "target", "kind"}]}
// A corpus file wraps graphs as {"corpus": <id>, "graphs": [...]}.
std::string write_graph_json(const DebateGraph& graph);
std::string write_corpus_json(const Corpus& corpus);
Corpus parse_corpus_json(std::string_view text, std::string default_id);

// Reads NoDE XML or canonical JSON (single graph or corpus), chosen by the
// first non-blank character. The corpus id defaults to the file stem.
Corpus load_corpus(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace quadarg

#endif  // QUADARG_CORPUS_H_
