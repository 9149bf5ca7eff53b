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

#include "quadarg/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "quadarg/error.h"
#include "quadarg/node_xml.h"

namespace quadarg {
namespace {

using nlohmann::json;

double population_sd(double sum, double sum_sq, double n) {
  if (n == 0) return 0.0;
  const double mean = sum / n;
  return std::sqrt(std::max(0.0, sum_sq / n - mean * mean));
}

struct EdgeMix {
  std::size_t support = 0;
  std::size_t total = 0;
  double support_fraction() const {
    return static_cast<double>(support) / static_cast<double>(total);
  }
};

EdgeMix edge_mix(const DebateGraph& g) {
  EdgeMix mix;
  for (const Relation& rel : g.relations()) {
    mix.support += rel.kind == RelationKind::kSupport;
    ++mix.total;
  }
  return mix;
}

json graph_to_json(const DebateGraph& graph) {
  json args = json::array();
  for (const Argument& arg : graph.arguments()) {
    args.push_back({{"id", arg.id.value},
                    {"text", arg.text},
                    {"chronological_index", arg.chronological_index},
                    {"base_weight", graph.base_weight(arg.id)}});
  }
  json rels = json::array();
  for (const Relation& rel : graph.relations()) {
    rels.push_back({{"source", rel.source.value},
                    {"target", rel.target.value},
                    {"kind", relation_kind_name(rel.kind)}});
  }
  return {{"name", graph.name()}, {"arguments", args}, {"relations", rels}};
}

DebateGraph graph_from_json(const json& j) {
  try {
    std::vector<Argument> arguments;
    WeightMap weights;
    bool any_weight = false;
    std::size_t position = 0;
    for (const json& a : j.at("arguments")) {
      Argument arg;
      arg.id = ArgumentId(a.at("id").get<std::int64_t>());
      arg.text = a.at("text").get<std::string>();
      arg.chronological_index = a.contains("chronological_index")
                                    ? a.at("chronological_index").get<std::size_t>()
                                    : position;
      if (a.contains("base_weight")) {
        weights[arg.id] = a.at("base_weight").get<double>();
        any_weight = true;
      }
      arguments.push_back(std::move(arg));
      ++position;
    }
    std::vector<Relation> relations;
    if (j.contains("relations")) {
      for (const json& r : j.at("relations")) {
        const std::string kind = r.at("kind").get<std::string>();
        if (kind != "attack" && kind != "support") {
          throw Error(ErrorCode::kMalformedGraphFile,
                      "unknown relation kind '" + kind + "'");
        }
        relations.push_back(Relation{
            ArgumentId(r.at("source").get<std::int64_t>()),
            ArgumentId(r.at("target").get<std::int64_t>()),
            kind == "attack" ? RelationKind::kAttack : RelationKind::kSupport});
      }
    }
    std::optional<WeightMap> base;
    if (any_weight) base = std::move(weights);
    return build_graph(j.at("name").get<std::string>(), std::move(arguments),
                       std::move(relations), std::move(base));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedGraphFile,
                std::string("invalid graph file: ") + e.what());
  }
}

}  // namespace

CorpusStats corpus_stats(std::span<const DebateGraph> graphs) {
  CorpusStats stats;
  stats.graph_count = graphs.size();
  double in_sum = 0, in_sq = 0, out_sum = 0, out_sq = 0;
  for (const DebateGraph& g : graphs) {
    stats.node_count += g.size();
    stats.per_graph_nodes[g.name()] = g.size();
    std::vector<std::size_t> in(g.size(), 0), out(g.size(), 0);
    for (const Relation& rel : g.relations()) {
      ++stats.edge_count;
      if (rel.kind == RelationKind::kSupport) {
        ++stats.support_edges;
      } else {
        ++stats.attack_edges;
      }
      ++in[g.index_of(rel.target)];
      ++out[g.index_of(rel.source)];
    }
    bool fan_in = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      in_sum += in[i];
      in_sq += static_cast<double>(in[i] * in[i]);
      out_sum += out[i];
      out_sq += static_cast<double>(out[i] * out[i]);
      stats.max_in_degree = std::max(stats.max_in_degree, in[i]);
      stats.max_out_degree = std::max(stats.max_out_degree, out[i]);
      fan_in |= in[i] >= 2;
    }
    stats.graphs_with_fan_in += fan_in;
  }
  const double n = static_cast<double>(stats.node_count);
  if (stats.node_count > 0) {
    stats.mean_in_degree = in_sum / n;
    stats.mean_out_degree = out_sum / n;
  }
  stats.sd_in_degree = population_sd(in_sum, in_sq, n);
  stats.sd_out_degree = population_sd(out_sum, out_sq, n);
  stats.pair_count = pair_count(graphs);
  return stats;
}

CorpusSplit split_corpus(std::span<const DebateGraph> graphs,
                         std::span<const std::string> exemplar_names) {
  std::set<std::string> wanted;
  for (const std::string& name : exemplar_names) {
    if (!wanted.insert(name).second) {
      throw Error(ErrorCode::kDuplicateExemplar,
                  "exemplar '" + name + "' named twice");
    }
  }
  CorpusSplit split;
  for (const std::string& name : exemplar_names) {
    auto it = std::find_if(graphs.begin(), graphs.end(),
                           [&](const DebateGraph& g) { return g.name() == name; });
    if (it == graphs.end()) {
      throw Error(ErrorCode::kUnknownGraphName,
                  "no graph named '" + name + "' in corpus");
    }
    split.exemplars.push_back(*it);
  }
  for (const DebateGraph& g : graphs) {
    if (!wanted.contains(g.name())) split.evaluation.push_back(g);
  }
  return split;
}

std::vector<std::string> select_exemplars(std::span<const DebateGraph> graphs) {
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (!graphs[i].relations().empty()) candidates.push_back(i);
  }
  if (candidates.size() < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "exemplar selection needs at least three graphs with relations");
  }
  std::vector<std::size_t> chosen;
  auto pick = [&](auto badness) {
    std::size_t best = graphs.size();
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i : candidates) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      const double value = badness(edge_mix(graphs[i]));
      if (value < best_value) {
        best = i;
        best_value = value;
      }
    }
    chosen.push_back(best);
  };
  pick([](const EdgeMix& m) { return std::abs(m.support_fraction() - 0.5); });
  pick([](const EdgeMix& m) { return m.support_fraction(); });
  pick([](const EdgeMix& m) { return -m.support_fraction(); });

  std::vector<std::string> names;
  for (std::size_t i : chosen) names.push_back(graphs[i].name());
  return names;
}

std::string write_graph_json(const DebateGraph& graph) {
  return graph_to_json(graph).dump(2) + "\n";
}

std::string write_corpus_json(const Corpus& corpus) {
  json graphs = json::array();
  for (const DebateGraph& g : corpus.graphs) graphs.push_back(graph_to_json(g));
  return json{{"corpus", corpus.id}, {"graphs", graphs}}.dump(2) + "\n";
}

Corpus parse_corpus_json(std::string_view text, std::string default_id) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedGraphFile,
                std::string("invalid JSON: ") + e.what());
  }
  Corpus corpus;
  corpus.id = std::move(default_id);
  if (!doc.is_object()) {
    throw Error(ErrorCode::kMalformedGraphFile,
                "graph file must hold a JSON object");
  }
  if (doc.contains("graphs")) {
    if (doc.contains("corpus") && doc["corpus"].is_string()) {
      corpus.id = doc["corpus"].get<std::string>();
    }
    if (!doc["graphs"].is_array()) {
      throw Error(ErrorCode::kMalformedGraphFile, "'graphs' must be an array");
    }
    for (const json& g : doc["graphs"]) corpus.graphs.push_back(graph_from_json(g));
  } else {
    corpus.graphs.push_back(graph_from_json(doc));
  }
  return corpus;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Corpus load_corpus(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  const auto first = std::find_if_not(content.begin(), content.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
  if (first != content.end() && *first == '<') {
    return Corpus{path.stem().string(), parse_node_xml(content)};
  }
  return parse_corpus_json(content, path.stem().string());
}

}  // namespace quadarg
