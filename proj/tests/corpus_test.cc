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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "quadarg/error.h"

namespace quadarg {
namespace {

using testing::data_path;
using testing::error_code_of;

TEST(CorpusStats, DebatePediaCounts) {
  const Corpus c = load_corpus(data_path("DebatePedia.xml"));
  EXPECT_EQ(c.id, "DebatePedia");
  const CorpusStats s = corpus_stats(c.graphs);
  EXPECT_EQ(s.graph_count, 22u);
  EXPECT_EQ(s.node_count, 282u);
  EXPECT_EQ(s.edge_count, 260u);
  EXPECT_EQ(s.support_edges, 140u);
  EXPECT_EQ(s.attack_edges, 120u);
  EXPECT_EQ(s.graphs_with_fan_in, 22u);
  EXPECT_EQ(s.max_out_degree, 1u);
}

TEST(CorpusStats, TwelveAngryMenCounts) {
  const Corpus c = load_corpus(data_path("12AngryMen.xml"));
  const CorpusStats s = corpus_stats(c.graphs);
  EXPECT_EQ(s.graph_count, 3u);
  EXPECT_EQ(s.node_count, 83u);
  EXPECT_EQ(s.edge_count, 80u);
  EXPECT_EQ(s.support_edges, 25u);
  EXPECT_EQ(s.attack_edges, 55u);
  EXPECT_EQ(s.per_graph_nodes.at("12AngryMen_act1"), 39u);
  EXPECT_EQ(s.per_graph_nodes.at("12AngryMen_act2"), 33u);
  EXPECT_EQ(s.per_graph_nodes.at("12AngryMen_act3"), 11u);
  EXPECT_EQ(s.pair_count, 741u + 528u + 55u);
}

TEST(CorpusStats, DegreeMomentsMatchDirectComputation) {
  const DebateGraph g = testing::sobriety_fixture();
  const std::vector<DebateGraph> graphs = {g};
  const CorpusStats s = corpus_stats(graphs);
  // In-degrees: 1 has 4, 3 has 1, 5 has 1, 7 has 1, others 0.
  const std::vector<double> in = {4, 0, 1, 0, 1, 0, 1, 0};
  double mean = 0;
  for (double v : in) mean += v;
  mean /= 8;
  double var = 0;
  for (double v : in) var += (v - mean) * (v - mean);
  var /= 8;
  EXPECT_DOUBLE_EQ(s.mean_in_degree, mean);
  EXPECT_NEAR(s.sd_in_degree, std::sqrt(var), 1e-12);
  EXPECT_DOUBLE_EQ(s.mean_out_degree, 7.0 / 8.0);
  EXPECT_EQ(s.max_in_degree, 4u);
  EXPECT_EQ(s.graphs_with_fan_in, 1u);
}

TEST(CorpusStats, IndependentOfGraphOrder) {
  Corpus c = load_corpus(data_path("DebatePedia.xml"));
  const CorpusStats a = corpus_stats(c.graphs);
  std::reverse(c.graphs.begin(), c.graphs.end());
  const CorpusStats b = corpus_stats(c.graphs);
  EXPECT_EQ(a.node_count, b.node_count);
  EXPECT_EQ(a.per_graph_nodes, b.per_graph_nodes);
  EXPECT_DOUBLE_EQ(a.sd_in_degree, b.sd_in_degree);
}

TEST(SelectExemplars, PicksBalancedAttackHeavySupportHeavy) {
  const Corpus c = load_corpus(data_path("DebatePedia.xml"));
  const auto names = select_exemplars(c.graphs);
  const std::vector<std::string> expected = {"RentControl", "SmartphoneBan",
                                             "RemoteWork"};
  EXPECT_EQ(names, expected);
}

TEST(SelectExemplars, NeedsThreeGraphs) {
  const std::vector<DebateGraph> two = {testing::sobriety_fixture(),
                                        testing::sobriety_fixture()};
  EXPECT_EQ(error_code_of([&] { select_exemplars(two); }),
            ErrorCode::kInvalidArgument);
}

TEST(SplitCorpus, SeparatesExemplars) {
  const Corpus c = load_corpus(data_path("DebatePedia.xml"));
  const std::vector<std::string> names = {"RentControl", "SmartphoneBan",
                                          "RemoteWork"};
  const CorpusSplit split = split_corpus(c.graphs, names);
  ASSERT_EQ(split.exemplars.size(), 3u);
  EXPECT_EQ(split.exemplars[0].name(), "RentControl");
  EXPECT_EQ(split.evaluation.size(), 19u);
  EXPECT_EQ(pair_count(split.evaluation), 1676u);
  const std::vector<std::string> dup = {"RentControl", "RentControl"};
  EXPECT_EQ(error_code_of([&] { split_corpus(c.graphs, dup); }),
            ErrorCode::kDuplicateExemplar);
  const std::vector<std::string> unknown = {"Nope"};
  EXPECT_EQ(error_code_of([&] { split_corpus(c.graphs, unknown); }),
            ErrorCode::kUnknownGraphName);
}

TEST(GraphJson, RoundTripsThroughCanonicalJson) {
  Corpus c;
  c.id = "mini";
  c.graphs.push_back(testing::sobriety_fixture());
  std::mt19937_64 rng(3);
  c.graphs.push_back(testing::random_dag(rng));
  const Corpus back = parse_corpus_json(write_corpus_json(c), "x");
  EXPECT_EQ(back.id, "mini");
  ASSERT_EQ(back.graphs.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back.graphs[i].ids(), c.graphs[i].ids());
    EXPECT_EQ(back.graphs[i].base_weights(), c.graphs[i].base_weights());
    EXPECT_TRUE(std::equal(back.graphs[i].relations().begin(),
                           back.graphs[i].relations().end(),
                           c.graphs[i].relations().begin(),
                           c.graphs[i].relations().end()));
  }
  const Corpus single =
      parse_corpus_json(write_graph_json(c.graphs[0]), "default");
  EXPECT_EQ(single.id, "default");
  EXPECT_EQ(single.graphs.size(), 1u);
}

TEST(GraphJson, MalformedInput) {
  EXPECT_EQ(error_code_of([] { parse_corpus_json("{", "x"); }),
            ErrorCode::kMalformedGraphFile);
  EXPECT_EQ(error_code_of([] { parse_corpus_json("{\"name\": 3}", "x"); }),
            ErrorCode::kMalformedGraphFile);
  // Validation errors from the graph itself keep their own code.
  EXPECT_EQ(error_code_of([] {
              parse_corpus_json(
                  R"({"name":"c","arguments":[{"id":1,"text":"a"},{"id":2,"text":"b"}],
                      "relations":[{"source":1,"target":2,"kind":"attack"},
                                   {"source":2,"target":1,"kind":"attack"}]})",
                  "x");
            }),
            ErrorCode::kCycleDetected);
}

TEST(LoadCorpus, MissingFileIsAnIoError) {
  EXPECT_EQ(error_code_of([] { load_corpus(data_path("does_not_exist.xml")); }),
            ErrorCode::kIoError);
}

}  // namespace
}  // namespace quadarg
