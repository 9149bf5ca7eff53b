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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "oracles.h"
#include "quadarg/error.h"

namespace quadarg {
namespace {

using testing::error_code_of;

Argument arg(int id, std::size_t chron, std::string text = "") {
  return {ArgumentId(id), text.empty() ? "text " + std::to_string(id) : text,
          chron};
}

Relation att(int s, int t) {
  return {ArgumentId(s), ArgumentId(t), RelationKind::kAttack};
}
Relation sup(int s, int t) {
  return {ArgumentId(s), ArgumentId(t), RelationKind::kSupport};
}

TEST(BuildGraph, AcceptsValidInput) {
  const DebateGraph g =
      build_graph("g", {arg(1, 0), arg(2, 1), arg(3, 2)}, {att(2, 1), sup(3, 1)});
  EXPECT_EQ(g.name(), "g");
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.relations().size(), 2u);
  EXPECT_DOUBLE_EQ(g.base_weight(ArgumentId(2)), kDefaultBaseWeight);
  EXPECT_TRUE(g.contains(ArgumentId(3)));
  EXPECT_FALSE(g.contains(ArgumentId(4)));
}

TEST(BuildGraph, SortsArgumentsByChronology) {
  const DebateGraph g = build_graph("g", {arg(5, 2), arg(9, 0), arg(1, 1)}, {});
  const std::vector<ArgumentId> expected = {ArgumentId(9), ArgumentId(1),
                                            ArgumentId(5)};
  EXPECT_EQ(g.ids(), expected);
  EXPECT_EQ(g.index_of(ArgumentId(1)), 1u);
}

TEST(BuildGraph, RejectsNonPositiveId) {
  EXPECT_EQ(error_code_of([] { build_graph("g", {arg(0, 0)}, {}); }),
            ErrorCode::kInvalidId);
  EXPECT_EQ(error_code_of([] { build_graph("g", {arg(-3, 0)}, {}); }),
            ErrorCode::kInvalidId);
}

TEST(BuildGraph, RejectsDuplicateId) {
  EXPECT_EQ(error_code_of([] { build_graph("g", {arg(1, 0), arg(1, 1)}, {}); }),
            ErrorCode::kDuplicateId);
}

TEST(BuildGraph, RejectsBlankText) {
  EXPECT_EQ(error_code_of([] { build_graph("g", {arg(1, 0, "  \t ")}, {}); }),
            ErrorCode::kEmptyText);
}

TEST(BuildGraph, RejectsRepeatedChronologicalIndex) {
  EXPECT_EQ(error_code_of([] { build_graph("g", {arg(1, 0), arg(2, 0)}, {}); }),
            ErrorCode::kInvalidArgument);
}

TEST(BuildGraph, RejectsSelfRelation) {
  EXPECT_EQ(error_code_of([] { build_graph("g", {arg(1, 0)}, {att(1, 1)}); }),
            ErrorCode::kSelfRelation);
}

TEST(BuildGraph, RejectsDanglingEndpoint) {
  EXPECT_EQ(error_code_of([] { build_graph("g", {arg(1, 0)}, {att(2, 1)}); }),
            ErrorCode::kDanglingEndpoint);
  EXPECT_EQ(error_code_of([] { build_graph("g", {arg(1, 0)}, {sup(1, 7)}); }),
            ErrorCode::kDanglingEndpoint);
}

TEST(BuildGraph, RejectsSecondRelationOnSamePair) {
  EXPECT_EQ(error_code_of([] {
              build_graph("g", {arg(1, 0), arg(2, 1)}, {att(2, 1), att(2, 1)});
            }),
            ErrorCode::kDuplicateRelation);
  EXPECT_EQ(error_code_of([] {
              build_graph("g", {arg(1, 0), arg(2, 1)}, {att(2, 1), sup(2, 1)});
            }),
            ErrorCode::kDuplicateRelation);
}

TEST(BuildGraph, ChecksWeights) {
  const std::vector<Argument> args = {arg(1, 0), arg(2, 1)};
  EXPECT_EQ(error_code_of([&] {
              build_graph("g", args, {}, WeightMap{{ArgumentId(1), 0.2}});
            }),
            ErrorCode::kMissingWeight);
  EXPECT_EQ(error_code_of([&] {
              build_graph("g", args, {},
                          WeightMap{{ArgumentId(1), 0.2}, {ArgumentId(2), 1.5}});
            }),
            ErrorCode::kWeightOutOfRange);
  EXPECT_EQ(error_code_of([&] {
              build_graph("g", args, {},
                          WeightMap{{ArgumentId(1), 0.2},
                                    {ArgumentId(2), std::nan("")}});
            }),
            ErrorCode::kWeightOutOfRange);
  EXPECT_EQ(error_code_of([&] {
              build_graph("g", args, {},
                          WeightMap{{ArgumentId(1), 0.2},
                                    {ArgumentId(2), 0.3},
                                    {ArgumentId(3), 0.3}});
            }),
            ErrorCode::kUnknownArgument);
  const DebateGraph g = build_graph(
      "g", args, {}, WeightMap{{ArgumentId(1), 0.0}, {ArgumentId(2), 1.0}});
  EXPECT_DOUBLE_EQ(g.base_weight(ArgumentId(2)), 1.0);
}

TEST(BuildGraph, ReportsCycleMembers) {
  try {
    build_graph("loop", {arg(1, 0), arg(2, 1), arg(3, 2)},
                {att(1, 2), sup(2, 3), att(3, 1)});
    FAIL() << "expected a cycle error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCycleDetected);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("1"), std::string::npos);
    EXPECT_NE(msg.find("2"), std::string::npos);
    EXPECT_NE(msg.find("3"), std::string::npos);
    EXPECT_NE(msg.find("->"), std::string::npos);
  }
}

TEST(Relations, AttackersAndSupportersByKind) {
  const DebateGraph g = testing::sobriety_fixture();
  EXPECT_EQ(attackers(g, ArgumentId(5)), std::vector<ArgumentId>{ArgumentId(6)});
  EXPECT_EQ(supporters(g, ArgumentId(3)), std::vector<ArgumentId>{ArgumentId(4)});
  EXPECT_EQ(attackers(g, ArgumentId(1)), std::vector<ArgumentId>{ArgumentId(3)});
  const std::vector<ArgumentId> sup1 = {ArgumentId(2), ArgumentId(5),
                                        ArgumentId(7)};
  EXPECT_EQ(supporters(g, ArgumentId(1)), sup1);
  EXPECT_TRUE(attackers(g, ArgumentId(2)).empty());
  EXPECT_EQ(error_code_of([&] { attackers(g, ArgumentId(99)); }),
            ErrorCode::kUnknownArgument);
}

TEST(TopologicalOrder, SourcesComeFirst) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    testing::RandomGraphOptions opt;
    opt.shuffle_chronology = true;
    const DebateGraph g = testing::random_dag(rng, opt);
    const auto order = topological_order(g);
    ASSERT_EQ(order.size(), g.size());
    std::map<ArgumentId, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (const Relation& r : g.relations()) {
      EXPECT_LT(pos[r.source], pos[r.target]);
    }
  }
}

TEST(PairCount, SumsChooseTwo) {
  const DebateGraph a = build_graph("a", {arg(1, 0)}, {});
  const DebateGraph b = testing::sobriety_fixture();
  const std::vector<DebateGraph> graphs = {a, b, b};
  EXPECT_EQ(pair_count(graphs), 0u + 28u + 28u);
  EXPECT_EQ(pair_count(std::span<const DebateGraph>{}), 0u);
}

}  // namespace
}  // namespace quadarg
