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


#include "quadarg/quad.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.h"
#include "quadarg/error.h"

namespace quadarg {
namespace {

using testing::error_code_of;

TEST(Aggregation, AttackMultipliesComplements) {
  const std::vector<double> none;
  EXPECT_DOUBLE_EQ(aggregate_attack(0.5, none), 0.5);
  EXPECT_DOUBLE_EQ(aggregate_attack(0.5, std::vector<double>{0.5}), 0.25);
  EXPECT_DOUBLE_EQ(aggregate_attack(0.8, std::vector<double>{0.5, 0.5}), 0.2);
  EXPECT_DOUBLE_EQ(aggregate_attack(0.8, std::vector<double>{1.0}), 0.0);
}

TEST(Aggregation, SupportComplementsTheProduct) {
  const std::vector<double> none;
  EXPECT_DOUBLE_EQ(aggregate_support(0.5, none), 0.5);
  EXPECT_DOUBLE_EQ(aggregate_support(0.5, std::vector<double>{0.5}), 0.75);
  EXPECT_DOUBLE_EQ(aggregate_support(0.2, std::vector<double>{1.0}), 1.0);
}

TEST(Aggregation, RejectsOutOfRangeInputs) {
  EXPECT_EQ(error_code_of([] { aggregate_attack(1.2, std::vector<double>{}); }),
            ErrorCode::kOutOfRangeInput);
  EXPECT_EQ(error_code_of([] { aggregate_support(0.5, std::vector<double>{-0.1}); }),
            ErrorCode::kOutOfRangeInput);
  EXPECT_EQ(
      error_code_of([] { aggregate_attack(0.5, std::vector<double>{std::nan("")}); }),
      ErrorCode::kOutOfRangeInput);
}

TEST(Acceptability, WorkedExample) {
  const ScoreMap s = acceptability(testing::sobriety_fixture());
  EXPECT_NEAR(s.at(ArgumentId(3)), 0.75, 1e-12);
  EXPECT_NEAR(s.at(ArgumentId(5)), 0.25, 1e-12);
  EXPECT_NEAR(s.at(ArgumentId(7)), 0.25, 1e-12);
  EXPECT_NEAR(s.at(ArgumentId(2)), 0.5, 1e-12);
  EXPECT_NEAR(s.at(ArgumentId(1)), 0.4921875, 1e-12);
  EXPECT_EQ(s.graph_name, "SobrietyTest");
  EXPECT_EQ(error_code_of([&] { s.at(ArgumentId(42)); }),
            ErrorCode::kUnknownArgument);
}

TEST(Acceptability, SingletonKeepsBaseWeight) {
  const DebateGraph g = build_graph("one", {{ArgumentId(1), "alone", 0}}, {},
                                    WeightMap{{ArgumentId(1), 0.3}});
  EXPECT_DOUBLE_EQ(acceptability(g).at(ArgumentId(1)), 0.3);
}

TEST(Acceptability, MatchesRecursiveOracle) {
  std::mt19937_64 rng(20240607);
  for (int trial = 0; trial < 1000; ++trial) {
    const DebateGraph g = testing::random_dag(rng);
    const ScoreMap fast = acceptability(g);
    const auto slow = testing::memo_quad(g);
    for (const auto& [id, v] : slow) {
      ASSERT_NEAR(fast.at(id), v, 1e-12) << "trial " << trial;
    }
  }
}

TEST(Acceptability, SemanticProperties) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const DebateGraph g = testing::random_dag(rng);
    const ScoreMap s = acceptability(g);
    for (ArgumentId id : g.ids()) {
      const double v = s.at(id);
      const double theta = g.base_weight(id);
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
      const bool has_att = !attackers(g, id).empty();
      const bool has_sup = !supporters(g, id).empty();
      if (!has_att && !has_sup) ASSERT_EQ(v, theta);
      if (has_att && !has_sup) ASSERT_LE(v, theta);
      if (has_sup && !has_att) ASSERT_GE(v, theta);
    }
  }
}

// Adding a fresh leaf attacker never raises the target; a leaf supporter
// never lowers it.
TEST(Acceptability, LeafMonotonicity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const DebateGraph g = testing::random_dag(rng);
    const ScoreMap before = acceptability(g);
    const auto ids = g.ids();
    const ArgumentId target = ids[rng() % ids.size()];
    const ArgumentId leaf(static_cast<std::int64_t>(g.size()) + 1);
    for (RelationKind kind : {RelationKind::kAttack, RelationKind::kSupport}) {
      std::vector<Argument> args(g.arguments().begin(), g.arguments().end());
      args.push_back({leaf, "leaf", g.size()});
      std::vector<Relation> rels(g.relations().begin(), g.relations().end());
      rels.push_back({leaf, target, kind});
      WeightMap w = g.base_weights();
      w[leaf] = unit(rng);
      const ScoreMap after = acceptability(build_graph("g+", args, rels, w));
      if (kind == RelationKind::kAttack) {
        ASSERT_LE(after.at(target), before.at(target) + 1e-15);
      } else {
        ASSERT_GE(after.at(target), before.at(target) - 1e-15);
      }
    }
  }
}

TEST(GoldRanking, DescendingWithTiesByAscendingId) {
  ScoreMap s;
  s.scores = {{ArgumentId(1), 0.49}, {ArgumentId(3), 0.75}, {ArgumentId(5), 0.25}};
  const Ranking r = gold_ranking(s);
  const std::vector<ArgumentId> expected = {ArgumentId(3), ArgumentId(1),
                                            ArgumentId(5)};
  EXPECT_EQ(r.ordered_ids, expected);
  EXPECT_TRUE(r.tie_groups.empty());

  const Ranking tied = gold_ranking(acceptability(testing::sobriety_fixture()));
  const std::vector<ArgumentId> order = {
      ArgumentId(3), ArgumentId(2), ArgumentId(4), ArgumentId(6),
      ArgumentId(8), ArgumentId(1), ArgumentId(5), ArgumentId(7)};
  EXPECT_EQ(tied.ordered_ids, order);
  ASSERT_EQ(tied.tie_groups.size(), 2u);
  EXPECT_EQ(tied.tie_groups[0].size(), 4u);
  EXPECT_EQ(tied.tie_groups[1],
            (std::vector<ArgumentId>{ArgumentId(5), ArgumentId(7)}));
}

TEST(GoldRanking, StrictHasNoTies) {
  const Ranking r = Ranking::strict({ArgumentId(2), ArgumentId(1)});
  EXPECT_TRUE(r.tie_groups.empty());
  EXPECT_EQ(r.ordered_ids.size(), 2u);
}

}  // namespace
}  // namespace quadarg
