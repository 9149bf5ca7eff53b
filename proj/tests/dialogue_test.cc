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

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.h"
#include "quadarg/error.h"

namespace quadarg {
namespace {

using testing::brute_linear_extensions;
using testing::error_code_of;
using testing::random_dag;

std::vector<ArgumentId> ids(std::initializer_list<int> v) {
  std::vector<ArgumentId> out;
  for (int i : v) out.push_back(ArgumentId(i));
  return out;
}

TEST(Flatten, ChronologicalRendering) {
  const DebateGraph g = build_graph(
      "g",
      {{ArgumentId(4), "  late   reply ", 1}, {ArgumentId(9), "opening", 0}},
      {{ArgumentId(4), ArgumentId(9), RelationKind::kAttack}});
  const Dialogue d = flatten_chronological(g);
  EXPECT_EQ(d.graph_name, "g");
  EXPECT_EQ(d.render(), "Argument 9: opening\nArgument 4: late reply\n");
  EXPECT_EQ(d.order(), ids({9, 4}));
  EXPECT_EQ(d.ordering.to_string(), "chronological");
}

TEST(Flatten, RejectsNonPermutations) {
  const DebateGraph g = testing::sobriety_fixture();
  const auto short_order = ids({1, 2, 3});
  EXPECT_EQ(error_code_of([&] { flatten(g, short_order); }),
            ErrorCode::kNotAPermutation);
  const auto dup = ids({1, 2, 3, 4, 5, 6, 7, 7});
  EXPECT_EQ(error_code_of([&] { flatten(g, dup); }),
            ErrorCode::kNotAPermutation);
  const auto stranger = ids({1, 2, 3, 4, 5, 6, 7, 99});
  EXPECT_EQ(error_code_of([&] { flatten(g, stranger); }),
            ErrorCode::kNotAPermutation);
}

TEST(Flatten, LabelText) {
  EXPECT_EQ(OrderingLabel::toposort(42, 3).to_string(),
            "toposort(seed=42,index=3)");
}

TEST(SatisfiesConstraint, AgreesWithBruteForce) {
  std::mt19937_64 rng(11);
  testing::RandomGraphOptions opt;
  opt.max_nodes = 6;
  opt.max_density = 0.6;
  for (int trial = 0; trial < 100; ++trial) {
    const DebateGraph g = random_dag(rng, opt);
    for (auto c : {OrderConstraint::kClaimBeforeReply,
                   OrderConstraint::kReplyBeforeClaim}) {
      const auto valid = brute_linear_extensions(g, c);
      std::vector<ArgumentId> perm = g.ids();
      std::sort(perm.begin(), perm.end());
      do {
        EXPECT_EQ(satisfies_constraint(g, perm, c), valid.contains(perm));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST(SampleOrders, AllValidDistinctAndDeterministic) {
  std::mt19937_64 rng(5);
  testing::RandomGraphOptions opt;
  opt.max_nodes = 7;
  for (int trial = 0; trial < 200; ++trial) {
    const DebateGraph g = random_dag(rng, opt);
    const auto c = trial % 2 ? OrderConstraint::kReplyBeforeClaim
                             : OrderConstraint::kClaimBeforeReply;
    const auto valid = brute_linear_extensions(g, c);
    const std::size_t k = 5;
    const OrderSample s = sample_topological_orders(g, k, 1000 + trial, c);
    const std::set<std::vector<ArgumentId>> distinct(s.orders.begin(),
                                                     s.orders.end());
    EXPECT_EQ(distinct.size(), s.orders.size());
    EXPECT_EQ(s.orders.size(), std::min(k, valid.size()));
    EXPECT_EQ(s.not_enough_orders, valid.size() < k);
    for (const auto& order : s.orders) EXPECT_TRUE(valid.contains(order));
    const OrderSample again = sample_topological_orders(g, k, 1000 + trial, c);
    EXPECT_EQ(again.orders, s.orders);
  }
}

TEST(SampleOrders, ChainHasOneOrder) {
  const DebateGraph g = build_graph(
      "chain",
      {{ArgumentId(1), "a", 0}, {ArgumentId(2), "b", 1}, {ArgumentId(3), "c", 2}},
      {{ArgumentId(2), ArgumentId(1), RelationKind::kAttack},
       {ArgumentId(3), ArgumentId(2), RelationKind::kSupport}});
  const OrderSample s = sample_topological_orders(g, 5, 1);
  ASSERT_EQ(s.orders.size(), 1u);
  EXPECT_TRUE(s.not_enough_orders);
  EXPECT_EQ(s.orders[0], ids({1, 2, 3}));
  const OrderSample inv =
      sample_topological_orders(g, 5, 1, OrderConstraint::kReplyBeforeClaim);
  EXPECT_EQ(inv.orders[0], ids({3, 2, 1}));
}

TEST(SampleOrders, ZeroKIsInvalid) {
  const DebateGraph g = testing::sobriety_fixture();
  EXPECT_EQ(error_code_of([&] { sample_topological_orders(g, 0, 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(SampleOrders, RoughlyUniformOnSmallGraph) {
  // Star with root 1 and three replies: 3! = 6 orders. Drawing k = 6 should
  // always find all of them.
  const DebateGraph g = build_graph(
      "star",
      {{ArgumentId(1), "r", 0}, {ArgumentId(2), "a", 1}, {ArgumentId(3), "b", 2},
       {ArgumentId(4), "c", 3}},
      {{ArgumentId(2), ArgumentId(1), RelationKind::kAttack},
       {ArgumentId(3), ArgumentId(1), RelationKind::kAttack},
       {ArgumentId(4), ArgumentId(1), RelationKind::kSupport}});
  const OrderSample s = sample_topological_orders(g, 6, 77);
  EXPECT_EQ(s.orders.size(), 6u);
  EXPECT_FALSE(s.not_enough_orders);
  for (const auto& o : s.orders) EXPECT_EQ(o.front(), ArgumentId(1));
}

}  // namespace
}  // namespace quadarg
