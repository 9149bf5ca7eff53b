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


#include "quadarg/metrics.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.h"
#include "quadarg/error.h"

namespace quadarg {
namespace {

using testing::error_code_of;

// Ranking over ids 1..n in the given order, with a random grouping into ties
// when `tie_rate` > 0.
Ranking make_ranking(const std::vector<int>& order, std::mt19937_64& rng,
                     double tie_rate) {
  Ranking r;
  for (int i : order) r.ordered_ids.push_back(ArgumentId(i));
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<ArgumentId> group = {r.ordered_ids.empty() ? ArgumentId()
                                                         : r.ordered_ids[0]};
  for (std::size_t i = 1; i <= r.ordered_ids.size(); ++i) {
    if (i < r.ordered_ids.size() && unit(rng) < tie_rate) {
      group.push_back(r.ordered_ids[i]);
      continue;
    }
    if (group.size() >= 2) r.tie_groups.push_back(group);
    if (i < r.ordered_ids.size()) group = {r.ordered_ids[i]};
  }
  return r;
}

std::pair<std::vector<double>, std::vector<double>> naive_pairs(
    const Ranking& a, const Ranking& b) {
  const auto ra = testing::naive_ranks(a);
  const auto rb = testing::naive_ranks(b);
  std::vector<double> x, y;
  for (const auto& [id, v] : ra) {
    x.push_back(v);
    y.push_back(rb.at(id));
  }
  return {x, y};
}

void expect_opt_near(std::optional<double> got, std::optional<double> want,
                     double tol) {
  ASSERT_EQ(got.has_value(), want.has_value());
  if (got) EXPECT_NEAR(*got, *want, tol);
}

TEST(FractionalRanks, TiesShareTheMeanPosition) {
  Ranking r;
  r.ordered_ids = {ArgumentId(3), ArgumentId(1), ArgumentId(2), ArgumentId(4)};
  r.tie_groups = {{ArgumentId(1), ArgumentId(2)}};
  const RankVector ranks = fractional_ranks(r);
  EXPECT_DOUBLE_EQ(ranks.at(ArgumentId(3)), 1.0);
  EXPECT_DOUBLE_EQ(ranks.at(ArgumentId(1)), 2.5);
  EXPECT_DOUBLE_EQ(ranks.at(ArgumentId(2)), 2.5);
  EXPECT_DOUBLE_EQ(ranks.at(ArgumentId(4)), 4.0);
}

TEST(Correlation, ExhaustiveAgainstOraclesUpToSix) {
  std::mt19937_64 rng(2);
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 1);
    std::vector<int> perm = base;
    do {
      for (double tie_rate : {0.0, 0.3}) {
        const Ranking gold = make_ranking(base, rng, tie_rate);
        const Ranking pred = make_ranking(perm, rng, tie_rate);
        const auto [x, y] = naive_pairs(gold, pred);
        expect_opt_near(spearman_rho(gold, pred), testing::naive_pearson(x, y),
                        1e-12);
        expect_opt_near(kendall_tau(gold, pred), testing::brute_kendall(x, y),
                        1e-12);
        expect_opt_near(kendall_tau(gold, pred, TauVariant::kA),
                        testing::brute_kendall(x, y, false), 1e-12);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Correlation, RandomAgainstOraclesUpToEight) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    std::vector<int> a(n);
    std::iota(a.begin(), a.end(), 1);
    std::vector<int> b = a;
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    const Ranking gold = make_ranking(a, rng, 0.25);
    const Ranking pred = make_ranking(b, rng, 0.25);
    const auto [x, y] = naive_pairs(gold, pred);
    expect_opt_near(spearman_rho(gold, pred), testing::naive_pearson(x, y),
                    1e-12);
    expect_opt_near(kendall_tau(gold, pred), testing::brute_kendall(x, y),
                    1e-12);
  }
}

TEST(Correlation, KendallOnRawValues) {
  const std::vector<double> x = {1, 2, 2, 3, 5, 5, 5};
  const std::vector<double> y = {2, 1, 3, 3, 4, 7, 6};
  expect_opt_near(kendall_tau_b(x, y), testing::brute_kendall(x, y), 1e-12);
  const std::vector<double> shorter = {1};
  EXPECT_EQ(error_code_of([&] { kendall_tau_b(x, shorter); }),
            ErrorCode::kMismatchedArgumentSets);
}

TEST(Correlation, IdentityAndReversalAreExact) {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 40; ++n) {
    std::vector<int> a(n);
    std::iota(a.begin(), a.end(), 1);
    std::shuffle(a.begin(), a.end(), rng);
    Ranking gold;
    for (int i : a) gold.ordered_ids.push_back(ArgumentId(i));
    Ranking rev = gold;
    std::reverse(rev.ordered_ids.begin(), rev.ordered_ids.end());
    EXPECT_EQ(spearman_rho(gold, gold), 1.0);
    EXPECT_EQ(kendall_tau(gold, gold), 1.0);
    EXPECT_EQ(spearman_rho(gold, rev), -1.0);
    EXPECT_EQ(kendall_tau(gold, rev), -1.0);
  }
}

TEST(Correlation, UndefinedCases) {
  const Ranking one = Ranking::strict({ArgumentId(1)});
  EXPECT_FALSE(spearman_rho(one, one).has_value());
  EXPECT_FALSE(kendall_tau(one, one).has_value());
  Ranking all_tied = Ranking::strict({ArgumentId(1), ArgumentId(2)});
  all_tied.tie_groups = {{ArgumentId(1), ArgumentId(2)}};
  const Ranking strict = Ranking::strict({ArgumentId(2), ArgumentId(1)});
  EXPECT_FALSE(spearman_rho(all_tied, strict).has_value());
  EXPECT_FALSE(kendall_tau(all_tied, strict).has_value());
}

TEST(Correlation, MismatchedSets) {
  const Ranking a = Ranking::strict({ArgumentId(1), ArgumentId(2)});
  const Ranking b = Ranking::strict({ArgumentId(1), ArgumentId(3)});
  const Ranking dup = Ranking::strict({ArgumentId(1), ArgumentId(1)});
  EXPECT_EQ(error_code_of([&] { spearman_rho(a, b); }),
            ErrorCode::kMismatchedArgumentSets);
  EXPECT_EQ(error_code_of([&] { kendall_tau(a, dup); }),
            ErrorCode::kMismatchedArgumentSets);
}

TEST(EdgePrf, MatchesSetOracle) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> node(1, 5);
  std::uniform_int_distribution<int> count(0, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    auto random_set = [&] {
      EdgeSet s;
      const int m = count(rng);
      for (int i = 0; i < m; ++i) {
        s.insert(Edge{ArgumentId(node(rng)), ArgumentId(node(rng)),
                      rng() % 2 ? RelationKind::kAttack : RelationKind::kSupport});
      }
      return s;
    };
    const EdgeSet gold = random_set();
    const EdgeSet pred = random_set();
    const PrfScore got = edge_prf(gold, pred);
    const PrfScore want = testing::set_prf(gold, pred);
    EXPECT_DOUBLE_EQ(got.precision, want.precision);
    EXPECT_DOUBLE_EQ(got.recall, want.recall);
    EXPECT_NEAR(got.f1, want.f1, 1e-15);
  }
}

TEST(EdgePrf, KindMatters) {
  const EdgeSet gold = {{ArgumentId(2), ArgumentId(1), RelationKind::kAttack}};
  const EdgeSet flipped = {{ArgumentId(2), ArgumentId(1), RelationKind::kSupport}};
  const PrfScore s = edge_prf(gold, flipped);
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.f1, 0.0);
  EXPECT_EQ(edge_prf(gold, gold).f1, 1.0);
  EXPECT_EQ(edge_prf(gold, {}).precision, 0.0);
  EXPECT_EQ(edge_set(testing::sobriety_fixture()).size(), 7u);
}

TEST(MacroAverage, SkipsUndefinedAndCounts) {
  const std::vector<std::optional<double>> v = {1.0, std::nullopt, 0.5, -0.5};
  const MetricAverage a = macro_average(v);
  EXPECT_DOUBLE_EQ(a.mean, 1.0 / 3.0);
  EXPECT_EQ(a.defined, 3u);
  EXPECT_EQ(a.excluded, 1u);
  const std::vector<std::optional<double>> none = {std::nullopt};
  EXPECT_EQ(error_code_of([&] { macro_average(none); }), ErrorCode::kAllUndefined);

  const std::vector<MetricRecord> records = {
      {{"rho", 0.2}, {"tau", std::nullopt}}, {{"rho", 0.4}, {"tau", 0.1}}};
  const auto by_name = macro_average(records);
  EXPECT_NEAR(by_name.at("rho").mean, 0.3, 1e-15);
  EXPECT_EQ(by_name.at("tau").excluded, 1u);
}

TEST(Quartiles, SizesDifferByAtMostOne) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const DebateGraph g = testing::random_dag(rng, {.max_nodes = 30});
    for (auto key : {QuartileKey::kLengthTokens, QuartileKey::kPosition}) {
      const QuartileBuckets q = quartile_split(g, key);
      std::size_t total = 0;
      std::size_t lo = g.size(), hi = 0;
      for (const auto& b : q.buckets) {
        total += b.size();
        lo = std::min(lo, b.size());
        hi = std::max(hi, b.size());
      }
      EXPECT_EQ(total, g.size());
      EXPECT_LE(hi - lo, 1u);
    }
  }
}

TEST(Quartiles, PositionBucketsFollowChronology) {
  const DebateGraph g = testing::sobriety_fixture();
  const QuartileBuckets q = quartile_split(g, QuartileKey::kPosition);
  EXPECT_EQ(q.buckets[0],
            (std::vector<ArgumentId>{ArgumentId(1), ArgumentId(2)}));
  EXPECT_EQ(q.buckets[3],
            (std::vector<ArgumentId>{ArgumentId(7), ArgumentId(8)}));
}

TEST(Quartiles, LengthUsesTokenizer) {
  const DebateGraph g = build_graph(
      "g",
      {{ArgumentId(1), "one two three four", 0}, {ArgumentId(2), "one", 1},
       {ArgumentId(3), "one two", 2}, {ArgumentId(4), "one two three", 3}},
      {{ArgumentId(2), ArgumentId(1), RelationKind::kAttack},
       {ArgumentId(3), ArgumentId(1), RelationKind::kAttack},
       {ArgumentId(4), ArgumentId(1), RelationKind::kAttack}});
  const QuartileBuckets q = quartile_split(g, QuartileKey::kLengthTokens);
  EXPECT_EQ(q.buckets[0][0], ArgumentId(2));
  EXPECT_EQ(q.buckets[3][0], ArgumentId(1));
  // Character count flips nothing here but proves the hook is used.
  const QuartileBuckets inv = quartile_split(
      g, QuartileKey::kLengthTokens,
      [](std::string_view t) { return 100 - t.size(); });
  EXPECT_EQ(inv.buckets[0][0], ArgumentId(1));
  EXPECT_EQ(whitespace_tokens("  a\tb \n c "), 3u);
}

TEST(RestrictRanking, AgreesWithFilteredRanks) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    std::vector<int> a(n);
    std::iota(a.begin(), a.end(), 1);
    std::shuffle(a.begin(), a.end(), rng);
    const Ranking r = make_ranking(a, rng, 0.3);
    std::vector<ArgumentId> keep;
    for (int i = 1; i <= n; ++i) {
      if (rng() % 2) keep.push_back(ArgumentId(i));
    }
    const Ranking sub = restrict_ranking(r, keep);
    // Oracle: relative order of kept ids, and two kept ids tie iff they tied.
    const auto full = testing::naive_ranks(r);
    const auto part = testing::naive_ranks(sub);
    ASSERT_EQ(part.size(), keep.size());
    for (ArgumentId x : keep) {
      for (ArgumentId y : keep) {
        const double df = full.at(x) - full.at(y);
        const double dp = part.at(x) - part.at(y);
        EXPECT_EQ(df < 0, dp < 0);
        EXPECT_EQ(df == 0, dp == 0);
      }
    }
  }
}

TEST(QuartileCorrelations, SmallBucketsAreUndefined) {
  const DebateGraph g = testing::sobriety_fixture();
  const Ranking gold = gold_ranking(acceptability(g));
  const QuartileBuckets q = quartile_split(g, QuartileKey::kPosition);
  const auto rows = quartile_correlations(gold, gold, q);
  for (const auto& row : rows) EXPECT_EQ(row.size, 2u);
  // Bucket {7, 8}: 7 scores 0.25, 8 scores 0.5, a strict pair.
  EXPECT_EQ(rows[3].rho, 1.0);
}

}  // namespace
}  // namespace quadarg
