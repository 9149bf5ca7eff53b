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


#include "quadarg/prompt.h"

#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "quadarg/corpus.h"
#include "quadarg/error.h"
#include "quadarg/response_parser.h"

namespace quadarg {
namespace {

using testing::error_code_of;

DebateGraph small_graph(const std::string& name) {
  return build_graph(
      name,
      {{ArgumentId(1), "Cities should ban cars.", 0},
       {ArgumentId(2), "Deliveries would stall.", 1},
       {ArgumentId(3), "Air would be cleaner.", 2}},
      {{ArgumentId(2), ArgumentId(1), RelationKind::kAttack},
       {ArgumentId(3), ArgumentId(1), RelationKind::kSupport}});
}

std::vector<Exemplar> exemplars(std::size_t n) {
  std::vector<Exemplar> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(make_exemplar(small_graph("ex" + std::to_string(i))));
  }
  return out;
}

TEST(Strategy, NamesRoundTrip) {
  for (PromptStrategy s : kAllStrategies) {
    EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  }
  EXPECT_EQ(parse_strategy("COT_FEW_SHOT"), PromptStrategy::kCotFewShot);
  EXPECT_EQ(error_code_of([] { parse_strategy("zero-shot-magic"); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(required_exemplars(PromptStrategy::kVanilla), 0u);
  EXPECT_EQ(required_exemplars(PromptStrategy::kIclOneShot), 1u);
  EXPECT_EQ(required_exemplars(PromptStrategy::kCotFewShot), 3u);
  EXPECT_EQ(required_exemplars(PromptStrategy::kCotZeroShot), 0u);
  EXPECT_TRUE(is_cot(PromptStrategy::kCotZeroShot));
  EXPECT_FALSE(is_cot(PromptStrategy::kIclFewShot));
}

TEST(BuildPrompt, VanillaContainsDialogueVerbatim) {
  const Dialogue d = flatten_chronological(small_graph("target"));
  const std::string p =
      build_prompt(PromptStrategy::kVanilla, d, {}, TemplateSet::defaults());
  EXPECT_NE(p.find("Argument 1: Cities should ban cars.\n"
                   "Argument 2: Deliveries would stall.\n"
                   "Argument 3: Air would be cleaner."),
            std::string::npos);
  EXPECT_EQ(p.find("[Arguments]"), std::string::npos);
  EXPECT_NE(p.find("Ranking: Argument <id> > Argument <id>"), std::string::npos);
}

TEST(BuildPrompt, ExemplarCountIsChecked) {
  const Dialogue d = flatten_chronological(small_graph("target"));
  const auto two = exemplars(2);
  EXPECT_EQ(error_code_of([&] {
              build_prompt(PromptStrategy::kCotFewShot, d, two,
                           TemplateSet::defaults());
            }),
            ErrorCode::kExemplarCountMismatch);
  EXPECT_EQ(error_code_of([&] {
              build_prompt(PromptStrategy::kVanilla, d, two,
                           TemplateSet::defaults());
            }),
            ErrorCode::kExemplarCountMismatch);
}

TEST(BuildPrompt, CotNeedsReasoningAndAdjacency) {
  const Dialogue d = flatten_chronological(small_graph("target"));
  auto ex = exemplars(1);
  ex[0].reasoning_text.reset();
  EXPECT_EQ(error_code_of([&] {
              build_prompt(PromptStrategy::kCotOneShot, d, ex,
                           TemplateSet::defaults());
            }),
            ErrorCode::kUnresolvedPlaceholder);
  // The ICL variant never looks at either field.
  EXPECT_NO_THROW(
      build_prompt(PromptStrategy::kIclOneShot, d, ex, TemplateSet::defaults()));
}

TEST(BuildPrompt, IclOneShotLayout) {
  const Dialogue d = flatten_chronological(small_graph("target"));
  const auto ex = exemplars(1);
  const std::string p =
      build_prompt(PromptStrategy::kIclOneShot, d, ex, TemplateSet::defaults());
  // Every argument scores 0.5: leaves keep theta, and 1 averages 0.25 and
  // 0.75.
  const std::size_t example = p.find("Example debate:\nArgument 1:");
  const std::size_t answer = p.find(
      "Example answer:\nRanking: Argument 1 = Argument 2 = Argument 3\n");
  const std::size_t target = p.find("Debate:\nArgument 1:", answer);
  ASSERT_NE(example, std::string::npos);
  ASSERT_NE(answer, std::string::npos);
  ASSERT_NE(target, std::string::npos);
  EXPECT_LT(example, answer);
  EXPECT_EQ(p.find('['), std::string::npos);
}

TEST(BuildPrompt, CotFewShotCarriesAllExemplars) {
  const Dialogue d = flatten_chronological(small_graph("target"));
  const auto ex = exemplars(3);
  const std::string p =
      build_prompt(PromptStrategy::kCotFewShot, d, ex, TemplateSet::defaults());
  std::size_t count = 0;
  for (std::size_t pos = p.find("Adjacency list:\n{"); pos != std::string::npos;
       pos = p.find("Adjacency list:\n{", pos + 1)) {
    ++count;
  }
  EXPECT_EQ(count, 3u);
  EXPECT_NE(p.find("'Argument 1': [('Argument 2', 'attack'), "
                   "('Argument 3', 'support')]"),
            std::string::npos);
}

class TemplateDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("quadarg_tmpl_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / (name + ".txt")) << text;
  }
  std::filesystem::path dir_;
};

TEST_F(TemplateDir, UnresolvedPlaceholder) {
  write("vanilla", "Rank these.\n[Arguments]\n[Exemplar_1]\n");
  const TemplateSet t = TemplateSet::load(dir_);
  const Dialogue d = flatten_chronological(small_graph("target"));
  EXPECT_EQ(error_code_of([&] { build_prompt(PromptStrategy::kVanilla, d, {}, t); }),
            ErrorCode::kUnresolvedPlaceholder);
  write("vanilla", "No dialogue slot here.\n");
  const TemplateSet t2 = TemplateSet::load(dir_);
  EXPECT_EQ(error_code_of([&] { build_prompt(PromptStrategy::kVanilla, d, {}, t2); }),
            ErrorCode::kUnresolvedPlaceholder);
}

TEST_F(TemplateDir, SubstitutionIsSinglePass) {
  write("vanilla", "A [Arguments] B [not a slot] C");
  const TemplateSet t = TemplateSet::load(dir_);
  const DebateGraph g = build_graph(
      "g", {{ArgumentId(1), "text mentions [Arguments] and [Exemplar_1]", 0}},
      {});
  const std::string p =
      build_prompt(PromptStrategy::kVanilla, flatten_chronological(g), {}, t);
  EXPECT_EQ(p,
            "A Argument 1: text mentions [Arguments] and [Exemplar_1] B "
            "[not a slot] C");
}

TEST_F(TemplateDir, LoadFallsBackAndHashes) {
  write("vanilla", "custom [Arguments]");
  const TemplateSet t = TemplateSet::load(dir_);
  const TemplateSet d = TemplateSet::defaults();
  EXPECT_EQ(t.get("vanilla"), "custom [Arguments]");
  EXPECT_EQ(t.get("reprompt"), d.get("reprompt"));
  EXPECT_NE(t.content_hash(), d.content_hash());
  EXPECT_EQ(d.content_hash(), TemplateSet::defaults().content_hash());
  EXPECT_EQ(d.content_hash().size(), 64u);
  EXPECT_EQ(error_code_of([&] { d.get("nope"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_code_of([&] { TemplateSet::load(dir_ / "missing"); }),
            ErrorCode::kIoError);
}

TEST(BuildReprompt, WrapsOriginal) {
  const std::string r = build_reprompt("ORIGINAL", TemplateSet::defaults());
  EXPECT_EQ(r.rfind("ORIGINAL", 0), 0u);
  EXPECT_NE(r.find("Ranking:"), std::string::npos);
}

TEST(Render, RankingWithTies) {
  Ranking r = Ranking::strict({ArgumentId(3), ArgumentId(2), ArgumentId(4),
                               ArgumentId(1)});
  r.tie_groups = {{ArgumentId(2), ArgumentId(4)}};
  EXPECT_EQ(render_ranking(r),
            "Ranking: Argument 3 > Argument 2 = Argument 4 > Argument 1");
}

TEST(Render, AdjacencyEmpty) {
  EXPECT_EQ(render_adjacency({}), "Adjacency list:\n{}");
}

TEST(MakeExemplar, SobrietyReasoningMentionsEveryArgument) {
  const Exemplar ex = make_exemplar(testing::sobriety_fixture());
  ASSERT_TRUE(ex.reasoning_text.has_value());
  for (int i = 1; i <= 8; ++i) {
    EXPECT_NE(ex.reasoning_text->find("Argument " + std::to_string(i)),
              std::string::npos);
  }
  EXPECT_EQ(ex.gold_adjacency->size(), 7u);
  EXPECT_EQ(ex.gold_ranking.ordered_ids.front(), ArgumentId(3));
}

}  // namespace
}  // namespace quadarg
