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


#ifndef QUADARG_PROMPT_H_
#define QUADARG_PROMPT_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadarg/dialogue.h"
#include "quadarg/graph.h"
#include "quadarg/metrics.h"
#include "quadarg/quad.h"

namespace quadarg {

enum class PromptStrategy {
  kVanilla,
  kIclOneShot,
  kIclFewShot,
  kCotZeroShot,
  kCotOneShot,
  kCotFewShot,
};

inline constexpr PromptStrategy kAllStrategies[] = {
    PromptStrategy::kVanilla,     PromptStrategy::kIclOneShot,
    PromptStrategy::kIclFewShot,  PromptStrategy::kCotZeroShot,
    PromptStrategy::kCotOneShot,  PromptStrategy::kCotFewShot,
};

// "vanilla", "icl-one-shot", ..., "cot-few-shot".
std::string_view strategy_name(PromptStrategy strategy);
// Accepts the names above, with '_' in place of '-' and in any case. Throws
// kInvalidArgument otherwise.
PromptStrategy parse_strategy(std::string_view name);
std::size_t required_exemplars(PromptStrategy strategy);  // 0, 1 or 3
// Chain-of-thought strategies also ask for an adjacency list.
bool is_cot(PromptStrategy strategy);

struct Exemplar {
  Dialogue dialogue;
  Ranking gold_ranking;
  std::optional<EdgeSet> gold_adjacency;   // required by CoT strategies
  std::optional<std::string> reasoning_text;  // required by CoT strategies
};

// Chronological dialogue, gold ranking and relations of `graph`, plus a short
// worked explanation listing each relation and the resulting strengths.
Exemplar make_exemplar(const DebateGraph& graph);

// "Ranking: Argument 3 > Argument 1 = Argument 4 > Argument 5"; members of a
// tie group are joined by "=".
std::string render_ranking(const Ranking& ranking);

// Keyed by target, each value listing (source, kind) tuples:
//
//   Adjacency list:
//   {
//     'Argument 1': [('Argument 2', 'support'), ('Argument 3', 'attack')],
//   }
//
// An empty set renders as "Adjacency list:\n{}".
std::string render_adjacency(const EdgeSet& edges);

// Named prompt templates: one per strategy plus "reprompt".
class TemplateSet {
 public:
  static TemplateSet defaults();
  // Reads <name>.txt from `dir` for every known template, falling back to the
  // built-in text for files that are absent.
  static TemplateSet load(const std::filesystem::path& dir);

  static std::span<const std::string_view> names();
  static std::string_view name_for(PromptStrategy strategy);

  // Throws kInvalidArgument for an unknown name.
  const std::string& get(std::string_view name) const;
  // SHA-256 over every (name, text) pair, in name order.
  std::string content_hash() const;

 private:
  std::map<std::string, std::string, std::less<>> texts_;
};

// Fills the strategy's template. [Arguments] receives the target dialogue;
// [Exemplar_i], [Ranking_i], [Adjacency_i] and [Reasoning_i] receive the i-th
// exemplar (1-based). Substitution is a single pass, so placeholder-like text
// inside argument texts is left alone. Throws kExemplarCountMismatch when the
// exemplar count does not fit the strategy, and kUnresolvedPlaceholder when
// the template lacks [Arguments], refers to a missing exemplar, or a CoT
// exemplar has no reasoning or adjacency.
std::string build_prompt(PromptStrategy strategy, const Dialogue& dialogue,
                         std::span<const Exemplar> exemplars,
                         const TemplateSet& templates);

// Wraps a prompt whose answer could not be parsed. The reprompt template
// must contain [Prompt].
std::string build_reprompt(const std::string& prompt,
                           const TemplateSet& templates);

}  // namespace quadarg

#endif  // QUADARG_PROMPT_H_
