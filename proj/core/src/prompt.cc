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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <functional>
#include <sstream>

#include "quadarg/corpus.h"
#include "quadarg/error.h"
#include "quadarg/hashing.h"

namespace quadarg {
namespace {

struct StrategyInfo {
  PromptStrategy strategy;
  std::string_view name;
  std::string_view template_name;
  std::size_t exemplars;
  bool cot;
};

constexpr StrategyInfo kStrategies[] = {
    {PromptStrategy::kVanilla, "vanilla", "vanilla", 0, false},
    {PromptStrategy::kIclOneShot, "icl-one-shot", "icl_one_shot", 1, false},
    {PromptStrategy::kIclFewShot, "icl-few-shot", "icl_few_shot", 3, false},
    {PromptStrategy::kCotZeroShot, "cot-zero-shot", "cot_zero_shot", 0, true},
    {PromptStrategy::kCotOneShot, "cot-one-shot", "cot_one_shot", 1, true},
    {PromptStrategy::kCotFewShot, "cot-few-shot", "cot_few_shot", 3, true},
};

const StrategyInfo& info(PromptStrategy strategy) {
  for (const StrategyInfo& s : kStrategies) {
    if (s.strategy == strategy) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown prompt strategy");
}

constexpr std::string_view kTemplateNames[] = {
    "vanilla",       "icl_one_shot", "icl_few_shot", "cot_zero_shot",
    "cot_one_shot",  "cot_few_shot", "reprompt",
};

const std::map<std::string, std::string, std::less<>>& builtin_templates() {
  static const std::map<std::string, std::string, std::less<>> kBuiltin = {
#include "default_templates.inc"
  };
  return kBuiltin;
}

std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string id_list(const std::vector<ArgumentId>& ids) {
  std::string out = ids.size() == 1 ? "Argument " : "Arguments ";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += (i + 1 == ids.size()) ? " and " : ", ";
    out += to_string(ids[i]);
  }
  return out;
}

std::string reasoning_for(const DebateGraph& graph, const ScoreMap& scores) {
  std::ostringstream out;
  for (const Argument& arg : graph.arguments()) {
    for (const Relation& rel : graph.relations()) {
      if (rel.source != arg.id) continue;
      out << "Argument " << rel.source.value << " replies to Argument "
          << rel.target.value << " and "
          << (rel.kind == RelationKind::kAttack ? "attacks" : "supports")
          << " it.\n";
    }
  }
  for (std::size_t idx : graph.evaluation_order()) {
    const Argument& arg = graph.arguments()[idx];
    const auto att = attackers(graph, arg.id);
    const auto sup = supporters(graph, arg.id);
    const std::string score = format_score(scores.at(arg.id));
    out << "Argument " << arg.id.value;
    if (att.empty() && sup.empty()) {
      out << " receives no replies and keeps its initial strength of "
          << format_score(graph.base_weight(arg.id)) << ".\n";
    } else if (sup.empty()) {
      out << " is attacked by " << id_list(att) << ", which lowers it to "
          << score << ".\n";
    } else if (att.empty()) {
      out << " is supported by " << id_list(sup) << ", which raises it to "
          << score << ".\n";
    } else {
      out << " is attacked by " << id_list(att) << " and supported by "
          << id_list(sup) << ", leaving it at " << score << ".\n";
    }
  }
  std::string text = out.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

std::string without_trailing_newline(std::string text) {
  while (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

// Exemplar_3 -> ("Exemplar", 3). Returns false for anything else.
bool split_indexed(std::string_view name, std::string_view& family,
                   std::size_t& index) {
  const std::size_t us = name.rfind('_');
  if (us == std::string_view::npos || us + 1 >= name.size()) return false;
  family = name.substr(0, us);
  const std::string_view digits = name.substr(us + 1);
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), index);
  return ec == std::errc() && ptr == digits.data() + digits.size() &&
         (family == "Exemplar" || family == "Ranking" ||
          family == "Adjacency" || family == "Reasoning");
}

bool is_placeholder(std::string_view name) {
  std::string_view family;
  std::size_t index = 0;
  return name == "Arguments" || name == "Prompt" ||
         split_indexed(name, family, index);
}

// Single left-to-right pass; `resolve` returns the replacement or throws.
std::string substitute(
    std::string_view text,
    const std::function<std::string(std::string_view)>& resolve) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find('[', pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = text.find(']', open + 1);
    if (close == std::string_view::npos) break;
    const std::string_view name = text.substr(open + 1, close - open - 1);
    out.append(text.substr(pos, open - pos));
    if (is_placeholder(name)) {
      out += resolve(name);
      pos = close + 1;
    } else {
      out += '[';
      pos = open + 1;
    }
  }
  out.append(text.substr(pos));
  return out;
}

Error unresolved(std::string_view name, std::string_view tmpl) {
  return Error(ErrorCode::kUnresolvedPlaceholder,
               "template '" + std::string(tmpl) + "': cannot resolve [" +
                   std::string(name) + "]");
}

}  // namespace

std::string_view strategy_name(PromptStrategy strategy) {
  return info(strategy).name;
}

PromptStrategy parse_strategy(std::string_view name) {
  std::string norm(name);
  for (char& c : norm) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c == '_') c = '-';
  }
  for (const StrategyInfo& s : kStrategies) {
    if (s.name == norm) return s.strategy;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown strategy '" + std::string(name) + "'");
}

std::size_t required_exemplars(PromptStrategy strategy) {
  return info(strategy).exemplars;
}

bool is_cot(PromptStrategy strategy) { return info(strategy).cot; }

Exemplar make_exemplar(const DebateGraph& graph) {
  const ScoreMap scores = acceptability(graph);
  Exemplar ex;
  ex.dialogue = flatten_chronological(graph);
  ex.gold_ranking = gold_ranking(scores);
  ex.gold_adjacency = edge_set(graph);
  ex.reasoning_text = reasoning_for(graph, scores);
  return ex;
}

std::string render_ranking(const Ranking& ranking) {
  std::map<ArgumentId, std::size_t> group_of;
  for (std::size_t g = 0; g < ranking.tie_groups.size(); ++g) {
    for (ArgumentId id : ranking.tie_groups[g]) group_of[id] = g + 1;
  }
  std::string out = "Ranking:";
  for (std::size_t i = 0; i < ranking.ordered_ids.size(); ++i) {
    const ArgumentId id = ranking.ordered_ids[i];
    if (i == 0) {
      out += " ";
    } else {
      const auto a = group_of.find(ranking.ordered_ids[i - 1]);
      const auto b = group_of.find(id);
      const bool tied = a != group_of.end() && b != group_of.end() &&
                        a->second == b->second;
      out += tied ? " = " : " > ";
    }
    out += "Argument " + to_string(id);
  }
  return out;
}

std::string render_adjacency(const EdgeSet& edges) {
  if (edges.empty()) return "Adjacency list:\n{}";
  std::map<ArgumentId, std::vector<const Edge*>> by_target;
  for (const Edge& e : edges) by_target[e.target].push_back(&e);
  std::string out = "Adjacency list:\n{\n";
  for (const auto& [target, list] : by_target) {
    out += "  'Argument " + to_string(target) + "': [";
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i > 0) out += ", ";
      out += "('Argument " + to_string(list[i]->source) + "', '" +
             std::string(relation_kind_name(list[i]->kind)) + "')";
    }
    out += "],\n";
  }
  out += "}";
  return out;
}

TemplateSet TemplateSet::defaults() {
  TemplateSet set;
  for (const auto& [name, text] : builtin_templates()) {
    set.texts_.emplace(name, text);
  }
  return set;
}

TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIoError,
                "template directory not found: " + dir.string());
  }
  TemplateSet set = defaults();
  for (std::string_view name : kTemplateNames) {
    const auto path = dir / (std::string(name) + ".txt");
    if (std::filesystem::exists(path)) {
      set.texts_[std::string(name)] = read_file(path);
    }
  }
  return set;
}

std::span<const std::string_view> TemplateSet::names() {
  return kTemplateNames;
}

std::string_view TemplateSet::name_for(PromptStrategy strategy) {
  return info(strategy).template_name;
}

const std::string& TemplateSet::get(std::string_view name) const {
  const auto it = texts_.find(name);
  if (it == texts_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown template '" + std::string(name) + "'");
  }
  return it->second;
}

std::string TemplateSet::content_hash() const {
  std::string blob;
  for (const auto& [name, text] : texts_) {
    blob += name;
    blob += '\0';
    blob += text;
    blob += '\0';
  }
  return sha256_hex(blob);
}

std::string build_prompt(PromptStrategy strategy, const Dialogue& dialogue,
                         std::span<const Exemplar> exemplars,
                         const TemplateSet& templates) {
  const StrategyInfo& s = info(strategy);
  if (exemplars.size() != s.exemplars) {
    throw Error(ErrorCode::kExemplarCountMismatch,
                std::string(s.name) + " needs " + std::to_string(s.exemplars) +
                    " exemplar(s), got " + std::to_string(exemplars.size()));
  }
  if (s.cot) {
    for (std::size_t i = 0; i < exemplars.size(); ++i) {
      if (!exemplars[i].gold_adjacency || !exemplars[i].reasoning_text) {
        throw Error(ErrorCode::kUnresolvedPlaceholder,
                    "exemplar " + std::to_string(i + 1) +
                        " lacks the adjacency list or reasoning a "
                        "chain-of-thought prompt needs");
      }
    }
  }
  const std::string& tmpl = templates.get(s.template_name);
  bool saw_arguments = false;
  std::string out = substitute(tmpl, [&](std::string_view name) -> std::string {
    if (name == "Arguments") {
      saw_arguments = true;
      return without_trailing_newline(dialogue.render());
    }
    std::string_view family;
    std::size_t index = 0;
    if (!split_indexed(name, family, index) || index == 0 ||
        index > exemplars.size()) {
      throw unresolved(name, s.template_name);
    }
    const Exemplar& ex = exemplars[index - 1];
    if (family == "Exemplar") {
      return without_trailing_newline(ex.dialogue.render());
    }
    if (family == "Ranking") return render_ranking(ex.gold_ranking);
    if (family == "Adjacency") {
      if (!ex.gold_adjacency) throw unresolved(name, s.template_name);
      return render_adjacency(*ex.gold_adjacency);
    }
    if (!ex.reasoning_text) throw unresolved(name, s.template_name);
    return *ex.reasoning_text;
  });
  if (!saw_arguments) throw unresolved("Arguments", s.template_name);
  return out;
}

std::string build_reprompt(const std::string& prompt,
                           const TemplateSet& templates) {
  bool saw_prompt = false;
  std::string out = substitute(templates.get("reprompt"),
                               [&](std::string_view name) -> std::string {
                                 if (name != "Prompt") {
                                   throw unresolved(name, "reprompt");
                                 }
                                 saw_prompt = true;
                                 return prompt;
                               });
  if (!saw_prompt) throw unresolved("Prompt", "reprompt");
  return out;
}

}  // namespace quadarg
