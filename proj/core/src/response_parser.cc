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


#include "quadarg/response_parser.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <regex>
#include <utility>

#include "quadarg/error.h"

namespace quadarg {
namespace {

constexpr auto kFlags = std::regex::ECMAScript | std::regex::icase;

const std::regex& header_re() {
  static const std::regex re(
      R"(^[\s*#_>\-]*(?:final\s+)?ranking(?:\s*\([^)]*\))?[\s*_]*:[\s*_]*(.*)$)",
      kFlags);
  return re;
}

const std::regex& ref_re() {
  static const std::regex re(R"(argument\s*#?\s*(\d+))", kFlags);
  return re;
}

const std::regex& item_re() {
  static const std::regex re(R"(^\s*(?:\d+\s*[.):]|[-*]|\xE2\x80\xA2)\s*)",
                             kFlags);
  return re;
}

const std::regex& key_re() {
  static const std::regex re(
      R"re(['"]?argument\s*(\d+)['"]?\s*:\s*\[([^\]]*)\])re", kFlags);
  return re;
}

const std::regex& tuple_re() {
  static const std::regex re(
      R"re(\(\s*['"]?argument\s*(\d+)['"]?\s*,\s*['"]?([^'"()\s,]+)['"]?\s*\))re",
      kFlags);
  return re;
}

std::optional<ArgumentId> to_id(const std::string& digits) {
  std::int64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    return std::nullopt;
  }
  return ArgumentId(v);
}

// An argument reference and whether an '=' joins it to the previous one.
struct Ref {
  std::string digits;
  bool tied = false;
};

std::vector<Ref> refs_in(const std::string& text) {
  std::vector<Ref> refs;
  std::size_t prev_end = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), ref_re());
       it != std::sregex_iterator(); ++it) {
    const auto pos = static_cast<std::size_t>(it->position(0));
    const std::string gap = text.substr(prev_end, pos - prev_end);
    const bool tied = !refs.empty() && gap.find('=') != std::string::npos &&
                      gap.find('>') == std::string::npos;
    refs.push_back({(*it)[1].str(), tied});
    prev_end = pos + static_cast<std::size_t>(it->length(0));
  }
  return refs;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

// References following header line `h`.
std::vector<Ref> refs_after_header(const std::vector<std::string>& lines,
                                   std::size_t h,
                                   const std::string& remainder) {
  std::vector<Ref> refs = refs_in(remainder);
  if (!refs.empty()) return refs;
  bool in_list = false;
  for (std::size_t i = h + 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (blank(line)) {
      if (in_list) break;
      continue;
    }
    std::smatch m;
    if (std::regex_search(line, m, item_re())) {
      in_list = true;
      // One item per line; an item may hold a tie joined by '='.
      const auto item_refs = refs_in(m.suffix().str());
      for (std::size_t k = 0; k < item_refs.size(); ++k) {
        if (k > 0 && !item_refs[k].tied) break;
        refs.push_back(item_refs[k]);
      }
      continue;
    }
    if (!in_list) refs = refs_in(line);
    break;
  }
  return refs;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// Text from `open` to its matching '}', or to the end when unbalanced.
std::string_view brace_block(std::string_view text, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < text.size(); ++i) {
    if (text[i] == '{') ++depth;
    if (text[i] == '}' && --depth == 0) return text.substr(open, i - open + 1);
  }
  return text.substr(open);
}

bool empty_braces(std::string_view block) {
  if (block.size() < 2 || block.front() != '{' || block.back() != '}') {
    return false;
  }
  return blank(std::string(block.substr(1, block.size() - 2)));
}

}  // namespace

std::optional<RelationKind> normalize_kind(std::string_view word) {
  static const std::pair<std::string_view, RelationKind> kTable[] = {
      {"attack", RelationKind::kAttack},     {"attacks", RelationKind::kAttack},
      {"attacked", RelationKind::kAttack},   {"attacking", RelationKind::kAttack},
      {"att", RelationKind::kAttack},        {"con", RelationKind::kAttack},
      {"-", RelationKind::kAttack},          {"support", RelationKind::kSupport},
      {"supports", RelationKind::kSupport},  {"supported", RelationKind::kSupport},
      {"supporting", RelationKind::kSupport}, {"sup", RelationKind::kSupport},
      {"pro", RelationKind::kSupport},       {"+", RelationKind::kSupport},
  };
  std::string w = lower(word);
  const auto first = w.find_first_not_of(" \t");
  const auto last = w.find_last_not_of(" \t");
  w = first == std::string::npos ? "" : w.substr(first, last - first + 1);
  for (const auto& [name, kind] : kTable) {
    if (w == name) return kind;
  }
  return std::nullopt;
}

Ranking parse_ranking(std::string_view response,
                      const std::set<ArgumentId>& expected_ids) {
  const std::vector<std::string> lines = split_lines(response);
  std::vector<Ref> refs;
  for (std::size_t h = lines.size(); h-- > 0;) {
    std::smatch m;
    if (!std::regex_search(lines[h], m, header_re())) continue;
    refs = refs_after_header(lines, h, m[1].str());
    if (!refs.empty()) break;
  }
  if (refs.empty()) {
    throw Error(ErrorCode::kMissingRanking, "no ranking found in response");
  }
  std::vector<std::vector<ArgumentId>> groups;
  std::set<ArgumentId> seen;
  std::size_t count = 0;
  bool duplicate = false;
  for (const Ref& r : refs) {
    const auto id = to_id(r.digits);
    if (!id || !expected_ids.contains(*id)) {
      throw Error(ErrorCode::kUnknownArgumentId,
                  "ranking names unknown Argument " + r.digits);
    }
    if (!seen.insert(*id).second) duplicate = true;
    if (!r.tied || groups.empty()) groups.emplace_back();
    groups.back().push_back(*id);
    ++count;
  }
  if (duplicate || count != expected_ids.size()) {
    throw Error(ErrorCode::kNotAPermutation,
                "ranking lists " + std::to_string(count) + " entries (" +
                    std::to_string(seen.size()) + " distinct) for " +
                    std::to_string(expected_ids.size()) + " arguments");
  }
  Ranking ranking;
  for (auto& g : groups) {
    std::sort(g.begin(), g.end());
    ranking.ordered_ids.insert(ranking.ordered_ids.end(), g.begin(), g.end());
    if (g.size() >= 2) ranking.tie_groups.push_back(std::move(g));
  }
  return ranking;
}

AdjacencyParse parse_adjacency(std::string_view response,
                               const std::set<ArgumentId>& expected_ids) {
  const std::string lowered = lower(response);
  std::string_view region;
  bool explicit_empty = false;
  bool found = false;
  for (std::size_t pos = lowered.rfind("adjacency list");
       pos != std::string::npos && !found;
       pos = pos == 0 ? std::string::npos
                      : lowered.rfind("adjacency list", pos - 1)) {
    const std::size_t open = response.find('{', pos);
    if (open == std::string_view::npos) continue;
    const std::string_view block = brace_block(response, open);
    const std::string block_str(block);
    if (std::regex_search(block_str, key_re())) {
      region = block;
      found = true;
    } else if (empty_braces(block)) {
      explicit_empty = true;
      found = true;
    }
  }
  if (!found) region = response;
  if (explicit_empty) return {};

  AdjacencyParse result;
  bool any_key = false;
  const std::string text(region);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), key_re());
       it != std::sregex_iterator(); ++it) {
    any_key = true;
    const std::string key = (*it)[1].str();
    const std::string body = (*it)[2].str();
    const auto target = to_id(key);
    std::size_t matched = 0;
    for (auto t = std::sregex_iterator(body.begin(), body.end(), tuple_re());
         t != std::sregex_iterator(); ++t) {
      ++matched;
      const std::string src = (*t)[1].str();
      const std::string kind_word = (*t)[2].str();
      const auto source = to_id(src);
      const auto kind = normalize_kind(kind_word);
      std::string why;
      if (!target || !expected_ids.contains(*target)) {
        why = "unknown target Argument " + key;
      } else if (!source || !expected_ids.contains(*source)) {
        why = "unknown source Argument " + src;
      } else if (*source == *target) {
        why = "self reference on Argument " + key;
      } else if (!kind) {
        why = "unknown relation kind '" + kind_word + "'";
      }
      if (!why.empty()) {
        ++result.rejected;
        result.diagnostics.push_back(why);
        continue;
      }
      result.edges.insert(Edge{*source, *target, *kind});
    }
    const auto parens =
        static_cast<std::size_t>(std::count(body.begin(), body.end(), '('));
    for (std::size_t i = matched; i < parens; ++i) {
      ++result.rejected;
      result.diagnostics.push_back("unreadable entry under Argument " + key);
    }
  }
  if (!any_key) {
    throw Error(ErrorCode::kMissingAdjacency,
                "no adjacency list found in response");
  }
  if (result.edges.empty() && result.rejected > 0) {
    throw Error(ErrorCode::kEmptyAfterRejection,
                "all " + std::to_string(result.rejected) +
                    " adjacency entries were rejected");
  }
  return result;
}

}  // namespace quadarg
