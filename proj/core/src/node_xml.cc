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

#include "quadarg/node_xml.h"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "quadarg/error.h"

namespace quadarg {
namespace {

struct ParseState {
  XML_Parser parser = nullptr;
  std::vector<RawPair> pairs;
  std::optional<RawPair> current;
  enum class Child { kNone, kT, kH } child = Child::kNone;
  bool seen_t = false;
  bool seen_h = false;
  std::string text;
  std::optional<Error> error;

  std::string where() const {
    std::ostringstream out;
    out << "line " << XML_GetCurrentLineNumber(parser) << ", column "
        << XML_GetCurrentColumnNumber(parser);
    return out.str();
  }

  void fail(ErrorCode code, const std::string& message) {
    if (error) return;
    error.emplace(code, message + " at " + where());
    XML_StopParser(parser, XML_FALSE);
  }
};

const char* find_attr(const XML_Char** attrs, std::string_view name) {
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    if (name == attrs[i]) return attrs[i + 1];
  }
  return nullptr;
}

void on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  auto& st = *static_cast<ParseState*>(data);
  if (st.error) return;
  const std::string_view tag(name);
  if (tag == "pair") {
    if (st.current) {
      st.fail(ErrorCode::kMalformedXml, "nested <pair> element");
      return;
    }
    RawPair pair;
    for (const char* required : {"id", "topic", "entailment"}) {
      if (find_attr(attrs, required) == nullptr) {
        st.fail(ErrorCode::kMalformedXml,
                std::string("<pair> without '") + required + "' attribute");
        return;
      }
    }
    pair.pair_id = find_attr(attrs, "id");
    pair.topic = canonical_text(find_attr(attrs, "topic"));
    if (const char* act = find_attr(attrs, "act")) pair.act = canonical_text(act);
    const std::string entailment = find_attr(attrs, "entailment");
    if (entailment == "YES") {
      pair.entailment = Entailment::kYes;
    } else if (entailment == "NO") {
      pair.entailment = Entailment::kNo;
    } else {
      st.fail(ErrorCode::kUnknownEntailmentValue,
              "entailment '" + entailment + "' of pair " + pair.pair_id +
                  " is neither YES nor NO");
      return;
    }
    st.current = std::move(pair);
    st.seen_t = st.seen_h = false;
  } else if (st.current && (tag == "t" || tag == "h")) {
    if (st.child != ParseState::Child::kNone) {
      st.fail(ErrorCode::kMalformedXml, "nested <t>/<h> element");
      return;
    }
    const bool is_t = tag == "t";
    if (is_t ? st.seen_t : st.seen_h) {
      st.fail(ErrorCode::kMalformedXml,
              "pair " + st.current->pair_id + " has more than one <" +
                  std::string(tag) + ">");
      return;
    }
    const char* id = find_attr(attrs, "id");
    if (id == nullptr || canonical_text(id).empty()) {
      st.fail(ErrorCode::kMalformedXml,
              "<" + std::string(tag) + "> of pair " + st.current->pair_id +
                  " without 'id' attribute");
      return;
    }
    (is_t ? st.current->t_id : st.current->h_id) = canonical_text(id);
    st.child = is_t ? ParseState::Child::kT : ParseState::Child::kH;
    st.text.clear();
  }
}

void on_end(void* data, const XML_Char* name) {
  auto& st = *static_cast<ParseState*>(data);
  if (st.error) return;
  const std::string_view tag(name);
  if (st.child != ParseState::Child::kNone && (tag == "t" || tag == "h")) {
    std::string text = canonical_text(st.text);
    if (text.empty()) {
      st.fail(ErrorCode::kMalformedXml,
              "empty <" + std::string(tag) + "> in pair " +
                  st.current->pair_id);
      return;
    }
    if (st.child == ParseState::Child::kT) {
      st.current->t_text = std::move(text);
      st.seen_t = true;
    } else {
      st.current->h_text = std::move(text);
      st.seen_h = true;
    }
    st.child = ParseState::Child::kNone;
  } else if (tag == "pair" && st.current) {
    if (!st.seen_t || !st.seen_h) {
      st.fail(ErrorCode::kMalformedXml,
              "pair " + st.current->pair_id + " lacks a <t> or <h> child");
      return;
    }
    st.pairs.push_back(std::move(*st.current));
    st.current.reset();
  }
}

void on_text(void* data, const XML_Char* s, int len) {
  auto& st = *static_cast<ParseState*>(data);
  if (st.child != ParseState::Child::kNone) st.text.append(s, len);
}

std::optional<std::int64_t> parse_positive(std::string_view s) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < 1) {
    return std::nullopt;
  }
  return value;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string canonical_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(c);
  }
  return out;
}

std::string graph_key(const RawPair& pair) {
  return pair.act.empty() ? pair.topic : pair.topic + "_act" + pair.act;
}

std::vector<RawPair> read_node_pairs(std::string_view document) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)>
      parser(XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw Error(ErrorCode::kIoError, "cannot allocate XML parser");
  ParseState state;
  state.parser = parser.get();
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), &on_start, &on_end);
  XML_SetCharacterDataHandler(parser.get(), &on_text);

  const auto status =
      XML_Parse(parser.get(), document.data(),
                static_cast<int>(document.size()), /*isFinal=*/XML_TRUE);
  if (state.error) throw *state.error;
  if (status != XML_STATUS_OK) {
    std::ostringstream msg;
    msg << "malformed XML: " << XML_ErrorString(XML_GetErrorCode(parser.get()))
        << " at line " << XML_GetCurrentLineNumber(parser.get())
        << ", column " << XML_GetCurrentColumnNumber(parser.get());
    throw Error(ErrorCode::kMalformedXml, msg.str());
  }
  return std::move(state.pairs);
}

std::vector<DebateGraph> parse_node_xml(std::string_view document) {
  const std::vector<RawPair> pairs = read_node_pairs(document);

  struct Topic {
    std::vector<const RawPair*> pairs;
    // Raw id -> canonical text, plus raw ids in order of first appearance.
    std::unordered_map<std::string, std::string> texts;
    std::vector<std::string> appearance;
  };
  std::vector<std::string> topic_order;
  std::map<std::string, Topic> topics;

  for (const RawPair& pair : pairs) {
    const std::string key = graph_key(pair);
    auto [it, inserted] = topics.try_emplace(key);
    if (inserted) topic_order.push_back(key);
    Topic& topic = it->second;
    topic.pairs.push_back(&pair);
    for (const auto& [id, text] : {std::pair{&pair.t_id, &pair.t_text},
                                   std::pair{&pair.h_id, &pair.h_text}}) {
      auto [tit, fresh] = topic.texts.try_emplace(*id, *text);
      if (fresh) {
        topic.appearance.push_back(*id);
      } else if (tit->second != *text) {
        throw Error(ErrorCode::kConflictingArgumentText,
                    "argument " + *id + " of '" + key +
                        "' appears with different texts (pair " +
                        pair.pair_id + ")");
      }
    }
  }

  std::vector<DebateGraph> graphs;
  graphs.reserve(topic_order.size());
  for (const std::string& key : topic_order) {
    const Topic& topic = topics.at(key);
    const bool numeric = std::all_of(
        topic.appearance.begin(), topic.appearance.end(),
        [](const std::string& id) { return parse_positive(id).has_value(); });

    std::unordered_map<std::string, ArgumentId> ids;
    std::vector<std::string> chronological = topic.appearance;
    if (numeric) {
      std::sort(chronological.begin(), chronological.end(),
                [](const std::string& a, const std::string& b) {
                  return *parse_positive(a) < *parse_positive(b);
                });
    }
    std::vector<Argument> arguments;
    arguments.reserve(chronological.size());
    for (std::size_t i = 0; i < chronological.size(); ++i) {
      const std::string& raw = chronological[i];
      const ArgumentId id(numeric ? *parse_positive(raw)
                                  : static_cast<std::int64_t>(i + 1));
      ids.emplace(raw, id);
      arguments.push_back(Argument{id, topic.texts.at(raw), i});
    }
    // Numeric spellings such as "7" and "07" collapse to one id.
    for (std::size_t i = 1; i < arguments.size(); ++i) {
      if (arguments[i].id == arguments[i - 1].id &&
          arguments[i].text != arguments[i - 1].text) {
        throw Error(ErrorCode::kConflictingArgumentText,
                    "argument " + to_string(arguments[i].id) + " of '" + key +
                        "' appears with different texts");
      }
    }
    arguments.erase(std::unique(arguments.begin(), arguments.end(),
                                [](const Argument& a, const Argument& b) {
                                  return a.id == b.id;
                                }),
                    arguments.end());
    for (std::size_t i = 0; i < arguments.size(); ++i) {
      arguments[i].chronological_index = i;
    }

    std::vector<Relation> relations;
    relations.reserve(topic.pairs.size());
    for (const RawPair* pair : topic.pairs) {
      relations.push_back(Relation{ids.at(pair->t_id), ids.at(pair->h_id),
                                   pair->entailment == Entailment::kYes
                                       ? RelationKind::kSupport
                                       : RelationKind::kAttack});
    }
    graphs.push_back(build_graph(key, std::move(arguments), std::move(relations)));
  }
  return graphs;
}

std::string write_node_xml(std::span<const DebateGraph> graphs) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<entailment-corpus>\n";
  std::size_t pair_id = 1;
  for (const DebateGraph& graph : graphs) {
    std::vector<bool> linked(graph.size(), false);
    for (const Relation& rel : graph.relations()) {
      linked[graph.index_of(rel.source)] = true;
      linked[graph.index_of(rel.target)] = true;
    }
    for (std::size_t i = 0; i < graph.size(); ++i) {
      if (!linked[i]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "argument " + to_string(graph.arguments()[i].id) + " of '" +
                        graph.name() +
                        "' has no relation and cannot be written as a pair");
      }
    }
    for (const Relation& rel : graph.relations()) {
      out << "  <pair id=\"" << pair_id++ << "\" topic=\""
          << xml_escape(graph.name()) << "\" entailment=\""
          << (rel.kind == RelationKind::kSupport ? "YES" : "NO") << "\">\n"
          << "    <t id=\"" << rel.source.value << "\">"
          << xml_escape(graph.argument(rel.source).text) << "</t>\n"
          << "    <h id=\"" << rel.target.value << "\">"
          << xml_escape(graph.argument(rel.target).text) << "</h>\n"
          << "  </pair>\n";
    }
  }
  out << "</entailment-corpus>\n";
  return out.str();
}

}  // namespace quadarg
