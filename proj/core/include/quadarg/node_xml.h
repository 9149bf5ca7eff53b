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

#ifndef QUADARG_NODE_XML_H_
#define QUADARG_NODE_XML_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadarg/graph.h"

namespace quadarg {

enum class Entailment { kYes, kNo };

// One <pair> element of a NoDE entailment corpus:
//
//   <pair id="3" topic="SobrietyTest" entailment="NO">
//     <t id="3">...</t>
//     <h id="1">...</h>
//   </pair>
//
// `t` responds to `h`; YES marks support, NO marks attack. Ids are kept as
// written; mapping to ArgumentId happens per topic in parse_node_xml.
struct RawPair {
  std::string pair_id;
  std::string topic;
  std::string act;  // optional `act` attribute (12AngryMen)
  Entailment entailment = Entailment::kNo;
  std::string t_id;
  std::string h_id;
  std::string t_text;
  std::string h_text;
};

// Throws kMalformedXml (with line and column) for syntax errors and missing
// attributes or children, kUnknownEntailmentValue for anything but YES/NO.
std::vector<RawPair> read_node_pairs(std::string_view document);

// Trims and collapses internal whitespace runs to single spaces.
std::string canonical_text(std::string_view text);

// Graph key of a pair: its topic, or "<topic>_act<act>" when an act is given.
std::string graph_key(const RawPair& pair);

// One graph per distinct graph key, in order of first appearance. Each pair
// becomes the relation t -> h. Argument texts are canonicalized and must
// agree across occurrences (kConflictingArgumentText). Numeric ids are kept
// and define the chronology; a topic with any non-numeric id is renumbered
// 1..n in document order instead. Base weights are the 0.5 default.
std::vector<DebateGraph> parse_node_xml(std::string_view document);

// Inverse of parse_node_xml for graphs without isolated arguments (the pair
// format cannot express them; kInvalidArgument is thrown).
std::string write_node_xml(std::span<const DebateGraph> graphs);

}  // namespace quadarg

#endif  // QUADARG_NODE_XML_H_
