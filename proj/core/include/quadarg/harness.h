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


#ifndef QUADARG_HARNESS_H_
#define QUADARG_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadarg/backend.h"
#include "quadarg/corpus.h"
#include "quadarg/dialogue.h"
#include "quadarg/metrics.h"
#include "quadarg/prompt.h"

namespace quadarg {

enum class CellStatus { kOk, kFormatViolation, kBackendError, kSkipped };
std::string_view cell_status_name(CellStatus status);
CellStatus parse_cell_status(std::string_view name);

// One (graph, repetition, order) cell of a run.
struct RunRecord {
  std::string graph_name;
  std::size_t repetition = 0;
  std::size_t order_index = 0;
  std::string ordering;  // OrderingLabel::to_string()
  CellStatus status = CellStatus::kSkipped;
  int prompts_sent = 0;  // 2 when the answer needed a re-prompt
  std::optional<double> rho;
  std::optional<double> tau;
  std::optional<PrfScore> prf;  // CoT strategies only
  std::size_t adjacency_rejected = 0;
  std::optional<Ranking> predicted;  // absent when no ranking was parsed
  std::string message;  // parse or backend error, if any
};

inline constexpr const char* kMetricNames[] = {"rho", "tau", "precision",
                                               "recall", "f1"};

// Per-graph view: mean over all of the graph's defined records and, for
// robustness runs, the sample standard deviation across orders of the
// per-order means.
struct GraphMetric {
  std::optional<double> mean;
  std::optional<double> order_sd;
  std::size_t defined = 0;
};

struct GraphSummary {
  std::size_t records = 0;
  std::size_t orders = 1;
  bool few_orders = false;  // fewer distinct orders than requested
  std::map<std::string, GraphMetric> metrics;
};

// macro: mean over graphs of the per-graph means. flat: mean over all
// defined records. order_sd: mean over graphs of the per-graph order_sd.
struct MetricSummary {
  std::optional<double> macro;
  std::optional<double> flat;
  std::optional<double> order_sd;
  std::size_t defined = 0;
  std::size_t excluded = 0;
};

struct RunReport {
  std::string corpus_id;
  std::string strategy;
  std::string model_id;
  std::uint64_t seed = 0;
  double temperature = 0.7;
  int repetitions = 3;
  int max_output_tokens = 0;
  std::string template_hash;
  std::vector<std::string> exemplars;
  std::string run_kind = "chronological";  // or "toposort"
  std::size_t toposort_k = 0;
  bool complete = true;
  std::string abort_reason;
  std::vector<RunRecord> records;
  std::map<std::string, GraphSummary> graphs;
  std::map<std::string, MetricSummary> aggregate;
  std::size_t format_violations = 0;
  double format_violation_rate = 0.0;
  std::string generated_at;
};

struct HarnessOptions {
  TemplateSet templates = TemplateSet::defaults();
  std::size_t parallelism = 1;
  OrderConstraint constraint = OrderConstraint::kClaimBeforeReply;
};

// Every evaluation graph is prompted `params.repetitions` times in its
// chronological order, the answer parsed, and scored against the gold
// ranking (and, for CoT strategies, the gold relations). An answer missing a
// required part is re-prompted once; if it still fails the record is a
// format violation and its missing metrics are excluded from averages. All
// prompts are built before the first request, so template and exemplar
// errors throw before any call. A backend error stops the run; the returned
// report then has complete == false and the unfinished cells are skipped.
RunReport run_evaluation(std::string_view corpus_id, const CorpusSplit& split,
                         PromptStrategy strategy, ChatBackend& backend,
                         const GenerationParams& params, std::uint64_t seed,
                         const HarnessOptions& options = {});

// As run_evaluation, but each graph is shown in up to k sampled topological
// orders (seeded by `seed`) and the report carries the spread across orders.
RunReport run_toposort_robustness(std::string_view corpus_id,
                                  const CorpusSplit& split,
                                  PromptStrategy strategy, ChatBackend& backend,
                                  const GenerationParams& params,
                                  std::uint64_t seed, std::size_t k = 5,
                                  const HarnessOptions& options = {});

// Recomputes graphs, aggregate and the violation counts from records.
void summarize(RunReport& report);

struct QuartileRow {
  std::string label;  // "LQ1".."LQ4" or "PQ1".."PQ4"
  std::size_t arguments = 0;  // bucket sizes summed over graphs
  std::optional<double> rho;  // macro over graphs of per-graph means
  std::optional<double> tau;
};

// Correlations of the report's predicted rankings inside length or position
// quartiles of each graph, averaged per graph first and then across graphs.
// Graphs of the report that are missing from `graphs` throw
// kUnknownGraphName.
std::vector<QuartileRow> quartile_bias(const RunReport& report,
                                       std::span<const DebateGraph> graphs,
                                       QuartileKey key);

}  // namespace quadarg

#endif  // QUADARG_HARNESS_H_
