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


#include "quadarg/harness.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include "quadarg/error.h"
#include "quadarg/quad.h"
#include "quadarg/response_parser.h"

namespace quadarg {
namespace {

struct GraphGold {
  const DebateGraph* graph = nullptr;
  Ranking ranking;
  EdgeSet edges;
  std::set<ArgumentId> ids;
};

struct Cell {
  std::size_t graph = 0;
  std::size_t repetition = 0;
  std::size_t order_index = 0;
  OrderingLabel label;
  std::string prompt;
};

struct ParsedAnswer {
  std::optional<Ranking> ranking;
  std::optional<AdjacencyParse> adjacency;
  std::string message;
};

ParsedAnswer parse_answer(const std::string& text, const GraphGold& gold,
                          bool cot) {
  ParsedAnswer out;
  try {
    out.ranking = parse_ranking(text, gold.ids);
  } catch (const Error& e) {
    out.message = e.what();
  }
  if (cot) {
    try {
      out.adjacency = parse_adjacency(text, gold.ids);
    } catch (const Error& e) {
      if (!out.message.empty()) out.message += "; ";
      out.message += e.what();
    }
  }
  return out;
}

bool answer_complete(const ParsedAnswer& a, bool cot) {
  return a.ranking.has_value() && (!cot || a.adjacency.has_value());
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

std::optional<double> sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return std::nullopt;
  const double m = *mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::optional<double> metric_of(const RunRecord& r, std::string_view name) {
  if (name == "rho") return r.rho;
  if (name == "tau") return r.tau;
  if (!r.prf) return std::nullopt;
  if (name == "precision") return r.prf->precision;
  if (name == "recall") return r.prf->recall;
  return r.prf->f1;
}

RunReport run_cells(std::string_view corpus_id, const CorpusSplit& split,
                    PromptStrategy strategy, ChatBackend& backend,
                    const GenerationParams& params, std::uint64_t seed,
                    std::size_t toposort_k, const HarnessOptions& options) {
  params.validate();
  if (split.evaluation.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no evaluation graphs");
  }
  const bool cot = is_cot(strategy);
  const std::size_t needed = required_exemplars(strategy);

  RunReport report;
  report.corpus_id = std::string(corpus_id);
  report.strategy = std::string(strategy_name(strategy));
  report.model_id = backend.model_id();
  report.seed = seed;
  report.temperature = params.temperature;
  report.repetitions = params.repetitions;
  report.max_output_tokens = params.max_output_tokens;
  report.template_hash = options.templates.content_hash();
  report.run_kind = toposort_k > 0 ? "toposort" : "chronological";
  report.toposort_k = toposort_k;

  std::vector<Exemplar> exemplars;
  for (std::size_t i = 0; i < std::min(needed, split.exemplars.size()); ++i) {
    exemplars.push_back(make_exemplar(split.exemplars[i]));
    report.exemplars.push_back(split.exemplars[i].name());
  }

  std::vector<GraphGold> golds;
  golds.reserve(split.evaluation.size());
  for (const DebateGraph& g : split.evaluation) {
    GraphGold gold;
    gold.graph = &g;
    gold.ranking = gold_ranking(acceptability(g));
    gold.edges = edge_set(g);
    const auto ids = g.ids();
    gold.ids.insert(ids.begin(), ids.end());
    golds.push_back(std::move(gold));
  }

  // Prompts first: template or exemplar problems surface before any call.
  std::vector<Cell> cells;
  for (std::size_t gi = 0; gi < golds.size(); ++gi) {
    const DebateGraph& g = *golds[gi].graph;
    std::vector<std::vector<ArgumentId>> orders;
    std::vector<OrderingLabel> labels;
    GraphSummary summary;
    if (toposort_k == 0) {
      orders.push_back(chronological_order(g));
      labels.push_back(OrderingLabel::chronological());
    } else {
      OrderSample sample =
          sample_topological_orders(g, toposort_k, seed, options.constraint);
      orders = std::move(sample.orders);
      for (std::size_t i = 0; i < orders.size(); ++i) {
        labels.push_back(OrderingLabel::toposort(seed, i));
      }
      summary.few_orders = sample.not_enough_orders;
    }
    summary.orders = orders.size();
    report.graphs[g.name()] = summary;
    for (std::size_t oi = 0; oi < orders.size(); ++oi) {
      const Dialogue dialogue = flatten(g, orders[oi], labels[oi]);
      const std::string prompt =
          build_prompt(strategy, dialogue, exemplars, options.templates);
      for (int rep = 0; rep < params.repetitions; ++rep) {
        cells.push_back(Cell{gi, static_cast<std::size_t>(rep), oi, labels[oi],
                             prompt});
      }
    }
  }
  // Checked once here so a broken reprompt template fails early too.
  build_reprompt("", options.templates);

  report.records.resize(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    RunRecord& r = report.records[i];
    r.graph_name = golds[cells[i].graph].graph->name();
    r.repetition = cells[i].repetition;
    r.order_index = cells[i].order_index;
    r.ordering = cells[i].label.to_string();
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex abort_mu;
  std::string abort_reason;

  auto work = [&] {
    for (;;) {
      if (abort.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& cell = cells[i];
      const GraphGold& gold = golds[cell.graph];
      RunRecord& rec = report.records[i];
      CompletionRequest req;
      req.prompt = cell.prompt;
      req.temperature = params.temperature;
      req.max_output_tokens = params.max_output_tokens;
      req.sample_index = cell.repetition;
      req.seed = seed;
      req.graph_name = gold.graph->name();
      try {
        ParsedAnswer answer = parse_answer(backend.complete(req).text, gold, cot);
        rec.prompts_sent = 1;
        if (!answer_complete(answer, cot)) {
          req.prompt = build_reprompt(cell.prompt, options.templates);
          answer = parse_answer(backend.complete(req).text, gold, cot);
          rec.prompts_sent = 2;
        }
        rec.status = answer_complete(answer, cot) ? CellStatus::kOk
                                                  : CellStatus::kFormatViolation;
        rec.message = answer.message;
        if (answer.ranking) {
          rec.predicted = *answer.ranking;
          rec.rho = spearman_rho(gold.ranking, *answer.ranking);
          rec.tau = kendall_tau(gold.ranking, *answer.ranking);
        }
        if (answer.adjacency) {
          rec.prf = edge_prf(gold.edges, answer.adjacency->edges);
          rec.adjacency_rejected = answer.adjacency->rejected;
        }
      } catch (const std::exception& e) {
        rec.status = CellStatus::kBackendError;
        rec.message = e.what();
        std::lock_guard<std::mutex> lock(abort_mu);
        if (!abort.exchange(true)) {
          abort_reason = rec.graph_name + " repetition " +
                         std::to_string(rec.repetition) + ": " + e.what();
        }
        return;
      }
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(options.parallelism, 1, cells.size());
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (abort.load()) {
    report.complete = false;
    report.abort_reason = abort_reason;
  }
  summarize(report);
  return report;
}

}  // namespace

std::string_view cell_status_name(CellStatus status) {
  switch (status) {
    case CellStatus::kOk:
      return "ok";
    case CellStatus::kFormatViolation:
      return "format_violation";
    case CellStatus::kBackendError:
      return "backend_error";
    case CellStatus::kSkipped:
      return "skipped";
  }
  return "skipped";
}

CellStatus parse_cell_status(std::string_view name) {
  for (CellStatus s : {CellStatus::kOk, CellStatus::kFormatViolation,
                       CellStatus::kBackendError, CellStatus::kSkipped}) {
    if (cell_status_name(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown record status '" + std::string(name) + "'");
}

RunReport run_evaluation(std::string_view corpus_id, const CorpusSplit& split,
                         PromptStrategy strategy, ChatBackend& backend,
                         const GenerationParams& params, std::uint64_t seed,
                         const HarnessOptions& options) {
  return run_cells(corpus_id, split, strategy, backend, params, seed, 0,
                   options);
}

RunReport run_toposort_robustness(std::string_view corpus_id,
                                  const CorpusSplit& split,
                                  PromptStrategy strategy, ChatBackend& backend,
                                  const GenerationParams& params,
                                  std::uint64_t seed, std::size_t k,
                                  const HarnessOptions& options) {
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one order (k >= 1)");
  }
  return run_cells(corpus_id, split, strategy, backend, params, seed, k,
                   options);
}

void summarize(RunReport& report) {
  const bool cot = is_cot(parse_strategy(report.strategy));
  std::vector<std::string> metrics = {"rho", "tau"};
  if (cot) metrics.insert(metrics.end(), {"precision", "recall", "f1"});

  std::map<std::string, std::vector<const RunRecord*>> by_graph;
  for (const RunRecord& r : report.records) by_graph[r.graph_name].push_back(&r);

  report.aggregate.clear();
  for (auto& [name, recs] : by_graph) {
    GraphSummary& gs = report.graphs[name];
    gs.records = recs.size();
    gs.metrics.clear();
    for (const std::string& m : metrics) {
      std::vector<double> all;
      std::map<std::size_t, std::vector<double>> per_order;
      for (const RunRecord* r : recs) {
        if (const auto v = metric_of(*r, m)) {
          all.push_back(*v);
          per_order[r->order_index].push_back(*v);
        }
      }
      GraphMetric gm;
      gm.mean = mean_of(all);
      gm.defined = all.size();
      if (report.run_kind == "toposort") {
        std::vector<double> order_means;
        for (const auto& [o, vals] : per_order) order_means.push_back(*mean_of(vals));
        gm.order_sd = sample_sd(order_means);
      }
      gs.metrics[m] = gm;
    }
  }

  for (const std::string& m : metrics) {
    std::vector<double> flat;
    std::vector<double> graph_means;
    std::vector<double> graph_sds;
    for (const RunRecord& r : report.records) {
      if (const auto v = metric_of(r, m)) flat.push_back(*v);
    }
    for (const auto& [name, gs] : report.graphs) {
      const auto it = gs.metrics.find(m);
      if (it == gs.metrics.end()) continue;
      if (it->second.mean) graph_means.push_back(*it->second.mean);
      if (it->second.order_sd) graph_sds.push_back(*it->second.order_sd);
    }
    MetricSummary s;
    s.flat = mean_of(flat);
    s.macro = mean_of(graph_means);
    s.order_sd = mean_of(graph_sds);
    s.defined = flat.size();
    s.excluded = report.records.size() - flat.size();
    report.aggregate[m] = s;
  }

  report.format_violations = 0;
  std::size_t answered = 0;
  for (const RunRecord& r : report.records) {
    if (r.status == CellStatus::kFormatViolation) ++report.format_violations;
    if (r.status == CellStatus::kOk || r.status == CellStatus::kFormatViolation) {
      ++answered;
    }
  }
  report.format_violation_rate =
      answered == 0 ? 0.0
                    : static_cast<double>(report.format_violations) /
                          static_cast<double>(answered);
}

std::vector<QuartileRow> quartile_bias(const RunReport& report,
                                       std::span<const DebateGraph> graphs,
                                       QuartileKey key) {
  std::map<std::string, const DebateGraph*, std::less<>> lookup;
  for (const DebateGraph& g : graphs) lookup.emplace(g.name(), &g);

  std::map<std::string, std::vector<const RunRecord*>> by_graph;
  for (const RunRecord& r : report.records) by_graph[r.graph_name].push_back(&r);

  std::array<std::vector<double>, 4> rho_means;
  std::array<std::vector<double>, 4> tau_means;
  std::vector<QuartileRow> rows(4);
  const char prefix = key == QuartileKey::kLengthTokens ? 'L' : 'P';
  for (std::size_t q = 0; q < 4; ++q) {
    rows[q].label = std::string(1, prefix) + "Q" + std::to_string(q + 1);
  }
  for (const auto& [name, recs] : by_graph) {
    const auto it = lookup.find(name);
    if (it == lookup.end()) {
      throw Error(ErrorCode::kUnknownGraphName,
                  "report graph '" + name + "' is not in the corpus");
    }
    const DebateGraph& g = *it->second;
    const Ranking gold = gold_ranking(acceptability(g));
    const QuartileBuckets buckets = quartile_split(g, key);
    std::array<std::vector<double>, 4> rho_vals;
    std::array<std::vector<double>, 4> tau_vals;
    for (std::size_t q = 0; q < 4; ++q) rows[q].arguments += buckets.buckets[q].size();
    for (const RunRecord* r : recs) {
      if (!r->predicted) continue;
      const auto corr = quartile_correlations(gold, *r->predicted, buckets);
      for (std::size_t q = 0; q < 4; ++q) {
        if (corr[q].rho) rho_vals[q].push_back(*corr[q].rho);
        if (corr[q].tau) tau_vals[q].push_back(*corr[q].tau);
      }
    }
    for (std::size_t q = 0; q < 4; ++q) {
      if (const auto m = mean_of(rho_vals[q])) rho_means[q].push_back(*m);
      if (const auto m = mean_of(tau_vals[q])) tau_means[q].push_back(*m);
    }
  }
  for (std::size_t q = 0; q < 4; ++q) {
    rows[q].rho = mean_of(rho_means[q]);
    rows[q].tau = mean_of(tau_means[q]);
  }
  return rows;
}

}  // namespace quadarg
