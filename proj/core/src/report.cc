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


#include "quadarg/report.h"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "quadarg/error.h"

namespace quadarg {
namespace {

using nlohmann::json;

json opt(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

std::optional<double> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

json record_json(const RunRecord& r) {
  json ranking = nullptr;
  json ties = nullptr;
  if (r.predicted) {
    ranking = json::array();
    ties = json::array();
    for (ArgumentId id : r.predicted->ordered_ids) ranking.push_back(id.value);
    for (const auto& group : r.predicted->tie_groups) {
      json ids = json::array();
      for (ArgumentId id : group) ids.push_back(id.value);
      ties.push_back(ids);
    }
  }
  json prf = nullptr;
  if (r.prf) {
    prf = {{"precision", r.prf->precision},
           {"recall", r.prf->recall},
           {"f1", r.prf->f1}};
  }
  return {{"graph", r.graph_name},
          {"repetition", r.repetition},
          {"order_index", r.order_index},
          {"ordering", r.ordering},
          {"status", cell_status_name(r.status)},
          {"prompts_sent", r.prompts_sent},
          {"rho", opt(r.rho)},
          {"tau", opt(r.tau)},
          {"prf", prf},
          {"adjacency_rejected", r.adjacency_rejected},
          {"predicted_ranking", ranking},
          {"predicted_ties", ties},
          {"message", r.message}};
}

RunRecord record_from(const json& j) {
  RunRecord r;
  r.graph_name = j.at("graph").get<std::string>();
  r.repetition = j.at("repetition").get<std::size_t>();
  r.order_index = j.at("order_index").get<std::size_t>();
  r.ordering = j.at("ordering").get<std::string>();
  r.status = parse_cell_status(j.at("status").get<std::string>());
  r.prompts_sent = j.at("prompts_sent").get<int>();
  r.rho = get_opt(j, "rho");
  r.tau = get_opt(j, "tau");
  if (j.contains("prf") && !j["prf"].is_null()) {
    const json& p = j["prf"];
    r.prf = PrfScore{p.at("precision").get<double>(),
                     p.at("recall").get<double>(), p.at("f1").get<double>()};
  }
  r.adjacency_rejected = j.value("adjacency_rejected", std::size_t{0});
  if (j.contains("predicted_ranking") && !j["predicted_ranking"].is_null()) {
    Ranking pred;
    for (const json& id : j["predicted_ranking"]) {
      pred.ordered_ids.emplace_back(id.get<std::int64_t>());
    }
    if (j.contains("predicted_ties") && !j["predicted_ties"].is_null()) {
      for (const json& group : j["predicted_ties"]) {
        std::vector<ArgumentId> ids;
        for (const json& id : group) ids.emplace_back(id.get<std::int64_t>());
        pred.tie_groups.push_back(std::move(ids));
      }
    }
    r.predicted = std::move(pred);
  }
  r.message = j.value("message", std::string());
  return r;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string csv_opt(std::optional<double> v) { return v ? fixed(*v, 6) : ""; }

}  // namespace

std::string format_value(std::optional<double> v, int digits) {
  return v ? fixed(*v, digits) : "n/a";
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string report_to_json(const RunReport& report, bool with_timestamp) {
  json records = json::array();
  for (const RunRecord& r : report.records) records.push_back(record_json(r));
  json graphs = json::object();
  for (const auto& [name, gs] : report.graphs) {
    json metrics = json::object();
    for (const auto& [m, gm] : gs.metrics) {
      metrics[m] = {{"mean", opt(gm.mean)},
                    {"order_sd", opt(gm.order_sd)},
                    {"defined", gm.defined}};
    }
    graphs[name] = {{"records", gs.records},
                    {"orders", gs.orders},
                    {"few_orders", gs.few_orders},
                    {"metrics", metrics}};
  }
  json aggregate = json::object();
  for (const auto& [m, s] : report.aggregate) {
    aggregate[m] = {{"macro", opt(s.macro)},
                    {"flat", opt(s.flat)},
                    {"order_sd", opt(s.order_sd)},
                    {"defined", s.defined},
                    {"excluded", s.excluded}};
  }
  json j = {
      {"corpus", report.corpus_id},
      {"strategy", report.strategy},
      {"model", report.model_id},
      {"seed", report.seed},
      {"temperature", report.temperature},
      {"repetitions", report.repetitions},
      {"max_output_tokens", report.max_output_tokens},
      {"template_hash", report.template_hash},
      {"exemplars", report.exemplars},
      {"run_kind", report.run_kind},
      {"toposort_k", report.toposort_k},
      {"complete", report.complete},
      {"abort_reason", report.abort_reason},
      {"records_total", report.records.size()},
      {"records", records},
      {"graphs", graphs},
      {"aggregate", aggregate},
      {"format_violations", report.format_violations},
      {"format_violation_rate", report.format_violation_rate},
  };
  if (with_timestamp) j["generated_at"] = report.generated_at;
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

RunReport report_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.corpus_id = j.at("corpus").get<std::string>();
    r.strategy = j.at("strategy").get<std::string>();
    r.model_id = j.at("model").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.temperature = j.at("temperature").get<double>();
    r.repetitions = j.at("repetitions").get<int>();
    r.max_output_tokens = j.value("max_output_tokens", 0);
    r.template_hash = j.value("template_hash", std::string());
    r.exemplars = j.value("exemplars", std::vector<std::string>());
    r.run_kind = j.value("run_kind", std::string("chronological"));
    r.toposort_k = j.value("toposort_k", std::size_t{0});
    r.complete = j.value("complete", true);
    r.abort_reason = j.value("abort_reason", std::string());
    r.generated_at = j.value("generated_at", std::string());
    for (const json& rec : j.at("records")) r.records.push_back(record_from(rec));
    if (j.contains("graphs")) {
      for (const auto& [name, g] : j["graphs"].items()) {
        GraphSummary& gs = r.graphs[name];
        gs.orders = g.value("orders", std::size_t{1});
        gs.few_orders = g.value("few_orders", false);
      }
    }
    summarize(r);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed run report: ") + e.what());
  }
}

std::string records_csv(const RunReport& report) {
  std::ostringstream out;
  out << "corpus,strategy,model,graph,repetition,order_index,ordering,status,"
         "prompts_sent,rho,tau,precision,recall,f1,adjacency_rejected\n";
  for (const RunRecord& r : report.records) {
    out << csv_field(report.corpus_id) << ',' << csv_field(report.strategy)
        << ',' << csv_field(report.model_id) << ',' << csv_field(r.graph_name)
        << ',' << r.repetition << ',' << r.order_index << ','
        << csv_field(r.ordering) << ',' << cell_status_name(r.status) << ','
        << r.prompts_sent << ',' << csv_opt(r.rho) << ',' << csv_opt(r.tau)
        << ',';
    if (r.prf) {
      out << fixed(r.prf->precision, 6) << ',' << fixed(r.prf->recall, 6) << ','
          << fixed(r.prf->f1, 6);
    } else {
      out << ",,";
    }
    out << ',' << r.adjacency_rejected << '\n';
  }
  return out.str();
}

std::string aggregate_csv(const RunReport& report) {
  std::ostringstream out;
  out << "corpus,strategy,model,metric,macro,flat,order_sd,defined,excluded\n";
  for (const char* m : kMetricNames) {
    const auto it = report.aggregate.find(m);
    if (it == report.aggregate.end()) continue;
    const MetricSummary& s = it->second;
    out << csv_field(report.corpus_id) << ',' << csv_field(report.strategy)
        << ',' << csv_field(report.model_id) << ',' << m << ','
        << csv_opt(s.macro) << ',' << csv_opt(s.flat) << ','
        << csv_opt(s.order_sd) << ',' << s.defined << ',' << s.excluded << '\n';
  }
  return out.str();
}

std::string summary_table(const RunReport& report) {
  std::ostringstream out;
  char line[160];
  out << report.corpus_id << " / " << report.strategy << " / "
      << report.model_id << " (seed " << report.seed << ", "
      << report.records.size() << " records";
  if (report.run_kind == "toposort") out << ", toposort k=" << report.toposort_k;
  out << ")\n";
  std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s %8s %8s\n", "metric",
                "macro", "flat", "order_sd", "defined", "excluded");
  out << line;
  for (const char* m : kMetricNames) {
    const auto it = report.aggregate.find(m);
    if (it == report.aggregate.end()) continue;
    const MetricSummary& s = it->second;
    std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s %8zu %8zu\n", m,
                  format_value(s.macro).c_str(), format_value(s.flat).c_str(),
                  format_value(s.order_sd).c_str(), s.defined, s.excluded);
    out << line;
  }
  out << "format violations: " << report.format_violations << " ("
      << fixed(report.format_violation_rate, 4) << ")\n";
  if (!report.complete) out << "INCOMPLETE: " << report.abort_reason << "\n";
  return out.str();
}

}  // namespace quadarg
