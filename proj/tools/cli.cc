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


#include "cli.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadarg/backend.h"
#include "quadarg/corpus.h"
#include "quadarg/dialogue.h"
#include "quadarg/error.h"
#include "quadarg/graph.h"
#include "quadarg/harness.h"
#include "quadarg/metrics.h"
#include "quadarg/prompt.h"
#include "quadarg/quad.h"
#include "quadarg/report.h"

namespace quadarg::cli {
namespace {

namespace fs = std::filesystem;

// Bad invocation: exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string precise(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<Corpus> load_corpora(const std::vector<std::string>& paths) {
  std::vector<Corpus> corpora;
  for (const std::string& p : paths) {
    if (!fs::is_regular_file(p)) throw UsageError("no such corpus file: " + p);
    corpora.push_back(load_corpus(p));
  }
  return corpora;
}

// Collects output files and refuses to clobber existing ones unless forced.
class OutputPlan {
 public:
  OutputPlan(fs::path dir, bool force) : dir_(std::move(dir)), force_(force) {}

  fs::path add(const std::string& name, std::string content) {
    const fs::path path = dir_ / name;
    files_.emplace_back(path, std::move(content));
    return path;
  }

  // Checks every target before writing any of them.
  void commit() {
    if (!force_) {
      for (const auto& [path, content] : files_) {
        if (fs::exists(path)) {
          throw UsageError(path.string() +
                           " already exists; pass --force to overwrite");
        }
      }
    }
    write_all();
  }

 private:
  void write_all() {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
      throw Error(ErrorCode::kIoError,
                  "cannot create " + dir_.string() + ": " + ec.message());
    }
    for (const auto& [path, content] : files_) {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out << content;
      if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
    }
  }

  fs::path dir_;
  bool force_;
  std::vector<std::pair<fs::path, std::string>> files_;
};

void check_single_file(const fs::path& path, bool force) {
  if (!force && fs::exists(path)) {
    throw UsageError(path.string() + " already exists; pass --force to overwrite");
  }
}

void write_single_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

// ---------------------------------------------------------------- quad

struct QuadArgs {
  std::string input;
  std::string out;
  bool force = false;
};

int cmd_quad(const QuadArgs& a, std::ostream& out) {
  if (!fs::is_regular_file(a.input)) {
    throw UsageError("no such graph or corpus file: " + a.input);
  }
  const Corpus corpus = load_corpus(a.input);
  std::ostringstream csv;
  csv << "graph,argument,base_weight,score,rank\n";
  nlohmann::json json = nlohmann::json::object();
  for (const DebateGraph& g : corpus.graphs) {
    const ScoreMap scores = acceptability(g);
    const Ranking ranking = gold_ranking(scores);
    const RankVector ranks = fractional_ranks(ranking);
    char line[160];
    out << g.name() << "\n";
    std::snprintf(line, sizeof(line), "  %-10s %8s %8s %6s\n", "argument",
                  "theta", "sigma", "rank");
    out << line;
    for (ArgumentId id : ranking.ordered_ids) {
      std::snprintf(line, sizeof(line), "  %-10lld %8s %8s %6s\n",
                    static_cast<long long>(id.value),
                    fixed(g.base_weight(id), 4).c_str(),
                    fixed(scores.at(id), 4).c_str(),
                    fixed(ranks.at(id), 1).c_str());
      out << line;
      csv << csv_field(g.name()) << ',' << id.value << ','
          << precise(g.base_weight(id)) << ',' << precise(scores.at(id))
          << ',' << fixed(ranks.at(id), 1) << '\n';
    }
    nlohmann::json score_obj = nlohmann::json::object();
    for (const auto& [id, sc] : scores.scores) score_obj[to_string(id)] = sc;
    nlohmann::json ties = nlohmann::json::array();
    for (const auto& group : ranking.tie_groups) {
      nlohmann::json ids = nlohmann::json::array();
      for (ArgumentId id : group) ids.push_back(id.value);
      ties.push_back(ids);
    }
    nlohmann::json order = nlohmann::json::array();
    for (ArgumentId id : ranking.ordered_ids) order.push_back(id.value);
    json[g.name()] = {{"scores", score_obj}, {"ranking", order},
                      {"tie_groups", ties}};
  }
  if (!a.out.empty()) {
    OutputPlan plan(a.out, a.force);
    plan.add("scores.json", json.dump(2) + "\n");
    plan.add("scores.csv", csv.str());
    plan.commit();
  }
  return kExitOk;
}

// ---------------------------------------------------------------- flatten

struct FlattenArgs {
  std::vector<std::string> corpora;
  std::string ordering = "chronological";
  std::size_t toposort = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool force = false;
};

struct OrderingSpec {
  std::size_t k = 0;  // 0: chronological
  std::uint64_t seed = 0;
};

OrderingSpec parse_ordering(const FlattenArgs& a) {
  OrderingSpec spec;
  if (a.ordering == "chronological") {
    if (a.toposort > 0) {
      if (!a.seed) throw UsageError("--toposort needs --seed");
      spec.k = a.toposort;
      spec.seed = *a.seed;
    }
    return spec;
  }
  // toposort:k:seed
  const std::string prefix = "toposort:";
  if (a.ordering.rfind(prefix, 0) != 0) {
    throw UsageError("--ordering must be 'chronological' or 'toposort:k:seed'");
  }
  const std::string rest = a.ordering.substr(prefix.size());
  const auto colon = rest.find(':');
  if (colon == std::string::npos) {
    throw UsageError("--ordering toposort needs an explicit seed: toposort:k:seed");
  }
  try {
    std::size_t used = 0;
    spec.k = std::stoul(rest.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("k");
    const std::string seed_text = rest.substr(colon + 1);
    spec.seed = std::stoull(seed_text, &used);
    if (used != seed_text.size()) throw std::invalid_argument("seed");
  } catch (const std::logic_error&) {
    throw UsageError("cannot read --ordering '" + a.ordering + "'");
  }
  if (spec.k == 0) throw UsageError("toposort needs k >= 1");
  return spec;
}

int cmd_flatten(const FlattenArgs& a, std::ostream& out, std::ostream& err) {
  const OrderingSpec spec = parse_ordering(a);
  const std::vector<Corpus> corpora = load_corpora(a.corpora);
  OutputPlan plan(a.out, a.force);
  std::size_t files = 0;
  for (const Corpus& c : corpora) {
    for (const DebateGraph& g : c.graphs) {
      if (spec.k == 0) {
        plan.add(g.name() + ".txt", flatten_chronological(g).render());
        ++files;
        continue;
      }
      const OrderSample sample = sample_topological_orders(g, spec.k, spec.seed);
      if (sample.not_enough_orders) {
        err << "warning: " << g.name() << " admits only "
            << sample.orders.size() << " order(s); wrote all of them\n";
      }
      for (std::size_t i = 0; i < sample.orders.size(); ++i) {
        const Dialogue d = flatten(g, sample.orders[i],
                                   OrderingLabel::toposort(spec.seed, i));
        plan.add(g.name() + ".toposort" + std::to_string(i + 1) + ".txt",
                 d.render());
        ++files;
      }
    }
  }
  plan.commit();
  out << "wrote " << files << " dialogue file(s) to " << a.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::vector<std::string> corpora;
  std::string exemplars = "auto";
  std::string strategy = "all";
  std::string backend_config;
  std::optional<std::uint64_t> seed;
  int reps = 3;
  double temperature = 0.7;
  int max_tokens = 4096;
  int timeout_s = 120;
  int retries = 4;
  std::string out;
  bool force = false;
  std::size_t toposort = 0;
  std::string replay;
  std::string record;
  std::string templates;
  std::size_t parallel = 1;
};

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  return names;
}

// Exemplar graphs by name, looked up across all corpora.
std::vector<DebateGraph> pick_exemplars(const std::vector<Corpus>& corpora,
                                        const std::string& spec) {
  std::vector<std::string> names;
  if (spec == "none") return {};
  if (spec == "auto") {
    const Corpus* largest = &corpora.front();
    for (const Corpus& c : corpora) {
      if (c.graphs.size() > largest->graphs.size()) largest = &c;
    }
    names = select_exemplars(largest->graphs);
  } else {
    names = split_names(spec);
  }
  std::vector<DebateGraph> picked;
  std::set<std::string> seen;
  for (const std::string& n : names) {
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::kDuplicateExemplar, "exemplar named twice: " + n);
    }
    const DebateGraph* found = nullptr;
    for (const Corpus& c : corpora) {
      for (const DebateGraph& g : c.graphs) {
        if (g.name() == n) found = &g;
      }
    }
    if (found == nullptr) {
      throw Error(ErrorCode::kUnknownGraphName, "no graph named '" + n + "'");
    }
    picked.push_back(*found);
  }
  return picked;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.seed) throw UsageError("evaluate needs --seed");
  if (a.backend_config.empty() && a.replay.empty()) {
    throw UsageError("evaluate needs --backend-config or --replay");
  }
  if (!a.replay.empty() && !fs::is_regular_file(a.replay)) {
    throw UsageError("no such replay archive: " + a.replay);
  }
  if (!a.backend_config.empty() && !fs::is_regular_file(a.backend_config)) {
    throw UsageError("no such backend config: " + a.backend_config);
  }
  if (!a.templates.empty() && !fs::is_directory(a.templates)) {
    throw UsageError("no such template directory: " + a.templates);
  }
  std::vector<PromptStrategy> strategies;
  if (a.strategy == "all") {
    strategies.assign(std::begin(kAllStrategies), std::end(kAllStrategies));
  } else {
    for (const std::string& s : split_names(a.strategy)) {
      try {
        strategies.push_back(parse_strategy(s));
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }
  }

  GenerationParams params;
  params.temperature = a.temperature;
  params.repetitions = a.reps;
  params.max_output_tokens = a.max_tokens;
  params.request_timeout = std::chrono::seconds(a.timeout_s);
  params.retry_limit = a.retries;
  try {
    params.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const std::vector<Corpus> corpora = load_corpora(a.corpora);
  const std::vector<DebateGraph> exemplars = pick_exemplars(corpora, a.exemplars);
  for (PromptStrategy s : strategies) {
    if (exemplars.size() < required_exemplars(s)) {
      throw Error(ErrorCode::kExemplarCountMismatch,
                  std::string(strategy_name(s)) + " needs " +
                      std::to_string(required_exemplars(s)) +
                      " exemplar(s), " + std::to_string(exemplars.size()) +
                      " configured");
    }
  }
  std::set<std::string> exemplar_names;
  for (const DebateGraph& g : exemplars) exemplar_names.insert(g.name());

  std::vector<DebateGraph> all_graphs;
  for (const Corpus& c : corpora) {
    all_graphs.insert(all_graphs.end(), c.graphs.begin(), c.graphs.end());
  }
  HarnessOptions options;
  options.parallelism = std::max<std::size_t>(1, a.parallel);
  if (!a.templates.empty()) options.templates = TemplateSet::load(a.templates);

  std::shared_ptr<ChatBackend> backend;
  if (!a.replay.empty()) {
    backend = std::make_shared<ReplayBackend>(a.replay);
  } else {
    backend = make_backend(read_file(a.backend_config), params, all_graphs);
  }
  if (!a.record.empty()) {
    backend = std::make_shared<RecordingBackend>(backend, a.record);
  }

  // Every split and prompt is checked before the first request.
  std::vector<std::pair<std::string, CorpusSplit>> splits;
  for (const Corpus& c : corpora) {
    CorpusSplit split;
    split.exemplars = exemplars;
    for (const DebateGraph& g : c.graphs) {
      if (!exemplar_names.contains(g.name())) split.evaluation.push_back(g);
    }
    if (split.evaluation.empty()) {
      err << "warning: corpus " << c.id << " has no evaluation graphs\n";
      continue;
    }
    splits.emplace_back(c.id, std::move(split));
  }
  for (const auto& [id, split] : splits) {
    for (PromptStrategy s : strategies) {
      const std::vector<Exemplar> ex = [&] {
        std::vector<Exemplar> v;
        for (std::size_t i = 0; i < required_exemplars(s); ++i) {
          v.push_back(make_exemplar(split.exemplars[i]));
        }
        return v;
      }();
      build_prompt(s, flatten_chronological(split.evaluation.front()), ex,
                   options.templates);
    }
  }

  OutputPlan plan(a.out, a.force);
  const std::string suffix = a.toposort > 0 ? ".toposort" : "";
  for (const auto& [id, split] : splits) {
    for (PromptStrategy s : strategies) {
      const std::string stem = id + "." + std::string(strategy_name(s)) + suffix;
      if (!a.force) {
        for (const char* ext : {".json", ".records.csv", ".aggregate.csv"}) {
          check_single_file(fs::path(a.out) / (stem + ext), false);
        }
      }
    }
  }
  if (!a.force) check_single_file(fs::path(a.out) / ("summary" + suffix + ".csv"), false);

  bool all_complete = true;
  std::string summary = "corpus,strategy,model,metric,macro,flat,order_sd,defined,excluded\n";
  for (const auto& [id, split] : splits) {
    for (PromptStrategy s : strategies) {
      RunReport report =
          a.toposort > 0
              ? run_toposort_robustness(id, split, s, *backend, params, *a.seed,
                                        a.toposort, options)
              : run_evaluation(id, split, s, *backend, params, *a.seed, options);
      report.generated_at = utc_now();
      const std::string stem = id + "." + std::string(strategy_name(s)) + suffix;
      plan.add(stem + ".json", report_to_json(report));
      plan.add(stem + ".records.csv", records_csv(report));
      const std::string agg = aggregate_csv(report);
      plan.add(stem + ".aggregate.csv", agg);
      summary += agg.substr(agg.find('\n') + 1);
      out << summary_table(report) << "\n";
      if (!report.complete) {
        all_complete = false;
        err << "error: run " << stem << " stopped early: " << report.abort_reason
            << "\n";
        break;
      }
    }
    if (!all_complete) break;
  }
  plan.add("summary" + suffix + ".csv", summary);
  plan.commit();
  return all_complete ? kExitOk : kExitDomainError;
}

// ---------------------------------------------------------------- bias

struct BiasArgs {
  std::string report;
  std::vector<std::string> corpora;
  std::string key = "length";
  std::string out;
  bool force = false;
};

int cmd_bias(const BiasArgs& a, std::ostream& out) {
  if (!fs::is_regular_file(a.report)) {
    throw UsageError("no such report: " + a.report);
  }
  QuartileKey key;
  if (a.key == "length") {
    key = QuartileKey::kLengthTokens;
  } else if (a.key == "position") {
    key = QuartileKey::kPosition;
  } else {
    throw UsageError("--key must be 'length' or 'position'");
  }
  const std::vector<Corpus> corpora = load_corpora(a.corpora);
  std::vector<DebateGraph> graphs;
  for (const Corpus& c : corpora) {
    graphs.insert(graphs.end(), c.graphs.begin(), c.graphs.end());
  }
  const RunReport report = report_from_json(read_file(a.report));
  if (!a.out.empty()) check_single_file(a.out, a.force);
  const std::vector<QuartileRow> rows = quartile_bias(report, graphs, key);

  std::string csv = "quartile,arguments,rho,tau\n";
  char line[128];
  out << report.corpus_id << " / " << report.strategy << " / "
      << report.model_id << " by " << quartile_key_name(key) << "\n";
  std::snprintf(line, sizeof(line), "%-8s %10s %8s %8s\n", "quartile",
                "arguments", "rho", "tau");
  out << line;
  for (const QuartileRow& r : rows) {
    std::snprintf(line, sizeof(line), "%-8s %10zu %8s %8s\n", r.label.c_str(),
                  r.arguments, format_value(r.rho).c_str(),
                  format_value(r.tau).c_str());
    out << line;
    csv += r.label + "," + std::to_string(r.arguments) + "," +
           format_value(r.rho, 6) + "," + format_value(r.tau, 6) + "\n";
  }
  if (!a.out.empty()) write_single_file(a.out, csv);
  return kExitOk;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
  std::vector<std::string> corpora;
  std::string exemplars = "none";
  std::string out;
  bool force = false;
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  const std::vector<Corpus> corpora = load_corpora(a.corpora);
  const std::vector<DebateGraph> exemplars = pick_exemplars(corpora, a.exemplars);
  std::set<std::string> excluded;
  for (const DebateGraph& g : exemplars) excluded.insert(g.name());
  if (!a.out.empty()) check_single_file(a.out, a.force);

  std::string csv =
      "corpus,graphs,nodes,edges,support,attack,mean_in_degree,sd_in_degree,"
      "mean_out_degree,sd_out_degree,max_in_degree,max_out_degree,"
      "graphs_with_fan_in,pairs\n";
  std::uint64_t total_pairs = 0;
  for (const Corpus& c : corpora) {
    std::vector<DebateGraph> graphs;
    for (const DebateGraph& g : c.graphs) {
      if (!excluded.contains(g.name())) graphs.push_back(g);
    }
    const CorpusStats s = corpus_stats(graphs);
    total_pairs += s.pair_count;
    out << c.id << "\n"
        << "  graphs " << s.graph_count << ", nodes " << s.node_count
        << ", edges " << s.edge_count << " (" << s.support_edges
        << " support / " << s.attack_edges << " attack)\n"
        << "  in-degree mean " << fixed(s.mean_in_degree, 4) << " sd "
        << fixed(s.sd_in_degree, 4) << " max " << s.max_in_degree << "\n"
        << "  out-degree mean " << fixed(s.mean_out_degree, 4) << " sd "
        << fixed(s.sd_out_degree, 4) << " max " << s.max_out_degree << "\n"
        << "  graphs with fan-in " << s.graphs_with_fan_in << ", pairs "
        << s.pair_count << "\n";
    if (s.graph_count > 1 && s.graph_count <= 40) {
      out << "  nodes per graph:";
      for (const DebateGraph& g : graphs) {
        out << " " << g.name() << "=" << g.size();
      }
      out << "\n";
    }
    csv += csv_field(c.id) + "," + std::to_string(s.graph_count) + "," +
           std::to_string(s.node_count) + "," + std::to_string(s.edge_count) +
           "," + std::to_string(s.support_edges) + "," +
           std::to_string(s.attack_edges) + "," + fixed(s.mean_in_degree, 6) +
           "," + fixed(s.sd_in_degree, 6) + "," + fixed(s.mean_out_degree, 6) +
           "," + fixed(s.sd_out_degree, 6) + "," +
           std::to_string(s.max_in_degree) + "," +
           std::to_string(s.max_out_degree) + "," +
           std::to_string(s.graphs_with_fan_in) + "," +
           std::to_string(s.pair_count) + "\n";
  }
  if (!exemplars.empty()) {
    out << "excluded exemplars:";
    for (const DebateGraph& g : exemplars) out << " " << g.name();
    out << "\n";
  }
  out << "total pairs " << total_pairs << "\n";
  if (!a.out.empty()) write_single_file(a.out, csv);
  return kExitOk;
}

// ---------------------------------------------------------------- convert

struct ConvertArgs {
  std::string input;
  std::string out;
  bool force = false;
};

int cmd_convert(const ConvertArgs& a, std::ostream& out) {
  if (!fs::is_regular_file(a.input)) {
    throw UsageError("no such input file: " + a.input);
  }
  const Corpus corpus = load_corpus(a.input);
  check_single_file(a.out, a.force);
  write_single_file(a.out, write_corpus_json(corpus));
  out << "wrote " << corpus.graphs.size() << " graph(s) to " << a.out << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Gradual-semantics argument ranking and LLM evaluation"};
  app.name("quadarg");
  app.require_subcommand(1);

  QuadArgs quad;
  auto* quad_cmd = app.add_subcommand("quad", "Compute QuAD strengths and gold rankings");
  quad_cmd->add_option("input", quad.input, "Graph or corpus file (JSON or NoDE XML)")
      ->required();
  quad_cmd->add_option("--out", quad.out, "Directory for scores.json and scores.csv");
  quad_cmd->add_flag("--force", quad.force, "Overwrite existing files");

  FlattenArgs flat;
  auto* flat_cmd = app.add_subcommand("flatten", "Write debates as plain dialogues");
  flat_cmd->add_option("--corpus", flat.corpora, "Corpus file (repeatable)")->required();
  flat_cmd->add_option("--ordering", flat.ordering,
                       "chronological or toposort:k:seed");
  flat_cmd->add_option("--toposort", flat.toposort, "Number of sampled orders");
  flat_cmd->add_option("--seed", flat.seed, "Seed for sampled orders");
  flat_cmd->add_option("--out", flat.out, "Output directory")->required();
  flat_cmd->add_flag("--force", flat.force, "Overwrite existing files");

  EvaluateArgs ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "Run the ranking protocol against a model");
  ev_cmd->add_option("--corpus", ev.corpora, "Corpus file (repeatable)")->required();
  ev_cmd->add_option("--exemplars", ev.exemplars,
                     "auto, none, or comma-separated graph names");
  ev_cmd->add_option("--strategy", ev.strategy,
                     "Strategy name, comma-separated list, or all");
  ev_cmd->add_option("--backend-config", ev.backend_config, "Backend JSON config");
  ev_cmd->add_option("--seed", ev.seed, "Run seed (required)");
  ev_cmd->add_option("--reps", ev.reps, "Repetitions per graph");
  ev_cmd->add_option("--temperature", ev.temperature, "Sampling temperature");
  ev_cmd->add_option("--max-tokens", ev.max_tokens, "Output token limit");
  ev_cmd->add_option("--timeout", ev.timeout_s, "Request timeout in seconds");
  ev_cmd->add_option("--retries", ev.retries, "Retries on transport errors");
  ev_cmd->add_option("--out", ev.out, "Output directory")->required();
  ev_cmd->add_flag("--force", ev.force, "Overwrite existing files");
  ev_cmd->add_option("--toposort", ev.toposort,
                     "Evaluate each graph in k sampled orders");
  ev_cmd->add_option("--replay", ev.replay, "Answer from a replay archive");
  ev_cmd->add_option("--record", ev.record, "Append exchanges to a replay archive");
  ev_cmd->add_option("--templates", ev.templates, "Directory of prompt templates");
  ev_cmd->add_option("--parallel", ev.parallel, "Concurrent requests");

  BiasArgs bias;
  auto* bias_cmd = app.add_subcommand("bias", "Correlations within length or position quartiles");
  bias_cmd->add_option("--report", bias.report, "Run report JSON")->required();
  bias_cmd->add_option("--corpus", bias.corpora, "Corpus file (repeatable)")->required();
  bias_cmd->add_option("--key", bias.key, "length or position");
  bias_cmd->add_option("--out", bias.out, "CSV output file");
  bias_cmd->add_flag("--force", bias.force, "Overwrite an existing file");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("--corpus", stats.corpora, "Corpus file (repeatable)")->required();
  stats_cmd->add_option("--exemplars", stats.exemplars,
                        "Leave out exemplars: none, auto, or names");
  stats_cmd->add_option("--out", stats.out, "CSV output file");
  stats_cmd->add_flag("--force", stats.force, "Overwrite an existing file");

  ConvertArgs conv;
  auto* conv_cmd = app.add_subcommand("convert", "Rewrite a corpus as canonical JSON");
  conv_cmd->add_option("input", conv.input, "NoDE XML or JSON file")->required();
  conv_cmd->add_option("--out", conv.out, "Output JSON file")->required();
  conv_cmd->add_flag("--force", conv.force, "Overwrite an existing file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (*quad_cmd) return cmd_quad(quad, out);
    if (*flat_cmd) return cmd_flatten(flat, out, err);
    if (*ev_cmd) return cmd_evaluate(ev, out, err);
    if (*bias_cmd) return cmd_bias(bias, out);
    if (*stats_cmd) return cmd_stats(stats, out);
    if (*conv_cmd) return cmd_convert(conv, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitUsageError;
}

}  // namespace quadarg::cli
