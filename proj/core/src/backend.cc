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


#include "quadarg/backend.h"

#include <httplib.h>

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <random>
#include <set>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "quadarg/corpus.h"
#include "quadarg/error.h"
#include "quadarg/hashing.h"
#include "quadarg/metrics.h"
#include "quadarg/prompt.h"
#include "quadarg/quad.h"

namespace quadarg {
namespace {

using nlohmann::json;

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": " + e.what());
  }
}

std::string string_field(const json& j, const char* key, std::string fallback,
                         bool required = false) {
  if (!j.contains(key)) {
    if (required) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("backend config: missing \"") + key + "\"");
    }
    return fallback;
  }
  if (!j[key].is_string()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("backend config: \"") + key + "\" must be a string");
  }
  return j[key].get<std::string>();
}

void set_pointer(json& body, const std::string& path, json value) {
  if (path.empty()) return;
  try {
    body[json::json_pointer(path)] = std::move(value);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "backend config: bad field path '" + path + "': " + e.what());
  }
}

std::optional<std::int64_t> usage_at(const json& body, const std::string& path) {
  if (path.empty()) return std::nullopt;
  const json::json_pointer ptr(path);
  if (!body.contains(ptr) || !body[ptr].is_number_integer()) {
    return std::nullopt;
  }
  return body[ptr].get<std::int64_t>();
}

std::uint64_t seed_from_hex(const std::string& hex) {
  return std::stoull(hex.substr(0, 16), nullptr, 16);
}

// Worst first; tie groups stay together and keep ascending ids.
Ranking reversed(const Ranking& ranking) {
  std::map<ArgumentId, std::size_t> group_of;
  for (std::size_t g = 0; g < ranking.tie_groups.size(); ++g) {
    for (ArgumentId id : ranking.tie_groups[g]) group_of[id] = g;
  }
  std::vector<std::vector<ArgumentId>> blocks;
  for (std::size_t i = 0; i < ranking.ordered_ids.size();) {
    const ArgumentId id = ranking.ordered_ids[i];
    const auto g = group_of.find(id);
    if (g == group_of.end()) {
      blocks.push_back({id});
      ++i;
    } else {
      blocks.push_back(ranking.tie_groups[g->second]);
      i += ranking.tie_groups[g->second].size();
    }
  }
  Ranking out;
  for (auto b = blocks.rbegin(); b != blocks.rend(); ++b) {
    out.ordered_ids.insert(out.ordered_ids.end(), b->begin(), b->end());
    if (b->size() >= 2) out.tie_groups.push_back(*b);
  }
  return out;
}

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void GenerationParams::validate() const {
  if (!(temperature >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be >= 0");
  }
  if (repetitions < 1) {
    throw Error(ErrorCode::kInvalidArgument, "repetitions must be >= 1");
  }
  if (max_output_tokens < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_output_tokens must be >= 1");
  }
  if (request_timeout.count() <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "request timeout must be > 0");
  }
  if (retry_limit < 0) {
    throw Error(ErrorCode::kInvalidArgument, "retry_limit must be >= 0");
  }
}

std::string request_hash(std::string_view model,
                         const CompletionRequest& request) {
  const json j = {
      {"model", model},
      {"prompt", request.prompt},
      {"temperature", request.temperature},
      {"max_output_tokens", request.max_output_tokens},
      {"sample_index", request.sample_index},
      {"seed", request.seed},
  };
  return sha256_hex(j.dump(-1, ' ', false, json::error_handler_t::replace));
}

std::chrono::milliseconds backoff_for_attempt(int attempt,
                                              const GenerationParams& params) {
  auto delay = params.initial_backoff;
  for (int i = 0; i < attempt && delay < params.max_backoff; ++i) delay *= 2;
  return std::min(delay, params.max_backoff);
}

bool is_retryable(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  return err != nullptr && (err->code() == ErrorCode::kTransportError ||
                            err->code() == ErrorCode::kRateLimited);
}

Sleeper real_sleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

HttpAdapterConfig HttpAdapterConfig::from_json(std::string_view text) {
  const json j = parse_json(text, "backend config");
  if (!j.is_object()) {
    throw Error(ErrorCode::kInvalidArgument,
                "backend config must be a JSON object");
  }
  HttpAdapterConfig c;
  c.endpoint = string_field(j, "endpoint", "", true);
  c.model = string_field(j, "model", "", true);
  c.auth_env = string_field(j, "auth_env", c.auth_env);
  c.auth_header = string_field(j, "auth_header", c.auth_header);
  c.auth_prefix = string_field(j, "auth_prefix", c.auth_prefix);
  c.prompt_path = string_field(j, "prompt_path", c.prompt_path);
  c.temperature_path = string_field(j, "temperature_path", c.temperature_path);
  c.max_tokens_path = string_field(j, "max_tokens_path", c.max_tokens_path);
  c.seed_path = string_field(j, "seed_path", c.seed_path);
  c.response_text_path =
      string_field(j, "response_text_path", c.response_text_path);
  c.prompt_tokens_path =
      string_field(j, "prompt_tokens_path", c.prompt_tokens_path);
  c.completion_tokens_path =
      string_field(j, "completion_tokens_path", c.completion_tokens_path);
  if (j.contains("request_template")) {
    if (!j["request_template"].is_object()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "backend config: \"request_template\" must be an object");
    }
    c.request_template = j["request_template"].dump();
  } else {
    c.request_template =
        json{{"model", c.model},
             {"messages", json::array({{{"role", "user"}, {"content", ""}}})}}
            .dump();
  }
  if (j.contains("extra_headers")) {
    if (!j["extra_headers"].is_object()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "backend config: \"extra_headers\" must be an object");
    }
    for (const auto& [k, v] : j["extra_headers"].items()) {
      if (!v.is_string()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "backend config: header values must be strings");
      }
      c.extra_headers[k] = v.get<std::string>();
    }
  }
  if (j.contains("verify_tls")) c.verify_tls = j["verify_tls"].get<bool>();
  const auto scheme = c.endpoint.find("://");
  if (scheme == std::string::npos ||
      (c.endpoint.compare(0, scheme, "http") != 0 &&
       c.endpoint.compare(0, scheme, "https") != 0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "backend config: endpoint must start with http:// or https://");
  }
  return c;
}

HttpChatBackend::HttpChatBackend(HttpAdapterConfig config,
                                 GenerationParams params, Sleeper sleeper)
    : config_(std::move(config)),
      params_(params),
      sleeper_(std::move(sleeper)) {
  if (!config_.auth_env.empty()) {
    const char* value = std::getenv(config_.auth_env.c_str());
    if (value == nullptr || *value == '\0') {
      throw Error(ErrorCode::kAuthMissing,
                  "environment variable " + config_.auth_env + " is not set");
    }
    credential_ = value;
  }
  const auto scheme = config_.endpoint.find("://");
  const auto slash = config_.endpoint.find('/', scheme + 3);
  base_url_ = config_.endpoint.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : config_.endpoint.substr(slash);
}

CompletionResult HttpChatBackend::complete(const CompletionRequest& request) {
  int attempts = 0;
  const auto start = std::chrono::steady_clock::now();
  CompletionResult result = with_retries(
      [&] { return attempt(request); }, params_, sleeper_, &attempts);
  result.attempts = attempts;
  result.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

CompletionResult HttpChatBackend::attempt(
    const CompletionRequest& request) const {
  json body = parse_json(config_.request_template, "request_template");
  set_pointer(body, config_.prompt_path, request.prompt);
  set_pointer(body, config_.temperature_path, request.temperature);
  set_pointer(body, config_.max_tokens_path, request.max_output_tokens);
  set_pointer(body, config_.seed_path, request.seed);

  httplib::Client client(base_url_);
  const auto timeout = params_.request_timeout;
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.enable_server_certificate_verification(config_.verify_tls);
  httplib::Headers headers;
  for (const auto& [k, v] : config_.extra_headers) headers.emplace(k, v);
  if (!credential_.empty()) {
    headers.emplace(config_.auth_header, config_.auth_prefix + credential_);
  }

  const auto start = std::chrono::steady_clock::now();
  const auto res = client.Post(path_, headers, body.dump(), "application/json");
  const auto elapsed = std::chrono::steady_clock::now() - start;
  if (!res) {
    const httplib::Error err = res.error();
    if (err == httplib::Error::ConnectionTimeout || elapsed >= timeout) {
      throw Error(ErrorCode::kTimeoutExceeded,
                  "no response from " + config_.endpoint + " within " +
                      std::to_string(timeout.count()) + " ms");
    }
    throw Error(ErrorCode::kTransportError,
                config_.endpoint + ": " + httplib::to_string(err));
  }
  const int status = res->status;
  if (status == 429) {
    throw Error(ErrorCode::kRateLimited, config_.endpoint + ": HTTP 429");
  }
  if (status == 401 || status == 403) {
    throw Error(ErrorCode::kAuthMissing,
                config_.endpoint + ": HTTP " + std::to_string(status) +
                    " (credential rejected)");
  }
  if (status >= 500) {
    throw Error(ErrorCode::kTransportError,
                config_.endpoint + ": HTTP " + std::to_string(status));
  }
  if (status < 200 || status >= 300) {
    throw Error(ErrorCode::kInvalidArgument,
                config_.endpoint + ": HTTP " + std::to_string(status) + ": " +
                    res->body.substr(0, 200));
  }
  json reply;
  try {
    reply = json::parse(res->body);
  } catch (const json::exception&) {
    throw Error(ErrorCode::kTransportError,
                config_.endpoint + ": response body is not JSON");
  }
  const json::json_pointer text_ptr(config_.response_text_path);
  if (!reply.contains(text_ptr) || !reply[text_ptr].is_string()) {
    throw Error(ErrorCode::kTransportError,
                config_.endpoint + ": no text at " + config_.response_text_path);
  }
  CompletionResult result;
  result.text = reply[text_ptr].get<std::string>();
  result.usage.prompt_tokens = usage_at(reply, config_.prompt_tokens_path);
  result.usage.completion_tokens =
      usage_at(reply, config_.completion_tokens_path);
  return result;
}

ReplayBackend::ReplayBackend(const std::filesystem::path& archive,
                             std::optional<std::string> model) {
  const std::string text = read_file(archive);
  std::set<std::string> models;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string_view line(text.data() + start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json entry;
    try {
      entry = json::parse(line);
      responses_[entry.at("request_hash").get<std::string>()] =
          entry.at("response_text").get<std::string>();
      models.insert(entry.at("model").get<std::string>());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument,
                  archive.string() + ":" + std::to_string(line_no) +
                      ": bad replay entry: " + e.what());
    }
  }
  if (model) {
    model_ = *model;
  } else if (models.size() == 1) {
    model_ = *models.begin();
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                archive.string() + ": archive holds " +
                    std::to_string(models.size()) +
                    " models; name the one to replay");
  }
}

CompletionResult ReplayBackend::complete(const CompletionRequest& request) {
  const std::string hash = request_hash(model_, request);
  const auto it = responses_.find(hash);
  if (it == responses_.end()) {
    throw Error(ErrorCode::kReplayMiss,
                "no archived response for " + request.graph_name +
                    " sample " + std::to_string(request.sample_index) +
                    " (request " + hash.substr(0, 12) + ")");
  }
  CompletionResult result;
  result.text = it->second;
  return result;
}

RecordingBackend::RecordingBackend(std::shared_ptr<ChatBackend> inner,
                                   const std::filesystem::path& archive)
    : inner_(std::move(inner)), out_(archive, std::ios::app | std::ios::binary) {
  if (!out_) {
    throw Error(ErrorCode::kIoError,
                "cannot open replay archive " + archive.string());
  }
}

CompletionResult RecordingBackend::complete(const CompletionRequest& request) {
  CompletionResult result = inner_->complete(request);
  const std::string model = inner_->model_id();
  const json entry = {
      {"request_hash", request_hash(model, request)},
      {"model", model},
      {"prompt", request.prompt},
      {"params",
       {{"temperature", request.temperature},
        {"max_output_tokens", request.max_output_tokens},
        {"sample_index", request.sample_index},
        {"seed", request.seed}}},
      {"response_text", result.text},
      {"timestamp", utc_timestamp()},
  };
  const std::string line =
      entry.dump(-1, ' ', false, json::error_handler_t::replace);
  std::lock_guard<std::mutex> lock(mu_);
  out_ << line << '\n';
  out_.flush();
  if (!out_) throw Error(ErrorCode::kIoError, "write to replay archive failed");
  return result;
}

MockBackend::MockBackend(Mode mode, std::span<const DebateGraph> graphs,
                         std::uint64_t seed, double malformed_rate)
    : mode_(mode), seed_(seed), malformed_rate_(malformed_rate) {
  for (const DebateGraph& g : graphs) graphs_.emplace(g.name(), &g);
}

std::string MockBackend::model_id() const {
  switch (mode_) {
    case Mode::kGoldEcho:
      return "mock-gold-echo";
    case Mode::kReversal:
      return "mock-reversal";
    case Mode::kNoisy:
      return "mock-noisy";
  }
  return "mock";
}

MockBackend::Mode MockBackend::parse_mode(std::string_view name) {
  if (name == "gold-echo") return Mode::kGoldEcho;
  if (name == "reversal") return Mode::kReversal;
  if (name == "noisy") return Mode::kNoisy;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown mock mode '" + std::string(name) + "'");
}

CompletionResult MockBackend::complete(const CompletionRequest& request) {
  const auto it = graphs_.find(request.graph_name);
  if (it == graphs_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "mock backend has no graph named '" + request.graph_name + "'");
  }
  const DebateGraph& graph = *it->second;
  Ranking ranking = gold_ranking(acceptability(graph));
  EdgeSet edges = edge_set(graph);
  std::mt19937_64 rng(seed_from_hex(sha256_hex(
      request_hash(model_id(), request) + ":" + std::to_string(seed_))));

  CompletionResult result;
  if (mode_ == Mode::kNoisy && unit(rng) < malformed_rate_) {
    result.text =
        "These arguments are hard to separate, so I will not commit to an "
        "order.\n";
    return result;
  }
  if (mode_ == Mode::kReversal) {
    ranking = reversed(ranking);
    EdgeSet flipped;
    for (Edge e : edges) {
      e.kind = e.kind == RelationKind::kAttack ? RelationKind::kSupport
                                               : RelationKind::kAttack;
      flipped.insert(e);
    }
    edges = std::move(flipped);
  } else if (mode_ == Mode::kNoisy) {
    std::vector<ArgumentId> order = ranking.ordered_ids;
    if (order.size() >= 2) {
      const std::size_t swaps = std::max<std::size_t>(1, order.size() / 4);
      for (std::size_t s = 0; s < swaps; ++s) {
        const auto i = static_cast<std::size_t>(rng() % (order.size() - 1));
        std::swap(order[i], order[i + 1]);
      }
    }
    ranking = Ranking::strict(std::move(order));
    EdgeSet noisy;
    for (Edge e : edges) {
      const double u = unit(rng);
      if (u < 0.15) continue;
      if (u < 0.3) {
        e.kind = e.kind == RelationKind::kAttack ? RelationKind::kSupport
                                                 : RelationKind::kAttack;
      }
      noisy.insert(e);
    }
    edges = std::move(noisy);
  }
  result.text = "Reading the debate argument by argument.\n\n" +
                render_adjacency(edges) + "\n\n" + render_ranking(ranking) +
                "\n";
  return result;
}

std::shared_ptr<ChatBackend> make_backend(std::string_view config_json,
                                          const GenerationParams& params,
                                          std::span<const DebateGraph> graphs) {
  const json j = parse_json(config_json, "backend config");
  if (!j.is_object()) {
    throw Error(ErrorCode::kInvalidArgument,
                "backend config must be a JSON object");
  }
  const std::string type = string_field(j, "type", "http");
  if (type == "mock") {
    const auto mode = MockBackend::parse_mode(string_field(j, "mode", "gold-echo"));
    const std::uint64_t seed = j.value("seed", std::uint64_t{0});
    const double malformed = j.value("malformed_rate", 0.1);
    return std::make_shared<MockBackend>(mode, graphs, seed, malformed);
  }
  if (type == "http") {
    return std::make_shared<HttpChatBackend>(
        HttpAdapterConfig::from_json(config_json), params);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "backend config: unknown type '" + type + "'");
}

}  // namespace quadarg
