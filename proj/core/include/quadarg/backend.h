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


#ifndef QUADARG_BACKEND_H_
#define QUADARG_BACKEND_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "quadarg/graph.h"

namespace quadarg {

struct GenerationParams {
  double temperature = 0.7;
  int repetitions = 3;
  int max_output_tokens = 4096;
  std::chrono::milliseconds request_timeout{120000};
  int retry_limit = 4;
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::milliseconds max_backoff{30000};

  // Throws kInvalidArgument for negative temperature, repetitions < 1,
  // non-positive token limit or timeout, or a negative retry limit.
  void validate() const;
};

struct CompletionRequest {
  std::string prompt;
  double temperature = 0.7;
  int max_output_tokens = 4096;
  std::size_t sample_index = 0;  // repetition number within a run
  std::uint64_t seed = 0;
  // Diagnostics and mock lookup only; not part of the request hash.
  std::string graph_name;
};

struct TokenUsage {
  std::optional<std::int64_t> prompt_tokens;
  std::optional<std::int64_t> completion_tokens;
};

struct CompletionResult {
  std::string text;
  std::chrono::milliseconds latency{0};
  TokenUsage usage;
  int attempts = 1;
};

// A single-turn chat-completion endpoint. Implementations must allow
// concurrent complete() calls.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string model_id() const = 0;
  virtual CompletionResult complete(const CompletionRequest& request) = 0;
};

// SHA-256 of the canonical JSON form of (model, prompt, temperature,
// max_output_tokens, sample_index, seed).
std::string request_hash(std::string_view model, const CompletionRequest& request);

// initial_backoff * 2^attempt, capped at max_backoff. `attempt` is 0-based.
std::chrono::milliseconds backoff_for_attempt(int attempt,
                                              const GenerationParams& params);

// kTransportError and kRateLimited are worth another try.
bool is_retryable(const std::exception& e);

using Sleeper = std::function<void(std::chrono::milliseconds)>;
Sleeper real_sleeper();

// Calls `fn` until it succeeds, a non-retryable error escapes, or
// params.retry_limit retries are spent; the last error is rethrown.
// `attempts` receives the number of calls made.
template <typename Fn>
auto with_retries(Fn&& fn, const GenerationParams& params,
                  const Sleeper& sleep, int* attempts = nullptr)
    -> decltype(fn()) {
  for (int attempt = 0;; ++attempt) {
    if (attempts != nullptr) *attempts = attempt + 1;
    try {
      return fn();
    } catch (const std::exception& e) {
      if (!is_retryable(e) || attempt >= params.retry_limit) throw;
    }
    sleep(backoff_for_attempt(attempt, params));
  }
}

// Adapter describing an HTTP chat-completion API. Field paths are JSON
// pointers into the request template and the response body.
struct HttpAdapterConfig {
  std::string endpoint;  // scheme://host[:port]/path
  std::string model;
  std::string auth_env;  // environment variable holding the credential
  std::string auth_header = "Authorization";
  std::string auth_prefix = "Bearer ";
  std::string request_template = "{}";  // JSON text
  std::string prompt_path = "/messages/0/content";
  std::string temperature_path = "/temperature";
  std::string max_tokens_path = "/max_tokens";
  std::string seed_path;  // empty: seed not sent
  std::string response_text_path = "/choices/0/message/content";
  std::string prompt_tokens_path = "/usage/prompt_tokens";
  std::string completion_tokens_path = "/usage/completion_tokens";
  std::map<std::string, std::string> extra_headers;
  bool verify_tls = true;

  // Parses the adapter JSON. Throws kInvalidArgument on missing or
  // ill-typed fields.
  static HttpAdapterConfig from_json(std::string_view text);
};

// POSTs one JSON request per completion. Maps 429 to kRateLimited, 5xx and
// connection failures to kTransportError (both retried), 401/403 to
// kAuthMissing, and deadline overruns to kTimeoutExceeded.
class HttpChatBackend : public ChatBackend {
 public:
  // Throws kAuthMissing when auth_env is set but the variable is empty.
  HttpChatBackend(HttpAdapterConfig config, GenerationParams params,
                  Sleeper sleeper = real_sleeper());

  std::string model_id() const override { return config_.model; }
  CompletionResult complete(const CompletionRequest& request) override;

 private:
  CompletionResult attempt(const CompletionRequest& request) const;

  HttpAdapterConfig config_;
  GenerationParams params_;
  Sleeper sleeper_;
  std::string credential_;
  std::string base_url_;
  std::string path_;
};

// Answers from a JSON-lines archive written by RecordingBackend; never
// touches the network.
class ReplayBackend : public ChatBackend {
 public:
  // `model` of std::nullopt takes the single model named in the archive.
  explicit ReplayBackend(const std::filesystem::path& archive,
                         std::optional<std::string> model = std::nullopt);

  std::string model_id() const override { return model_; }
  // Throws kReplayMiss when the request was never recorded.
  CompletionResult complete(const CompletionRequest& request) override;
  std::size_t size() const { return responses_.size(); }

 private:
  std::string model_;
  std::unordered_map<std::string, std::string> responses_;
};

// Forwards to `inner` and appends every exchange to a JSON-lines archive.
class RecordingBackend : public ChatBackend {
 public:
  RecordingBackend(std::shared_ptr<ChatBackend> inner,
                   const std::filesystem::path& archive);

  std::string model_id() const override { return inner_->model_id(); }
  CompletionResult complete(const CompletionRequest& request) override;

 private:
  std::shared_ptr<ChatBackend> inner_;
  std::mutex mu_;
  std::ofstream out_;
};

// Offline stand-in that answers from the gold structure of known graphs.
//   kGoldEcho: gold adjacency and gold ranking.
//   kReversal: kinds flipped and the ranking reversed.
//   kNoisy:    a few adjacent swaps, some dropped or flipped edges, and an
//              occasional answer without a ranking. Seeded per request.
class MockBackend : public ChatBackend {
 public:
  enum class Mode { kGoldEcho, kReversal, kNoisy };

  MockBackend(Mode mode, std::span<const DebateGraph> graphs,
              std::uint64_t seed = 0, double malformed_rate = 0.1);

  std::string model_id() const override;
  // Throws kInvalidArgument for a graph it was not given.
  CompletionResult complete(const CompletionRequest& request) override;

  static Mode parse_mode(std::string_view name);

 private:
  Mode mode_;
  std::map<std::string, const DebateGraph*, std::less<>> graphs_;
  std::uint64_t seed_;
  double malformed_rate_;
};

// Backend described by a JSON config: {"type": "http", ...adapter fields} or
// {"type": "mock", "mode": "gold-echo" | "reversal" | "noisy", "seed": n,
// "malformed_rate": r}. Mock backends answer for `graphs`, which must
// outlive the backend.
std::shared_ptr<ChatBackend> make_backend(std::string_view config_json,
                                          const GenerationParams& params,
                                          std::span<const DebateGraph> graphs);

}  // namespace quadarg

#endif  // QUADARG_BACKEND_H_
