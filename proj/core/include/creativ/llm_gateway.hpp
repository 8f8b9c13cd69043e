// Copyright 2026 The creativ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Response generation: t samples per prompt from a live OpenAI-compatible
// endpoint or from a replay store, trimmed at the first `endmodule`.
//
// Replay store: JSON lines, one sample per line:
//   {"case_id": "mux2", "experiment": "completion", "sample_index": 0,
//    "raw_text": "...", "params": {...}, "backend_id": "..."}

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "creativ/experiment.hpp"

namespace creativ::llm {

struct SamplingParams {
  double temperature = 0.3;
  int max_tokens = 1024;
  int top_k = 10;
  double top_p = 0.95;
  int t = 10;  // samples per prompt

  /// Throws InvalidConfig when a field is out of range.
  void validate() const;
  bool operator==(const SamplingParams&) const = default;
};

void to_json(nlohmann::json& j, const SamplingParams& p);
void from_json(const nlohmann::json& j, SamplingParams& p);

struct TrimResult {
  std::string text;
  bool found = false;
};

/// Prefix of `raw` through the first whole-word `endmodule`, or `raw`
/// unchanged when there is none. Idempotent.
TrimResult trim_response(std::string_view raw);

struct GenerationRecord {
  std::string case_id;
  Experiment experiment = Experiment::Completion;
  int sample_index = 0;
  std::string raw_text;
  std::string trimmed_text;
  bool trimmed = false;
  std::string backend_id;
  SamplingParams params;

  WorkUnit unit() const { return {case_id, experiment, sample_index}; }
  bool operator==(const GenerationRecord&) const = default;
};

void to_json(nlohmann::json& j, const GenerationRecord& r);
void from_json(const nlohmann::json& j, GenerationRecord& r);

struct GenerationRequest {
  std::string case_id;
  Experiment experiment = Experiment::Completion;
  std::string prompt;
};

/// A source of raw responses. Implementations must be safe to call from
/// several threads.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string id() const = 0;
  /// Raw text of one sample. `params` may be adjusted to what was
  /// actually used (a replayed sample reports its recorded parameters).
  virtual std::string sample(const GenerationRequest& req, int sample_index, SamplingParams& params) = 0;
  /// Identifier stamped on the record of one sample.
  virtual std::string record_backend_id(const GenerationRequest&, int) const { return id(); }
};

/// Deterministic lookup in a replay store. Throws ReplayMiss for a sample
/// the store lacks.
class ReplayBackend : public Backend {
 public:
  /// Loads a store file. A torn final line is ignored; any other malformed
  /// line throws InvalidConfig.
  explicit ReplayBackend(const std::filesystem::path& store_path);

  std::string id() const override { return "replay"; }
  std::string sample(const GenerationRequest& req, int sample_index, SamplingParams& params) override;
  std::string record_backend_id(const GenerationRequest& req, int sample_index) const override;
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::string raw_text;
    std::optional<SamplingParams> params;
    std::string backend_id;
  };
  using Key = std::tuple<std::string, Experiment, int>;
  std::map<Key, Entry> entries_;
};

enum class ApiMode { Completion, Chat };

struct HttpConfig {
  std::string endpoint_url = "https://api.openai.com/v1";  // base; /completions or /chat/completions appended
  std::string model;
  ApiMode mode = ApiMode::Chat;
  std::string api_key_env = "OPENAI_API_KEY";
  int max_retries = 4;
  double initial_backoff_seconds = 1.0;
  double request_timeout_seconds = 120.0;
};

/// OpenAI-compatible HTTP backend. Transport failures and 5xx responses
/// are retried with exponential backoff, then reported as
/// BackendUnreachable; persistent 429 responses become RateLimited. If the
/// endpoint rejects top_k it is dropped for the rest of the session.
class HttpBackend : public Backend {
 public:
  using Logger = std::function<void(const std::string&)>;
  using Sleeper = std::function<void(double seconds)>;

  explicit HttpBackend(HttpConfig cfg, Logger log = {}, Sleeper sleep = {});
  ~HttpBackend() override;

  std::string id() const override;
  std::string sample(const GenerationRequest& req, int sample_index, SamplingParams& params) override;

 private:
  struct State;
  HttpConfig cfg_;
  Logger log_;
  Sleeper sleep_;
  std::unique_ptr<State> state_;
};

/// Exactly params.t records with sample_index 0..t-1, or an exception.
std::vector<GenerationRecord> generate(const GenerationRequest& req, const SamplingParams& params,
                                       Backend& backend);

/// One record for a single sample.
GenerationRecord generate_one(const GenerationRequest& req, int sample_index,
                              const SamplingParams& params, Backend& backend);

/// Records t samples per request into `store_path`, appending to an
/// existing store and skipping samples it already holds, so an interrupted
/// session resumes at the first missing index. Completed samples are
/// flushed as they arrive. Throws StoreWriteError when the store cannot be
/// written; backend errors propagate after completed samples are saved.
/// Returns the number of samples newly recorded.
std::size_t record_session(std::span<const GenerationRequest> requests, const SamplingParams& params,
                           Backend& backend, const std::filesystem::path& store_path, int jobs = 1);

}  // namespace creativ::llm
