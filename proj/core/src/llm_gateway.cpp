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
#include "creativ/llm_gateway.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "creativ/error.hpp"
#include "creativ/parallel.hpp"

namespace creativ::llm {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

Experiment experiment_field(const json& j) {
  auto e = parse_experiment(j.at("experiment").get<std::string>());
  if (!e) throw Error(ErrorCode::InvalidConfig, "unknown experiment " + j.at("experiment").dump());
  return *e;
}

}  // namespace

void SamplingParams::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, "sampling: " + what); };
  if (!(temperature >= 0.0)) bad("temperature must be >= 0");
  if (max_tokens <= 0) bad("max_tokens must be positive");
  if (top_k <= 0) bad("top_k must be positive");
  if (!(top_p > 0.0 && top_p <= 1.0)) bad("top_p must be in (0, 1]");
  if (t <= 0) bad("t must be positive");
}

void to_json(json& j, const SamplingParams& p) {
  j = json{{"temperature", p.temperature}, {"max_tokens", p.max_tokens}, {"top_k", p.top_k},
           {"top_p", p.top_p}, {"t", p.t}};
}

void from_json(const json& j, SamplingParams& p) {
  SamplingParams d;
  p.temperature = j.value("temperature", d.temperature);
  p.max_tokens = j.value("max_tokens", d.max_tokens);
  p.top_k = j.value("top_k", d.top_k);
  p.top_p = j.value("top_p", d.top_p);
  p.t = j.value("t", d.t);
}

TrimResult trim_response(std::string_view raw) {
  static constexpr std::string_view kToken = "endmodule";
  for (std::size_t pos = raw.find(kToken); pos != std::string_view::npos; pos = raw.find(kToken, pos + 1)) {
    std::size_t end = pos + kToken.size();
    bool left_ok = pos == 0 || !is_ident_char(raw[pos - 1]);
    bool right_ok = end == raw.size() || !is_ident_char(raw[end]);
    if (left_ok && right_ok) return {std::string(raw.substr(0, end)), true};
  }
  return {std::string(raw), false};
}

void to_json(json& j, const GenerationRecord& r) {
  j = json{{"case_id", r.case_id},       {"experiment", to_string(r.experiment)},
           {"sample_index", r.sample_index}, {"raw_text", r.raw_text},
           {"trimmed_text", r.trimmed_text}, {"trimmed", r.trimmed},
           {"backend_id", r.backend_id},   {"params", r.params}};
}

void from_json(const json& j, GenerationRecord& r) {
  r.case_id = j.at("case_id").get<std::string>();
  r.experiment = experiment_field(j);
  r.sample_index = j.at("sample_index").get<int>();
  r.raw_text = j.at("raw_text").get<std::string>();
  if (j.contains("trimmed_text")) {
    r.trimmed_text = j.at("trimmed_text").get<std::string>();
    r.trimmed = j.at("trimmed").get<bool>();
  } else {
    auto t = trim_response(r.raw_text);
    r.trimmed_text = std::move(t.text);
    r.trimmed = t.found;
  }
  r.backend_id = j.value("backend_id", std::string());
  r.params = j.contains("params") ? j.at("params").get<SamplingParams>() : SamplingParams{};
}

// Replay ---------------------------------------------------------------------

ReplayBackend::ReplayBackend(const fs::path& store_path) {
  std::ifstream in(store_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, store_path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    bool last = nl == std::string::npos;
    std::string line = text.substr(start, last ? std::string::npos : nl - start);
    start = last ? text.size() : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      if (last) break;  // torn write at the tail
      throw Error(ErrorCode::InvalidConfig,
                  store_path.string() + ":" + std::to_string(line_no) + ": malformed replay entry");
    }
    try {
      Entry e;
      e.raw_text = j.at("raw_text").get<std::string>();
      if (j.contains("params")) e.params = j.at("params").get<SamplingParams>();
      e.backend_id = j.value("backend_id", std::string("replay"));
      Key key{j.at("case_id").get<std::string>(), experiment_field(j), j.at("sample_index").get<int>()};
      entries_.insert_or_assign(std::move(key), std::move(e));
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::InvalidConfig,
                  store_path.string() + ":" + std::to_string(line_no) + ": " + ex.what());
    }
  }
}

std::string ReplayBackend::sample(const GenerationRequest& req, int sample_index, SamplingParams& params) {
  auto it = entries_.find(Key{req.case_id, req.experiment, sample_index});
  if (it == entries_.end()) {
    throw Error(ErrorCode::ReplayMiss, "no sample for case '" + req.case_id + "' experiment " +
                                           std::string(to_string(req.experiment)) + " sample_index " +
                                           std::to_string(sample_index));
  }
  if (it->second.params) {
    int t = params.t;
    params = *it->second.params;
    params.t = t;
  }
  return it->second.raw_text;
}

std::string ReplayBackend::record_backend_id(const GenerationRequest& req, int sample_index) const {
  auto it = entries_.find(Key{req.case_id, req.experiment, sample_index});
  return it == entries_.end() ? id() : it->second.backend_id;
}

// HTTP -----------------------------------------------------------------------

struct HttpBackend::State {
  std::atomic<bool> drop_top_k{false};
  std::mutex log_mu;
  std::string host;         // scheme://host[:port]
  std::string path_prefix;  // e.g. /v1
};

HttpBackend::HttpBackend(HttpConfig cfg, Logger log, Sleeper sleep)
    : cfg_(std::move(cfg)), log_(std::move(log)), sleep_(std::move(sleep)), state_(std::make_unique<State>()) {
  if (!sleep_) {
    sleep_ = [](double s) { std::this_thread::sleep_for(std::chrono::duration<double>(s)); };
  }
  std::size_t scheme = cfg_.endpoint_url.find("://");
  if (scheme == std::string::npos) throw Error(ErrorCode::InvalidConfig, "endpoint URL needs a scheme: " + cfg_.endpoint_url);
  std::size_t slash = cfg_.endpoint_url.find('/', scheme + 3);
  state_->host = cfg_.endpoint_url.substr(0, slash);
  state_->path_prefix = slash == std::string::npos ? "" : cfg_.endpoint_url.substr(slash);
  while (!state_->path_prefix.empty() && state_->path_prefix.back() == '/') state_->path_prefix.pop_back();
  if (cfg_.model.empty()) throw Error(ErrorCode::InvalidConfig, "HTTP backend needs a model name");
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::id() const { return "http:" + cfg_.model; }

std::string HttpBackend::sample(const GenerationRequest& req, int sample_index, SamplingParams& params) {
  (void)sample_index;
  const bool chat = cfg_.mode == ApiMode::Chat;
  const std::string path = state_->path_prefix + (chat ? "/chat/completions" : "/completions");

  httplib::Client cli(state_->host);
  auto secs = static_cast<time_t>(cfg_.request_timeout_seconds);
  cli.set_connection_timeout(secs, 0);
  cli.set_read_timeout(secs, 0);
  cli.set_write_timeout(secs, 0);
  httplib::Headers headers;
  if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  double backoff = cfg_.initial_backoff_seconds;
  int attempt = 0;
  for (;;) {
    json body{{"model", cfg_.model},
              {"temperature", params.temperature},
              {"max_tokens", params.max_tokens},
              {"top_p", params.top_p},
              {"n", 1}};
    if (!state_->drop_top_k) body["top_k"] = params.top_k;
    if (chat) body["messages"] = json::array({{{"role", "user"}, {"content", req.prompt}}});
    else body["prompt"] = req.prompt;

    auto res = cli.Post(path, headers, body.dump(), "application/json");
    std::string failure;
    ErrorCode code = ErrorCode::BackendUnreachable;
    if (!res) {
      failure = "request failed: " + httplib::to_string(res.error());
    } else if (res->status == 200) {
      try {
        json reply = json::parse(res->body);
        const json& choice = reply.at("choices").at(0);
        return chat ? choice.at("message").at("content").get<std::string>() : choice.at("text").get<std::string>();
      } catch (const json::exception& e) {
        throw Error(ErrorCode::BackendUnreachable, std::string("unexpected response body: ") + e.what());
      }
    } else if (res->status == 400 && !state_->drop_top_k && res->body.find("top_k") != std::string::npos) {
      state_->drop_top_k = true;
      if (log_) {
        std::lock_guard lock(state_->log_mu);
        log_("endpoint rejected top_k; continuing without it");
      }
      continue;
    } else if (res->status == 429) {
      code = ErrorCode::RateLimited;
      failure = "HTTP 429: " + res->body;
    } else if (res->status >= 500) {
      failure = "HTTP " + std::to_string(res->status) + ": " + res->body;
    } else {
      throw Error(ErrorCode::BackendUnreachable, "HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    if (attempt >= cfg_.max_retries) throw Error(code, failure + " (after " + std::to_string(attempt + 1) + " attempts)");
    ++attempt;
    sleep_(backoff);
    backoff *= 2.0;
  }
}

// Generation ------------------------------------------------------------------

GenerationRecord generate_one(const GenerationRequest& req, int sample_index, const SamplingParams& params,
                              Backend& backend) {
  GenerationRecord r;
  r.case_id = req.case_id;
  r.experiment = req.experiment;
  r.sample_index = sample_index;
  r.params = params;
  r.raw_text = backend.sample(req, sample_index, r.params);
  auto t = trim_response(r.raw_text);
  r.trimmed_text = std::move(t.text);
  r.trimmed = t.found;
  r.backend_id = backend.record_backend_id(req, sample_index);
  return r;
}

std::vector<GenerationRecord> generate(const GenerationRequest& req, const SamplingParams& params,
                                       Backend& backend) {
  params.validate();
  std::vector<GenerationRecord> out;
  out.reserve(static_cast<std::size_t>(params.t));
  for (int i = 0; i < params.t; ++i) out.push_back(generate_one(req, i, params, backend));
  return out;
}

namespace {

// Serializes store appends; every line is flushed before the next starts.
class StoreAppender {
 public:
  explicit StoreAppender(const fs::path& path) : path_(path) {
    std::error_code ec;
    if (fs::exists(path, ec)) {
      // Drop a torn trailing line so the next append starts clean.
      std::ifstream in(path, std::ios::binary);
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (!text.empty() && text.back() != '\n') {
        std::size_t keep = text.rfind('\n');
        keep = keep == std::string::npos ? 0 : keep + 1;
        fs::resize_file(path, keep, ec);
        if (ec) throw Error(ErrorCode::StoreWriteError, path.string() + ": " + ec.message());
      }
    }
    out_.open(path, std::ios::binary | std::ios::app);
    if (!out_) throw Error(ErrorCode::StoreWriteError, "cannot open " + path.string() + " for writing");
  }

  void append(const json& line) {
    std::lock_guard lock(mu_);
    out_ << line.dump() << '\n';
    out_.flush();
    if (!out_) throw Error(ErrorCode::StoreWriteError, "write to " + path_.string() + " failed");
  }

 private:
  fs::path path_;
  std::ofstream out_;
  std::mutex mu_;
};

}  // namespace

std::size_t record_session(std::span<const GenerationRequest> requests, const SamplingParams& params,
                           Backend& backend, const fs::path& store_path, int jobs) {
  params.validate();
  if (store_path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(store_path.parent_path(), ec);
  }
  StoreAppender appender(store_path);

  std::set<std::tuple<std::string, Experiment, int>> have;
  if (fs::exists(store_path) && fs::file_size(store_path) > 0) {
    std::ifstream in(store_path, std::ios::binary);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        json j = json::parse(line);
        have.emplace(j.at("case_id").get<std::string>(), experiment_field(j), j.at("sample_index").get<int>());
      } catch (const json::exception&) {
        throw Error(ErrorCode::InvalidConfig, store_path.string() + ": malformed replay entry");
      }
    }
  }

  struct Slot {
    const GenerationRequest* req;
    int index;
  };
  std::vector<Slot> todo;
  for (const auto& r : requests) {
    for (int i = 0; i < params.t; ++i) {
      if (!have.count({r.case_id, r.experiment, i})) todo.push_back({&r, i});
    }
  }
  std::atomic<std::size_t> done{0};
  parallel_for(todo.size(), jobs, [&](std::size_t k) {
    GenerationRecord rec = generate_one(*todo[k].req, todo[k].index, params, backend);
    appender.append(json{{"case_id", rec.case_id},
                         {"experiment", to_string(rec.experiment)},
                         {"sample_index", rec.sample_index},
                         {"raw_text", rec.raw_text},
                         {"params", rec.params},
                         {"backend_id", rec.backend_id}});
    ++done;
  });
  return done;
}

}  // namespace creativ::llm
