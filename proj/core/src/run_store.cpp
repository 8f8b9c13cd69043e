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
#include "creativ/run_store.hpp"

#include <fstream>
#include <sstream>

#include "creativ/error.hpp"

namespace creativ::pipeline {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr Stage kStages[] = {Stage::Run, Stage::Validate, Stage::Generate,
                             Stage::Simulate, Stage::Score, Stage::Elaborate};

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses complete lines; returns the byte length of the valid prefix.
std::size_t parse_log(const std::string& text, const fs::path& path, std::vector<json>& out) {
  std::size_t start = 0;
  std::size_t valid = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    ++line_no;
    if (nl == std::string::npos) break;  // torn tail
    std::string_view line(text.data() + start, nl - start);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        json j = json::parse(line);
        RunStore::stage_of(j);
        out.push_back(std::move(j));
      } catch (const std::exception& e) {
        bool last = nl + 1 >= text.size();
        if (last) break;
        throw Error(ErrorCode::InvalidConfig,
                    path.string() + ":" + std::to_string(line_no) + ": malformed event: " + e.what());
      }
    }
    start = nl + 1;
    valid = start;
  }
  return valid;
}

}  // namespace

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Run: return "run";
    case Stage::Validate: return "validate";
    case Stage::Generate: return "generate";
    case Stage::Simulate: return "simulate";
    case Stage::Score: return "score";
    case Stage::Elaborate: return "elaborate";
  }
  return "run";
}

std::optional<Stage> parse_stage(std::string_view text) {
  for (Stage s : kStages) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

RunStore::RunStore(fs::path path, bool resume) : path_(std::move(path)) {
  std::error_code ec;
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path(), ec);
  if (resume && fs::exists(path_)) {
    std::string text = read_all(path_);
    std::size_t valid = parse_log(text, path_, events_);
    if (valid < text.size()) {
      fs::resize_file(path_, valid, ec);
      if (ec) throw Error(ErrorCode::StoreWriteError, path_.string() + ": " + ec.message());
    }
    for (const auto& e : events_) keys_.insert(key_of(stage_of(e), unit_of(e)));
  } else {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::StoreWriteError, "cannot create " + path_.string());
  }
  std::ofstream probe(path_, std::ios::binary | std::ios::app);
  if (!probe) throw Error(ErrorCode::StoreWriteError, "cannot write " + path_.string());
}

std::vector<json> RunStore::load(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::MissingFile, path.string());
  std::vector<json> out;
  parse_log(read_all(path), path, out);
  return out;
}

RunStore::Key RunStore::key_of(Stage stage, const WorkUnit& unit) {
  return {stage, unit.case_id, unit.experiment, unit.sample_index};
}

Stage RunStore::stage_of(const json& event) {
  auto s = parse_stage(event.at("stage").get<std::string>());
  if (!s) throw Error(ErrorCode::InvalidConfig, "unknown stage " + event.at("stage").dump());
  return *s;
}

WorkUnit RunStore::unit_of(const json& event) {
  WorkUnit u;
  u.case_id = event.value("case_id", std::string());
  auto e = parse_experiment(event.value("experiment", std::string("completion")));
  if (!e) throw Error(ErrorCode::InvalidConfig, "unknown experiment " + event.at("experiment").dump());
  u.experiment = *e;
  u.sample_index = event.value("sample_index", 0);
  return u;
}

bool RunStore::append(Stage stage, const WorkUnit& unit, json payload) {
  std::lock_guard lock(mu_);
  if (!keys_.insert(key_of(stage, unit)).second) return false;
  json event = json::object();
  event["stage"] = to_string(stage);
  event["case_id"] = unit.case_id;
  event["experiment"] = to_string(unit.experiment);
  event["sample_index"] = unit.sample_index;
  for (auto& [k, v] : payload.items()) event[k] = std::move(v);

  std::ofstream out(path_, std::ios::binary | std::ios::app);
  out << event.dump() << '\n';
  out.flush();
  if (!out) {
    keys_.erase(key_of(stage, unit));
    throw Error(ErrorCode::StoreWriteError, "write to " + path_.string() + " failed");
  }
  events_.push_back(std::move(event));
  return true;
}

bool RunStore::has(Stage stage, const WorkUnit& unit) const {
  std::lock_guard lock(mu_);
  return keys_.count(key_of(stage, unit)) > 0;
}

std::vector<json> RunStore::events() const {
  std::lock_guard lock(mu_);
  return events_;
}

}  // namespace creativ::pipeline
