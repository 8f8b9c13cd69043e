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
// Append-only JSON-lines event log of one evaluation run. Every event
// carries a work-unit key (case_id, experiment, sample_index, stage);
// appending a key that is already present is a no-op, so a resumed run
// can replay its work list blindly.

#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "creativ/experiment.hpp"

namespace creativ::pipeline {

enum class Stage { Run, Validate, Generate, Simulate, Score, Elaborate };

std::string_view to_string(Stage s);
std::optional<Stage> parse_stage(std::string_view text);

class RunStore {
 public:
  /// Opens `path`. Without `resume` any existing log is discarded. A torn
  /// final line left by a crash is dropped; other malformed lines throw
  /// InvalidConfig. Throws StoreWriteError when the file cannot be opened.
  RunStore(std::filesystem::path path, bool resume);

  RunStore(const RunStore&) = delete;
  RunStore& operator=(const RunStore&) = delete;

  /// Reads a log without opening it for writing.
  static std::vector<nlohmann::json> load(const std::filesystem::path& path);

  const std::filesystem::path& path() const { return path_; }

  /// Appends and flushes one event unless its key is already present.
  /// Returns false for a duplicate. Thread-safe.
  bool append(Stage stage, const WorkUnit& unit, nlohmann::json payload);

  bool has(Stage stage, const WorkUnit& unit) const;

  /// Events in log order, including those loaded on resume.
  std::vector<nlohmann::json> events() const;

  static WorkUnit unit_of(const nlohmann::json& event);
  static Stage stage_of(const nlohmann::json& event);

 private:
  using Key = std::tuple<Stage, std::string, Experiment, int>;
  static Key key_of(Stage stage, const WorkUnit& unit);

  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::set<Key> keys_;
  std::vector<nlohmann::json> events_;
};

}  // namespace creativ::pipeline
