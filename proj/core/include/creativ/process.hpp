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

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace creativ {

struct ProcessOptions {
  std::filesystem::path working_dir;  // empty: inherit
  std::string stdin_data;
  std::optional<double> timeout_seconds;
  bool merge_stderr = false;  // stderr appended to `out` in arrival order
  std::map<std::string, std::string> extra_env;
};

struct ProcessResult {
  int exit_code = -1;  // valid when !timed_out && !launch_failed
  bool timed_out = false;
  bool launch_failed = false;  // execvp failed; launch_errno is set
  int launch_errno = 0;
  std::string out;
  std::string err;
  double wall_seconds = 0.0;

  bool ok() const { return !timed_out && !launch_failed && exit_code == 0; }
};

/// Runs argv[0] (PATH lookup) in its own process group without a shell.
/// On timeout the whole group is killed with SIGKILL.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const ProcessOptions& options = {});

/// Splits a command template on whitespace, honoring single and double
/// quotes. No other shell syntax is interpreted.
std::vector<std::string> split_command(const std::string& command);

}  // namespace creativ
