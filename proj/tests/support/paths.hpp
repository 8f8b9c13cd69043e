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

#include <stdlib.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "creativ/sim_harness.hpp"

namespace creativ::testing {

inline const std::filesystem::path kSourceDir = CREATIV_SOURCE_DIR;
inline const std::filesystem::path kFixtureDir = CREATIV_FIXTURE_DIR;
inline const std::filesystem::path kTestDataDir = CREATIV_TEST_DATA_DIR;
inline const std::filesystem::path kVerilatorSim = CREATIV_VERILATOR_SIM;

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "creativ-test-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline void write_script(const std::filesystem::path& p, const std::string& body) {
  write_text(p, "#!/bin/sh\n" + body);
  std::filesystem::permissions(p, std::filesystem::perms::owner_all, std::filesystem::perm_options::add);
}

inline bool on_path(const std::string& program) {
  const char* path = std::getenv("PATH");
  if (!path) return false;
  std::stringstream ss(path);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (!dir.empty() && ::access((std::filesystem::path(dir) / program).c_str(), X_OK) == 0) return true;
  }
  return false;
}

inline bool have_verilator() { return on_path("verilator-cli"); }

// Real simulation through the Verilator wrapper.
inline sim::SimConfig verilator_config(const std::filesystem::path& workdir) {
  sim::SimConfig cfg;
  cfg.compile_cmd = kVerilatorSim.string() + " {workdir} {tb_top} {out} {sources}";
  cfg.run_cmd = "{out}";
  cfg.timeout_seconds = 60;
  cfg.compile_timeout_seconds = 300;
  cfg.workdir_root = workdir;
  return cfg;
}

// Stand-in simulator keyed on markers in the candidate text; see
// tests/data/fake-sim.
inline sim::SimConfig fake_config(const std::filesystem::path& workdir) {
  sim::SimConfig cfg;
  cfg.compile_cmd = (kTestDataDir / "fake-sim").string() + " compile {out} {sources}";
  cfg.run_cmd = (kTestDataDir / "fake-sim").string() + " run {out}";
  cfg.timeout_seconds = 10;
  cfg.workdir_root = workdir;
  return cfg;
}

}  // namespace creativ::testing
