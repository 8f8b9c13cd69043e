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

#include <stdexcept>
#include <string>
#include <string_view>

namespace creativ {

enum class ErrorCode {
  // corpus
  MissingFile,
  DuplicateId,
  MalformedManifest,
  SubsetParseError,
  WrongKind,
  // llm_gateway
  BackendUnreachable,
  ReplayMiss,
  RateLimited,
  StoreWriteError,
  // sim_harness
  SimulatorNotFound,
  InvalidPattern,
  // hdl
  LexError,
  ParseError,
  UnsupportedConstruct,
  // similarity
  EmptyGraph,
  AdapterCrash,
  AdapterProtocolError,
  AdapterRangeError,
  // metrics
  ZeroPrompts,
  BadWeights,
  // pipeline
  DuplicateModelId,
  UnwritableOutput,
  InvalidConfig,
  CorpusInvalid,
  Interrupted,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure the library surfaces. The code is
/// stable and machine-checkable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace creativ
