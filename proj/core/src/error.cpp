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

#include "creativ/error.hpp"

namespace creativ {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MalformedManifest: return "MalformedManifest";
    case ErrorCode::SubsetParseError: return "SubsetParseError";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::BackendUnreachable: return "BackendUnreachable";
    case ErrorCode::ReplayMiss: return "ReplayMiss";
    case ErrorCode::RateLimited: return "RateLimited";
    case ErrorCode::StoreWriteError: return "StoreWriteError";
    case ErrorCode::SimulatorNotFound: return "SimulatorNotFound";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::LexError: return "LexError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::AdapterCrash: return "AdapterCrash";
    case ErrorCode::AdapterProtocolError: return "AdapterProtocolError";
    case ErrorCode::AdapterRangeError: return "AdapterRangeError";
    case ErrorCode::ZeroPrompts: return "ZeroPrompts";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::DuplicateModelId: return "DuplicateModelId";
    case ErrorCode::UnwritableOutput: return "UnwritableOutput";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::CorpusInvalid: return "CorpusInvalid";
    case ErrorCode::Interrupted: return "Interrupted";
  }
  return "Unknown";
}

}  // namespace creativ
