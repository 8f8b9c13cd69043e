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

#include "creativ/pattern.hpp"

#include "creativ/error.hpp"

namespace creativ {

std::regex compile_pattern(const std::string& pattern) {
  auto flags = std::regex::ECMAScript | std::regex::optimize;
  std::string body = pattern;
  if (body.rfind("(?i)", 0) == 0) {
    body = body.substr(4);
    flags |= std::regex::icase;
  }
  try {
    return std::regex(body, flags);
  } catch (const std::regex_error& e) {
    throw Error(ErrorCode::InvalidPattern, "'" + pattern + "': " + e.what());
  }
}

}  // namespace creativ
