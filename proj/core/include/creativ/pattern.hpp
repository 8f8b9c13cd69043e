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

#include <regex>
#include <string>

namespace creativ {

/// Compiles an ECMAScript regex. A leading `(?i)` selects case-insensitive
/// matching, the one inline flag std::regex lacks. Throws Error with
/// InvalidPattern on a malformed expression.
std::regex compile_pattern(const std::string& pattern);

}  // namespace creativ
