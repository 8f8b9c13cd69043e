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

#include <string>
#include <string_view>
#include <vector>

#include "creativ/hdl/ast.hpp"

namespace creativ::hdl::detail {

enum class TokenKind { Identifier, Keyword, SystemIdentifier, Number, Punct, String, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceLoc loc;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

/// Tokenizes Verilog source. Comments and the harmless directives
/// (`timescale, `default_nettype, ...) are dropped; other directives raise
/// UnsupportedConstruct. The returned vector always ends with an End token.
std::vector<Token> tokenize(std::string_view src);

}  // namespace creativ::hdl::detail
