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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "creativ/error.hpp"
#include "creativ/hdl/ast.hpp"

namespace creativ::hdl {

/// Lexing, parsing and subset-boundary failures. The code is one of
/// LexError, ParseError or UnsupportedConstruct. `construct()` names the
/// rejected feature for UnsupportedConstruct ("generate", "for", ...).
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, SourceLoc loc, std::string detail,
              std::vector<std::string> expected = {},
              std::string construct = {});

  SourceLoc location() const { return loc_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& construct() const { return construct_; }
  const std::string& detail() const { return detail_; }

 private:
  SourceLoc loc_;
  std::string detail_;
  std::vector<std::string> expected_;
  std::string construct_;
};

/// Parses every module in `src`.
std::vector<ModuleAst> parse_source(std::string_view src);

/// Parses `src`, which must hold exactly one module.
ModuleAst parse_module(std::string_view src);

/// Canonical Verilog text for a module. parse_module(print_module(m)) == m.
std::string print_module(const ModuleAst& module);
std::string print_expr(const Expr& expr);

/// Names of the modules instantiated in the body, deduplicated.
std::set<std::string> instantiated_modules(const ModuleAst& module);

/// True for Verilog reserved words, including the SystemVerilog keywords
/// the subset rejects.
bool is_reserved_word(std::string_view word);

}  // namespace creativ::hdl
