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

// Abstract syntax tree for the synthesizable Verilog subset understood by
// the harness. Nodes are plain values; recursion goes through std::vector.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace creativ::hdl {

struct SourceLoc {
  int line = 0;
  int column = 0;
};

// Locations never participate in AST equality, so a re-parsed pretty-print
// compares equal to the original tree.
inline bool operator==(const SourceLoc&, const SourceLoc&) { return true; }

enum class ExprKind {
  Identifier,         // text = name
  Number,             // text = literal without whitespace or underscores
  Unary,              // text = operator, operands = {arg}
  Binary,             // text = operator, operands = {lhs, rhs}
  Ternary,            // operands = {cond, then, else}
  Concat,             // operands = parts, msb first
  Replicate,          // operands = {count, concat}
  Index,              // operands = {base, index}
  RangeSelect,        // operands = {base, msb, lsb}
  IndexedPartSelect,  // text = "+:" or "-:", operands = {base, start, width}
};

struct Expr {
  ExprKind kind = ExprKind::Identifier;
  std::string text;
  std::vector<Expr> operands;
  SourceLoc loc;

  bool operator==(const Expr&) const = default;
};

struct Range {
  Expr msb;
  Expr lsb;

  bool operator==(const Range&) const = default;
};

enum class StmtKind { Null, Block, If, Case, Blocking, NonBlocking };

struct CaseItem;

struct Statement {
  StmtKind kind = StmtKind::Null;
  SourceLoc loc;
  Expr lhs;  // Blocking / NonBlocking
  Expr rhs;  // Blocking / NonBlocking
  Expr cond;  // If condition or Case selector
  std::string case_keyword;  // "case", "casez" or "casex"
  std::string label;  // named begin/end block
  std::vector<Statement> body;  // Block children, or the single If-then
  std::vector<Statement> else_body;  // empty or exactly one statement
  std::vector<CaseItem> items;

  bool operator==(const Statement&) const = default;
};

struct CaseItem {
  std::vector<Expr> labels;  // empty means `default`
  std::vector<Statement> body;  // exactly one statement

  bool operator==(const CaseItem&) const = default;
};

enum class Direction { Input, Output, Inout };

struct PortDecl {
  std::string name;
  Direction direction = Direction::Input;
  bool is_reg = false;
  bool is_signed = false;
  std::optional<Range> range;
  SourceLoc loc;

  bool operator==(const PortDecl&) const = default;
};

enum class NetKind { Wire, Reg, Integer };

struct NetDecl {
  std::string name;
  NetKind kind = NetKind::Wire;
  bool is_signed = false;
  std::optional<Range> range;
  std::optional<Expr> init;  // `wire x = expr;`
  SourceLoc loc;

  bool operator==(const NetDecl&) const = default;
};

/// `parameter` or `localparam` declared in the module body. Only simple
/// constant substitution is supported.
struct ParamDecl {
  std::string name;
  bool local = true;
  std::optional<Range> range;
  Expr value;
  SourceLoc loc;

  bool operator==(const ParamDecl&) const = default;
};

struct ContinuousAssign {
  Expr lhs;
  Expr rhs;
  SourceLoc loc;

  bool operator==(const ContinuousAssign&) const = default;
};

enum class Edge { None, Posedge, Negedge };

struct SensitivityItem {
  Edge edge = Edge::None;
  Expr signal;

  bool operator==(const SensitivityItem&) const = default;
};

struct AlwaysBlock {
  bool star = false;  // @* or @(*)
  std::vector<SensitivityItem> sensitivity;
  Statement body;
  SourceLoc loc;

  bool is_edge_triggered() const {
    for (const auto& s : sensitivity) {
      if (s.edge != Edge::None) return true;
    }
    return false;
  }

  bool operator==(const AlwaysBlock&) const = default;
};

struct PortConnection {
  std::string port;  // empty for positional connections
  std::optional<Expr> expr;  // empty for `.p()`

  bool operator==(const PortConnection&) const = default;
};

struct Instance {
  std::string module_name;
  std::string instance_name;
  std::vector<PortConnection> connections;
  SourceLoc loc;

  bool named() const {
    return !connections.empty() && !connections.front().port.empty();
  }

  bool operator==(const Instance&) const = default;
};

using ModuleItem =
    std::variant<NetDecl, ParamDecl, ContinuousAssign, AlwaysBlock, Instance>;

struct ModuleAst {
  std::string name;
  bool ansi_header = true;
  std::vector<PortDecl> ports;  // header order
  std::vector<ModuleItem> items;  // source order
  SourceLoc loc;

  const PortDecl* find_port(const std::string& port_name) const;

  bool operator==(const ModuleAst&) const = default;
};

/// Folds an expression made of literals and the given parameters to an
/// integer. Returns nullopt when the expression is not constant or uses x/z.
std::optional<std::int64_t> evaluate_constant(
    const Expr& expr, const std::vector<ParamDecl>& params);

/// Width of a declared range, 1 when absent, nullopt when not constant.
std::optional<int> range_width(const std::optional<Range>& range,
                               const std::vector<ParamDecl>& params);

std::vector<ParamDecl> collect_params(const ModuleAst& module);

}  // namespace creativ::hdl
