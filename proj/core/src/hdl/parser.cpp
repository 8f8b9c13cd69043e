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

#include "creativ/hdl/parser.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "lexer.hpp"

namespace creativ::hdl {

namespace {

std::string format_syntax_message(SourceLoc loc, const std::string& detail,
                                  const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << loc.line << ":" << loc.column << ": " << detail;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << ", ";
      os << expected[i];
    }
    os << ")";
  }
  return os.str();
}

}  // namespace

SyntaxError::SyntaxError(ErrorCode code, SourceLoc loc, std::string detail,
                         std::vector<std::string> expected, std::string construct)
    : Error(code, format_syntax_message(loc, detail, expected)),
      loc_(loc),
      detail_(std::move(detail)),
      expected_(std::move(expected)),
      construct_(std::move(construct)) {}

namespace {

using detail::Token;
using detail::TokenKind;

// Keywords that name constructs outside the subset, keyed to the construct
// name reported in UnsupportedConstruct.
const std::map<std::string, std::string, std::less<>>& unsupported_keywords() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"generate", "generate"}, {"endgenerate", "generate"}, {"genvar", "genvar"},
      {"function", "function"}, {"task", "task"}, {"initial", "initial"},
      {"for", "for"}, {"while", "while"}, {"repeat", "repeat"},
      {"forever", "forever"}, {"fork", "fork"}, {"specify", "specify"},
      {"primitive", "primitive"}, {"defparam", "defparam"}, {"wait", "wait"},
      {"disable", "disable"}, {"force", "force"}, {"release", "release"},
      {"deassign", "deassign"}, {"real", "real"}, {"realtime", "real"},
      {"time", "time"}, {"event", "event"}, {"tri", "tri net"},
      {"tri0", "tri net"}, {"tri1", "tri net"}, {"supply0", "supply net"},
      {"supply1", "supply net"}, {"wand", "wand net"}, {"wor", "wor net"},
      {"triand", "tri net"}, {"trior", "tri net"}, {"trireg", "tri net"},
      {"uwire", "uwire net"}, {"specparam", "specparam"},
      {"and", "gate primitive"}, {"or", "gate primitive"}, {"nand", "gate primitive"},
      {"nor", "gate primitive"}, {"xor", "gate primitive"}, {"xnor", "gate primitive"},
      {"not", "gate primitive"}, {"buf", "gate primitive"}, {"bufif0", "gate primitive"},
      {"bufif1", "gate primitive"}, {"notif0", "gate primitive"},
      {"notif1", "gate primitive"}, {"pullup", "gate primitive"},
      {"pulldown", "gate primitive"},
      {"always_comb", "always_comb"}, {"always_ff", "always_ff"},
      {"always_latch", "always_latch"}, {"logic", "logic"}, {"bit", "bit"},
      {"byte", "byte"}, {"int", "int"}, {"longint", "longint"},
      {"shortint", "shortint"}, {"enum", "enum"}, {"typedef", "typedef"},
      {"struct", "struct"}, {"unique", "unique"}, {"priority", "priority"},
      {"interface", "interface"}, {"package", "package"}, {"import", "import"},
      {"inout", "inout"}};
  return table;
}

// Binary operator precedence, higher binds tighter.
int binary_precedence(std::string_view op) {
  static const std::array<std::pair<std::string_view, int>, 22> table = {{
      {"||", 1}, {"&&", 2}, {"|", 3}, {"^", 4}, {"~^", 4}, {"^~", 4},
      {"&", 5}, {"==", 6}, {"!=", 6}, {"===", 6}, {"!==", 6},
      {"<", 7}, {"<=", 7}, {">", 7}, {">=", 7},
      {"<<", 8}, {">>", 8}, {"<<<", 8}, {">>>", 8},
      {"+", 9}, {"-", 9}, {"*", 10},
  }};
  for (const auto& [name, prec] : table) {
    if (name == op) return prec;
  }
  if (op == "/" || op == "%") return 10;
  if (op == "**") return 11;
  return 0;
}

bool is_unary_operator(std::string_view op) {
  static constexpr std::array ops = {"+", "-", "!", "~", "&", "~&", "|", "~|",
                                     "^", "~^", "^~"};
  return std::find(ops.begin(), ops.end(), op) != ops.end();
}

std::string normalize_operator(std::string op) {
  return op == "^~" ? std::string("~^") : op;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<ModuleAst> source() {
    std::vector<ModuleAst> modules;
    while (!cur().is(TokenKind::End, "")) {
      modules.push_back(module());
    }
    return modules;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next() const {
    return toks_[std::min(pos_ + 1, toks_.size() - 1)];
  }
  Token take() {
    Token t = cur();
    if (t.kind != TokenKind::End) ++pos_;
    return t;
  }

  [[noreturn]] void error_expected(std::vector<std::string> expected) {
    const Token& t = cur();
    std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(ErrorCode::ParseError, t.loc, "unexpected " + found,
                      std::move(expected));
  }
  [[noreturn]] void unsupported(const Token& at, const std::string& construct) {
    throw SyntaxError(ErrorCode::UnsupportedConstruct, at.loc,
                      "unsupported construct '" + construct + "'", {}, construct);
  }
  [[noreturn]] void semantic(SourceLoc loc, const std::string& detail) {
    throw SyntaxError(ErrorCode::ParseError, loc, detail);
  }

  bool accept_punct(std::string_view p) {
    if (cur().is_punct(p)) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_keyword(std::string_view k) {
    if (cur().is_keyword(k)) {
      ++pos_;
      return true;
    }
    return false;
  }
  Token expect_punct(std::string_view p) {
    if (!cur().is_punct(p)) error_expected({"'" + std::string(p) + "'"});
    return take();
  }
  Token expect_keyword(std::string_view k) {
    if (!cur().is_keyword(k)) {
      reject_unsupported_keyword();
      error_expected({"'" + std::string(k) + "'"});
    }
    return take();
  }
  std::string expect_identifier(const char* what = "identifier") {
    if (cur().kind != TokenKind::Identifier) {
      reject_unsupported_keyword();
      error_expected({what});
    }
    return take().text;
  }

  void reject_unsupported_keyword() {
    if (cur().kind == TokenKind::Keyword) {
      auto it = unsupported_keywords().find(cur().text);
      if (it != unsupported_keywords().end()) unsupported(cur(), it->second);
    }
    if (cur().kind == TokenKind::SystemIdentifier) {
      unsupported(cur(), "system task " + cur().text);
    }
    if (cur().is_punct("#")) unsupported(cur(), "delay");
  }

  static std::optional<Direction> direction_of(const Token& t) {
    if (t.is_keyword("input")) return Direction::Input;
    if (t.is_keyword("output")) return Direction::Output;
    if (t.is_keyword("inout")) return Direction::Inout;
    return std::nullopt;
  }

  // ---- module structure ---------------------------------------------------

  ModuleAst module() {
    if (cur().is_keyword("macromodule")) unsupported(cur(), "macromodule");
    if (!cur().is_keyword("module")) {
      reject_unsupported_keyword();
      error_expected({"'module'"});
    }
    ModuleAst m;
    m.loc = take().loc;
    m.name = expect_identifier("module name");
    if (cur().is_punct("#")) unsupported(cur(), "parameterized module");
    if (accept_punct("(")) {
      if (!cur().is_punct(")")) {
        if (direction_of(cur())) {
          ansi_ports(m);
        } else {
          m.ansi_header = false;
          header_port_names(m);
        }
      }
      expect_punct(")");
    }
    expect_punct(";");
    while (!cur().is_keyword("endmodule")) {
      if (cur().kind == TokenKind::End) error_expected({"'endmodule'"});
      module_item(m);
    }
    take();
    finish_module(m);
    return m;
  }

  void port_attributes(PortDecl& p) {
    if (cur().is_keyword("inout")) unsupported(cur(), "inout");
    p.direction = *direction_of(take());
    if (accept_keyword("reg")) {
      p.is_reg = true;
    } else if (accept_keyword("wire")) {
    } else {
      reject_unsupported_keyword();
    }
    if (accept_keyword("signed")) p.is_signed = true;
    if (cur().is_punct("[")) p.range = range();
  }

  void ansi_ports(ModuleAst& m) {
    PortDecl proto;
    do {
      if (direction_of(cur())) {
        proto = PortDecl{};
        port_attributes(proto);
      }
      PortDecl p = proto;
      p.loc = cur().loc;
      p.name = expect_identifier("port name");
      if (cur().is_punct("[")) unsupported(cur(), "unpacked array port");
      add_port(m, std::move(p));
    } while (accept_punct(","));
  }

  void header_port_names(ModuleAst& m) {
    do {
      if (cur().is_punct(".")) unsupported(cur(), "port expression");
      PortDecl p;
      p.loc = cur().loc;
      p.name = expect_identifier("port name");
      p.direction = Direction::Input;
      add_port(m, std::move(p));
      undeclared_ports_.insert(m.ports.back().name);
    } while (accept_punct(","));
  }

  void add_port(ModuleAst& m, PortDecl p) {
    if (m.find_port(p.name)) semantic(p.loc, "duplicate port '" + p.name + "'");
    m.ports.push_back(std::move(p));
  }

  Range range() {
    expect_punct("[");
    Range r;
    r.msb = expression();
    expect_punct(":");
    r.lsb = expression();
    expect_punct("]");
    return r;
  }

  void module_item(ModuleAst& m) {
    const Token& t = cur();
    if (direction_of(t)) {
      body_port_declaration(m);
    } else if (t.is_keyword("wire") || t.is_keyword("reg") || t.is_keyword("integer")) {
      net_declaration(m);
    } else if (t.is_keyword("localparam") || t.is_keyword("parameter")) {
      param_declaration(m);
    } else if (t.is_keyword("assign")) {
      continuous_assign(m);
    } else if (t.is_keyword("always")) {
      always_block(m);
    } else if (t.kind == TokenKind::Identifier) {
      instantiation(m);
    } else if (t.is_punct(";")) {
      take();
    } else {
      reject_unsupported_keyword();
      error_expected({"module item"});
    }
  }

  void body_port_declaration(ModuleAst& m) {
    Token first = cur();
    if (m.ansi_header) {
      semantic(first.loc, "port declaration in body of a module with an ANSI header");
    }
    PortDecl proto;
    port_attributes(proto);
    do {
      SourceLoc loc = cur().loc;
      std::string name = expect_identifier("port name");
      auto it = std::find_if(m.ports.begin(), m.ports.end(),
                             [&](const PortDecl& p) { return p.name == name; });
      if (it == m.ports.end()) semantic(loc, "'" + name + "' is not in the port list");
      if (!undeclared_ports_.erase(name)) {
        semantic(loc, "port '" + name + "' declared twice");
      }
      bool was_reg = it->is_reg;
      std::optional<Range> old_range = it->range;
      it->direction = proto.direction;
      it->is_signed = proto.is_signed || it->is_signed;
      it->is_reg = proto.is_reg || was_reg;
      it->range = proto.range ? proto.range : old_range;
    } while (accept_punct(","));
    expect_punct(";");
  }

  void net_declaration(ModuleAst& m) {
    Token kw = take();
    NetKind kind = kw.text == "wire" ? NetKind::Wire
                   : kw.text == "reg" ? NetKind::Reg
                                      : NetKind::Integer;
    bool is_signed = accept_keyword("signed");
    std::optional<Range> r;
    if (kind != NetKind::Integer && cur().is_punct("[")) r = range();
    do {
      NetDecl d;
      d.kind = kind;
      d.is_signed = is_signed;
      d.range = r;
      d.loc = cur().loc;
      d.name = expect_identifier("net name");
      if (cur().is_punct("[")) unsupported(cur(), "memory array");
      if (cur().is_punct("=")) {
        if (kind != NetKind::Wire) unsupported(cur(), "variable initializer");
        take();
        d.init = expression();
      }
      PortDecl* port = find_port(m, d.name);
      if (port) {
        // `output y; reg y;` or `input a; wire a;` merge into the port.
        if (d.init) semantic(d.loc, "initializer on port '" + d.name + "'");
        if (kind == NetKind::Integer) semantic(d.loc, "integer port '" + d.name + "'");
        if (kind == NetKind::Reg) {
          if (port->direction == Direction::Input && !undeclared_ports_.count(d.name)) {
            semantic(d.loc, "input port '" + d.name + "' declared reg");
          }
          port->is_reg = true;
        }
        if (!port->range) port->range = d.range;
        port->is_signed = port->is_signed || d.is_signed;
      } else {
        if (declared_.count(d.name)) semantic(d.loc, "'" + d.name + "' declared twice");
        declared_.insert(d.name);
        m.items.emplace_back(std::move(d));
      }
    } while (accept_punct(","));
    expect_punct(";");
  }

  static PortDecl* find_port(ModuleAst& m, const std::string& name) {
    for (auto& p : m.ports) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }

  void param_declaration(ModuleAst& m) {
    bool local = take().text == "localparam";
    accept_keyword("signed");
    if (cur().is_keyword("integer")) take();
    std::optional<Range> r;
    if (cur().is_punct("[")) r = range();
    do {
      ParamDecl p;
      p.local = local;
      p.range = r;
      p.loc = cur().loc;
      p.name = expect_identifier("parameter name");
      expect_punct("=");
      p.value = expression();
      if (declared_.count(p.name) || find_port(m, p.name)) {
        semantic(p.loc, "'" + p.name + "' declared twice");
      }
      declared_.insert(p.name);
      m.items.emplace_back(std::move(p));
    } while (accept_punct(","));
    expect_punct(";");
  }

  void continuous_assign(ModuleAst& m) {
    take();
    if (cur().is_punct("#")) unsupported(cur(), "delay");
    do {
      ContinuousAssign a;
      a.loc = cur().loc;
      a.lhs = lvalue();
      expect_punct("=");
      a.rhs = expression();
      m.items.emplace_back(std::move(a));
    } while (accept_punct(","));
    expect_punct(";");
  }

  void always_block(ModuleAst& m) {
    AlwaysBlock b;
    b.loc = take().loc;
    if (!cur().is_punct("@")) {
      reject_unsupported_keyword();
      unsupported(cur(), "always without event control");
    }
    take();
    if (accept_punct("*")) {
      b.star = true;
    } else {
      expect_punct("(");
      if (accept_punct("*")) {
        b.star = true;
      } else {
        do {
          SensitivityItem s;
          if (accept_keyword("posedge")) {
            s.edge = Edge::Posedge;
          } else if (accept_keyword("negedge")) {
            s.edge = Edge::Negedge;
          }
          s.signal = primary();
          b.sensitivity.push_back(std::move(s));
        } while (accept_keyword("or") || accept_punct(","));
        bool any_edge = b.is_edge_triggered();
        for (const auto& s : b.sensitivity) {
          if (any_edge && s.edge == Edge::None) {
            semantic(b.loc, "mixed edge and level sensitivity");
          }
        }
      }
      expect_punct(")");
    }
    b.body = statement();
    m.items.emplace_back(std::move(b));
  }

  void instantiation(ModuleAst& m) {
    Token type = take();
    if (cur().is_punct("#")) unsupported(cur(), "parameter override");
    do {
      Instance inst;
      inst.module_name = type.text;
      inst.loc = cur().loc;
      inst.instance_name = expect_identifier("instance name");
      if (cur().is_punct("[")) unsupported(cur(), "instance array");
      expect_punct("(");
      if (!cur().is_punct(")")) {
        bool named = cur().is_punct(".");
        do {
          PortConnection c;
          if (named) {
            expect_punct(".");
            if (cur().is_punct("*")) unsupported(cur(), "implicit port connection");
            c.port = expect_identifier("port name");
            expect_punct("(");
            if (!cur().is_punct(")")) c.expr = expression();
            expect_punct(")");
          } else {
            if (cur().is_punct(".")) semantic(cur().loc, "mixed named and positional connections");
            c.expr = expression();
          }
          inst.connections.push_back(std::move(c));
        } while (accept_punct(","));
      }
      expect_punct(")");
      if (declared_.count(inst.instance_name)) {
        semantic(inst.loc, "'" + inst.instance_name + "' declared twice");
      }
      declared_.insert(inst.instance_name);
      m.items.emplace_back(std::move(inst));
    } while (accept_punct(","));
    expect_punct(";");
  }

  // ---- statements ---------------------------------------------------------

  Statement statement() {
    Statement s;
    s.loc = cur().loc;
    const Token& t = cur();
    if (t.is_punct(";")) {
      take();
      s.kind = StmtKind::Null;
    } else if (t.is_keyword("begin")) {
      take();
      s.kind = StmtKind::Block;
      if (accept_punct(":")) s.label = expect_identifier("block label");
      while (!cur().is_keyword("end")) {
        if (cur().kind == TokenKind::End) error_expected({"'end'"});
        s.body.push_back(statement());
      }
      take();
      if (!s.label.empty() && accept_punct(":")) {
        if (expect_identifier("block label") != s.label) {
          semantic(s.loc, "mismatched block label");
        }
      }
    } else if (t.is_keyword("if")) {
      take();
      s.kind = StmtKind::If;
      expect_punct("(");
      s.cond = expression();
      expect_punct(")");
      s.body.push_back(statement());
      if (accept_keyword("else")) s.else_body.push_back(statement());
    } else if (t.is_keyword("case") || t.is_keyword("casez") || t.is_keyword("casex")) {
      s.kind = StmtKind::Case;
      s.case_keyword = take().text;
      expect_punct("(");
      s.cond = expression();
      expect_punct(")");
      bool seen_default = false;
      while (!cur().is_keyword("endcase")) {
        if (cur().kind == TokenKind::End) error_expected({"'endcase'"});
        CaseItem item;
        if (cur().is_keyword("default")) {
          if (seen_default) semantic(cur().loc, "duplicate default case item");
          seen_default = true;
          take();
          accept_punct(":");
        } else {
          do {
            item.labels.push_back(expression());
          } while (accept_punct(","));
          expect_punct(":");
        }
        item.body.push_back(statement());
        s.items.push_back(std::move(item));
      }
      take();
    } else if (t.kind == TokenKind::Identifier || t.is_punct("{")) {
      s.lhs = lvalue();
      if (accept_punct("=")) {
        s.kind = StmtKind::Blocking;
      } else if (accept_punct("<=")) {
        s.kind = StmtKind::NonBlocking;
      } else {
        error_expected({"'='", "'<='"});
      }
      if (cur().is_punct("#") || cur().is_punct("@")) unsupported(cur(), "intra-assignment delay");
      s.rhs = expression();
      expect_punct(";");
    } else {
      if (t.is_punct("@")) unsupported(t, "event control");
      if (t.is_keyword("assign")) unsupported(t, "procedural continuous assignment");
      reject_unsupported_keyword();
      error_expected({"statement"});
    }
    return s;
  }

  Expr lvalue() {
    if (cur().is_punct("{")) {
      Expr e;
      e.kind = ExprKind::Concat;
      e.loc = take().loc;
      do {
        e.operands.push_back(lvalue());
      } while (accept_punct(","));
      expect_punct("}");
      return e;
    }
    if (cur().kind != TokenKind::Identifier) {
      reject_unsupported_keyword();
      error_expected({"identifier", "'{'"});
    }
    return identifier_with_select();
  }

  // ---- expressions --------------------------------------------------------

  Expr expression() {
    Expr cond = binary(1);
    if (!cur().is_punct("?")) return cond;
    Expr e;
    e.kind = ExprKind::Ternary;
    e.loc = take().loc;
    e.operands.push_back(std::move(cond));
    e.operands.push_back(expression());
    expect_punct(":");
    e.operands.push_back(expression());
    return e;
  }

  Expr binary(int min_prec) {
    Expr lhs = unary();
    for (;;) {
      const Token& t = cur();
      if (t.kind != TokenKind::Punct) return lhs;
      int prec = binary_precedence(t.text);
      if (prec == 0 || prec < min_prec) return lhs;
      Token op = take();
      // ** is right-associative, everything else left.
      Expr rhs = binary(op.text == "**" ? prec : prec + 1);
      Expr e;
      e.kind = ExprKind::Binary;
      e.text = normalize_operator(op.text);
      e.loc = op.loc;
      e.operands.push_back(std::move(lhs));
      e.operands.push_back(std::move(rhs));
      lhs = std::move(e);
    }
  }

  Expr unary() {
    if (cur().kind == TokenKind::Punct && is_unary_operator(cur().text)) {
      Token op = take();
      Expr e;
      e.kind = ExprKind::Unary;
      e.text = normalize_operator(op.text);
      e.loc = op.loc;
      e.operands.push_back(unary());
      return e;
    }
    return primary();
  }

  Expr primary() {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::Number: {
        Expr e;
        e.kind = ExprKind::Number;
        e.text = t.text;
        e.loc = t.loc;
        take();
        return e;
      }
      case TokenKind::Identifier:
        return identifier_with_select();
      case TokenKind::SystemIdentifier: {
        if (t.text != "$signed" && t.text != "$unsigned") {
          unsupported(t, "system function " + t.text);
        }
        Expr e;
        e.kind = ExprKind::Unary;
        e.text = t.text;
        e.loc = t.loc;
        take();
        expect_punct("(");
        e.operands.push_back(expression());
        expect_punct(")");
        return e;
      }
      case TokenKind::String:
        unsupported(t, "string literal");
      case TokenKind::Punct:
        if (t.is_punct("(")) {
          take();
          Expr e = expression();
          expect_punct(")");
          return e;
        }
        if (t.is_punct("{")) return concatenation();
        break;
      default:
        break;
    }
    reject_unsupported_keyword();
    error_expected({"expression"});
  }

  Expr concatenation() {
    SourceLoc loc = expect_punct("{").loc;
    Expr first = expression();
    if (cur().is_punct("{")) {
      Expr inner = concatenation();
      expect_punct("}");
      Expr e;
      e.kind = ExprKind::Replicate;
      e.loc = loc;
      e.operands.push_back(std::move(first));
      e.operands.push_back(std::move(inner));
      return e;
    }
    Expr e;
    e.kind = ExprKind::Concat;
    e.loc = loc;
    e.operands.push_back(std::move(first));
    while (accept_punct(",")) e.operands.push_back(expression());
    expect_punct("}");
    return e;
  }

  Expr identifier_with_select() {
    Expr id;
    id.kind = ExprKind::Identifier;
    id.loc = cur().loc;
    id.text = take().text;
    if (!cur().is_punct("[")) return id;
    SourceLoc loc = take().loc;
    Expr first = expression();
    Expr e;
    e.loc = loc;
    e.operands.push_back(std::move(id));
    e.operands.push_back(std::move(first));
    if (accept_punct(":")) {
      e.kind = ExprKind::RangeSelect;
      e.operands.push_back(expression());
    } else if (cur().is_punct("+:") || cur().is_punct("-:")) {
      e.kind = ExprKind::IndexedPartSelect;
      e.text = take().text;
      e.operands.push_back(expression());
    } else {
      e.kind = ExprKind::Index;
    }
    expect_punct("]");
    if (cur().is_punct("[")) unsupported(cur(), "multi-dimensional select");
    return e;
  }

  // ---- semantic checks ----------------------------------------------------

  void finish_module(ModuleAst& m) {
    if (!undeclared_ports_.empty()) {
      semantic(m.loc, "port '" + *undeclared_ports_.begin() + "' has no direction declaration");
    }
    std::set<std::string> known;
    for (const auto& p : m.ports) known.insert(p.name);
    for (const auto& item : m.items) {
      if (const auto* n = std::get_if<NetDecl>(&item)) known.insert(n->name);
      if (const auto* p = std::get_if<ParamDecl>(&item)) known.insert(p->name);
    }

    // Bare identifiers on an assign target or an instance connection may
    // declare an implicit one-bit wire.
    std::vector<ModuleItem> items;
    items.reserve(m.items.size());
    for (auto& item : m.items) {
      std::vector<Expr*> implicit;
      if (auto* a = std::get_if<ContinuousAssign>(&item)) {
        if (a->lhs.kind == ExprKind::Identifier) implicit.push_back(&a->lhs);
      } else if (auto* inst = std::get_if<Instance>(&item)) {
        for (auto& c : inst->connections) {
          if (c.expr && c.expr->kind == ExprKind::Identifier) implicit.push_back(&*c.expr);
        }
      }
      for (const Expr* e : implicit) {
        if (known.insert(e->text).second) {
          NetDecl d;
          d.name = e->text;
          d.loc = e->loc;
          items.emplace_back(std::move(d));
        }
      }
      items.push_back(std::move(item));
    }
    m.items = std::move(items);

    auto check_expr = [&](const Expr& e, auto&& self) -> void {
      if (e.kind == ExprKind::Identifier && !known.count(e.text)) {
        semantic(e.loc, "undeclared identifier '" + e.text + "'");
      }
      for (const auto& o : e.operands) self(o, self);
    };
    auto check = [&](const Expr& e) { check_expr(e, check_expr); };

    std::set<std::string> params;
    for (const auto& item : m.items) {
      if (const auto* p = std::get_if<ParamDecl>(&item)) params.insert(p->name);
    }
    auto check_target = [&](const Expr& lhs, auto&& self) -> void {
      if (lhs.kind == ExprKind::Concat) {
        for (const auto& o : lhs.operands) self(o, self);
        return;
      }
      const Expr& base = lhs.kind == ExprKind::Identifier ? lhs : lhs.operands.front();
      if (const PortDecl* p = m.find_port(base.text); p && p->direction == Direction::Input) {
        semantic(base.loc, "assignment to input port '" + base.text + "'");
      }
      if (params.count(base.text)) {
        semantic(base.loc, "assignment to parameter '" + base.text + "'");
      }
    };
    auto target = [&](const Expr& lhs) {
      check(lhs);
      check_target(lhs, check_target);
    };
    auto check_stmt = [&](const Statement& s, auto&& self) -> void {
      switch (s.kind) {
        case StmtKind::Blocking:
        case StmtKind::NonBlocking:
          target(s.lhs);
          check(s.rhs);
          break;
        case StmtKind::If:
        case StmtKind::Case:
          check(s.cond);
          break;
        default:
          break;
      }
      for (const auto& c : s.body) self(c, self);
      for (const auto& c : s.else_body) self(c, self);
      for (const auto& item : s.items) {
        for (const auto& l : item.labels) check(l);
        for (const auto& c : item.body) self(c, self);
      }
    };

    for (const auto& p : m.ports) {
      if (p.range) {
        check(p.range->msb);
        check(p.range->lsb);
      }
    }
    for (const auto& item : m.items) {
      std::visit(
          [&](const auto& it) {
            using T = std::decay_t<decltype(it)>;
            if constexpr (std::is_same_v<T, NetDecl>) {
              if (it.range) {
                check(it.range->msb);
                check(it.range->lsb);
              }
              if (it.init) check(*it.init);
            } else if constexpr (std::is_same_v<T, ParamDecl>) {
              check(it.value);
            } else if constexpr (std::is_same_v<T, ContinuousAssign>) {
              target(it.lhs);
              check(it.rhs);
            } else if constexpr (std::is_same_v<T, AlwaysBlock>) {
              for (const auto& s : it.sensitivity) check(s.signal);
              check_stmt(it.body, check_stmt);
            } else if constexpr (std::is_same_v<T, Instance>) {
              for (const auto& c : it.connections) {
                if (c.expr) check(*c.expr);
              }
            }
          },
          item);
    }
    declared_.clear();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> undeclared_ports_;
  std::set<std::string> declared_;
};

}  // namespace

std::vector<ModuleAst> parse_source(std::string_view src) {
  return Parser(detail::tokenize(src)).source();
}

ModuleAst parse_module(std::string_view src) {
  auto modules = parse_source(src);
  if (modules.size() != 1) {
    SourceLoc loc = modules.size() > 1 ? modules[1].loc : SourceLoc{1, 1};
    throw SyntaxError(ErrorCode::ParseError, loc,
                      "expected exactly one module, found " + std::to_string(modules.size()));
  }
  return std::move(modules.front());
}

std::set<std::string> instantiated_modules(const ModuleAst& module) {
  std::set<std::string> names;
  for (const auto& item : module.items) {
    if (const auto* inst = std::get_if<Instance>(&item)) names.insert(inst->module_name);
  }
  return names;
}

}  // namespace creativ::hdl
