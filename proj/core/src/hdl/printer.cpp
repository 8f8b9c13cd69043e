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

#include <sstream>

#include "creativ/hdl/parser.hpp"

namespace creativ::hdl {
namespace {

bool needs_parens(const Expr& e) {
  return e.kind == ExprKind::Binary || e.kind == ExprKind::Ternary ||
         e.kind == ExprKind::Unary;
}

void print(std::ostream& os, const Expr& e);

// Operands of operators are parenthesized whenever they are themselves
// operator applications, so the printed text never depends on precedence.
void print_operand(std::ostream& os, const Expr& e) {
  if (needs_parens(e)) {
    os << '(';
    print(os, e);
    os << ')';
  } else {
    print(os, e);
  }
}

void print(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case ExprKind::Identifier:
    case ExprKind::Number:
      os << e.text;
      break;
    case ExprKind::Unary:
      if (e.text.front() == '$') {
        os << e.text << '(';
        print(os, e.operands[0]);
        os << ')';
      } else {
        os << e.text;
        print_operand(os, e.operands[0]);
      }
      break;
    case ExprKind::Binary:
      print_operand(os, e.operands[0]);
      os << ' ' << e.text << ' ';
      print_operand(os, e.operands[1]);
      break;
    case ExprKind::Ternary:
      print_operand(os, e.operands[0]);
      os << " ? ";
      print_operand(os, e.operands[1]);
      os << " : ";
      print_operand(os, e.operands[2]);
      break;
    case ExprKind::Concat:
      os << '{';
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) os << ", ";
        print(os, e.operands[i]);
      }
      os << '}';
      break;
    case ExprKind::Replicate:
      os << '{';
      print_operand(os, e.operands[0]);
      print(os, e.operands[1]);
      os << '}';
      break;
    case ExprKind::Index:
      print(os, e.operands[0]);
      os << '[';
      print(os, e.operands[1]);
      os << ']';
      break;
    case ExprKind::RangeSelect:
      print(os, e.operands[0]);
      os << '[';
      print(os, e.operands[1]);
      os << ':';
      print(os, e.operands[2]);
      os << ']';
      break;
    case ExprKind::IndexedPartSelect:
      print(os, e.operands[0]);
      os << '[';
      print(os, e.operands[1]);
      os << ' ' << e.text << ' ';
      print(os, e.operands[2]);
      os << ']';
      break;
  }
}

std::string range_text(const std::optional<Range>& r) {
  if (!r) return {};
  return "[" + print_expr(r->msb) + ":" + print_expr(r->lsb) + "] ";
}

const char* direction_text(Direction d) {
  switch (d) {
    case Direction::Input: return "input";
    case Direction::Output: return "output";
    case Direction::Inout: return "inout";
  }
  return "input";
}

std::string port_text(const PortDecl& p) {
  std::string s = direction_text(p.direction);
  if (p.is_reg) s += " reg";
  if (p.is_signed) s += " signed";
  s += " " + range_text(p.range) + p.name;
  return s;
}

class StatementPrinter {
 public:
  explicit StatementPrinter(std::ostream& os) : os_(os) {}

  void print(const Statement& s, int indent) {
    pad(indent);
    print_inline(s, indent);
  }

 private:
  void pad(int indent) { os_ << std::string(static_cast<std::size_t>(indent) * 2, ' '); }

  // Child statements of if/case: blocks stay on the header line.
  void child(const Statement& s, int indent) {
    if (s.kind == StmtKind::Block) {
      os_ << ' ';
      print_inline(s, indent);
    } else {
      os_ << '\n';
      print(s, indent + 1);
    }
  }

  void print_inline(const Statement& s, int indent) {
    switch (s.kind) {
      case StmtKind::Null:
        os_ << ";\n";
        break;
      case StmtKind::Block:
        os_ << "begin";
        if (!s.label.empty()) os_ << " : " << s.label;
        os_ << '\n';
        for (const auto& c : s.body) print(c, indent + 1);
        pad(indent);
        os_ << "end\n";
        break;
      case StmtKind::If:
        os_ << "if (" << print_expr(s.cond) << ")";
        child(s.body.front(), indent);
        if (!s.else_body.empty()) {
          pad(indent);
          os_ << "else";
          const Statement& e = s.else_body.front();
          if (e.kind == StmtKind::If) {
            os_ << ' ';
            print_inline(e, indent);
          } else {
            child(e, indent);
          }
        }
        break;
      case StmtKind::Case:
        os_ << s.case_keyword << " (" << print_expr(s.cond) << ")\n";
        for (const auto& item : s.items) {
          pad(indent + 1);
          if (item.labels.empty()) {
            os_ << "default:";
          } else {
            for (std::size_t i = 0; i < item.labels.size(); ++i) {
              if (i) os_ << ", ";
              os_ << print_expr(item.labels[i]);
            }
            os_ << ':';
          }
          child(item.body.front(), indent + 1);
        }
        pad(indent);
        os_ << "endcase\n";
        break;
      case StmtKind::Blocking:
        os_ << print_expr(s.lhs) << " = " << print_expr(s.rhs) << ";\n";
        break;
      case StmtKind::NonBlocking:
        os_ << print_expr(s.lhs) << " <= " << print_expr(s.rhs) << ";\n";
        break;
    }
  }

  std::ostream& os_;
};

}  // namespace

std::string print_expr(const Expr& expr) {
  std::ostringstream os;
  print(os, expr);
  return os.str();
}

std::string print_module(const ModuleAst& m) {
  std::ostringstream os;
  os << "module " << m.name << '(';
  if (m.ansi_header) {
    for (std::size_t i = 0; i < m.ports.size(); ++i) {
      os << (i ? ",\n  " : "\n  ") << port_text(m.ports[i]);
    }
    if (!m.ports.empty()) os << '\n';
    os << ");\n";
  } else {
    for (std::size_t i = 0; i < m.ports.size(); ++i) {
      if (i) os << ", ";
      os << m.ports[i].name;
    }
    os << ");\n";
    for (const auto& p : m.ports) os << "  " << port_text(p) << ";\n";
  }

  StatementPrinter stmts(os);
  for (const auto& item : m.items) {
    std::visit(
        [&](const auto& it) {
          using T = std::decay_t<decltype(it)>;
          if constexpr (std::is_same_v<T, NetDecl>) {
            os << "  "
               << (it.kind == NetKind::Wire ? "wire"
                   : it.kind == NetKind::Reg ? "reg"
                                             : "integer");
            if (it.is_signed) os << " signed";
            os << ' ' << range_text(it.range) << it.name;
            if (it.init) os << " = " << print_expr(*it.init);
            os << ";\n";
          } else if constexpr (std::is_same_v<T, ParamDecl>) {
            os << "  " << (it.local ? "localparam " : "parameter ")
               << range_text(it.range) << it.name << " = " << print_expr(it.value) << ";\n";
          } else if constexpr (std::is_same_v<T, ContinuousAssign>) {
            os << "  assign " << print_expr(it.lhs) << " = " << print_expr(it.rhs) << ";\n";
          } else if constexpr (std::is_same_v<T, AlwaysBlock>) {
            os << "  always @(";
            if (it.star) {
              os << '*';
            } else {
              for (std::size_t i = 0; i < it.sensitivity.size(); ++i) {
                const auto& s = it.sensitivity[i];
                if (i) os << " or ";
                if (s.edge == Edge::Posedge) os << "posedge ";
                if (s.edge == Edge::Negedge) os << "negedge ";
                os << print_expr(s.signal);
              }
            }
            os << ")\n";
            stmts.print(it.body, 2);
          } else if constexpr (std::is_same_v<T, Instance>) {
            os << "  " << it.module_name << ' ' << it.instance_name << '(';
            for (std::size_t i = 0; i < it.connections.size(); ++i) {
              const auto& c = it.connections[i];
              if (i) os << ", ";
              if (!c.port.empty()) {
                os << '.' << c.port << '(' << (c.expr ? print_expr(*c.expr) : "") << ')';
              } else {
                os << print_expr(*c.expr);
              }
            }
            os << ");\n";
          }
        },
        item);
  }
  os << "endmodule\n";
  return os.str();
}

}  // namespace creativ::hdl
