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

#include "creativ/hdl/ast.hpp"

#include <cstdlib>

namespace creativ::hdl {

const PortDecl* ModuleAst::find_port(const std::string& port_name) const {
  for (const auto& p : ports) {
    if (p.name == port_name) return &p;
  }
  return nullptr;
}

namespace {

std::optional<std::int64_t> parse_literal(const std::string& text) {
  auto tick = text.find('\'');
  if (tick == std::string::npos) {
    if (text.empty() || text.size() > 18) return std::nullopt;
    return std::strtoll(text.c_str(), nullptr, 10);
  }
  std::size_t p = tick + 1;
  if (p < text.size() && text[p] == 's') ++p;
  if (p >= text.size()) return std::nullopt;
  int base = 10;
  switch (text[p]) {
    case 'b': base = 2; break;
    case 'o': base = 8; break;
    case 'h': base = 16; break;
    default: base = 10; break;
  }
  std::string digits = text.substr(p + 1);
  if (digits.empty() || digits.find_first_of("xz?") != std::string::npos) {
    return std::nullopt;
  }
  // Values beyond 62 bits are not needed for widths or parameters.
  std::int64_t value = 0;
  for (char c : digits) {
    int d = c <= '9' ? c - '0' : c - 'a' + 10;
    if (d >= base) return std::nullopt;
    if (value > (std::int64_t{1} << 56)) return std::nullopt;
    value = value * base + d;
  }
  return value;
}

std::optional<std::int64_t> evaluate(const Expr& e, const std::vector<ParamDecl>& params,
                                     int depth) {
  if (depth > 32) return std::nullopt;
  auto sub = [&](std::size_t i) { return evaluate(e.operands[i], params, depth + 1); };
  switch (e.kind) {
    case ExprKind::Number:
      return parse_literal(e.text);
    case ExprKind::Identifier:
      for (const auto& p : params) {
        if (p.name == e.text) return evaluate(p.value, params, depth + 1);
      }
      return std::nullopt;
    case ExprKind::Unary: {
      auto v = sub(0);
      if (!v) return std::nullopt;
      if (e.text == "-") return -*v;
      if (e.text == "+" || e.text == "$signed" || e.text == "$unsigned") return v;
      if (e.text == "!") return *v == 0 ? 1 : 0;
      return std::nullopt;
    }
    case ExprKind::Binary: {
      auto a = sub(0);
      auto b = sub(1);
      if (!a || !b) return std::nullopt;
      const std::string& op = e.text;
      if (op == "+") return *a + *b;
      if (op == "-") return *a - *b;
      if (op == "*") return *a * *b;
      if (op == "/") return *b == 0 ? std::nullopt : std::optional(*a / *b);
      if (op == "%") return *b == 0 ? std::nullopt : std::optional(*a % *b);
      if (op == "<<") return (*b < 0 || *b > 62) ? std::nullopt : std::optional(*a << *b);
      if (op == ">>") return (*b < 0 || *b > 62) ? std::nullopt : std::optional(*a >> *b);
      if (op == "&") return *a & *b;
      if (op == "|") return *a | *b;
      if (op == "^") return *a ^ *b;
      if (op == "==") return *a == *b ? 1 : 0;
      if (op == "!=") return *a != *b ? 1 : 0;
      if (op == "<") return *a < *b ? 1 : 0;
      if (op == "<=") return *a <= *b ? 1 : 0;
      if (op == ">") return *a > *b ? 1 : 0;
      if (op == ">=") return *a >= *b ? 1 : 0;
      if (op == "&&") return (*a && *b) ? 1 : 0;
      if (op == "||") return (*a || *b) ? 1 : 0;
      if (op == "**") {
        if (*b < 0 || *b > 62) return std::nullopt;
        std::int64_t r = 1;
        for (std::int64_t i = 0; i < *b; ++i) r *= *a;
        return r;
      }
      return std::nullopt;
    }
    case ExprKind::Ternary: {
      auto c = sub(0);
      if (!c) return std::nullopt;
      return *c ? sub(1) : sub(2);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<std::int64_t> evaluate_constant(const Expr& expr,
                                              const std::vector<ParamDecl>& params) {
  return evaluate(expr, params, 0);
}

std::optional<int> range_width(const std::optional<Range>& range,
                               const std::vector<ParamDecl>& params) {
  if (!range) return 1;
  auto msb = evaluate_constant(range->msb, params);
  auto lsb = evaluate_constant(range->lsb, params);
  if (!msb || !lsb) return std::nullopt;
  return static_cast<int>(std::llabs(*msb - *lsb) + 1);
}

std::vector<ParamDecl> collect_params(const ModuleAst& module) {
  std::vector<ParamDecl> out;
  for (const auto& item : module.items) {
    if (const auto* p = std::get_if<ParamDecl>(&item)) out.push_back(*p);
  }
  return out;
}

}  // namespace creativ::hdl
