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

#include "lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "creativ/hdl/parser.hpp"

namespace creativ::hdl {
namespace {

// Verilog-2005 reserved words plus the SystemVerilog keywords models tend
// to emit. None of these may be used as identifiers.
constexpr std::array kReserved = {
    "always", "and", "assign", "automatic", "begin", "buf", "bufif0", "bufif1",
    "case", "casex", "casez", "cell", "cmos", "config", "deassign", "default",
    "defparam", "design", "disable", "edge", "else", "end", "endcase",
    "endconfig", "endfunction", "endgenerate", "endmodule", "endprimitive",
    "endspecify", "endtable", "endtask", "event", "for", "force", "forever",
    "fork", "function", "generate", "genvar", "highz0", "highz1", "if",
    "ifnone", "incdir", "include", "initial", "inout", "input", "instance",
    "integer", "join", "large", "liblist", "library", "localparam",
    "macromodule", "medium", "module", "nand", "negedge", "nmos", "nor",
    "noshowcancelled", "not", "notif0", "notif1", "or", "output", "parameter",
    "pmos", "posedge", "primitive", "pull0", "pull1", "pulldown", "pullup",
    "pulsestyle_onevent", "pulsestyle_ondetect", "rcmos", "real", "realtime",
    "reg", "release", "repeat", "rnmos", "rpmos", "rtran", "rtranif0",
    "rtranif1", "scalared", "showcancelled", "signed", "small", "specify",
    "specparam", "strong0", "strong1", "supply0", "supply1", "table", "task",
    "time", "tran", "tranif0", "tranif1", "tri", "tri0", "tri1", "triand",
    "trior", "trireg", "unsigned", "use", "uwire", "vectored", "wait", "wand",
    "weak0", "weak1", "while", "wire", "wor", "xnor", "xor",
    // SystemVerilog
    "always_comb", "always_ff", "always_latch", "bit", "byte", "enum", "int",
    "interface", "logic", "longint", "package", "priority", "shortint",
    "struct", "typedef", "unique", "import", "endinterface", "endpackage"};

constexpr std::array kPunct3 = {"<<<", ">>>", "===", "!=="};
constexpr std::array kPunct2 = {"==", "!=", "<=", ">=", "&&", "||", "<<", ">>",
                                "**", "~&", "~|", "~^", "^~", "+:", "-:"};
constexpr std::string_view kPunct1 = "()[]{};,.:?=+-*/%&|^~!<>@#";

constexpr std::array kIgnoredDirectives = {
    "timescale", "default_nettype", "resetall", "celldefine", "endcelldefine"};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_base_char(char c) {
  switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'b': case 'o': case 'd': case 'h': return true;
    default: return false;
  }
}
bool is_based_digit(char c) {
  return std::isxdigit(static_cast<unsigned char>(c)) || c == '_' || c == 'x' ||
         c == 'X' || c == 'z' || c == 'Z' || c == '?';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<detail::Token> run() {
    std::vector<detail::Token> out;
    for (;;) {
      skip_trivia();
      SourceLoc loc = here();
      if (at_end()) {
        out.push_back({detail::TokenKind::End, "", loc});
        return out;
      }
      char c = peek();
      if (c == '`') {
        directive(loc);
      } else if (is_ident_start(c)) {
        std::string word = take_while(is_ident_char);
        auto kind = is_reserved_word(word) ? detail::TokenKind::Keyword
                                           : detail::TokenKind::Identifier;
        out.push_back({kind, std::move(word), loc});
      } else if (c == '$') {
        advance();
        std::string word = "$" + take_while(is_ident_char);
        if (word.size() == 1) fail(ErrorCode::LexError, loc, "lone '$'");
        out.push_back({detail::TokenKind::SystemIdentifier, std::move(word), loc});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
        out.push_back({detail::TokenKind::Number, number(loc), loc});
      } else if (c == '"') {
        out.push_back({detail::TokenKind::String, string_literal(loc), loc});
      } else if (c == '\\') {
        fail(ErrorCode::UnsupportedConstruct, loc, "escaped identifier",
             "escaped identifier");
      } else {
        out.push_back({detail::TokenKind::Punct, punct(loc), loc});
      }
    }
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  SourceLoc here() const { return {line_, col_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  template <typename Pred>
  std::string take_while(Pred pred) {
    std::string s;
    while (!at_end() && pred(peek())) {
      s.push_back(peek());
      advance();
    }
    return s;
  }

  [[noreturn]] void fail(ErrorCode code, SourceLoc loc, std::string detail,
                         std::string construct = {}) {
    throw SyntaxError(code, loc, std::move(detail), {}, std::move(construct));
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        SourceLoc start = here();
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (at_end()) fail(ErrorCode::LexError, start, "unterminated block comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  void directive(SourceLoc loc) {
    advance();
    std::string name = take_while(is_ident_char);
    if (std::find(kIgnoredDirectives.begin(), kIgnoredDirectives.end(), name) ==
        kIgnoredDirectives.end()) {
      fail(ErrorCode::UnsupportedConstruct, loc, "compiler directive `" + name,
           "`" + name);
    }
    while (!at_end() && peek() != '\n') advance();
  }

  void skip_blanks() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) advance();
  }

  // Sized and unsized integer literals. Whitespace between size, base and
  // digits is accepted and dropped; underscores are dropped; letters are
  // lower-cased so equal literals compare equal.
  std::string number(SourceLoc loc) {
    std::string text;
    if (peek() != '\'') {
      for (char c : take_while([](char ch) {
             return std::isdigit(static_cast<unsigned char>(ch)) || ch == '_';
           })) {
        if (c != '_') text.push_back(c);
      }
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        fail(ErrorCode::UnsupportedConstruct, loc, "real literal", "real literal");
      }
      std::size_t save_pos = pos_;
      int save_line = line_, save_col = col_;
      skip_blanks();
      if (peek() != '\'' || !(is_base_char(peek(1)) ||
                              ((peek(1) == 's' || peek(1) == 'S') && is_base_char(peek(2))))) {
        pos_ = save_pos;
        line_ = save_line;
        col_ = save_col;
        return text;
      }
    }
    advance();  // '
    text.push_back('\'');
    if (peek() == 's' || peek() == 'S') {
      text.push_back('s');
      advance();
    }
    if (!is_base_char(peek())) {
      if (peek() == '0' || peek() == '1' || peek() == 'x' || peek() == 'z') {
        fail(ErrorCode::UnsupportedConstruct, loc, "unbased fill literal",
             "fill literal");
      }
      fail(ErrorCode::LexError, loc, "malformed based literal");
    }
    text.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(peek()))));
    advance();
    skip_blanks();
    std::string digits;
    for (char c : take_while(is_based_digit)) {
      if (c != '_') digits.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (digits.empty()) fail(ErrorCode::LexError, loc, "based literal without digits");
    return text + digits;
  }

  std::string string_literal(SourceLoc loc) {
    std::string s(1, '"');
    advance();
    while (!at_end() && peek() != '"' && peek() != '\n') {
      if (peek() == '\\') {
        s.push_back(peek());
        advance();
        if (at_end()) break;
      }
      s.push_back(peek());
      advance();
    }
    if (peek() != '"') fail(ErrorCode::LexError, loc, "unterminated string");
    advance();
    s.push_back('"');
    return s;
  }

  std::string punct(SourceLoc loc) {
    std::string_view rest = src_.substr(pos_);
    auto take = [&](std::string_view p) {
      for (std::size_t i = 0; i < p.size(); ++i) advance();
      return std::string(p);
    };
    for (std::string_view p : kPunct3) {
      if (rest.starts_with(p)) return take(p);
    }
    for (std::string_view p : kPunct2) {
      if (rest.starts_with(p)) return take(p);
    }
    if (kPunct1.find(rest.front()) != std::string_view::npos) {
      return take(rest.substr(0, 1));
    }
    fail(ErrorCode::LexError, loc, std::string("unexpected character '") + rest.front() + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

bool is_reserved_word(std::string_view word) {
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

namespace detail {

std::vector<Token> tokenize(std::string_view src) { return Lexer(src).run(); }

}  // namespace detail
}  // namespace creativ::hdl
