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

#include "creativ/corpus.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "creativ/error.hpp"
#include "creativ/hdl/parser.hpp"
#include "creativ/pattern.hpp"

namespace creativ::corpus {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[noreturn]] void malformed(std::size_t index, const std::string& what) {
  throw Error(ErrorCode::MalformedManifest, "entry " + std::to_string(index) + ": " + what);
}

std::string string_field(const json& entry, std::size_t index, const char* key) {
  auto it = entry.find(key);
  if (it == entry.end() || !it->is_string()) {
    malformed(index, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::string comment_block(std::string_view text) {
  std::string out;
  std::size_t start = 0;
  for (;;) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    out += line.empty() ? "//\n" : "// " + std::string(line) + "\n";
    if (nl == std::string_view::npos) break;
    start = nl + 1;
    if (start == text.size()) break;
  }
  return out;
}

std::string with_newline(std::string s) {
  if (!s.empty() && s.back() != '\n') s.push_back('\n');
  return s;
}

void require_kind(const PromptCase& c, CaseKind kind, const char* builder) {
  if (c.kind != kind) {
    throw Error(ErrorCode::WrongKind, std::string(builder) + " does not accept case '" + c.id + "'");
  }
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Offset of the first `module` keyword outside comments, or npos.
std::size_t find_module_keyword(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, 2, "//") == 0) {
      i = s.find('\n', i);
      if (i == std::string_view::npos) return i;
    } else if (s.compare(i, 2, "/*") == 0) {
      i = s.find("*/", i + 2);
      if (i == std::string_view::npos) return i;
      i += 2;
    } else if (s[i] == '"') {
      i = s.find('"', i + 1);
      if (i == std::string_view::npos) return i;
      ++i;
    } else if (is_ident_char(s[i])) {
      std::size_t start = i;
      while (i < s.size() && is_ident_char(s[i])) ++i;
      if (s.substr(start, i - start) == "module") return start;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

std::string strip_code_fences(std::string_view text) {
  std::string out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    std::size_t first = line.find_first_not_of(" \t");
    bool fence = first != std::string_view::npos && line.substr(first).starts_with("```");
    if (!fence) {
      out += line;
      if (nl != std::string_view::npos) out += '\n';
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

}  // namespace

std::string PromptCase::top_module_name() const {
  std::size_t at = find_module_keyword(interface_decl);
  if (at == std::string::npos) return {};
  std::size_t i = at + 6;
  while (i < interface_decl.size() && std::isspace(static_cast<unsigned char>(interface_decl[i]))) ++i;
  std::size_t start = i;
  while (i < interface_decl.size() && is_ident_char(interface_decl[i])) ++i;
  return interface_decl.substr(start, i - start);
}

const PromptCase* Corpus::find(std::string_view id) const {
  for (const auto& c : cases) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

Corpus load_corpus(const fs::path& dir) {
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::exists(manifest_path)) throw Error(ErrorCode::MissingFile, manifest_path.string());
  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedManifest, e.what());
  }
  if (!manifest.is_array()) throw Error(ErrorCode::MalformedManifest, "manifest must be a JSON array");

  Corpus corpus;
  corpus.source_path = dir;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const json& entry = manifest[i];
    if (!entry.is_object()) malformed(i, "not an object");
    PromptCase c;
    c.id = string_field(entry, i, "id");
    if (c.id.empty()) malformed(i, "empty id");
    if (!ids.insert(c.id).second) throw Error(ErrorCode::DuplicateId, c.id);
    std::string kind = string_field(entry, i, "kind");
    if (kind == "single") c.kind = CaseKind::Single;
    else if (kind == "multi") c.kind = CaseKind::Multi;
    else malformed(i, "kind must be \"single\" or \"multi\"");
    c.description = string_field(entry, i, "description");
    c.interface_decl = string_field(entry, i, "interface_decl");
    c.golden_solution = read_file(dir / string_field(entry, i, "golden"));
    c.testbench = read_file(dir / string_field(entry, i, "testbench"));
    if (auto it = entry.find("submodules"); it != entry.end()) {
      if (!it->is_array()) malformed(i, "submodules must be an array");
      for (const auto& p : *it) {
        if (!p.is_string()) malformed(i, "submodule paths must be strings");
        c.submodules.push_back(read_file(dir / p.get<std::string>()));
      }
    }
    if ((c.kind == CaseKind::Multi) != !c.submodules.empty()) {
      malformed(i, "kind \"multi\" requires submodules and \"single\" forbids them");
    }
    if (auto it = entry.find("pass_rule"); it != entry.end() && !it->is_null()) {
      if (!it->is_object()) malformed(i, "pass_rule must be an object");
      PassRule rule;
      rule.failure_pattern = string_field(*it, i, "failure_pattern");
      compile_pattern(rule.failure_pattern);
      if (auto pp = it->find("pass_pattern"); pp != it->end() && !pp->is_null()) {
        if (!pp->is_string()) malformed(i, "pass_pattern must be a string");
        rule.pass_pattern = pp->get<std::string>();
        compile_pattern(*rule.pass_pattern);
      }
      c.pass_rule = std::move(rule);
    }
    if (c.top_module_name().empty()) malformed(i, "interface_decl has no module header");

    auto check_subset = [&](const std::string& src, const std::string& what) {
      try {
        return hdl::parse_source(src);
      } catch (const hdl::SyntaxError& e) {
        auto loc = e.location();
        throw Error(ErrorCode::SubsetParseError, "case '" + c.id + "' " + what + " at " +
                                                     std::to_string(loc.line) + ":" +
                                                     std::to_string(loc.column) + ": " + e.detail());
      }
    };
    auto golden = check_subset(c.golden_solution, "golden");
    bool has_top = false;
    for (const auto& m : golden) has_top = has_top || m.name == c.top_module_name();
    if (!has_top) {
      throw Error(ErrorCode::SubsetParseError,
                  "case '" + c.id + "' golden does not define module '" + c.top_module_name() + "'");
    }
    for (std::size_t s = 0; s < c.submodules.size(); ++s) {
      check_subset(c.submodules[s], "submodule " + std::to_string(s));
    }

    (c.kind == CaseKind::Single ? corpus.p_single : corpus.p_multi)++;
    corpus.cases.push_back(std::move(c));
  }
  return corpus;
}

std::string build_completion_prompt(const PromptCase& c) {
  require_kind(c, CaseKind::Single, "build_completion_prompt");
  return comment_block(c.description) + c.interface_decl;
}

std::string build_rewrite_prompt(const PromptCase& c, const PromptTemplates& templates) {
  require_kind(c, CaseKind::Single, "build_rewrite_prompt");
  return comment_block(templates.rewrite_instruction) + "//\n" + comment_block(c.description) +
         "\n" + with_newline(c.golden_solution) + "\n// Alternative implementation:\n";
}

std::string build_elaboration_prompt(const PromptCase& c, const PromptTemplates& templates) {
  require_kind(c, CaseKind::Multi, "build_elaboration_prompt");
  if (c.submodules.empty()) {
    throw Error(ErrorCode::WrongKind, "case '" + c.id + "' has no submodules to elaborate with");
  }
  std::string out;
  for (const auto& sub : c.submodules) out += with_newline(sub) + "\n";
  return out + comment_block(templates.elaboration_instruction) + "//\n" +
         comment_block(c.description) + c.interface_decl;
}

std::string build_prompt(Experiment e, const PromptCase& c, const PromptTemplates& templates) {
  switch (e) {
    case Experiment::Completion: return build_completion_prompt(c);
    case Experiment::Rewrite: return build_rewrite_prompt(c, templates);
    case Experiment::Elaboration: return build_elaboration_prompt(c, templates);
  }
  return {};
}

std::string candidate_source(Experiment e, const PromptCase& c, std::string_view trimmed_response) {
  std::string text = strip_code_fences(trimmed_response);
  std::size_t at = find_module_keyword(text);
  if (at != std::string::npos) return text.substr(at);
  if (e == Experiment::Rewrite) return text;
  return with_newline(c.interface_decl) + text;
}

std::vector<std::string> submodule_names(const PromptCase& c) {
  std::vector<std::string> names;
  for (const auto& src : c.submodules) {
    for (const auto& m : hdl::parse_source(src)) names.push_back(m.name);
  }
  return names;
}

bool experiment_applies(Experiment e, CaseKind kind) {
  return (e == Experiment::Elaboration) == (kind == CaseKind::Multi);
}

}  // namespace creativ::corpus
