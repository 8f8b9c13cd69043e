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
#include "creativ/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "creativ/error.hpp"

namespace creativ::pipeline {
namespace fs = std::filesystem;
using metrics::MetricReport;
using nlohmann::json;

namespace {

struct Column {
  const char* key;
  const char* title;
  std::optional<double> MetricReport::*field;
};

constexpr Column kColumns[] = {
    {"functionality", "Functionality", &MetricReport::functionality},
    {"fluency", "Fluency", &MetricReport::fluency},
    {"flexibility", "Flexibility", &MetricReport::flexibility},
    {"originality", "Originality", &MetricReport::originality},
    {"elaboration", "Elaboration", &MetricReport::elaboration},
    {"creativity", "Creativity", &MetricReport::creativity},
};

std::string cell(const std::optional<double>& v) { return v ? format_fixed4(*v) : "n/a"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

// Assigns footnote numbers to (metric, flag) pairs in column order.
class Footnotes {
 public:
  std::string markers(const MetricReport& r, const char* metric) {
    std::string out;
    auto it = r.flags.find(metric);
    if (it == r.flags.end()) return out;
    for (const auto& flag : it->second) {
      std::string text = std::string(metric) + ": " + flag;
      auto [pos, inserted] = ids_.try_emplace(text, static_cast<int>(order_.size()) + 1);
      if (inserted) order_.push_back(text);
      out += "[^" + std::to_string(pos->second) + "]";
    }
    return out;
  }

  std::string render() const {
    std::string out;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      out += "[^" + std::to_string(i + 1) + "]: " + order_[i] + "\n";
    }
    return out;
  }

 private:
  std::map<std::string, int> ids_;
  std::vector<std::string> order_;
};

std::string table_header() {
  std::string out = "| Model |";
  for (const auto& c : kColumns) out += std::string(" ") + c.title + " |";
  out += "\n|:--|";
  for (std::size_t i = 0; i < std::size(kColumns); ++i) out += "--:|";
  return out + "\n";
}

std::string flag_list(const MetricReport& r) {
  std::string out;
  for (const auto& [metric, set] : r.flags) {
    for (const auto& f : set) {
      if (!out.empty()) out += ';';
      out += metric + ":" + f;
    }
  }
  return out;
}

std::string csv_header() {
  std::string out = "model_id";
  for (const auto& c : kColumns) out += std::string(",") + c.key;
  return out + ",flags\n";
}

std::string csv_row(const MetricReport& r) {
  std::string out = csv_field(r.model_id);
  for (const auto& c : kColumns) out += "," + cell(r.*(c.field));
  return out + "," + csv_field(flag_list(r)) + "\n";
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::UnwritableOutput, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::UnwritableOutput, "write to " + path.string() + " failed");
}

}  // namespace

std::string format_fixed4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", value);
  std::string s = buf;
  bool negative = !s.empty() && s.front() == '-';
  if (negative) s.erase(0, 1);
  std::size_t dot = s.find('.');
  std::string digits = s.substr(0, dot) + s.substr(dot + 1, 4);
  bool round_up = s[dot + 5] >= '5';
  if (round_up) {
    int i = static_cast<int>(digits.size()) - 1;
    for (; i >= 0; --i) {
      if (digits[i] == '9') {
        digits[i] = '0';
      } else {
        ++digits[i];
        break;
      }
    }
    if (i < 0) digits.insert(digits.begin(), '1');
  }
  std::string out = digits.substr(0, digits.size() - 4) + "." + digits.substr(digits.size() - 4);
  if (negative && out.find_first_not_of("0.") != std::string::npos) out.insert(out.begin(), '-');
  return out;
}

std::string render_report(const MetricReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return json(r).dump(2) + "\n";
    case ReportFormat::Csv:
      return csv_header() + csv_row(r);
    case ReportFormat::Markdown:
      break;
  }
  Footnotes notes;
  std::ostringstream md;
  md << "# Creativity report: " << md_escape(r.model_id) << "\n\n" << table_header();
  md << "| " << md_escape(r.model_id) << " |";
  for (const auto& c : kColumns) md << " " << cell(r.*(c.field)) << notes.markers(r, c.key) << " |";
  md << "\n";
  if (std::string fn = notes.render(); !fn.empty()) md << "\n" << fn;

  md << "\n## Contributing prompts\n\n| Metric | n |\n|:--|--:|\n";
  for (const auto& [metric, n] : r.n_per_metric) md << "| " << metric << " | " << n << " |\n";

  if (!r.accounting.empty()) {
    md << "\n## Work units\n\n"
       << "| Experiment | Generated | Simulated | Functional | Scored | Unscorable | Timeouts |\n"
       << "|:--|--:|--:|--:|--:|--:|--:|\n";
    for (const auto& [exp, a] : r.accounting) {
      md << "| " << exp << " | " << a.generated << " | " << a.simulated << " | " << a.functional << " | "
         << a.scored << " | " << a.unscorable << " | " << a.timeouts << " |\n";
    }
  }
  md << "\nWeights: fluency " << format_fixed4(r.weights.fluency) << ", flexibility "
     << format_fixed4(r.weights.flexibility) << ", originality " << format_fixed4(r.weights.originality)
     << ", elaboration " << format_fixed4(r.weights.elaboration) << "\n";
  return md.str();
}

void write_report(const MetricReport& report, ReportFormat format, const fs::path& path) {
  write_text(path, render_report(report, format));
}

void write_reports(const MetricReport& report, const fs::path& dir) {
  write_report(report, ReportFormat::Json, dir / "report.json");
  write_report(report, ReportFormat::Csv, dir / "report.csv");
  write_report(report, ReportFormat::Markdown, dir / "report.md");
}

MetricReport read_report_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, path.string());
  try {
    return json::parse(in).get<MetricReport>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
  }
}

Comparison compare_models(std::span<const MetricReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::ZeroPrompts, "nothing to compare");
  std::set<std::string> ids;
  for (const auto& r : reports) {
    if (!ids.insert(r.model_id).second) throw Error(ErrorCode::DuplicateModelId, r.model_id);
  }
  Comparison cmp;
  cmp.ranked.assign(reports.begin(), reports.end());
  std::stable_sort(cmp.ranked.begin(), cmp.ranked.end(), [](const MetricReport& a, const MetricReport& b) {
    if (a.creativity.has_value() != b.creativity.has_value()) return a.creativity.has_value();
    if (a.creativity && *a.creativity != *b.creativity) return *a.creativity > *b.creativity;
    return a.model_id < b.model_id;
  });

  std::map<std::string, double> best;
  for (const auto& r : cmp.ranked) {
    for (const auto& c : kColumns) {
      if (const auto& v = r.*(c.field)) {
        auto [it, inserted] = best.try_emplace(c.key, *v);
        if (!inserted) it->second = std::max(it->second, *v);
      }
    }
  }

  Footnotes notes;
  std::ostringstream md, plot;
  md << table_header();
  plot << "# rank model_id";
  for (const auto& c : kColumns) plot << " " << c.key;
  plot << "\n";
  cmp.csv = csv_header();
  int rank = 0;
  for (const auto& r : cmp.ranked) {
    ++rank;
    md << "| " << md_escape(r.model_id) << " |";
    std::string plot_id = r.model_id;
    std::replace_if(plot_id.begin(), plot_id.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }, '_');
    plot << rank << " " << plot_id;
    for (const auto& c : kColumns) {
      const auto& v = r.*(c.field);
      std::string text = cell(v);
      if (v && *v == best[c.key]) text = "**" + text + "**";
      md << " " << text << notes.markers(r, c.key) << " |";
      if (v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", *v);
        plot << " " << buf;
      } else {
        plot << " NA";
      }
    }
    md << "\n";
    plot << "\n";
    cmp.csv += csv_row(r);
  }
  if (std::string fn = notes.render(); !fn.empty()) md << "\n" << fn;
  cmp.markdown = md.str();
  cmp.plot_data = plot.str();
  return cmp;
}

void write_comparison(const Comparison& comparison, const fs::path& dir) {
  write_text(dir / "comparison.md", comparison.markdown);
  write_text(dir / "comparison.csv", comparison.csv);
  write_text(dir / "plotdata.txt", comparison.plot_data);
}

}  // namespace creativ::pipeline
