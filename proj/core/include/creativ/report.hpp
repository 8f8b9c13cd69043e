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
// Report rendering and cross-model comparison.

#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "creativ/metrics.hpp"

namespace creativ::pipeline {

enum class ReportFormat { Json, Csv, Markdown };

/// `value` rounded half-up to 4 decimals ("0.2201" for 0.22005).
std::string format_fixed4(double value);

/// Deterministic rendering. JSON keeps full precision; CSV and markdown
/// print 4 decimals, "n/a" for metrics that were not run, and mark flagged
/// metrics with footnotes.
std::string render_report(const metrics::MetricReport& report, ReportFormat format);

/// Writes the rendering to `path`. Throws UnwritableOutput.
void write_report(const metrics::MetricReport& report, ReportFormat format, const std::filesystem::path& path);

/// Writes report.json, report.csv and report.md into `dir`.
void write_reports(const metrics::MetricReport& report, const std::filesystem::path& dir);

metrics::MetricReport read_report_json(const std::filesystem::path& path);

struct Comparison {
  std::vector<metrics::MetricReport> ranked;  // creativity descending, ties by model_id
  std::string markdown;                       // best value per metric in bold
  std::string csv;
  std::string plot_data;                      // whitespace-separated columns
};

/// Throws DuplicateModelId when two reports share a model_id, ZeroPrompts
/// for an empty list.
Comparison compare_models(std::span<const metrics::MetricReport> reports);

/// Writes comparison.md, comparison.csv and plotdata.txt into `dir`.
void write_comparison(const Comparison& comparison, const std::filesystem::path& dir);

}  // namespace creativ::pipeline
