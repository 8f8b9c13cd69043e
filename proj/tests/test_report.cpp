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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "creativ/error.hpp"
#include "creativ/metrics.hpp"
#include "creativ/report.hpp"
#include "support/paths.hpp"
#include "support/published.hpp"

namespace creativ::pipeline {
namespace {

using metrics::MetricReport;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no creativ::Error thrown";
  return ErrorCode::Interrupted;
}

MetricReport published(const testing::PublishedRow& row) {
  MetricReport r;
  r.model_id = row.model;
  r.functionality = row.functionality;
  r.fluency = row.fluency;
  r.flexibility = row.flexibility;
  r.originality = row.originality;
  r.elaboration = static_cast<double>(row.elaborated) / testing::kPublishedMultiPrompts;
  r.creativity = metrics::compute_creativity(*r.fluency, *r.flexibility, *r.originality, *r.elaboration);
  return r;
}

std::vector<MetricReport> published_reports() {
  std::vector<MetricReport> out;
  for (const auto& row : testing::kPublished) out.push_back(published(row));
  return out;
}

TEST(FormatFixed4, RoundsHalfUp) {
  EXPECT_EQ(format_fixed4(0.22005), "0.2201");
  EXPECT_EQ(format_fixed4(0.22004999), "0.2200");
  EXPECT_EQ(format_fixed4(0.00005), "0.0001");
  EXPECT_EQ(format_fixed4(0.0), "0.0000");
  EXPECT_EQ(format_fixed4(1.0), "1.0000");
  EXPECT_EQ(format_fixed4(0.99995), "1.0000");
  EXPECT_EQ(format_fixed4(2.0 / 3), "0.6667");
  EXPECT_EQ(format_fixed4(1.0 / 3), "0.3333");
  EXPECT_EQ(format_fixed4(-0.5), "-0.5000");
}

TEST(Render, PublishedRowMarkdown) {
  MetricReport r = published(testing::kPublished[4]);
  std::string md = render_report(r, ReportFormat::Markdown);
  EXPECT_NE(md.find("| Model | Functionality | Fluency | Flexibility | Originality | Elaboration | Creativity |"),
            std::string::npos);
  EXPECT_NE(md.find("| GPT-3.5 | 0.3083 | 0.1343 | 0.1600 | 0.2526 | 0.3333 | 0.2201 |"), std::string::npos) << md;
}

TEST(Render, PublishedRowCsv) {
  MetricReport r = published(testing::kPublished[0]);
  EXPECT_EQ(render_report(r, ReportFormat::Csv),
            "model_id,functionality,fluency,flexibility,originality,elaboration,creativity,flags\n"
            "CodeLlama-7B,0.2417,0.1483,0.0000,0.2926,0.2222,0.1658,\n");
}

TEST(Render, MissingMetricsAndFlags) {
  MetricReport r;
  r.model_id = "partial";
  r.fluency = 0.0;
  r.originality = 0.0;
  r.flags["fluency"] = {"NoFunctionalResponses"};
  r.flags["originality"] = {"NoFunctionalResponses"};
  r.flags["creativity"] = {"NotAllComponents"};
  std::string md = render_report(r, ReportFormat::Markdown);
  EXPECT_NE(md.find("| partial | n/a | 0.0000[^1] | n/a | 0.0000[^2] | n/a | n/a[^3] |"), std::string::npos) << md;
  EXPECT_NE(md.find("[^1]: fluency: NoFunctionalResponses"), std::string::npos);
  EXPECT_NE(md.find("[^3]: creativity: NotAllComponents"), std::string::npos);
  std::string csv = render_report(r, ReportFormat::Csv);
  EXPECT_NE(csv.find("partial,n/a,0.0000,n/a,0.0000,n/a,n/a,"), std::string::npos) << csv;
  EXPECT_NE(csv.find("NotAllComponents"), std::string::npos);
}

TEST(Render, JsonKeepsFullPrecision) {
  MetricReport r = published(testing::kPublished[4]);
  r.fluency = 1.0 / 3;
  auto j = nlohmann::json::parse(render_report(r, ReportFormat::Json));
  EXPECT_EQ(j.at("fluency").get<double>(), 1.0 / 3);
  EXPECT_EQ(j.get<MetricReport>(), r);
}

TEST(Render, Deterministic) {
  auto a = published_reports();
  for (auto fmt : {ReportFormat::Json, ReportFormat::Csv, ReportFormat::Markdown}) {
    EXPECT_EQ(render_report(a[2], fmt), render_report(published(testing::kPublished[2]), fmt));
  }
}

TEST(Write, FilesAndReadBack) {
  testing::TempDir dir;
  MetricReport r = published(testing::kPublished[5]);
  write_reports(r, dir / "out");
  for (const char* f : {"report.json", "report.csv", "report.md"}) EXPECT_TRUE(std::filesystem::exists(dir / "out" / f));
  EXPECT_EQ(read_report_json(dir / "out" / "report.json"), r);
  EXPECT_EQ(testing::read_text(dir / "out" / "report.md"), render_report(r, ReportFormat::Markdown));
  testing::write_text(dir / "blocker", "x");
  EXPECT_EQ(code_of([&] { write_report(r, ReportFormat::Csv, dir / "blocker" / "r.csv"); }),
            ErrorCode::UnwritableOutput);
}

TEST(Compare, PublishedTable) {
  auto reports = published_reports();
  Comparison cmp = compare_models(reports);
  std::vector<std::string> order;
  for (const auto& r : cmp.ranked) order.push_back(r.model_id);
  EXPECT_EQ(order, (std::vector<std::string>{"GPT-3.5", "GPT-4", "CodeLlama-13B", "VeriGen-6B", "VeriGen-16B",
                                             "CodeLlama-7B"}));
  // The published bold entries.
  EXPECT_NE(cmp.markdown.find("| GPT-3.5 | 0.3083 | 0.1343 | **0.1600** | 0.2526 | **0.3333** | **0.2201** |"),
            std::string::npos)
      << cmp.markdown;
  EXPECT_NE(cmp.markdown.find("| GPT-4 | **0.3750** | **0.1644** | 0.0795 | 0.2657 | **0.3333** | 0.2107 |"),
            std::string::npos);
  EXPECT_NE(cmp.markdown.find("| CodeLlama-13B | 0.3167 | 0.1611 | 0.0260 | **0.3021** | **0.3333** | 0.2056 |"),
            std::string::npos);
  EXPECT_NE(cmp.markdown.find("| CodeLlama-7B | 0.2417 | 0.1483 | 0.0000 | 0.2926 | 0.2222 | 0.1658 |"),
            std::string::npos);
  EXPECT_EQ(cmp.csv.substr(0, cmp.csv.find('\n')), "model_id,functionality,fluency,flexibility,originality,elaboration,creativity,flags");
  EXPECT_NE(cmp.plot_data.find("1 GPT-3.5 0.308300 0.134300 0.160000 0.252600 0.333333 0.220058"), std::string::npos)
      << cmp.plot_data;

  // Input order does not matter.
  std::reverse(reports.begin(), reports.end());
  EXPECT_EQ(compare_models(reports).markdown, cmp.markdown);
}

TEST(Compare, TiesAndMissingCreativity) {
  auto reports = published_reports();
  reports[0].creativity.reset();
  reports[1].creativity = reports[2].creativity;
  Comparison cmp = compare_models(reports);
  EXPECT_EQ(cmp.ranked.back().model_id, "CodeLlama-7B");
  // Equal creativity ranks by model id.
  auto pos = [&](const std::string& id) {
    return std::find_if(cmp.ranked.begin(), cmp.ranked.end(), [&](const auto& r) { return r.model_id == id; }) -
           cmp.ranked.begin();
  };
  EXPECT_LT(pos("CodeLlama-13B"), pos("VeriGen-6B"));
}

TEST(Compare, Errors) {
  std::vector<MetricReport> none;
  EXPECT_EQ(code_of([&] { compare_models(none); }), ErrorCode::ZeroPrompts);
  auto reports = published_reports();
  reports[3].model_id = reports[1].model_id;
  EXPECT_EQ(code_of([&] { compare_models(reports); }), ErrorCode::DuplicateModelId);
}

TEST(Compare, WritesFiles) {
  testing::TempDir dir;
  auto reports = published_reports();
  write_comparison(compare_models(reports), dir.path());
  for (const char* f : {"comparison.md", "comparison.csv", "plotdata.txt"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
}

}  // namespace
}  // namespace creativ::pipeline
