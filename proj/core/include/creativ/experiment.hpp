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

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace creativ {

/// The three prompt shapes. Completion feeds fluency and originality,
/// rewrite feeds flexibility, elaboration feeds elaboration.
enum class Experiment { Completion, Rewrite, Elaboration };

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view text);

/// One sampled response slot: (case, experiment, sample index) is unique
/// within a run.
struct WorkUnit {
  std::string case_id;
  Experiment experiment = Experiment::Completion;
  int sample_index = 0;

  auto operator<=>(const WorkUnit&) const = default;
};

}  // namespace creativ
