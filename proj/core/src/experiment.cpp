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

#include "creativ/experiment.hpp"

namespace creativ {

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::Completion: return "completion";
    case Experiment::Rewrite: return "rewrite";
    case Experiment::Elaboration: return "elaboration";
  }
  return "completion";
}

std::optional<Experiment> parse_experiment(std::string_view text) {
  if (text == "completion") return Experiment::Completion;
  if (text == "rewrite") return Experiment::Rewrite;
  if (text == "elaboration") return Experiment::Elaboration;
  return std::nullopt;
}

}  // namespace creativ
