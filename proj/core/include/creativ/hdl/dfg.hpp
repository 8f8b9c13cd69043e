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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "creativ/hdl/ast.hpp"

namespace creativ::hdl {

/// Word-level data-flow graph. Node ids are indices into `nodes` and are
/// assigned in source order, so equal ASTs give identical graphs.
///
/// Node labels:
///   input:<width>, output:<width>   module ports ("?" for a non-constant width)
///   wire                            declared internal net or variable
///   reg                             storage inserted for edge-triggered writes
///   const                           literal or parameter reference
///   op:<name>                       operator application
///   mux                             ternary, if/else or case selection
///   instance:<module>               submodule instance
///
/// Labels never carry identifier names.
struct Dfg {
  struct Node {
    int id = 0;
    std::string label;

    bool operator==(const Node&) const = default;
  };
  using Edge = std::pair<int, int>;  // value of first feeds second

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  bool has_combinational_cycle = false;

  bool empty() const { return nodes.empty(); }
  bool operator==(const Dfg&) const = default;
};

/// Builds the data-flow graph of `module`. `library` supplies the port
/// directions of instantiated modules; instances of modules absent from it
/// fall back to a usage heuristic. A combinational loop does not throw: the
/// graph is returned with has_combinational_cycle set.
Dfg extract_dfg(const ModuleAst& module, std::span<const ModuleAst> library = {});

/// `id label` per node, then `src -> dst` per edge.
std::string to_graph_text(const Dfg& graph);

/// Structural problems in a graph: dangling edge endpoints, ids that are not
/// positional, outputs unreachable from any input or constant. Empty when
/// the graph is well formed.
std::vector<std::string> check_invariants(const Dfg& graph);

}  // namespace creativ::hdl
