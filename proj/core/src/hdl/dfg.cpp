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

#include "creativ/hdl/dfg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace creativ::hdl {
namespace {

std::string binary_op_name(const std::string& op) {
  static const std::map<std::string, std::string> names = {
      {"+", "add"}, {"-", "sub"}, {"*", "mul"}, {"/", "div"}, {"%", "mod"},
      {"**", "pow"}, {"&", "and"}, {"|", "or"}, {"^", "xor"}, {"~^", "xnor"},
      {"&&", "land"}, {"||", "lor"}, {"==", "eq"}, {"!=", "ne"}, {"===", "ceq"},
      {"!==", "cne"}, {"<", "lt"}, {"<=", "le"}, {">", "gt"}, {">=", "ge"},
      {"<<", "shl"}, {">>", "shr"}, {"<<<", "ashl"}, {">>>", "ashr"}};
  auto it = names.find(op);
  return it == names.end() ? op : it->second;
}

std::string unary_op_name(const std::string& op) {
  static const std::map<std::string, std::string> names = {
      {"~", "not"}, {"!", "lnot"}, {"-", "neg"}, {"+", "pos"},
      {"&", "reduce_and"}, {"~&", "reduce_nand"}, {"|", "reduce_or"},
      {"~|", "reduce_nor"}, {"^", "reduce_xor"}, {"~^", "reduce_xnor"},
      {"$signed", "signed"}, {"$unsigned", "unsigned"}};
  auto it = names.find(op);
  return it == names.end() ? op : it->second;
}

// Signal values live in an insertion-ordered map so that merge nodes are
// created in first-assignment order rather than name order.
class Env {
 public:
  std::optional<int> get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }
  void set(const std::string& name, int node) {
    if (values_.emplace(name, node).second) {
      order_.push_back(name);
    } else {
      values_[name] = node;
    }
  }
  const std::vector<std::string>& order() const { return order_; }

 private:
  std::map<std::string, int> values_;
  std::vector<std::string> order_;
};

struct ProcState {
  Env blocking;
  Env nonblocking;
};

class Extractor {
 public:
  Extractor(const ModuleAst& m, std::span<const ModuleAst> library)
      : m_(m), library_(library), params_(collect_params(m)) {}

  Dfg run() {
    for (const auto& p : m_.ports) {
      auto w = range_width(p.range, params_);
      std::string width = w ? std::to_string(*w) : "?";
      int id = add_node((p.direction == Direction::Output ? "output:" : "input:") + width);
      signals_[p.name] = id;
      if (p.direction != Direction::Output) inputs_.insert(p.name);
    }
    for (const auto& item : m_.items) {
      if (const auto* n = std::get_if<NetDecl>(&item)) signals_[n->name] = add_node("wire");
    }
    collect_driven();
    for (const auto& item : m_.items) {
      std::visit([this](const auto& it) { visit_item(it); }, item);
    }
    g_.has_combinational_cycle = detect_combinational_cycle();
    return std::move(g_);
  }

 private:
  int add_node(std::string label) {
    int id = static_cast<int>(g_.nodes.size());
    g_.nodes.push_back({id, std::move(label)});
    return id;
  }
  void add_edge(int src, int dst) { g_.edges.emplace_back(src, dst); }

  int signal(const std::string& name) const {
    auto it = signals_.find(name);
    if (it == signals_.end()) throw std::logic_error("unknown signal " + name);
    return it->second;
  }

  bool is_constant(const Expr& e) const {
    return evaluate_constant(e, params_).has_value();
  }

  bool is_param(const std::string& name) const {
    return std::any_of(params_.begin(), params_.end(),
                       [&](const ParamDecl& p) { return p.name == name; });
  }

  // ---- expressions ----

  int eval(const Expr& e, const Env* env) {
    switch (e.kind) {
      case ExprKind::Number:
        return add_node("const");
      case ExprKind::Identifier: {
        if (is_param(e.text)) return add_node("const");
        if (env) {
          if (auto v = env->get(e.text)) return *v;
        }
        return signal(e.text);
      }
      case ExprKind::Unary: {
        int arg = eval(e.operands[0], env);
        int op = add_node("op:" + unary_op_name(e.text));
        add_edge(arg, op);
        return op;
      }
      case ExprKind::Binary: {
        int lhs = eval(e.operands[0], env);
        int rhs = eval(e.operands[1], env);
        int op = add_node("op:" + binary_op_name(e.text));
        add_edge(lhs, op);
        add_edge(rhs, op);
        return op;
      }
      case ExprKind::Ternary: {
        int c = eval(e.operands[0], env);
        int t = eval(e.operands[1], env);
        int f = eval(e.operands[2], env);
        int mux = add_node("mux");
        add_edge(c, mux);
        add_edge(t, mux);
        add_edge(f, mux);
        return mux;
      }
      case ExprKind::Concat: {
        std::vector<int> parts;
        for (const auto& o : e.operands) parts.push_back(eval(o, env));
        int op = add_node("op:concat");
        for (int p : parts) add_edge(p, op);
        return op;
      }
      case ExprKind::Replicate: {
        std::vector<int> parts;
        for (const auto& o : e.operands[1].operands) parts.push_back(eval(o, env));
        int op = add_node("op:repeat");
        for (int p : parts) add_edge(p, op);
        return op;
      }
      case ExprKind::Index:
        return select("op:index", e, env, {1});
      case ExprKind::RangeSelect:
        return select("op:range", e, env, {1, 2});
      case ExprKind::IndexedPartSelect:
        return select("op:partsel", e, env, {1, 2});
    }
    throw std::logic_error("unhandled expression kind");
  }

  // Constant select positions add no graph structure.
  int select(const char* label, const Expr& e, const Env* env,
             std::initializer_list<std::size_t> index_operands) {
    int base = eval(e.operands[0], env);
    std::vector<int> idx;
    for (std::size_t i : index_operands) {
      if (!is_constant(e.operands[i])) idx.push_back(eval(e.operands[i], env));
    }
    int op = add_node(label);
    add_edge(base, op);
    for (int i : idx) add_edge(i, op);
    return op;
  }

  // ---- continuous assignment targets ----

  void drive(const Expr& lhs, int value) {
    switch (lhs.kind) {
      case ExprKind::Identifier:
        add_edge(value, signal(lhs.text));
        break;
      case ExprKind::Concat:
        for (const auto& part : lhs.operands) drive(part, value);
        break;
      default: {
        int target = signal(lhs.operands[0].text);
        add_edge(value, target);
        for (std::size_t i = 1; i < lhs.operands.size(); ++i) {
          if (!is_constant(lhs.operands[i])) add_edge(eval(lhs.operands[i], nullptr), target);
        }
        break;
      }
    }
  }

  // ---- procedural blocks ----

  static const std::string& base_name(const Expr& lhs) {
    return lhs.kind == ExprKind::Identifier ? lhs.text : lhs.operands[0].text;
  }

  int current(const Env& env, const std::string& name) const {
    if (auto v = env.get(name)) return *v;
    return signal(name);
  }

  void write(const Expr& lhs, int value, Env& target, const Env& reads) {
    if (lhs.kind == ExprKind::Concat) {
      for (const auto& part : lhs.operands) write(part, value, target, reads);
      return;
    }
    const std::string& name = base_name(lhs);
    if (lhs.kind == ExprKind::Identifier) {
      target.set(name, value);
      return;
    }
    // Partial write: the new word depends on the old word and the slice.
    int old = current(target, name);
    std::vector<int> idx;
    for (std::size_t i = 1; i < lhs.operands.size(); ++i) {
      if (!is_constant(lhs.operands[i])) idx.push_back(eval(lhs.operands[i], &reads));
    }
    int ins = add_node("op:insert");
    add_edge(old, ins);
    add_edge(value, ins);
    for (int i : idx) add_edge(i, ins);
    target.set(name, ins);
  }

  void exec(const Statement& s, ProcState& st) {
    switch (s.kind) {
      case StmtKind::Null:
        break;
      case StmtKind::Block:
        for (const auto& c : s.body) exec(c, st);
        break;
      case StmtKind::Blocking: {
        int v = eval(s.rhs, &st.blocking);
        write(s.lhs, v, st.blocking, st.blocking);
        break;
      }
      case StmtKind::NonBlocking: {
        int v = eval(s.rhs, &st.blocking);
        write(s.lhs, v, st.nonblocking, st.blocking);
        break;
      }
      case StmtKind::If: {
        int c = eval(s.cond, &st.blocking);
        ProcState then_st = st;
        exec(s.body.front(), then_st);
        ProcState else_st = st;
        if (!s.else_body.empty()) exec(s.else_body.front(), else_st);
        merge(st, {c}, {&then_st, &else_st});
        break;
      }
      case StmtKind::Case: {
        std::vector<int> controls{eval(s.cond, &st.blocking)};
        std::vector<ProcState> branches;
        bool has_default = false;
        for (const auto& item : s.items) {
          for (const auto& l : item.labels) controls.push_back(eval(l, &st.blocking));
          if (item.labels.empty()) has_default = true;
          branches.push_back(st);
          exec(item.body.front(), branches.back());
        }
        if (!has_default) branches.push_back(st);  // no item matched
        std::vector<const ProcState*> ptrs;
        for (const auto& b : branches) ptrs.push_back(&b);
        merge(st, controls, ptrs);
        break;
      }
    }
  }

  void merge(ProcState& st, const std::vector<int>& controls,
             const std::vector<const ProcState*>& branches) {
    merge_env(st.blocking, controls, branches, &ProcState::blocking);
    merge_env(st.nonblocking, controls, branches, &ProcState::nonblocking);
  }

  void merge_env(Env& out, const std::vector<int>& controls,
                 const std::vector<const ProcState*>& branches, Env ProcState::*which) {
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto* b : branches) {
      for (const auto& n : (b->*which).order()) {
        if (seen.insert(n).second) names.push_back(n);
      }
    }
    for (const auto& name : names) {
      std::vector<int> values;
      for (const auto* b : branches) values.push_back(current(b->*which, name));
      if (std::all_of(values.begin(), values.end(), [&](int v) { return v == values.front(); })) {
        out.set(name, values.front());
        continue;
      }
      int mux = add_node("mux");
      for (int c : controls) add_edge(c, mux);
      for (int v : values) add_edge(v, mux);
      out.set(name, mux);
    }
  }

  void visit_item(const NetDecl& n) {
    if (n.init) add_edge(eval(*n.init, nullptr), signal(n.name));
  }
  void visit_item(const ParamDecl&) {}
  void visit_item(const ContinuousAssign& a) { drive(a.lhs, eval(a.rhs, nullptr)); }

  void visit_item(const AlwaysBlock& b) {
    ProcState st;
    exec(b.body, st);
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const Env* env : {&st.blocking, &st.nonblocking}) {
      for (const auto& n : env->order()) {
        if (seen.insert(n).second) names.push_back(n);
      }
    }
    bool sequential = b.is_edge_triggered();
    std::vector<int> clocks;
    if (sequential) {
      for (const auto& s : b.sensitivity) {
        if (s.edge != Edge::None) clocks.push_back(eval(s.signal, nullptr));
      }
    }
    for (const auto& name : names) {
      // A non-blocking write wins over a blocking one at the end of the block.
      int value = st.nonblocking.get(name) ? *st.nonblocking.get(name) : *st.blocking.get(name);
      int sig = signal(name);
      if (sequential) {
        int reg = add_node("reg");
        add_edge(value, reg);
        for (int c : clocks) add_edge(c, reg);
        add_edge(reg, sig);
      } else if (value != sig) {
        add_edge(value, sig);
      }
    }
  }

  const ModuleAst* lookup_module(const std::string& name) const {
    for (const auto& m : library_) {
      if (m.name == name) return &m;
    }
    return nullptr;
  }

  void visit_item(const Instance& inst) {
    const ModuleAst* target = lookup_module(inst.module_name);
    int node = add_node("instance:" + inst.module_name);
    for (std::size_t i = 0; i < inst.connections.size(); ++i) {
      const auto& c = inst.connections[i];
      if (!c.expr) continue;
      std::optional<Direction> dir;
      if (target) {
        if (!c.port.empty()) {
          if (const PortDecl* p = target->find_port(c.port)) dir = p->direction;
        } else if (i < target->ports.size()) {
          dir = target->ports[i].direction;
        }
      }
      if (!dir) dir = guess_direction(*c.expr);
      if (*dir == Direction::Output) {
        drive(*c.expr, node);
        if (c.expr->kind == ExprKind::Identifier) claimed_.insert(c.expr->text);
      } else {
        add_edge(eval(*c.expr, nullptr), node);
      }
    }
  }

  // Without the submodule's declaration, a connection is an output when it
  // is a bare identifier naming an output port or a net nothing else drives,
  // and no earlier instance has claimed it.
  Direction guess_direction(const Expr& e) const {
    if (e.kind != ExprKind::Identifier) return Direction::Input;
    if (inputs_.count(e.text) || driven_.count(e.text) || claimed_.count(e.text)) {
      return Direction::Input;
    }
    return Direction::Output;
  }

  void collect_driven() {
    auto mark = [&](const Expr& lhs, auto&& self) -> void {
      if (lhs.kind == ExprKind::Concat) {
        for (const auto& o : lhs.operands) self(o, self);
      } else {
        driven_.insert(base_name(lhs));
      }
    };
    auto stmt = [&](const Statement& s, auto&& self) -> void {
      if (s.kind == StmtKind::Blocking || s.kind == StmtKind::NonBlocking) mark(s.lhs, mark);
      for (const auto& c : s.body) self(c, self);
      for (const auto& c : s.else_body) self(c, self);
      for (const auto& item : s.items) {
        for (const auto& c : item.body) self(c, self);
      }
    };
    for (const auto& item : m_.items) {
      if (const auto* a = std::get_if<ContinuousAssign>(&item)) mark(a->lhs, mark);
      if (const auto* n = std::get_if<NetDecl>(&item); n && n->init) driven_.insert(n->name);
      if (const auto* b = std::get_if<AlwaysBlock>(&item)) stmt(b->body, stmt);
    }
  }

  // Tarjan over the graph with storage nodes removed; any non-trivial
  // strongly connected component or self loop is a combinational loop.
  bool detect_combinational_cycle() const {
    const int n = static_cast<int>(g_.nodes.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& [s, d] : g_.edges) {
      if (g_.nodes[s].label == "reg" || g_.nodes[d].label == "reg") continue;
      if (s == d) return true;
      adj[s].push_back(d);
    }
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0;
    bool found = false;
    std::function<void(int)> strong = [&](int v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      for (int w : adj[v]) {
        if (index[w] < 0) {
          strong(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        int size = 0;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          ++size;
        } while (w != v);
        if (size > 1) found = true;
      }
    };
    for (int v = 0; v < n && !found; ++v) {
      if (index[v] < 0) strong(v);
    }
    return found;
  }

  const ModuleAst& m_;
  std::span<const ModuleAst> library_;
  std::vector<ParamDecl> params_;
  std::map<std::string, int> signals_;
  std::set<std::string> inputs_;
  std::set<std::string> driven_;
  std::set<std::string> claimed_;
  Dfg g_;
};

}  // namespace

Dfg extract_dfg(const ModuleAst& module, std::span<const ModuleAst> library) {
  return Extractor(module, library).run();
}

std::string to_graph_text(const Dfg& graph) {
  std::ostringstream os;
  for (const auto& n : graph.nodes) os << n.id << ' ' << n.label << '\n';
  for (const auto& [s, d] : graph.edges) os << s << " -> " << d << '\n';
  return os.str();
}

std::vector<std::string> check_invariants(const Dfg& graph) {
  std::vector<std::string> problems;
  const int n = static_cast<int>(graph.nodes.size());
  for (int i = 0; i < n; ++i) {
    if (graph.nodes[i].id != i) {
      problems.push_back("node at position " + std::to_string(i) + " has id " +
                         std::to_string(graph.nodes[i].id));
    }
  }
  std::vector<std::vector<int>> adj(n);
  for (const auto& [s, d] : graph.edges) {
    if (s < 0 || s >= n || d < 0 || d >= n) {
      problems.push_back("dangling edge " + std::to_string(s) + " -> " + std::to_string(d));
      continue;
    }
    adj[s].push_back(d);
  }
  std::vector<bool> reached(n, false);
  std::vector<int> work;
  for (int i = 0; i < n; ++i) {
    const auto& label = graph.nodes[i].label;
    if (label.starts_with("input:") || label == "const") {
      reached[i] = true;
      work.push_back(i);
    }
  }
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    for (int w : adj[v]) {
      if (!reached[w]) {
        reached[w] = true;
        work.push_back(w);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (graph.nodes[i].label.starts_with("output:") && !reached[i]) {
      problems.push_back("output node " + std::to_string(i) + " unreachable from inputs");
    }
  }
  return problems;
}

}  // namespace creativ::hdl
