// Copyright 2026 The linelabel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "linelabel/code_model.h"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "linelabel/errors.h"

namespace linelabel::minic {

std::string_view CfgNodeKindName(CfgNodeKind kind) {
  switch (kind) {
    case CfgNodeKind::kEntry: return "entry";
    case CfgNodeKind::kExit: return "exit";
    case CfgNodeKind::kStatement: return "stmt";
    case CfgNodeKind::kCondition: return "cond";
    case CfgNodeKind::kForInit: return "for-init";
    case CfgNodeKind::kForStep: return "for-step";
    case CfgNodeKind::kSwitch: return "switch";
    case CfgNodeKind::kCase: return "case";
    case CfgNodeKind::kTry: return "try";
    case CfgNodeKind::kCatch: return "catch";
  }
  return "?";
}

bool Cfg::HasEdge(int from, int to) const {
  const auto& succ = nodes[static_cast<size_t>(from)].succ;
  return std::binary_search(succ.begin(), succ.end(), to);
}

void Cfg::AddEdge(int from, int to) {
  auto insert_sorted = [](std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  };
  insert_sorted(nodes[static_cast<size_t>(from)].succ, to);
  insert_sorted(nodes[static_cast<size_t>(to)].pred, from);
}

namespace {

std::vector<int> LineRange(int first, int last) {
  std::vector<int> lines;
  for (int l = first; l <= std::max(first, last); ++l) lines.push_back(l);
  return lines;
}

class CfgBuilder {
 public:
  explicit CfgBuilder(const ParsedFunction& fn) : fn_(fn), ast_(fn.ast) {}

  Cfg Build() {
    cfg_.nodes.resize(2);
    cfg_.nodes[Cfg::kEntry].kind = CfgNodeKind::kEntry;
    cfg_.nodes[Cfg::kExit].kind = CfgNodeKind::kExit;
    Piece body = BuildStmt(fn_.body, 0);
    if (body.entry >= 0) {
      cfg_.AddEdge(Cfg::kEntry, body.entry);
      Link(body.exits, Cfg::kExit);
    }
    // Augmenting edge; also the only edge for an empty body.
    cfg_.AddEdge(Cfg::kEntry, Cfg::kExit);
    return std::move(cfg_);
  }

 private:
  // Entry node of a statement and its fall-through exits; entry == -1
  // means the statement created no nodes (an empty block).
  struct Piece {
    int entry = -1;
    std::vector<int> exits;
  };

  int NewNode(CfgNodeKind kind, int ast, std::vector<int> roots,
              std::vector<int> lines, uint32_t constructs) {
    CfgNode node;
    node.kind = kind;
    node.ast = ast;
    node.roots = std::move(roots);
    node.lines = std::move(lines);
    node.constructs = constructs;
    cfg_.nodes.push_back(std::move(node));
    int id = cfg_.size() - 1;
    if (!try_bodies_.empty()) try_bodies_.back().push_back(id);
    return id;
  }

  void Link(const std::vector<int>& from, int to) {
    for (int f : from) cfg_.AddEdge(f, to);
  }

  static void Append(std::vector<int>& into, const std::vector<int>& from) {
    for (int x : from) {
      if (std::find(into.begin(), into.end(), x) == into.end()) into.push_back(x);
    }
  }

  Piece Sequence(const std::vector<int>& stmts, size_t first, uint32_t mask) {
    Piece out;
    std::vector<int> pending;
    for (size_t i = first; i < stmts.size(); ++i) {
      Piece p = BuildStmt(stmts[i], mask);
      if (p.entry < 0) continue;
      if (out.entry < 0) {
        out.entry = p.entry;
      } else {
        Link(pending, p.entry);
      }
      pending = std::move(p.exits);
    }
    out.exits = std::move(pending);
    return out;
  }

  // Connects `from` to the piece, or returns `from` as the fall-through
  // when the piece is empty.
  std::vector<int> Attach(int from, const Piece& piece) {
    if (piece.entry < 0) return {from};
    cfg_.AddEdge(from, piece.entry);
    return piece.exits;
  }

  Piece BuildStmt(int id, uint32_t mask) {
    const AstNode& n = ast_[id];
    switch (n.kind) {
      case NodeKind::kBlock:
        return Sequence(n.children, 0, mask);
      case NodeKind::kExprStmt:
      case NodeKind::kDeclStmt:
      case NodeKind::kEmpty: {
        int node = NewNode(CfgNodeKind::kStatement, id, {id},
                           LineRange(n.start_line, n.end_line), mask);
        return {node, {node}};
      }
      case NodeKind::kReturn: {
        int node = NewNode(CfgNodeKind::kStatement, id, {id},
                           LineRange(n.start_line, n.end_line), mask);
        cfg_.AddEdge(node, Cfg::kExit);
        return {node, {}};
      }
      case NodeKind::kBreak:
      case NodeKind::kContinue: {
        bool is_break = n.kind == NodeKind::kBreak;
        auto& stack = is_break ? breaks_ : continues_;
        if (stack.empty()) {
          throw AnalysisError("line " + std::to_string(n.line) + ": '" +
                              (is_break ? "break" : "continue") +
                              "' outside of a loop" + (is_break ? " or switch" : ""));
        }
        int node = NewNode(CfgNodeKind::kStatement, id, {id},
                           LineRange(n.start_line, n.end_line), mask);
        stack.back()->push_back(node);
        return {node, {}};
      }
      case NodeKind::kIf: {
        int cond = NewNode(CfgNodeKind::kCondition, id, {n.children[0]},
                           LineRange(n.line, n.header_end_line), mask);
        std::vector<int> exits = Attach(cond, BuildStmt(n.children[1], mask | kInIf));
        if (n.children[2] >= 0) {
          Append(exits, Attach(cond, BuildStmt(n.children[2], mask | kInElse)));
        } else {
          Append(exits, {cond});
        }
        return {cond, exits};
      }
      case NodeKind::kWhile: {
        int cond = NewNode(CfgNodeKind::kCondition, id, {n.children[0]},
                           LineRange(n.line, n.header_end_line), mask);
        std::vector<int> brk, cont;
        breaks_.push_back(&brk);
        continues_.push_back(&cont);
        Piece body = BuildStmt(n.children[1], mask | kInWhile);
        breaks_.pop_back();
        continues_.pop_back();
        Link(Attach(cond, body), cond);
        Link(cont, cond);
        std::vector<int> exits = {cond};
        Append(exits, brk);
        return {cond, exits};
      }
      case NodeKind::kDoWhile: {
        std::vector<int> brk, cont;
        breaks_.push_back(&brk);
        continues_.push_back(&cont);
        Piece body = BuildStmt(n.children[0], mask | kInDo);
        breaks_.pop_back();
        continues_.pop_back();
        int cond = NewNode(CfgNodeKind::kCondition, id, {n.children[1]},
                           LineRange(n.aux_line, n.header_end_line), mask);
        Link(body.exits, cond);
        Link(cont, cond);
        int head = body.entry >= 0 ? body.entry : cond;
        cfg_.AddEdge(cond, head);
        std::vector<int> exits = {cond};
        Append(exits, brk);
        return {head, exits};
      }
      case NodeKind::kFor: {
        const int init_ast = n.children[0];
        const int cond_ast = n.children[1];
        const int step_ast = n.children[2];
        int init = -1;
        if (init_ast >= 0) {
          const AstNode& in = ast_[init_ast];
          init = NewNode(CfgNodeKind::kForInit, id, {init_ast},
                         LineRange(in.start_line, in.end_line), mask);
        }
        std::vector<int> cond_lines =
            cond_ast >= 0 ? LineRange(ast_[cond_ast].start_line, ast_[cond_ast].end_line)
                          : std::vector<int>{n.line};
        int cond = NewNode(CfgNodeKind::kCondition, id,
                           cond_ast >= 0 ? std::vector<int>{cond_ast} : std::vector<int>{},
                           cond_lines, mask);
        if (init >= 0) cfg_.AddEdge(init, cond);
        std::vector<int> brk, cont;
        breaks_.push_back(&brk);
        continues_.push_back(&cont);
        Piece body = BuildStmt(n.children[3], mask | kInFor);
        breaks_.pop_back();
        continues_.pop_back();
        int step = -1;
        if (step_ast >= 0) {
          const AstNode& st = ast_[step_ast];
          step = NewNode(CfgNodeKind::kForStep, id, {step_ast},
                         LineRange(st.start_line, st.end_line), mask);
          cfg_.AddEdge(step, cond);
        }
        const int latch = step >= 0 ? step : cond;
        Link(Attach(cond, body), latch);
        Link(cont, latch);
        std::vector<int> exits;
        if (cond_ast >= 0) exits.push_back(cond);
        Append(exits, brk);
        return {init >= 0 ? init : cond, exits};
      }
      case NodeKind::kSwitch: {
        int sw = NewNode(CfgNodeKind::kSwitch, id, {n.children[0]},
                         LineRange(n.line, n.header_end_line), mask);
        std::vector<int> brk;
        breaks_.push_back(&brk);
        std::vector<int> pending;
        bool has_default = false;
        for (size_t c = 1; c < n.children.size(); ++c) {
          const int case_ast = n.children[c];
          const AstNode& cs = ast_[case_ast];
          has_default |= cs.children[0] < 0;
          std::vector<int> roots;
          if (cs.children[0] >= 0) roots.push_back(cs.children[0]);
          int label = NewNode(CfgNodeKind::kCase, case_ast, roots,
                              LineRange(cs.line, cs.header_end_line), mask | kInSwitch);
          cfg_.AddEdge(sw, label);
          Link(pending, label);
          pending = Attach(label, Sequence(cs.children, 1, mask | kInSwitch));
        }
        breaks_.pop_back();
        std::vector<int> exits = pending;
        Append(exits, brk);
        if (!has_default) Append(exits, {sw});
        return {sw, exits};
      }
      case NodeKind::kTry: {
        int tr = NewNode(CfgNodeKind::kTry, id, {}, {n.line}, mask);
        try_bodies_.emplace_back();
        Piece body = BuildStmt(n.children[0], mask | kInTry);
        std::vector<int> guarded = std::move(try_bodies_.back());
        try_bodies_.pop_back();
        std::vector<int> roots;
        if (n.children[1] >= 0) roots.push_back(n.children[1]);
        int handler = NewNode(CfgNodeKind::kCatch, id, roots,
                              LineRange(n.aux_line, n.aux_end_line), mask);
        for (int g : guarded) cfg_.AddEdge(g, handler);
        std::vector<int> exits;
        if (body.entry >= 0) {
          cfg_.AddEdge(tr, body.entry);
          exits = body.exits;
        } else {
          cfg_.AddEdge(tr, handler);
          exits = {tr};
        }
        Append(exits, Attach(handler, BuildStmt(n.children[2], mask | kInTry)));
        return {tr, exits};
      }
      default:
        break;
    }
    throw AnalysisError("line " + std::to_string(n.line) +
                        ": unexpected AST node in statement position");
  }

  const ParsedFunction& fn_;
  const Ast& ast_;
  Cfg cfg_;
  std::vector<std::vector<int>*> breaks_;
  std::vector<std::vector<int>*> continues_;
  std::vector<std::vector<int>> try_bodies_;
};

// Resolves identifiers to variables with lexical scoping.
class Resolver {
 public:
  Resolver(const Ast& ast, std::vector<Variable>& variables,
           std::vector<int>& node_variable,
           const std::unordered_map<std::string, std::string>& global_types)
      : ast_(ast),
        vars_(variables),
        node_var_(node_variable),
        global_types_(global_types) {
    node_var_.assign(static_cast<size_t>(ast.size()), -1);
  }

  void Push() { scopes_.emplace_back(); }
  void Pop() { scopes_.pop_back(); }

  int Declare(const std::string& name, const std::string& type, Variable::Scope scope,
              int decl_node) {
    vars_.push_back({name, type, scope, decl_node});
    int index = static_cast<int>(vars_.size()) - 1;
    scopes_.back()[name] = index;
    if (decl_node >= 0) node_var_[static_cast<size_t>(decl_node)] = index;
    return index;
  }

  int Lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    auto global = globals_.find(name);
    if (global != globals_.end()) return global->second;
    auto type = global_types_.find(name);
    vars_.push_back({name, type == global_types_.end() ? "" : type->second,
                     Variable::Scope::kGlobal, -1});
    int index = static_cast<int>(vars_.size()) - 1;
    globals_[name] = index;
    return index;
  }

  void Stmt(int id) {
    if (id < 0) return;
    const AstNode& n = ast_[id];
    switch (n.kind) {
      case NodeKind::kBlock:
        Push();
        for (int c : n.children) Stmt(c);
        Pop();
        return;
      case NodeKind::kDeclStmt:
        for (int v : n.children) {
          Expr(ast_[v].children[0]);
          Declare(ast_[v].text, ast_[v].type, Variable::Scope::kLocal, v);
        }
        return;
      case NodeKind::kFor:
        Push();
        Stmt(n.children[0]);
        Expr(n.children[1]);
        Expr(n.children[2]);
        Stmt(n.children[3]);
        Pop();
        return;
      case NodeKind::kSwitch:
        Expr(n.children[0]);
        Push();
        for (size_t c = 1; c < n.children.size(); ++c) {
          const AstNode& cs = ast_[n.children[c]];
          Expr(cs.children[0]);
          for (size_t s = 1; s < cs.children.size(); ++s) Stmt(cs.children[s]);
        }
        Pop();
        return;
      case NodeKind::kTry:
        Stmt(n.children[0]);
        Push();
        if (n.children[1] >= 0) {
          const AstNode& param = ast_[n.children[1]];
          Declare(param.text, param.type, Variable::Scope::kLocal, n.children[1]);
        }
        Stmt(n.children[2]);
        Pop();
        return;
      case NodeKind::kExprStmt:
      case NodeKind::kReturn:
        Expr(n.children[0]);
        return;
      case NodeKind::kIf:
        Expr(n.children[0]);
        Stmt(n.children[1]);
        Stmt(n.children[2]);
        return;
      case NodeKind::kWhile:
        Expr(n.children[0]);
        Stmt(n.children[1]);
        return;
      case NodeKind::kDoWhile:
        Stmt(n.children[0]);
        Expr(n.children[1]);
        return;
      default:
        return;
    }
  }

  void Expr(int id) {
    if (id < 0) return;
    const AstNode& n = ast_[id];
    if (n.kind == NodeKind::kIdent) {
      node_var_[static_cast<size_t>(id)] = Lookup(n.text);
      return;
    }
    for (int c : n.children) Expr(c);
  }

 private:
  const Ast& ast_;
  std::vector<Variable>& vars_;
  std::vector<int>& node_var_;
  const std::unordered_map<std::string, std::string>& global_types_;
  std::vector<std::unordered_map<std::string, int>> scopes_;
  std::unordered_map<std::string, int> globals_;
};

void CollectAccess(const Ast& ast, const std::vector<int>& node_var, int id,
                   NodeAccess& access) {
  if (id < 0) return;
  const AstNode& n = ast[id];
  auto var_of = [&](int node) { return node_var[static_cast<size_t>(node)]; };
  switch (n.kind) {
    case NodeKind::kIdent:
      access.uses.push_back(var_of(id));
      return;
    case NodeKind::kAssign: {
      int target = n.children[0];
      if (n.text != "=") access.uses.push_back(var_of(target));
      CollectAccess(ast, node_var, n.children[1], access);
      access.defs.push_back(var_of(target));
      return;
    }
    case NodeKind::kPrefix:
    case NodeKind::kPostfix: {
      int operand = n.children[0];
      access.uses.push_back(var_of(operand));
      access.defs.push_back(var_of(operand));
      return;
    }
    case NodeKind::kVarDecl:
      if (n.children[0] >= 0) {
        CollectAccess(ast, node_var, n.children[0], access);
        access.defs.push_back(var_of(id));
      }
      return;
    default:
      for (int c : n.children) CollectAccess(ast, node_var, c, access);
  }
}

void SortUnique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void IndexAstLines(const Ast& ast, std::map<int, std::vector<int>>& index) {
  for (int id = 0; id < ast.size(); ++id) {
    const AstNode& n = ast[id];
    // Blocks have no principal token of their own.
    if (n.kind == NodeKind::kBlock) continue;
    index[n.line].push_back(id);
  }
}

}  // namespace

Cfg BuildCfg(const ParsedFunction& fn) { return CfgBuilder(fn).Build(); }

bool PostDominatorTree::PostDominates(int a, int b) const {
  for (int n = b;; n = ipdom[static_cast<size_t>(n)]) {
    if (n == a) return true;
    if (n == Cfg::kExit || ipdom[static_cast<size_t>(n)] < 0) return false;
  }
}

PostDominatorTree ComputePostDominators(const Cfg& cfg) {
  const int n = cfg.size();
  // Post-order of the reverse graph rooted at exit.
  std::vector<int> order;
  std::vector<int> po_number(static_cast<size_t>(n), -1);
  std::vector<char> visited(static_cast<size_t>(n), 0);
  std::vector<std::pair<int, size_t>> stack = {{Cfg::kExit, 0}};
  visited[Cfg::kExit] = 1;
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    const auto& preds = cfg[node].pred;
    if (next < preds.size()) {
      int p = preds[next++];
      if (!visited[static_cast<size_t>(p)]) {
        visited[static_cast<size_t>(p)] = 1;
        stack.push_back({p, 0});
      }
      continue;
    }
    po_number[static_cast<size_t>(node)] = static_cast<int>(order.size());
    order.push_back(node);
    stack.pop_back();
  }
  for (int v = 0; v < n; ++v) {
    if (!visited[static_cast<size_t>(v)]) {
      const auto& lines = cfg[v].lines;
      throw AnalysisError("function exit is unreachable from the statement at line " +
                          std::to_string(lines.empty() ? 0 : lines.front()) +
                          " (non-terminating loop?)");
    }
  }

  PostDominatorTree tree;
  tree.ipdom.assign(static_cast<size_t>(n), -1);
  tree.ipdom[Cfg::kExit] = Cfg::kExit;
  auto intersect = [&](int a, int b) {
    while (a != b) {
      while (po_number[static_cast<size_t>(a)] < po_number[static_cast<size_t>(b)]) {
        a = tree.ipdom[static_cast<size_t>(a)];
      }
      while (po_number[static_cast<size_t>(b)] < po_number[static_cast<size_t>(a)]) {
        b = tree.ipdom[static_cast<size_t>(b)];
      }
    }
    return a;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int v = *it;
      if (v == Cfg::kExit) continue;
      int candidate = -1;
      for (int s : cfg[v].succ) {
        if (tree.ipdom[static_cast<size_t>(s)] < 0) continue;
        candidate = candidate < 0 ? s : intersect(s, candidate);
      }
      if (candidate != tree.ipdom[static_cast<size_t>(v)]) {
        tree.ipdom[static_cast<size_t>(v)] = candidate;
        changed = true;
      }
    }
  }
  return tree;
}

std::vector<ControlEdge> ComputeControlDependence(const Cfg& cfg,
                                                  const PostDominatorTree& postdom) {
  std::vector<ControlEdge> edges;
  for (int a = 0; a < cfg.size(); ++a) {
    const int stop = postdom.ipdom[static_cast<size_t>(a)];
    for (int b : cfg[a].succ) {
      if (postdom.StrictlyPostDominates(b, a)) continue;
      for (int runner = b; runner != stop; runner = postdom.ipdom[static_cast<size_t>(runner)]) {
        edges.push_back({a, runner});
        if (runner == Cfg::kExit) break;
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

ReachingDefinitions ComputeReachingDefinitions(const Cfg& cfg,
                                               const std::vector<NodeAccess>& access) {
  ReachingDefinitions result;
  const size_t n = static_cast<size_t>(cfg.size());
  std::vector<std::vector<int>> defs_of_node(n);
  std::unordered_map<int, std::vector<int>> defs_of_var;
  for (size_t v = 0; v < n; ++v) {
    for (int var : access[v].defs) {
      int id = static_cast<int>(result.defs.size());
      result.defs.push_back({static_cast<int>(v), var});
      defs_of_node[v].push_back(id);
      defs_of_var[var].push_back(id);
    }
  }
  const size_t d = result.defs.size();
  result.in.assign(n, std::vector<bool>(d, false));
  result.out.assign(n, std::vector<bool>(d, false));

  auto transfer = [&](size_t v, const std::vector<bool>& in) {
    std::vector<bool> out = in;
    for (int var : access[v].defs) {
      for (int k : defs_of_var[var]) out[static_cast<size_t>(k)] = false;
    }
    for (int k : defs_of_node[v]) out[static_cast<size_t>(k)] = true;
    return out;
  };

  std::deque<int> worklist;
  std::vector<char> queued(n, 1);
  for (size_t v = 0; v < n; ++v) worklist.push_back(static_cast<int>(v));
  while (!worklist.empty()) {
    int v = worklist.front();
    worklist.pop_front();
    queued[static_cast<size_t>(v)] = 0;
    std::vector<bool> in(d, false);
    for (int p : cfg[v].pred) {
      const auto& po = result.out[static_cast<size_t>(p)];
      for (size_t k = 0; k < d; ++k) {
        if (po[k]) in[k] = true;
      }
    }
    std::vector<bool> out = transfer(static_cast<size_t>(v), in);
    result.in[static_cast<size_t>(v)] = std::move(in);
    if (out != result.out[static_cast<size_t>(v)]) {
      result.out[static_cast<size_t>(v)] = std::move(out);
      for (int s : cfg[v].succ) {
        if (!queued[static_cast<size_t>(s)]) {
          queued[static_cast<size_t>(s)] = 1;
          worklist.push_back(s);
        }
      }
    }
  }
  return result;
}

std::vector<DataEdge> ComputeDataDependence(const FunctionModel& fn) {
  ReachingDefinitions rd = ComputeReachingDefinitions(fn.cfg, fn.access);
  std::vector<DataEdge> edges;
  for (int v = 0; v < fn.cfg.size(); ++v) {
    const auto& in = rd.in[static_cast<size_t>(v)];
    for (int var : fn.access[static_cast<size_t>(v)].uses) {
      for (size_t k = 0; k < rd.defs.size(); ++k) {
        if (in[k] && rd.defs[k].variable == var) {
          edges.push_back({rd.defs[k].node, v, var});
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

int SourceUnit::FunctionAt(int line) const {
  for (size_t i = 0; i < functions.size(); ++i) {
    if (line >= functions[i].start_line() && line <= functions[i].end_line()) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

SourceUnit BuildSourceUnit(std::string_view text, std::string path) {
  ParsedUnit parsed = Parse(text);
  SourceUnit unit;
  unit.path = std::move(path);
  unit.line_count = parsed.line_count;
  unit.tokens = std::move(parsed.tokens);
  unit.globals = std::move(parsed.globals);
  unit.global_decls = std::move(parsed.global_decls);

  std::unordered_map<std::string, std::string> global_types;
  {
    Resolver resolver(unit.globals, unit.global_variables, unit.global_node_variable,
                      global_types);
    resolver.Push();
    for (int decl : unit.global_decls) {
      for (int v : unit.globals[decl].children) {
        resolver.Expr(unit.globals[v].children[0]);
        resolver.Declare(unit.globals[v].text, unit.globals[v].type,
                         Variable::Scope::kGlobal, v);
        global_types[unit.globals[v].text] = unit.globals[v].type;
      }
    }
  }
  IndexAstLines(unit.globals, unit.global_ast_by_line);

  for (ParsedFunction& parsed_fn : parsed.functions) {
    FunctionModel fn;
    fn.parsed = std::move(parsed_fn);
    Resolver resolver(fn.parsed.ast, fn.variables, fn.node_variable, global_types);
    resolver.Push();
    for (const Param& p : fn.parsed.params) {
      resolver.Declare(p.name, p.type, Variable::Scope::kParam, -1);
    }
    resolver.Stmt(fn.parsed.body);

    fn.cfg = BuildCfg(fn.parsed);
    fn.access.resize(static_cast<size_t>(fn.cfg.size()));
    for (int v = 0; v < fn.cfg.size(); ++v) {
      NodeAccess& access = fn.access[static_cast<size_t>(v)];
      for (int root : fn.cfg[v].roots) {
        CollectAccess(fn.parsed.ast, fn.node_variable, root, access);
      }
      SortUnique(access.defs);
      SortUnique(access.uses);
      for (int line : fn.cfg[v].lines) fn.line_index[line].push_back(v);
    }
    try {
      fn.postdom = ComputePostDominators(fn.cfg);
    } catch (const AnalysisError& e) {
      throw AnalysisError("function '" + fn.name() + "': " + e.what());
    }
    fn.cdg = ComputeControlDependence(fn.cfg, fn.postdom);
    fn.ddg = ComputeDataDependence(fn);
    IndexAstLines(fn.parsed.ast, fn.ast_by_line);
    unit.functions.push_back(std::move(fn));
  }
  return unit;
}

std::vector<StatementRef> StatementsAtLine(const SourceUnit& unit, int line) {
  std::vector<StatementRef> out;
  int f = unit.FunctionAt(line);
  if (f < 0) return out;
  const FunctionModel& fn = unit.functions[static_cast<size_t>(f)];
  auto it = fn.line_index.find(line);
  if (it == fn.line_index.end()) return out;
  for (int node : it->second) out.push_back({f, node});
  return out;
}

std::string DumpGraphs(const SourceUnit& unit) {
  std::ostringstream out;
  for (const FunctionModel& fn : unit.functions) {
    out << "function " << fn.name() << " lines " << fn.start_line() << "-"
        << fn.end_line() << "\n";
    for (int v = 0; v < fn.cfg.size(); ++v) {
      const CfgNode& node = fn.cfg[v];
      out << "  node " << v << " " << CfgNodeKindName(node.kind);
      if (!node.lines.empty()) {
        out << " lines ";
        for (size_t i = 0; i < node.lines.size(); ++i) {
          out << (i ? "," : "") << node.lines[i];
        }
      }
      out << "\n";
    }
    for (int v = 0; v < fn.cfg.size(); ++v) {
      for (int s : fn.cfg[v].succ) {
        out << "  cfg " << v << " -> " << s;
        if (v == Cfg::kEntry && s == Cfg::kExit) out << " (augmenting)";
        out << "\n";
      }
    }
    for (int v = 0; v < fn.cfg.size(); ++v) {
      out << "  ipdom " << v << " = " << fn.postdom.ipdom[static_cast<size_t>(v)] << "\n";
    }
    for (const ControlEdge& e : fn.cdg) {
      out << "  cdg " << e.controller << " -> " << e.dependent << "\n";
    }
    for (const DataEdge& e : fn.ddg) {
      out << "  ddg " << e.def << " -> " << e.use << " ["
          << fn.variables[static_cast<size_t>(e.variable)].name << "]\n";
    }
  }
  return out.str();
}

}  // namespace linelabel::minic
