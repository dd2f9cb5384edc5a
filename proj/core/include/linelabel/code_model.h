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

#ifndef LINELABEL_CODE_MODEL_H_
#define LINELABEL_CODE_MODEL_H_

// Per-function program analyses over parsed mini-C: a statement-level
// control flow graph, post-dominator tree, control dependence and
// reaching-definitions data dependence, all indexed by source line.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "linelabel/minic.h"

namespace linelabel::minic {

enum class CfgNodeKind {
  kEntry,
  kExit,
  kStatement,  // simple statement: expression, declaration, return, ...
  kCondition,  // if / while / do-while / for condition
  kForInit,
  kForStep,
  kSwitch,
  kCase,
  kTry,
  kCatch,
};

std::string_view CfgNodeKindName(CfgNodeKind kind);

// Enclosing-construct flags, accumulated from the function body inwards.
// A header (an if condition, a loop condition, a catch clause) is not
// inside its own construct.
enum Construct : uint32_t {
  kInIf = 1u << 0,
  kInElse = 1u << 1,
  kInFor = 1u << 2,
  kInWhile = 1u << 3,
  kInDo = 1u << 4,
  kInSwitch = 1u << 5,
  kInTry = 1u << 6,
};

struct CfgNode {
  CfgNodeKind kind = CfgNodeKind::kStatement;
  int ast = -1;            // owning AST node (statement or compound header)
  std::vector<int> roots;  // AST subtrees this node evaluates
  std::vector<int> lines;  // sorted, distinct; empty only for entry/exit
  uint32_t constructs = 0;
  std::vector<int> succ;   // sorted
  std::vector<int> pred;   // sorted
};

struct Cfg {
  static constexpr int kEntry = 0;
  static constexpr int kExit = 1;

  std::vector<CfgNode> nodes;

  int size() const { return static_cast<int>(nodes.size()); }
  const CfgNode& operator[](int id) const { return nodes[static_cast<size_t>(id)]; }
  bool HasEdge(int from, int to) const;
  // Adds from->to unless present; keeps succ/pred sorted.
  void AddEdge(int from, int to);
};

// Builds the statement-level CFG including the augmenting entry->exit
// edge. Throws AnalysisError for break/continue outside a loop.
Cfg BuildCfg(const ParsedFunction& fn);

struct PostDominatorTree {
  std::vector<int> ipdom;  // ipdom[kExit] == kExit

  // Reflexive: every node post-dominates itself.
  bool PostDominates(int a, int b) const;
  bool StrictlyPostDominates(int a, int b) const { return a != b && PostDominates(a, b); }
};

// Throws AnalysisError if some node cannot reach exit.
PostDominatorTree ComputePostDominators(const Cfg& cfg);

struct ControlEdge {
  int controller = 0;
  int dependent = 0;
  auto operator<=>(const ControlEdge&) const = default;
};

// Sorted, duplicate-free. Controllers include the synthetic entry.
std::vector<ControlEdge> ComputeControlDependence(const Cfg& cfg,
                                                  const PostDominatorTree& postdom);

struct Variable {
  enum class Scope { kParam, kLocal, kGlobal };
  std::string name;
  std::string type;  // empty when an undeclared global is referenced
  Scope scope = Scope::kLocal;
  int decl_node = -1;  // kVarDecl in the owning AST, -1 for params/globals
};

// Variables read and written when a CFG node executes (sorted, unique).
// All reads happen before the writes of the same node.
struct NodeAccess {
  std::vector<int> defs;
  std::vector<int> uses;
};

struct Definition {
  int node = 0;
  int variable = 0;
};

struct ReachingDefinitions {
  std::vector<Definition> defs;
  std::vector<std::vector<bool>> in;   // per CFG node, indexed by def id
  std::vector<std::vector<bool>> out;
};

ReachingDefinitions ComputeReachingDefinitions(const Cfg& cfg,
                                               const std::vector<NodeAccess>& access);

struct DataEdge {
  int def = 0;
  int use = 0;
  int variable = 0;
  auto operator<=>(const DataEdge&) const = default;
};

struct FunctionModel {
  ParsedFunction parsed;
  std::vector<Variable> variables;
  std::vector<int> node_variable;  // per AST node; -1 unless kIdent/kVarDecl
  Cfg cfg;
  std::vector<NodeAccess> access;  // per CFG node
  PostDominatorTree postdom;
  std::vector<ControlEdge> cdg;
  std::vector<DataEdge> ddg;
  std::map<int, std::vector<int>> line_index;  // line -> CFG node ids
  std::map<int, std::vector<int>> ast_by_line; // line -> AST ids (principal token)

  const std::string& name() const { return parsed.name; }
  int start_line() const { return parsed.start_line; }
  int end_line() const { return parsed.end_line; }
};

// Def-use edges from reaching definitions over scalar variables.
std::vector<DataEdge> ComputeDataDependence(const FunctionModel& fn);

struct SourceUnit {
  std::string path;
  int line_count = 0;
  std::vector<Token> tokens;
  Ast globals;
  std::vector<int> global_decls;
  std::vector<Variable> global_variables;
  std::vector<int> global_node_variable;
  std::map<int, std::vector<int>> global_ast_by_line;
  std::vector<FunctionModel> functions;

  // Index of the function whose extent contains `line`, or -1.
  int FunctionAt(int line) const;
};

// Parses and analyses every function. Throws ParseError/UnsupportedError
// for syntax problems and AnalysisError when a function's exit is not
// reachable from all of its statements.
SourceUnit BuildSourceUnit(std::string_view text, std::string path = "");

struct StatementRef {
  int function = -1;
  int node = -1;
  auto operator<=>(const StatementRef&) const = default;
};

// CFG nodes covering `line`; empty for blank, comment and brace-only lines.
std::vector<StatementRef> StatementsAtLine(const SourceUnit& unit, int line);

// Text dump of CFG, post-dominator tree, CDG and DDG for golden tests.
std::string DumpGraphs(const SourceUnit& unit);

}  // namespace linelabel::minic

#endif  // LINELABEL_CODE_MODEL_H_
