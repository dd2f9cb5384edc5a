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

#include "linelabel/features.h"

#include <algorithm>
#include <cctype>

#include "linelabel/errors.h"

namespace linelabel {

namespace {

using minic::AstNode;
using minic::Cfg;
using minic::FunctionModel;
using minic::NodeKind;
using minic::SourceUnit;
using minic::TokenKind;

constexpr FeatureGroup kLine = FeatureGroup::kCommitLine;
constexpr FeatureGroup kWithin = FeatureGroup::kWithinCommit;
constexpr FeatureGroup kContext = FeatureGroup::kCommitContext;
constexpr FeatureType kFlag = FeatureType::kFlag;
constexpr FeatureType kCount = FeatureType::kCount;

constexpr std::array<FeatureInfo, kNumFeatures> kSchema = {{
    {"assignment", kLine, kFlag},
    {"comparator", kLine, kCount},
    {"arithmetic", kLine, kCount},
    {"logical", kLine, kCount},
    {"flagVar", kLine, kFlag},
    {"hasLiteral", kLine, kFlag},
    {"isLocal", kLine, kFlag},
    {"hasRet", kLine, kFlag},
    {"funcCall", kLine, kFlag},
    {"controlDepend", kWithin, kFlag},
    {"depends", kWithin, kFlag},
    {"repeated", kWithin, kCount},
    {"repeatedCall", kWithin, kCount},
    {"repeatedControl", kWithin, kCount},
    {"controlBlock", kContext, kFlag},
    {"doBlock", kContext, kFlag},
    {"ifBlock", kContext, kFlag},
    {"elseBlock", kContext, kFlag},
    {"switchBlock", kContext, kFlag},
    {"tryBlock", kContext, kFlag},
    {"forBlock", kContext, kFlag},
    {"whileBlock", kContext, kFlag},
    {"dependedBy", kContext, kCount},
    {"controlledBy", kContext, kCount},
    {"reachableOutside", kContext, kFlag},
    {"postDominatedBy", kContext, kCount},
    {"postDominates", kContext, kCount},
}};

// Tokens of `line` (tokens are ordered by position).
std::span<const minic::Token> TokensOnLine(const SourceUnit& unit, int line) {
  auto lo = std::lower_bound(unit.tokens.begin(), unit.tokens.end(), line,
                             [](const minic::Token& t, int l) { return t.line < l; });
  auto hi = std::upper_bound(lo, unit.tokens.end(), line,
                             [](int l, const minic::Token& t) { return l < t.line; });
  return {lo, hi};
}

// The AST and variable tables that own `line`: the enclosing function's,
// or the globals' outside of any function.
struct Scope {
  const minic::Ast* ast = nullptr;
  const std::vector<minic::Variable>* variables = nullptr;
  const std::vector<int>* node_variable = nullptr;
  const std::map<int, std::vector<int>>* by_line = nullptr;
  const FunctionModel* function = nullptr;
};

Scope ScopeAt(const SourceUnit& unit, int line) {
  Scope s;
  int f = unit.FunctionAt(line);
  if (f >= 0) {
    const FunctionModel& fn = unit.functions[static_cast<size_t>(f)];
    s.ast = &fn.parsed.ast;
    s.variables = &fn.variables;
    s.node_variable = &fn.node_variable;
    s.by_line = &fn.ast_by_line;
    s.function = &fn;
  } else {
    s.ast = &unit.globals;
    s.variables = &unit.global_variables;
    s.node_variable = &unit.global_node_variable;
    s.by_line = &unit.global_ast_by_line;
  }
  return s;
}

const minic::Variable* VariableOf(const Scope& s, int node) {
  int v = (*s.node_variable)[static_cast<size_t>(node)];
  return v < 0 ? nullptr : &(*s.variables)[static_cast<size_t>(v)];
}

std::span<const int> NodesAt(const Scope& s, int line) {
  auto it = s.by_line->find(line);
  if (it == s.by_line->end()) return {};
  return it->second;
}

bool IsBoolLiteral(const minic::Ast& ast, int id) {
  return id >= 0 && ast[id].kind == NodeKind::kBoolLit;
}

std::set<std::string> CalleesAt(const SourceUnit& unit, int line) {
  std::set<std::string> out;
  Scope s = ScopeAt(unit, line);
  for (int id : NodesAt(s, line)) {
    if ((*s.ast)[id].kind == NodeKind::kCall) out.insert((*s.ast)[id].text);
  }
  return out;
}

// Control keywords that open a construct on `line`, as Construct bits.
// The 'while' of a do-while closes its construct and does not count.
uint32_t ControlKeywordsAt(const SourceUnit& unit, int line) {
  uint32_t mask = 0;
  Scope s = ScopeAt(unit, line);
  bool opens_while = false;
  for (int id : NodesAt(s, line)) {
    if ((*s.ast)[id].kind == NodeKind::kWhile) opens_while = true;
  }
  for (const minic::Token& t : TokensOnLine(unit, line)) {
    if (t.kind != TokenKind::kKeyword) continue;
    if (t.text == "if") mask |= minic::kInIf;
    if (t.text == "else") mask |= minic::kInElse;
    if (t.text == "for") mask |= minic::kInFor;
    if (t.text == "while" && opens_while) mask |= minic::kInWhile;
    if (t.text == "do") mask |= minic::kInDo;
    if (t.text == "switch") mask |= minic::kInSwitch;
    if (t.text == "try") mask |= minic::kInTry;
  }
  return mask;
}

std::string NormalizedText(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

// CFG nodes of the function enclosing `line` that cover it.
std::vector<int> NodesCovering(const FunctionModel& fn, int line) {
  auto it = fn.line_index.find(line);
  if (it == fn.line_index.end()) return {};
  return it->second;
}

bool IsReal(int node) { return node != Cfg::kEntry && node != Cfg::kExit; }

const FunctionModel* FunctionOf(const SourceUnit& unit, int line) {
  int f = unit.FunctionAt(line);
  return f < 0 ? nullptr : &unit.functions[static_cast<size_t>(f)];
}

}  // namespace

std::span<const FeatureInfo, kNumFeatures> FeatureSchema() { return kSchema; }

std::string_view FeatureName(int feature) {
  return kSchema[static_cast<size_t>(feature)].name;
}

int FeatureIndex(std::string_view name) {
  for (int i = 0; i < kNumFeatures; ++i) {
    if (kSchema[static_cast<size_t>(i)].name == name) return i;
  }
  return -1;
}

bool IsCodeLine(const SourceUnit& model, int line) {
  for (const minic::Token& t : TokensOnLine(model, line)) {
    if (t.kind != TokenKind::kPunct || (t.text != "{" && t.text != "}")) return true;
  }
  return false;
}

std::string EnclosingFunction(const SourceUnit& model, int line) {
  const FunctionModel* fn = FunctionOf(model, line);
  return fn ? fn->name() : "";
}

FeatureVector ExtractLineFeatures(const CommitLine& line, const SourceUnit& model) {
  FeatureVector v{};
  if (!IsCodeLine(model, line.line_no)) return v;
  Scope s = ScopeAt(model, line.line_no);
  const minic::Ast& ast = *s.ast;
  auto mark_local = [&](int id) {
    const minic::Variable* var = VariableOf(s, id);
    if (var && var->scope != minic::Variable::Scope::kGlobal) v[kIsLocal] = 1;
  };
  auto is_bool_var = [&](int id) {
    const minic::Variable* var = VariableOf(s, id);
    return var && var->type == "bool";
  };
  for (int id : NodesAt(s, line.line_no)) {
    const AstNode& n = ast[id];
    switch (n.kind) {
      case NodeKind::kAssign:
        v[kAssignment] = 1;
        if (n.text != "=") ++v[kArithmetic];
        if (n.text == "=" && IsBoolLiteral(ast, n.children[1]) &&
            is_bool_var(n.children[0])) {
          v[kFlagVar] = 1;
        }
        break;
      case NodeKind::kVarDecl:
        mark_local(id);
        if (n.children[0] >= 0) {
          v[kAssignment] = 1;
          if (n.type == "bool" && IsBoolLiteral(ast, n.children[0])) v[kFlagVar] = 1;
        }
        break;
      case NodeKind::kBinary:
        if (n.text == "==" || n.text == "!=" || n.text == "<" || n.text == "<=" ||
            n.text == ">" || n.text == ">=") {
          ++v[kComparator];
        } else if (n.text == "&&" || n.text == "||") {
          ++v[kLogical];
        } else {
          ++v[kArithmetic];
        }
        break;
      case NodeKind::kUnary:
        if (n.text == "!") ++v[kLogical];
        break;
      case NodeKind::kPrefix:
      case NodeKind::kPostfix:
        ++v[kArithmetic];
        break;
      case NodeKind::kStringLit:
        v[kHasLiteral] = 1;
        break;
      case NodeKind::kReturn:
        v[kHasRet] = 1;
        break;
      case NodeKind::kCall:
        v[kFuncCall] = 1;
        break;
      case NodeKind::kIdent:
        mark_local(id);
        break;
      default:
        break;
    }
  }
  return v;
}

FeatureVector ExtractIntraCommitFeatures(const CommitLine& line,
                                         std::span<const CommitLine> all_lines,
                                         const SnapshotModels& models) {
  FeatureVector v{};
  auto model_of = [&](const CommitLine& l) -> const SourceUnit* {
    auto it = models.find({l.path, l.side});
    return it == models.end() ? nullptr : it->second.get();
  };
  const SourceUnit* model = model_of(line);
  if (!model || !IsCodeLine(*model, line.line_no)) return v;

  const std::string text = NormalizedText(line.text);
  const std::set<std::string> callees = CalleesAt(*model, line.line_no);
  const uint32_t keywords = ControlKeywordsAt(*model, line.line_no);
  std::set<int> same_snapshot;  // other commit lines of this file and side
  for (const CommitLine& other : all_lines) {
    if (other.path == line.path && other.side == line.side &&
        other.line_no == line.line_no) {
      continue;
    }
    const SourceUnit* other_model = model_of(other);
    if (!other_model || !IsCodeLine(*other_model, other.line_no)) continue;
    if (other.path == line.path && other.side == line.side) {
      same_snapshot.insert(other.line_no);
    }
    if (NormalizedText(other.text) == text) ++v[kRepeated];
    if (!callees.empty()) {
      std::set<std::string> theirs = CalleesAt(*other_model, other.line_no);
      if (std::any_of(theirs.begin(), theirs.end(),
                      [&](const std::string& c) { return callees.count(c) > 0; })) {
        ++v[kRepeatedCall];
      }
    }
    if (keywords & ControlKeywordsAt(*other_model, other.line_no)) ++v[kRepeatedControl];
  }

  const FunctionModel* fn = FunctionOf(*model, line.line_no);
  if (!fn) return v;
  const std::vector<int> mine = NodesCovering(*fn, line.line_no);
  auto on_other_commit_line = [&](int node) {
    if (!IsReal(node)) return false;
    for (int l : fn->cfg[node].lines) {
      if (same_snapshot.count(l)) return true;
    }
    return false;
  };
  for (const minic::ControlEdge& e : fn->cdg) {
    if (std::find(mine.begin(), mine.end(), e.dependent) != mine.end() &&
        on_other_commit_line(e.controller)) {
      v[kControlDepend] = 1;
    }
  }
  for (const minic::DataEdge& e : fn->ddg) {
    if (std::find(mine.begin(), mine.end(), e.use) != mine.end() &&
        on_other_commit_line(e.def)) {
      v[kDepends] = 1;
    }
  }
  return v;
}

FeatureVector ExtractContextFeatures(const CommitLine& line, const SourceUnit& model,
                                     const std::set<int>& commit_lines) {
  FeatureVector v{};
  if (!IsCodeLine(model, line.line_no)) return v;
  const FunctionModel* fn = FunctionOf(model, line.line_no);
  if (!fn) return v;
  const int here = line.line_no;
  const std::vector<int> mine = NodesCovering(*fn, here);
  auto contains = [&](int node) {
    return std::find(mine.begin(), mine.end(), node) != mine.end();
  };
  auto add_lines = [&](std::set<int>& into, int node) {
    if (!IsReal(node)) return;
    for (int l : fn->cfg[node].lines) {
      if (l != here) into.insert(l);
    }
  };

  uint32_t constructs = 0;
  for (int node : mine) constructs |= fn->cfg[node].constructs;
  v[kIfBlock] = (constructs & minic::kInIf) ? 1 : 0;
  v[kElseBlock] = (constructs & minic::kInElse) ? 1 : 0;
  v[kForBlock] = (constructs & minic::kInFor) ? 1 : 0;
  v[kWhileBlock] = (constructs & minic::kInWhile) ? 1 : 0;
  v[kDoBlock] = (constructs & minic::kInDo) ? 1 : 0;
  v[kSwitchBlock] = (constructs & minic::kInSwitch) ? 1 : 0;
  v[kTryBlock] = (constructs & minic::kInTry) ? 1 : 0;
  v[kControlBlock] = constructs != 0 ? 1 : 0;

  std::set<int> controllers;
  for (const minic::ControlEdge& e : fn->cdg) {
    if (contains(e.dependent)) add_lines(controllers, e.controller);
  }
  v[kControlledBy] = static_cast<int32_t>(controllers.size());

  std::set<int> dependents;
  for (const minic::DataEdge& e : fn->ddg) {
    const bool from_here = contains(e.def);
    const bool to_here = contains(e.use);
    if (from_here) add_lines(dependents, e.use);
    if (from_here == to_here) continue;
    const int other = from_here ? e.use : e.def;
    for (int l : fn->cfg[other].lines) {
      if (!commit_lines.count(l)) v[kReachableOutside] = 1;
    }
  }
  v[kDependedBy] = static_cast<int32_t>(dependents.size());

  std::set<int> dominated_by;
  std::set<int> dominates;
  for (int n : mine) {
    for (int m = 0; m < fn->cfg.size(); ++m) {
      if (!IsReal(m) || m == n) continue;
      if (fn->postdom.PostDominates(m, n)) add_lines(dominated_by, m);
      if (fn->postdom.PostDominates(n, m)) add_lines(dominates, m);
    }
  }
  v[kPostDominatedBy] = static_cast<int32_t>(dominated_by.size());
  v[kPostDominates] = static_cast<int32_t>(dominates.size());
  return v;
}

SnapshotModels BuildSnapshotModels(const CommitRecord& record,
                                   std::vector<FeatureWarning>* warnings) {
  SnapshotModels models;
  std::set<std::pair<std::string, Side>> needed;
  for (const CommitLine& line : EnumerateCommitLines(record)) {
    needed.insert({line.path, line.side});
  }
  for (const FilePair& file : record.files) {
    for (Side side : {Side::kPre, Side::kPost}) {
      if (!needed.count({file.path, side})) continue;
      const auto& text = side == Side::kPre ? file.pre_text : file.post_text;
      if (!text) continue;
      try {
        models[{file.path, side}] = std::make_shared<const SourceUnit>(
            minic::BuildSourceUnit(*text, file.path));
      } catch (const Error& e) {
        if (warnings) {
          warnings->push_back({record.commit_id, file.path, side, e.kind(), e.what()});
        }
      }
    }
  }
  return models;
}

CommitFeatures FeaturizeCommit(const CommitRecord& record) {
  CommitFeatures out;
  SnapshotModels models = BuildSnapshotModels(record, &out.warnings);
  CommitFeatures lines = FeaturizeCommit(record, models);
  out.lines = std::move(lines.lines);
  return out;
}

CommitFeatures FeaturizeCommit(const CommitRecord& record, const SnapshotModels& models) {
  CommitFeatures out;
  const std::vector<CommitLine> lines = EnumerateCommitLines(record);
  std::map<std::pair<std::string, Side>, std::set<int>> commit_lines;
  for (const CommitLine& l : lines) commit_lines[{l.path, l.side}].insert(l.line_no);

  for (const CommitLine& line : lines) {
    auto it = models.find({line.path, line.side});
    if (it == models.end()) continue;
    const SourceUnit& model = *it->second;
    FeaturizedLine row;
    row.line = line;
    row.function = EnclosingFunction(model, line.line_no);
    const FeatureVector a = ExtractLineFeatures(line, model);
    const FeatureVector b = ExtractIntraCommitFeatures(line, lines, models);
    const FeatureVector c =
        ExtractContextFeatures(line, model, commit_lines[{line.path, line.side}]);
    for (int i = 0; i < kNumFeatures; ++i) {
      row.features[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] +
                                             b[static_cast<size_t>(i)] +
                                             c[static_cast<size_t>(i)];
    }
    out.lines.push_back(std::move(row));
  }
  return out;
}

Json FeatureRecordToJson(const std::string& id, const FeatureVector& features,
                         std::optional<int> label) {
  Json record;
  record["id"] = id;
  record["schema_version"] = kFeatureSchemaVersion;
  for (int i = 0; i < kNumFeatures; ++i) {
    record[std::string(FeatureName(i))] = features[static_cast<size_t>(i)];
  }
  if (label) record["label"] = *label;
  return record;
}

FeatureVector FeatureVectorFromJson(const Json& record) {
  const std::string id = record.value("id", std::string("<no id>"));
  if (record.value("schema_version", -1) != kFeatureSchemaVersion) {
    throw IntegrityError(id, "feature schema version mismatch (expected " +
                                 std::to_string(kFeatureSchemaVersion) + ")");
  }
  FeatureVector v{};
  for (int i = 0; i < kNumFeatures; ++i) {
    const std::string name(FeatureName(i));
    auto it = record.find(name);
    if (it == record.end() || !it->is_number_integer()) {
      throw IntegrityError(id, "missing or non-integer feature '" + name + "'");
    }
    v[static_cast<size_t>(i)] = it->get<int32_t>();
  }
  return v;
}

Json FeatureWarningToJson(const FeatureWarning& warning) {
  Json record;
  record["warning"] = warning.kind;
  record["commit_id"] = warning.commit_id;
  record["path"] = warning.path;
  record["side"] = std::string(SideName(warning.side));
  record["message"] = warning.message;
  return record;
}

}  // namespace linelabel
