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

#include "linelabel/synth.h"

#include <algorithm>
#include <functional>
#include <cstdio>
#include <regex>
#include <set>

#include "linelabel/diff.h"
#include "linelabel/errors.h"
#include "linelabel/jsonl.h"
#include "linelabel/random.h"

namespace linelabel::synth {

namespace {

const std::vector<std::string> kParams = {"n",     "len",  "size", "count", "limit",
                                          "idx",   "key",  "mode", "width", "offset"};
const std::vector<std::string> kLocals = {"total", "sum",  "result", "acc",
                                          "value", "pos",  "step",   "hits"};
const std::vector<std::string> kCallees = {"compute", "lookup", "update",  "scale",
                                           "fetch",   "emit",   "process", "next_value",
                                           "checksum", "store"};
const std::vector<std::string> kVerbs = {"parse", "read",   "write", "encode", "decode",
                                         "scan",  "merge",  "filter", "pack",  "copy"};
const std::vector<std::string> kNouns = {"block", "header", "buffer", "frame",
                                         "entry", "record", "packet", "table"};
const std::vector<std::string> kModules = {"codec", "io", "net", "store", "util", "format"};
const std::vector<std::string> kMessages = {"invalid length", "index out of range",
                                            "bad header",     "buffer overflow",
                                            "null entry",     "unexpected mode"};
const std::vector<std::string> kLogMessages = {"entering", "state", "checkpoint",
                                               "values",   "trace", "progress"};
const std::vector<std::string> kComments = {"// update the running value",
                                            "// walk every element",
                                            "// helper for the caller",
                                            "// keep the previous behaviour",
                                            "// see the format notes"};

uint64_t HashId(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

enum class Shape { kDecl, kAssign, kDivide, kCall, kFor, kWhile, kIf, kIfElse, kSwitch, kDo,
                   kFlagSet, kReturn };

struct Stmt {
  Shape shape;
  std::vector<std::string> lines;  // indented
};

struct Function {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> locals;
  std::vector<std::string> uninit;  // locals declared without initialiser
  std::string flag;                 // bool local, or ""
  std::vector<Stmt> body;
};

struct Layout {
  int header = 0;
  std::vector<int> start;  // first line of each body statement
  int close = 0;
};

struct Edit {
  int begin = 0;
  int end = 0;  // exclusive; begin == end inserts
  std::vector<std::string> add;
  int label = 0;
  std::string origin;
};

class Generator {
 public:
  explicit Generator(Rng& rng) : rng_(rng) {}

  std::vector<Function> File() {
    std::vector<Function> fns;
    std::set<std::string> names;
    const int count = 2 + static_cast<int>(rng_.Index(2));
    while (static_cast<int>(fns.size()) < count) {
      Function f = Fn();
      if (names.insert(f.name).second) fns.push_back(std::move(f));
    }
    return fns;
  }

 private:
  std::vector<std::string> Distinct(const std::vector<std::string>& pool, int k) {
    std::vector<std::string> copy = pool;
    rng_.Shuffle(copy);
    copy.resize(static_cast<size_t>(k));
    return copy;
  }

  const std::string& P() { return rng_.Pick(fn_->params); }
  const std::string& L() { return rng_.Pick(fn_->locals); }
  std::string K() { return std::to_string(2 + rng_.Index(8)); }
  const std::string& Callee() { return rng_.Pick(kCallees); }

  Stmt Simple(const std::string& indent) {
    switch (rng_.Index(6)) {
      case 0:
        return {Shape::kAssign, {indent + L() + " = " + L() + " + " + P() + " * " + K() + ";"}};
      case 1:
        return {Shape::kAssign, {indent + L() + " += " + Callee() + "(" + P() + ");"}};
      case 2:
        return {Shape::kAssign,
                {indent + L() + " = " + Callee() + "(" + P() + ", " + L() + ");"}};
      case 3:
        return {Shape::kDivide, {indent + L() + " = " + L() + " / " + P() + ";"}};
      case 4:
        return {Shape::kCall, {indent + Callee() + "(" + L() + ", " + P() + ");"}};
      default:
        return {Shape::kAssign, {indent + L() + " = " + L() + " - " + K() + ";"}};
    }
  }

  Stmt Compound() {
    const std::string l = L();
    const std::string p = P();
    switch (rng_.Index(7)) {
      case 0: {
        const char* cmp = rng_.Bernoulli(0.35) ? " <= " : " < ";
        Stmt s{Shape::kFor, {"  for (int i = 0; i" + std::string(cmp) + p + "; i++) {"}};
        if (rng_.Bernoulli(0.5)) {
          s.lines.push_back("    " + l + " += " + Callee() + "(i);");
        } else {
          s.lines.push_back("    " + l + " = " + l + " + i;");
        }
        if (rng_.Bernoulli(0.4)) s.lines.push_back(Simple("    ").lines[0]);
        s.lines.push_back("  }");
        return s;
      }
      case 1:
        return {Shape::kWhile,
                {"  while (" + p + " > 0) {", "    " + p + "--;", "    " + l + " += " + p + ";",
                 "  }"}};
      case 2:
        return {Shape::kIf,
                {"  if (" + l + " > " + p + ") {", "    " + l + " = " + p + ";", "  }"}};
      case 3:
        return {Shape::kIfElse,
                {"  if (" + p + " == " + K() + ") {", Simple("    ").lines[0], "  } else {",
                 Simple("    ").lines[0], "  }"}};
      case 4:
        return {Shape::kSwitch,
                {"  switch (" + p + ") {", "    case 1:", "      " + l + " = " + l + " * 2;",
                 "      break;", "    default:", "      " + l + " = 0;", "  }"}};
      case 5:
        return {Shape::kDo,
                {"  do {", "    " + l + " = " + Callee() + "(" + l + ");",
                 "  } while (" + l + " < " + p + ");"}};
      default:
        if (!fn_->flag.empty()) {
          return {Shape::kFlagSet,
                  {"  if (" + l + " > " + p + ") " + fn_->flag + " = true;"}};
        }
        return Simple("  ");
    }
  }

  Function Fn() {
    Function f;
    fn_ = &f;
    f.name = rng_.Pick(kVerbs) + "_" + rng_.Pick(kNouns);
    f.params = Distinct(kParams, 2 + static_cast<int>(rng_.Index(2)));
    f.locals = Distinct(kLocals, 1 + static_cast<int>(rng_.Index(2)));
    for (const std::string& l : f.locals) {
      if (rng_.Bernoulli(0.2)) {
        f.uninit.push_back(l);
        f.body.push_back({Shape::kDecl, {"  int " + l + ";"}});
      } else {
        f.body.push_back({Shape::kDecl, {"  int " + l + " = 0;"}});
      }
    }
    if (rng_.Bernoulli(0.3)) {
      f.flag = rng_.Bernoulli(0.5) ? "done" : "found";
      f.body.push_back({Shape::kDecl, {"  bool " + f.flag + " = false;"}});
    }
    const int n = 3 + static_cast<int>(rng_.Index(4));
    for (int i = 0; i < n; ++i) {
      f.body.push_back(rng_.Bernoulli(0.45) ? Simple("  ") : Compound());
    }
    f.body.push_back({Shape::kReturn, {"  return " + f.locals[0] + ";"}});
    fn_ = nullptr;
    return f;
  }

  Rng& rng_;
  Function* fn_ = nullptr;
};

std::vector<std::string> Render(const std::vector<Function>& fns, const std::string& module,
                                std::vector<Layout>* layout) {
  std::vector<std::string> lines = {"// " + module + " routines", ""};
  for (const Function& f : fns) {
    Layout l;
    l.header = static_cast<int>(lines.size());
    std::string header = "int " + f.name + "(";
    for (size_t i = 0; i < f.params.size(); ++i) {
      header += (i ? ", int " : "int ") + f.params[i];
    }
    lines.push_back(header + ") {");
    for (const Stmt& s : f.body) {
      l.start.push_back(static_cast<int>(lines.size()));
      lines.insert(lines.end(), s.lines.begin(), s.lines.end());
    }
    l.close = static_cast<int>(lines.size());
    lines.push_back("}");
    lines.push_back("");
    layout->push_back(std::move(l));
  }
  return lines;
}

std::string Trim(const std::string& s) {
  const size_t b = s.find_first_not_of(' ');
  return b == std::string::npos ? "" : s.substr(b);
}

bool ContainsWord(const std::string& line, const std::string& word) {
  return std::regex_search(line, std::regex("\\b" + word + "\\b"));
}

std::string ReplaceWord(const std::string& line, const std::string& from,
                        const std::string& to) {
  return std::regex_replace(line, std::regex("\\b" + from + "\\b"), to);
}

// Applies templates to one generated file and records line labels.
class FileEditor {
 public:
  FileEditor(Rng& rng, std::vector<Function> fns, std::string module)
      : rng_(rng), fns_(std::move(fns)), module_(std::move(module)) {
    pre_ = Render(fns_, module_, &layout_);
    used_.assign(pre_.size() + 1, false);
    inserted_.assign(pre_.size() + 1, false);
  }

  using Template = bool (FileEditor::*)();

  bool TryTemplate(const std::string& name) {
    static const std::map<std::string, Template> kTemplates = {
        {"guard_return", &FileEditor::GuardReturn},
        {"guard_wrap", &FileEditor::GuardWrap},
        {"loop_bound", &FileEditor::LoopBound},
        {"flag_check", &FileEditor::FlagCheck},
        {"error_return", &FileEditor::ErrorReturn},
        {"try_wrap", &FileEditor::TryWrap},
        {"clamp", &FileEditor::Clamp},
        {"init_fix", &FileEditor::InitFix},
        {"loop_break", &FileEditor::LoopBreak},
        {"checked_call", &FileEditor::CheckedCall},
        {"rename_var", &FileEditor::RenameVar},
        {"extract_fn", &FileEditor::ExtractFunction},
        {"format", &FileEditor::FormatChurn},
        {"rename_callee", &FileEditor::RenameCallee},
        {"add_logging", &FileEditor::AddLogging},
        {"introduce_temp", &FileEditor::IntroduceTemp},
        {"comment", &FileEditor::AddComment},
        {"flip_compare", &FileEditor::FlipCompare},
        {"range_guard", &FileEditor::RangeGuard},
        {"guard", &FileEditor::FixGuard},
        {"aux_branch", &FileEditor::AuxBranch},
        {"fallback_call", &FileEditor::FallbackCall},
        {"nested_guard", &FileEditor::NestedGuard},
        {"switch_guard", &FileEditor::SwitchGuard},
        {"flag_guard", &FileEditor::FlagGuard},
        {"early_exit", &FileEditor::EarlyExit},
        {"debug_guard", &FileEditor::DebugGuard},
        {"counter_step", &FileEditor::CounterStep},
        {"loop_skip", &FileEditor::LoopSkip},
    };
    current_ = name;
    return (this->*kTemplates.at(name))();
  }

  bool empty() const { return edits_.empty(); }

  // Builds the file pair and the label of every changed line.
  FilePair Finish(const std::string& commit_id, const std::string& path,
                  std::map<std::string, int>* labels,
                  std::map<std::string, std::string>* origin) {
    std::stable_sort(edits_.begin(), edits_.end(), [](const Edit& a, const Edit& b) {
      if (a.begin != b.begin) return a.begin < b.begin;
      return (a.end > a.begin) < (b.end > b.begin);
    });
    diff::Lines pre{pre_, true};
    diff::Lines post{{}, true};
    std::vector<diff::EditOp> ops;
    int i = 0;
    for (const Edit& e : edits_) {
      for (; i < e.begin; ++i) {
        post.lines.push_back(pre_[static_cast<size_t>(i)]);
        ops.push_back(diff::EditOp::kKeep);
      }
      for (; i < e.end; ++i) {
        ops.push_back(diff::EditOp::kDel);
        const std::string id = MakeLineId(commit_id, path, Side::kPre, i + 1);
        (*labels)[id] = e.label;
        (*origin)[id] = e.origin;
      }
      for (const std::string& line : e.add) {
        post.lines.push_back(line);
        ops.push_back(diff::EditOp::kAdd);
        const std::string id =
            MakeLineId(commit_id, path, Side::kPost, static_cast<int>(post.lines.size()));
        (*labels)[id] = e.label;
        (*origin)[id] = e.origin;
      }
    }
    for (; i < static_cast<int>(pre_.size()); ++i) {
      post.lines.push_back(pre_[static_cast<size_t>(i)]);
      ops.push_back(diff::EditOp::kKeep);
    }
    FilePair file;
    file.path = path;
    file.pre_text = diff::JoinLines(pre);
    file.post_text = diff::JoinLines(post);
    file.hunks = diff::MakeHunks(pre, post, ops, 3);
    return file;
  }

 private:
  // ---- edit bookkeeping ----

  bool Free(int begin, int end) const {
    if (begin == end) {
      if (inserted_[static_cast<size_t>(begin)]) return false;
      return !(begin > 0 && used_[static_cast<size_t>(begin - 1)] &&
               used_[static_cast<size_t>(begin)]);
    }
    for (int i = begin; i < end; ++i) {
      if (used_[static_cast<size_t>(i)]) return false;
    }
    for (int i = begin + 1; i < end; ++i) {
      if (inserted_[static_cast<size_t>(i)]) return false;
    }
    return true;
  }

  void Add(Edit e) {
    e.origin = current_;
    if (e.begin == e.end) {
      inserted_[static_cast<size_t>(e.begin)] = true;
    } else {
      for (int i = e.begin; i < e.end; ++i) used_[static_cast<size_t>(i)] = true;
    }
    edits_.push_back(std::move(e));
  }

  bool Replace(int line, std::vector<std::string> add, int label) {
    if (!Free(line, line + 1)) return false;
    Add({line, line + 1, std::move(add), label, ""});
    return true;
  }

  bool Insert(int at, std::vector<std::string> add, int label) {
    if (!Free(at, at)) return false;
    Add({at, at, std::move(add), label, ""});
    return true;
  }

  struct Site {
    size_t fn;
    size_t stmt;
  };

  // Body statements (excluding declarations) matching `pred`, shuffled.
  std::vector<Site> Sites(const std::function<bool(const Function&, const Stmt&)>& pred,
                          bool include_return = false) {
    std::vector<Site> out;
    for (size_t f = 0; f < fns_.size(); ++f) {
      for (size_t s = 0; s < fns_[f].body.size(); ++s) {
        const Stmt& st = fns_[f].body[s];
        if (st.shape == Shape::kDecl) continue;
        if (st.shape == Shape::kReturn && !include_return) continue;
        if (pred(fns_[f], st)) out.push_back({f, s});
      }
    }
    rng_.Shuffle(out);
    return out;
  }

  int Start(const Site& s) const { return layout_[s.fn].start[s.stmt]; }
  const Stmt& StmtAt(const Site& s) const { return fns_[s.fn].body[s.stmt]; }

  static bool Any(const Function&, const Stmt&) { return true; }

  // ---- fix templates (label 1) ----

  bool GuardReturn() {
    for (const Site& s : Sites(Any, true)) {
      const std::string& p = rng_.Pick(fns_[s.fn].params);
      static const std::vector<std::string> kConds = {" == 0", " <= 0", " < 0", " > 4096"};
      const std::string cond = p + rng_.Pick(kConds);
      std::vector<std::string> add;
      if (rng_.Bernoulli(0.3)) {
        add = {"  if (" + cond + ")", "    return -1;"};
      } else {
        add = {"  if (" + cond + ") return -1;"};
      }
      if (Insert(Start(s), add, 1)) return true;
    }
    return false;
  }

  bool GuardWrap() {
    auto sites = Sites([](const Function&, const Stmt& st) {
      return st.shape == Shape::kDivide || st.shape == Shape::kCall;
    });
    for (const Site& s : sites) {
      const Function& f = fns_[s.fn];
      const std::string line = StmtAt(s).lines[0];
      std::string guard;
      if (StmtAt(s).shape == Shape::kDivide) {
        const std::string divisor = line.substr(line.rfind('/') + 2, line.size() - line.rfind('/') - 3);
        guard = divisor + " != 0";
      } else {
        guard = rng_.Pick(f.params) + " > 0";
      }
      if (Replace(Start(s), {"  if (" + guard + ") " + Trim(line)}, 1)) return true;
    }
    return false;
  }

  bool LoopBound() {
    auto sites = Sites([](const Function&, const Stmt& st) {
      return st.shape == Shape::kFor && st.lines[0].find("<=") != std::string::npos;
    });
    for (const Site& s : sites) {
      std::string header = StmtAt(s).lines[0];
      header.replace(header.find("<="), 2, "<");
      if (Replace(Start(s), {header}, 1)) return true;
    }
    return false;
  }

  bool FlagCheck() {
    for (const Site& s : Sites(Any, true)) {
      const Function& f = fns_[s.fn];
      if (!f.flag.empty()) continue;
      static const std::vector<std::string> kNames = {"ok", "valid", "safe"};
      const std::string flag = rng_.Pick(kNames);
      const std::string& p = rng_.Pick(f.params);
      std::vector<std::string> add = {
          "  bool " + flag + " = false;",
          "  if (" + p + " > 0 && " + p + " < 4096) " + flag + " = true;",
          "  if (!" + flag + ") return -1;"};
      if (Insert(Start(s), add, 1)) return true;
    }
    return false;
  }

  bool ErrorReturn() {
    for (const Site& s : Sites(Any, true)) {
      const Function& f = fns_[s.fn];
      const std::string& p = rng_.Pick(f.params);
      const std::string& q = rng_.Pick(f.params);
      const std::string cond = p == q ? p + " > 1024" : p + " > " + q;
      const std::string line =
          "  if (" + cond + ") return report_error(\"" + rng_.Pick(kMessages) + "\");";
      if (Insert(Start(s), {line}, 1)) return true;
    }
    return false;
  }

  bool TryWrap() {
    auto sites = Sites([](const Function&, const Stmt& st) {
      return st.shape == Shape::kCall ||
             (st.shape == Shape::kAssign && st.lines[0].find('(') != std::string::npos);
    });
    for (const Site& s : sites) {
      const std::string body = Trim(StmtAt(s).lines[0]);
      if (Replace(Start(s), {"  try {", "    " + body, "  } catch (int e) { return -1; }"}, 1)) {
        return true;
      }
    }
    return false;
  }

  bool Clamp() {
    for (const Site& s : Sites(Any, true)) {
      const Function& f = fns_[s.fn];
      const std::string& p = rng_.Pick(f.params);
      std::string line;
      if (rng_.Bernoulli(0.5)) {
        line = "  if (" + p + " < 0) " + p + " = 0;";
      } else {
        const std::string& q = rng_.Pick(f.params);
        const std::string bound = p == q ? "4096" : q;
        line = "  if (" + p + " > " + bound + ") " + p + " = " + bound + ";";
      }
      if (Insert(Start(s), {line}, 1)) return true;
    }
    return false;
  }

  bool InitFix() {
    std::vector<size_t> order(fns_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng_.Shuffle(order);
    for (size_t f : order) {
      for (size_t s = 0; s < fns_[f].body.size(); ++s) {
        const Stmt& st = fns_[f].body[s];
        if (st.shape != Shape::kDecl || st.lines[0].find('=') != std::string::npos) continue;
        std::string line = st.lines[0];
        line.insert(line.size() - 1, " = 0");
        if (Replace(layout_[f].start[s], {line}, 1)) return true;
      }
    }
    return false;
  }

  bool LoopBreak() {
    auto sites = Sites([](const Function&, const Stmt& st) {
      return st.shape == Shape::kFor || st.shape == Shape::kWhile;
    });
    for (const Site& s : sites) {
      const Function& f = fns_[s.fn];
      std::string line;
      if (StmtAt(s).shape == Shape::kFor) {
        line = "    if (i >= " + rng_.Pick(f.params) + ") break;";
      } else {
        line = "    if (" + rng_.Pick(f.locals) + " > 4096) break;";
      }
      if (Insert(Start(s) + 1, {line}, 1)) return true;
    }
    return false;
  }

  bool CheckedCall() {
    auto sites =
        Sites([](const Function&, const Stmt& st) { return st.shape == Shape::kCall; });
    for (const Site& s : sites) {
      std::string call = Trim(StmtAt(s).lines[0]);
      call.pop_back();  // ';'
      if (Replace(Start(s), {"  if (" + call + " < 0) return -1;"}, 1)) return true;
    }
    return false;
  }

  bool RangeGuard() {
    for (const Site& s : Sites(Any, true)) {
      const Function& f = fns_[s.fn];
      const std::string& p = rng_.Pick(f.params);
      const std::string& q = rng_.Pick(f.params);
      const std::string hi = p == q ? "4096" : q;
      const std::string line = "  if (" + p + " < 0 || " + p + " > " + hi + ") return -1;";
      if (Insert(Start(s), {line}, 1)) return true;
    }
    return false;
  }

  // Composed single-line branches. Fixes and refactors draw conditions from
  // the same pool and differ only in what the branch does, so the learners
  // need examples of many combinations to tell them apart.
  std::string GuardCondition(const Function& f) {
    const std::string& p = rng_.Pick(f.params);
    const std::string& q = rng_.Pick(f.params);
    const std::string& l = rng_.Pick(f.locals);
    switch (rng_.Index(8)) {
      case 0:
      case 1: {
        static const std::vector<std::string> kTests = {" == 0", " <= 0", " < 0", " > 4096"};
        return p + rng_.Pick(kTests);
      }
      case 2:
      case 3:
        return p == q ? l + " > " + p : p + " > " + q;
      case 4:
        return p + " < 0 || " + p + " > " + (p == q ? "4096" : q);
      case 5:
      case 6:
        return rng_.Pick(kCallees) + "(" + p + ") < 0";
      default:
        return l + " % 2 == 1";
    }
  }

  bool PlaceBranch(bool fix) {
    for (const Site& s : Sites(Any, true)) {
      const Function& f = fns_[s.fn];
      const Shape shape = StmtAt(s).shape;
      const bool in_loop = (shape == Shape::kFor || shape == Shape::kWhile) && rng_.Bernoulli(0.6);
      const bool in_if = shape == Shape::kIf && rng_.Bernoulli(0.6);
      const std::string indent = in_loop || in_if ? "    " : "  ";
      const std::string& p = rng_.Pick(f.params);
      const std::string& l = rng_.Pick(f.locals);
      std::vector<std::string> actions;
      if (fix) {
        actions = {"return -1;", "return report_error(\"" + rng_.Pick(kMessages) + "\");",
                   p + " = 0;", l + " = " + p + ";"};
        if (in_loop) actions.push_back("break;");
      } else {
        actions = {"log_debug(\"" + rng_.Pick(kLogMessages) + "\", " + p + ");",
                   "return " + p + " + 1;", l + " = " + l + " - 1;"};
      }
      const std::string line =
          indent + "if (" + GuardCondition(f) + ") " + rng_.Pick(actions);
      if (Insert(Start(s) + (in_loop || in_if ? 1 : 0), {line}, fix ? 1 : 0)) return true;
    }
    return false;
  }

  bool FixGuard() { return PlaceBranch(true); }
  bool AuxBranch() { return PlaceBranch(false); }

  bool FallbackCall() {
    for (const Site& s : Sites(Any, true)) {
      const Function& f = fns_[s.fn];
      const std::string& l = rng_.Pick(f.locals);
      const std::string line =
          "  if (" + l + " == 0) " + l + " = fallback(" + rng_.Pick(f.params) + ");";
      if (Insert(Start(s), {line}, 1)) return true;
    }
    return false;
  }

  // Guards placed inside the body of an existing loop or branch.
  bool NestedGuard() {
    auto sites = Sites([](const Function&, const Stmt& st) {
      return st.shape == Shape::kIf || st.shape == Shape::kWhile || st.shape == Shape::kDo;
    });
    for (const Site& s : sites) {
      const Function& f = fns_[s.fn];
      const std::string line = StmtAt(s).shape == Shape::kDo
                                   ? "    if (" + rng_.Pick(f.locals) + " < 0) break;"
                                   : "    if (" + rng_.Pick(f.params) + " > 4096) return -1;";
      if (Insert(Start(s) + 1, {line}, 1)) return true;
    }
    return false;
  }

  bool SwitchGuard() {
    auto sites =
        Sites([](const Function&, const Stmt& st) { return st.shape == Shape::kSwitch; });
    for (const Site& s : sites) {
      const std::string& l = rng_.Pick(fns_[s.fn].locals);
      if (Insert(Start(s) + 2, {"      if (" + l + " < 0) return -1;"}, 1)) return true;
    }
    return false;
  }

  bool FlagGuard() {
    for (size_t f = 0; f < fns_.size(); ++f) {
      if (fns_[f].flag.empty()) continue;
      const int at = layout_[f].start.back();
      if (Insert(at, {"  if (!" + fns_[f].flag + ") return -1;"}, 1)) return true;
    }
    return false;
  }

  // ---- refactor and formatting templates (label 0) ----

  // The next four insert lines shaped like the fix guards but differing in
  // one property, so a learner has to see examples of both to separate them.
  bool EarlyExit() {
    for (const Site& s : Sites(Any, true)) {
      const Function& f = fns_[s.fn];
      const std::string& p = rng_.Pick(f.params);
      const std::string line = "  if (" + p + " == 1) return " + p + " + 1;";
      if (Insert(Start(s), {line}, 0)) return true;
    }
    return false;
  }

  bool DebugGuard() {
    for (const Site& s : Sites(Any, true)) {
      const Function& f = fns_[s.fn];
      const std::string& p = rng_.Pick(f.params);
      const std::string line = "  if (" + p + " > 1024) log_debug(\"" +
                               rng_.Pick(kLogMessages) + "\", " + p + ");";
      if (Insert(Start(s), {line}, 0)) return true;
    }
    return false;
  }

  bool CounterStep() {
    for (const Site& s : Sites(Any, true)) {
      const Function& f = fns_[s.fn];
      const std::string& l = rng_.Pick(f.locals);
      const std::string line = "  if (" + l + " > 0) " + l + " = " + l + " - 1;";
      if (Insert(Start(s), {line}, 0)) return true;
    }
    return false;
  }

  bool LoopSkip() {
    auto sites = Sites([](const Function&, const Stmt& st) { return st.shape == Shape::kFor; });
    for (const Site& s : sites) {
      if (Insert(Start(s) + 1, {"    if (i % 2 == 1) continue;"}, 0)) return true;
    }
    return false;
  }

  bool RenameVar() {
    std::vector<size_t> order(fns_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng_.Shuffle(order);
    for (size_t f : order) {
      const std::string& from = rng_.Pick(fns_[f].locals);
      static const std::vector<std::string> kPrefix = {"cur_", "new_", "local_"};
      const std::string to = rng_.Pick(kPrefix) + from;
      std::vector<int> lines;
      for (int i = layout_[f].header + 1; i < layout_[f].close; ++i) {
        if (ContainsWord(pre_[static_cast<size_t>(i)], from)) lines.push_back(i);
      }
      if (lines.empty() ||
          !std::all_of(lines.begin(), lines.end(), [&](int i) { return Free(i, i + 1); })) {
        continue;
      }
      for (int i : lines) Replace(i, {ReplaceWord(pre_[static_cast<size_t>(i)], from, to)}, 0);
      return true;
    }
    return false;
  }

  bool ExtractFunction() {
    if (extracted_) return false;
    for (size_t f = 0; f < fns_.size(); ++f) {
      const Function& fn = fns_[f];
      for (size_t s = 0; s + 1 < fn.body.size(); ++s) {
        auto simple = [](const Stmt& st) {
          return st.shape == Shape::kAssign || st.shape == Shape::kCall ||
                 st.shape == Shape::kDivide;
        };
        if (!simple(fn.body[s]) || !simple(fn.body[s + 1])) continue;
        const int at = layout_[f].start[s];
        if (!Free(at, at + 2)) continue;
        const std::string helper = fn.name + "_part";
        std::string args;
        std::string params;
        for (const std::string& p : fn.params) {
          args += (args.empty() ? "" : ", ") + p;
          params += (params.empty() ? "int " : ", int ") + p;
        }
        for (const std::string& l : fn.locals) {
          args += ", " + l;
          params += ", int " + l;
        }
        Add({at, at + 2, {"  " + fn.locals[0] + " = " + helper + "(" + args + ");"}, 0, ""});
        const int end = static_cast<int>(pre_.size());
        Add({end, end,
             {"int " + helper + "(" + params + ") {", fn.body[s].lines[0],
              fn.body[s + 1].lines[0], "  return " + fn.locals[0] + ";", "}", ""},
             0, ""});
        extracted_ = true;
        return true;
      }
    }
    return false;
  }

  bool FormatChurn() {
    std::vector<int> candidates;
    for (size_t i = 0; i < pre_.size(); ++i) {
      const std::string t = Trim(pre_[i]);
      if (t.empty() || t == "}" || t == "{" || t.rfind("//", 0) == 0) continue;
      if (Free(static_cast<int>(i), static_cast<int>(i) + 1)) {
        candidates.push_back(static_cast<int>(i));
      }
    }
    rng_.Shuffle(candidates);
    const size_t want = 2 + rng_.Index(5);
    size_t done = 0;
    for (int i : candidates) {
      if (done == want) break;
      const std::string& line = pre_[static_cast<size_t>(i)];
      std::vector<std::string> out;
      switch (rng_.Index(3)) {
        case 0: {
          std::string s = line;
          for (const char* op : {" = ", " + ", " - ", " * ", " < ", " > ", ", "}) {
            std::string o(op);
            std::string tight = o == ", " ? "," : o.substr(1, o.size() - 2);
            for (size_t p; (p = s.find(o)) != std::string::npos;) s.replace(p, o.size(), tight);
          }
          out = {s};
          break;
        }
        case 1:
          out = {"  " + line};
          break;
        default:
          if (line.size() > 2 && line.compare(line.size() - 2, 2, " {") == 0 &&
              line.find('}') == std::string::npos) {
            const std::string indent = line.substr(0, line.find_first_not_of(' '));
            out = {line.substr(0, line.size() - 2), indent + "{"};
          } else {
            out = {line + "  "};
          }
      }
      if (out.size() == 1 && out[0] == line) continue;
      if (Replace(i, out, 0)) ++done;
    }
    return done > 0;
  }

  bool RenameCallee() {
    std::vector<std::string> names = kCallees;
    rng_.Shuffle(names);
    for (const std::string& from : names) {
      std::vector<int> lines;
      for (size_t i = 0; i < pre_.size(); ++i) {
        if (pre_[i].find(from + "(") != std::string::npos && ContainsWord(pre_[i], from)) {
          lines.push_back(static_cast<int>(i));
        }
      }
      if (lines.empty() ||
          !std::all_of(lines.begin(), lines.end(), [&](int i) { return Free(i, i + 1); })) {
        continue;
      }
      const std::string to = rng_.Bernoulli(0.5) ? from + "_ex" : "do_" + from;
      for (int i : lines) Replace(i, {ReplaceWord(pre_[static_cast<size_t>(i)], from, to)}, 0);
      return true;
    }
    return false;
  }

  bool AddLogging() {
    int added = 0;
    const int want = 1 + static_cast<int>(rng_.Index(2));
    for (const Site& s : Sites(Any, true)) {
      if (added == want) break;
      const Function& f = fns_[s.fn];
      const std::string line = "  log_debug(\"" + rng_.Pick(kLogMessages) + "\", " +
                               rng_.Pick(f.locals) + ");";
      if (Insert(Start(s), {line}, 0)) ++added;
    }
    return added > 0;
  }

  bool IntroduceTemp() {
    auto sites = Sites([](const Function&, const Stmt& st) {
      return st.shape == Shape::kAssign && st.lines[0].find(" * ") != std::string::npos;
    });
    for (const Site& s : sites) {
      const std::string line = StmtAt(s).lines[0];
      const size_t plus = line.find(" + ");
      if (plus == std::string::npos) continue;
      const std::string product = line.substr(plus + 3, line.size() - plus - 4);
      const std::string head = line.substr(0, plus);
      if (Replace(Start(s), {"  int scaled = " + product + ";", head + " + scaled;"}, 0)) {
        return true;
      }
    }
    return false;
  }

  bool AddComment() {
    for (const Site& s : Sites(Any, true)) {
      if (Insert(Start(s), {"  " + rng_.Pick(kComments)}, 0)) return true;
    }
    return false;
  }

  bool FlipCompare() {
    auto sites = Sites([](const Function&, const Stmt& st) {
      return st.shape == Shape::kIf || st.shape == Shape::kWhile;
    });
    for (const Site& s : sites) {
      const std::string line = StmtAt(s).lines[0];
      static const std::regex kCond(R"(\((\w+) > (\w+)\))");
      std::smatch m;
      if (!std::regex_search(line, m, kCond)) continue;
      const std::string flipped =
          m.prefix().str() + "(" + m[2].str() + " < " + m[1].str() + ")" + m.suffix().str();
      if (Replace(Start(s), {flipped}, 0)) return true;
    }
    return false;
  }

  Rng& rng_;
  std::vector<Function> fns_;
  std::string module_;
  std::vector<Layout> layout_;
  std::vector<std::string> pre_;
  std::vector<bool> used_;
  std::vector<bool> inserted_;
  std::vector<Edit> edits_;
  bool extracted_ = false;
  std::string current_;
};

struct Weighted {
  const char* name;
  int weight;
};

// Common shapes dominate; the rare ones are what a small random sample
// tends to miss.
const std::vector<Weighted> kFixTemplates = {
    {"guard", 40},     {"guard_return", 8}, {"clamp", 6},      {"error_return", 6},
    {"loop_break", 4}, {"switch_guard", 4}, {"flag_guard", 4}, {"flag_check", 3},
};
const std::vector<Weighted> kRefactorTemplates = {
    {"rename_var", 25},    {"rename_callee", 15}, {"add_logging", 12}, {"format", 12},
    {"aux_branch", 30},    {"introduce_temp", 6}, {"extract_fn", 5},   {"flip_compare", 4},
    {"comment", 2},
};

std::string PickWeighted(Rng& rng, const std::vector<Weighted>& table) {
  int total = 0;
  for (const Weighted& w : table) total += w.weight;
  int x = static_cast<int>(rng.Index(static_cast<uint64_t>(total)));
  for (const Weighted& w : table) {
    if (x < w.weight) return w.name;
    x -= w.weight;
  }
  return table.back().name;
}

// Applies up to `count` templates drawn from `table`; returns how many
// were applied.
int ApplySome(Rng& rng, FileEditor& editor, const std::vector<Weighted>& table, int count,
              std::vector<std::string>* applied) {
  int done = 0;
  for (int attempt = 0; attempt < 20 && done < count; ++attempt) {
    const std::string name = PickWeighted(rng, table);
    if (editor.TryTemplate(name)) {
      applied->push_back(name);
      ++done;
    }
  }
  return done;
}

}  // namespace

std::string_view CategoryName(Category category) {
  switch (category) {
    case Category::kFix: return "fix";
    case Category::kTangled: return "tangled";
    case Category::kRefactor: return "refactor";
    case Category::kFormat: return "format";
  }
  return "?";
}

SynthCommit GenerateCommit(uint64_t seed, const std::string& commit_id, Category category) {
  Rng rng(MixSeed(seed, HashId(commit_id)));
  SynthCommit out;
  out.category = category;
  out.record.commit_id = commit_id;
  out.record.message = std::string(CategoryName(category)) + " change";

  const int files = rng.Bernoulli(0.2) ? 2 : 1;
  std::vector<std::string> modules = kModules;
  rng.Shuffle(modules);
  for (int f = 0; f < files; ++f) {
    const bool primary = f == 0;
    for (int attempt = 0;; ++attempt) {
      Generator gen(rng);
      FileEditor editor(rng, gen.File(), modules[static_cast<size_t>(f)]);
      std::vector<std::string> applied;
      bool ok = true;
      if (category == Category::kFormat) {
        ok = ApplySome(rng, editor, {{"format", 1}}, 1, &applied) == 1;
        if (ok && rng.Bernoulli(0.3)) ApplySome(rng, editor, {{"comment", 1}}, 1, &applied);
      } else if (!primary) {
        ok = ApplySome(rng, editor, kRefactorTemplates, 1, &applied) == 1;
      } else {
        if (category == Category::kFix || category == Category::kTangled) {
          const int fixes = category == Category::kFix ? 1 + static_cast<int>(rng.Index(2)) : 1;
          ok = ApplySome(rng, editor, kFixTemplates, fixes, &applied) >= 1;
        }
        if (ok && (category == Category::kTangled || category == Category::kRefactor)) {
          const int refactors = 1 + static_cast<int>(rng.Index(3));
          ok = ApplySome(rng, editor, kRefactorTemplates, refactors, &applied) >= 1;
        }
      }
      if (!ok || editor.empty()) {
        if (attempt > 50) throw ContractError("synthetic generator made no progress");
        continue;
      }
      const std::string path = "src/" + modules[static_cast<size_t>(f)] + ".c";
      out.record.files.push_back(editor.Finish(commit_id, path, &out.labels, &out.origin));
      out.templates.insert(out.templates.end(), applied.begin(), applied.end());
      break;
    }
  }
  std::sort(out.record.files.begin(), out.record.files.end(),
            [](const FilePair& a, const FilePair& b) { return a.path < b.path; });
  return out;
}

std::vector<SynthCommit> GenerateCorpus(uint64_t seed, int size) {
  std::vector<SynthCommit> corpus;
  Rng rng(MixSeed(seed, 0x5157));
  for (int i = 0; i < size; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "c%04d", i);
    const double u = rng.Uniform();
    Category c = u < 0.08   ? Category::kFix
                 : u < 0.4  ? Category::kTangled
                 : u < 0.8  ? Category::kRefactor
                            : Category::kFormat;
    corpus.push_back(GenerateCommit(seed, id, c));
  }
  return corpus;
}

void WriteCorpus(const std::vector<SynthCommit>& corpus, const std::filesystem::path& out) {
  std::vector<Json> labels;
  std::vector<Json> manifest;
  for (const SynthCommit& c : corpus) {
    WriteCommitDir(c.record, out / "commits");
    for (const auto& [id, label] : c.labels) {
      Json j;
      j["id"] = id;
      j["label"] = label;
      labels.push_back(std::move(j));
    }
    Json m;
    m["commit_id"] = c.record.commit_id;
    m["category"] = std::string(CategoryName(c.category));
    m["templates"] = c.templates;
    manifest.push_back(std::move(m));
  }
  WriteJsonLines(out / "labels.jsonl", labels);
  WriteJsonLines(out / "manifest.jsonl", manifest);
}

}  // namespace linelabel::synth
