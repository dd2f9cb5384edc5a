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

#include "support/random_program.h"

#include <sstream>
#include <vector>

namespace linelabel::testing {
namespace {

const std::vector<std::string> kVars = {"a", "b", "x", "y"};
const std::vector<std::string> kTargets = {"x", "y", "a"};

class Generator {
 public:
  Generator(Rng& rng, int budget, bool dead_code)
      : rng_(rng), budget_(budget), dead_code_(dead_code) {}

  std::string Run() {
    out_ << "int f(int a, int b) {\n";
    out_ << "  int x = a;\n";
    out_ << "  int y = 0;\n";
    budget_ -= 2;
    Block(1, /*in_loop=*/false);
    out_ << "  return x + y;\n";
    out_ << "}\n";
    return out_.str();
  }

 private:
  const std::string& Var() { return rng_.Pick(kVars); }

  std::string Cond() {
    switch (rng_.Index(4)) {
      case 0: return Var() + " < " + Var();
      case 1: return Var() + " > 0";
      case 2: return Var() + " != " + std::to_string(rng_.Index(3));
      default: return "g(" + Var() + ") == 0";
    }
  }

  void Indent(int depth) { out_ << std::string(static_cast<size_t>(2 * depth), ' '); }

  void Simple(int depth) {
    Indent(depth);
    const std::string& target = rng_.Pick(kTargets);
    switch (rng_.Index(5)) {
      case 0: out_ << target << " = " << Var() << " + " << Var() << ";\n"; break;
      case 1: out_ << target << "++;\n"; break;
      case 2: out_ << target << " += " << Var() << ";\n"; break;
      case 3: out_ << "h(" << Var() << ");\n"; break;
      default: out_ << target << " = g(" << Var() << ");\n"; break;
    }
  }

  void Block(int depth, bool in_loop) {
    int count = 1 + static_cast<int>(rng_.Index(3));
    for (int i = 0; i < count && budget_ > 0; ++i) Statement(depth, in_loop);
  }

  void Statement(int depth, bool in_loop) {
    --budget_;
    uint64_t pick = rng_.Index(depth > 3 ? 3 : 14);
    if (pick < 3 || budget_ <= 0) {
      Simple(depth);
      return;
    }
    switch (pick) {
      case 3:
      case 4:
        Indent(depth);
        out_ << "if (" << Cond() << ") {\n";
        Block(depth + 1, in_loop);
        if (rng_.Bernoulli(0.5)) {
          Indent(depth);
          out_ << "} else {\n";
          Block(depth + 1, in_loop);
        }
        Indent(depth);
        out_ << "}\n";
        break;
      case 5:
        Indent(depth);
        out_ << "while (" << Cond() << ") {\n";
        Block(depth + 1, true);
        Indent(depth);
        out_ << "}\n";
        break;
      case 6:
        Indent(depth);
        out_ << "for (int i = 0; i < " << Var() << "; i++) {\n";
        Block(depth + 1, true);
        Indent(depth);
        out_ << "}\n";
        break;
      case 7:
        Indent(depth);
        out_ << "do {\n";
        Block(depth + 1, true);
        Indent(depth);
        out_ << "} while (" << Cond() << ");\n";
        break;
      case 8: {
        Indent(depth);
        out_ << "switch (" << Var() << ") {\n";
        int cases = 1 + static_cast<int>(rng_.Index(3));
        for (int c = 0; c < cases; ++c) {
          Indent(depth + 1);
          out_ << "case " << c << ":\n";
          if (budget_ > 0) Statement(depth + 2, in_loop);
          if (rng_.Bernoulli(0.6)) {
            Indent(depth + 2);
            out_ << "break;\n";
          }
        }
        if (rng_.Bernoulli(0.5)) {
          Indent(depth + 1);
          out_ << "default:\n";
          Simple(depth + 2);
        }
        Indent(depth);
        out_ << "}\n";
        break;
      }
      case 9:
        Indent(depth);
        out_ << "try {\n";
        Block(depth + 1, in_loop);
        Indent(depth);
        out_ << "} catch (int e) {\n";
        Block(depth + 1, in_loop);
        Indent(depth);
        out_ << "}\n";
        break;
      case 10:
        if (!dead_code_) {
          Simple(depth);
          break;
        }
        Indent(depth);
        if (in_loop) {
          out_ << (rng_.Bernoulli(0.5) ? "break;\n" : "continue;\n");
        } else {
          out_ << "return " << Var() << ";\n";
        }
        break;
      case 11:
        if (!dead_code_) {
          Simple(depth);
          break;
        }
        Indent(depth);
        out_ << "return " << Var() << ";\n";
        // Dead code after the return has no path from entry.
        if (dead_code_ && rng_.Bernoulli(0.3)) Simple(depth);
        break;
      default:
        Simple(depth);
        break;
    }
  }

  Rng& rng_;
  int budget_;
  bool dead_code_;
  std::ostringstream out_;
};

}  // namespace

std::string RandomFunction(Rng& rng, int statement_budget, bool dead_code) {
  return Generator(rng, statement_budget, dead_code).Run();
}

}  // namespace linelabel::testing
