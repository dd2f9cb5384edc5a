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

#ifndef LINELABEL_MINIC_H_
#define LINELABEL_MINIC_H_

// Lexer, AST and parser for the C-like language the code model analyses.
// The grammar is documented in docs/minic.ebnf.

#include <string>
#include <string_view>
#include <vector>

namespace linelabel::minic {

enum class TokenKind { kIdent, kKeyword, kInt, kFloat, kString, kChar, kPunct, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 0;
  int column = 0;
};

// Throws ParseError on malformed literals or unterminated comments and
// UnsupportedError on characters outside the grammar ('#', '[', '&', ...).
std::vector<Token> Lex(std::string_view source);

enum class NodeKind {
  // statements
  kBlock,
  kIf,        // [cond, then, else|-1]
  kFor,       // [init|-1, cond|-1, step|-1, body]
  kWhile,     // [cond, body]
  kDoWhile,   // [body, cond]
  kSwitch,    // [cond, case...]
  kCase,      // [label|-1 (default), stmt...]
  kTry,       // [try_block, catch_param|-1, catch_block]
  kReturn,    // [value|-1]
  kBreak,
  kContinue,
  kDeclStmt,  // [var_decl...]
  kVarDecl,   // [init|-1]; text = name, type = declared type
  kExprStmt,  // [expr]
  kEmpty,
  // expressions
  kAssign,    // [target, value]; text = operator
  kBinary,    // [lhs, rhs]; text = operator
  kUnary,     // [operand]; text = "!", "-" or "+"
  kPrefix,    // [operand]; text = "++" or "--"
  kPostfix,   // [operand]; text = "++" or "--"
  kCall,      // [arg...]; text = callee
  kIdent,
  kIntLit,
  kFloatLit,
  kStringLit,
  kCharLit,
  kBoolLit,
};

bool IsStatement(NodeKind kind);
std::string_view NodeKindName(NodeKind kind);

struct AstNode {
  NodeKind kind = NodeKind::kEmpty;
  std::string text;
  std::string type;    // declared type for kVarDecl
  int line = 0;        // line of the node's principal token
  int start_line = 0;  // first line of the node's extent
  int end_line = 0;    // last line of the node's extent
  // Compound statements: line of the header's closing ')' (if, while,
  // for, switch, do-while, catch) or of the keyword itself (try).
  int header_end_line = 0;
  // kIf: line of 'else'; kDoWhile: line of 'while'; kTry: line of 'catch'.
  int aux_line = 0;
  // kTry: line of the catch header's closing ')'.
  int aux_end_line = 0;
  int parent = -1;
  std::vector<int> children;  // -1 marks an absent optional child
};

struct Ast {
  std::vector<AstNode> nodes;

  const AstNode& operator[](int id) const { return nodes[static_cast<size_t>(id)]; }
  AstNode& operator[](int id) { return nodes[static_cast<size_t>(id)]; }
  int size() const { return static_cast<int>(nodes.size()); }

  // Nesting depth of `id` counting only statement ancestors (the function
  // body block is depth 0).
  int StatementDepth(int id) const;
};

struct Param {
  std::string name;
  std::string type;
  int line = 0;
};

struct ParsedFunction {
  std::string name;
  std::string return_type;
  std::vector<Param> params;
  int start_line = 0;  // line of the return type
  int end_line = 0;    // line of the closing brace
  Ast ast;
  int body = -1;       // kBlock root
};

struct ParsedUnit {
  std::vector<Token> tokens;  // excludes the end token
  Ast globals;
  std::vector<int> global_decls;  // kDeclStmt roots in `globals`
  std::vector<ParsedFunction> functions;
  int line_count = 0;
};

// Throws ParseError / UnsupportedError.
ParsedUnit Parse(std::string_view source);

}  // namespace linelabel::minic

#endif  // LINELABEL_MINIC_H_
