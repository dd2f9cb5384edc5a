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

#include "linelabel/minic.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <unordered_set>

#include "linelabel/errors.h"

namespace linelabel::minic {
namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "int",   "float", "bool",    "char",  "void",     "if",     "else",
    "for",   "while", "do",      "switch", "case",    "default", "try",
    "catch", "return", "break",  "continue", "true",  "false"};

// C keywords deliberately outside the grammar.
const std::unordered_set<std::string_view> kUnsupportedWords = {
    "goto",   "struct", "union",  "enum",     "typedef", "sizeof",
    "unsigned", "signed", "long", "short",    "double",  "static",
    "const",  "extern", "volatile", "register", "auto",  "inline"};

// Longest first so that maximal munch works by prefix test.
constexpr std::array<std::string_view, 28> kPunctuators = {
    "++", "--", "+=", "-=", "*=", "/=", "==", "!=", "<=", ">=", "&&", "||",
    "(",  ")",  "{",  "}",  ";",  ",",  ":",  "=",  "<",  ">",  "+",  "-",
    "*",  "/",  "%",  "!"};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

bool IsStatement(NodeKind kind) {
  return kind <= NodeKind::kEmpty;
}

std::string_view NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kBlock: return "block";
    case NodeKind::kIf: return "if";
    case NodeKind::kFor: return "for";
    case NodeKind::kWhile: return "while";
    case NodeKind::kDoWhile: return "do";
    case NodeKind::kSwitch: return "switch";
    case NodeKind::kCase: return "case";
    case NodeKind::kTry: return "try";
    case NodeKind::kReturn: return "return";
    case NodeKind::kBreak: return "break";
    case NodeKind::kContinue: return "continue";
    case NodeKind::kDeclStmt: return "decl";
    case NodeKind::kVarDecl: return "var";
    case NodeKind::kExprStmt: return "expr";
    case NodeKind::kEmpty: return "empty";
    case NodeKind::kAssign: return "assign";
    case NodeKind::kBinary: return "binary";
    case NodeKind::kUnary: return "unary";
    case NodeKind::kPrefix: return "prefix";
    case NodeKind::kPostfix: return "postfix";
    case NodeKind::kCall: return "call";
    case NodeKind::kIdent: return "ident";
    case NodeKind::kIntLit: return "int";
    case NodeKind::kFloatLit: return "float";
    case NodeKind::kStringLit: return "string";
    case NodeKind::kCharLit: return "char";
    case NodeKind::kBoolLit: return "bool";
  }
  return "?";
}

int Ast::StatementDepth(int id) const {
  int depth = 0;
  for (int p = (*this)[id].parent; p >= 0; p = (*this)[p].parent) {
    if (IsStatement((*this)[p].kind) && (*this)[p].kind != NodeKind::kBlock) {
      ++depth;
    }
  }
  return depth;
}

std::vector<Token> Lex(std::string_view src) {
  std::vector<Token> tokens;
  int line = 1;
  int col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      int start_line = line, start_col = col;
      advance(2);
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) advance(1);
      if (i + 1 >= src.size()) {
        throw ParseError(start_line, start_col, "unterminated comment");
      }
      advance(2);
      continue;
    }

    Token tok;
    tok.line = line;
    tok.column = col;
    size_t start = i;

    if (IsIdentStart(c)) {
      size_t j = i;
      while (j < src.size() && IsIdentChar(src[j])) ++j;
      tok.text = std::string(src.substr(i, j - i));
      tok.kind = kKeywords.count(tok.text) ? TokenKind::kKeyword : TokenKind::kIdent;
      advance(j - i);
      tokens.push_back(std::move(tok));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      size_t j = i;
      bool is_float = false;
      if (c == '0' && j + 1 < src.size() && (src[j + 1] == 'x' || src[j + 1] == 'X')) {
        j += 2;
        while (j < src.size() && std::isxdigit(static_cast<unsigned char>(src[j]))) ++j;
      } else {
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        if (j < src.size() && src[j] == '.') {
          is_float = true;
          ++j;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
        if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
          size_t k = j + 1;
          if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
          if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
            is_float = true;
            j = k;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
          }
        }
      }
      while (j < src.size() && std::strchr("uUlLfF", src[j]) != nullptr && src[j] != '\0') {
        if (src[j] == 'f' || src[j] == 'F') is_float = true;
        ++j;
      }
      if (j < src.size() && IsIdentChar(src[j])) {
        throw ParseError(line, col, "malformed number literal");
      }
      tok.kind = is_float ? TokenKind::kFloat : TokenKind::kInt;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
      tokens.push_back(std::move(tok));
      continue;
    }
    if (c == '"' || c == '\'') {
      size_t j = i + 1;
      while (j < src.size() && src[j] != c && src[j] != '\n') {
        if (src[j] == '\\' && j + 1 < src.size()) ++j;
        ++j;
      }
      if (j >= src.size() || src[j] != c) {
        throw ParseError(line, col, c == '"' ? "unterminated string literal"
                                             : "unterminated character literal");
      }
      tok.kind = c == '"' ? TokenKind::kString : TokenKind::kChar;
      tok.text = std::string(src.substr(start, j + 1 - start));
      advance(j + 1 - i);
      tokens.push_back(std::move(tok));
      continue;
    }
    bool matched = false;
    for (std::string_view p : kPunctuators) {
      if (src.substr(i, p.size()) == p) {
        tok.kind = TokenKind::kPunct;
        tok.text = std::string(p);
        advance(p.size());
        tokens.push_back(std::move(tok));
        matched = true;
        break;
      }
    }
    if (matched) continue;
    std::string bad(1, c);
    if (c == '-' || c == '&' || c == '|' || c == '<' || c == '>') {
      // "->", "&", "|", "<<", ">>" are all outside the grammar.
      if (i + 1 < src.size() && std::strchr("&|<>=", src[i + 1]) != nullptr) {
        bad += src[i + 1];
      }
    }
    throw UnsupportedError(line, col, bad);
  }
  return tokens;
}

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {
    Token end;
    end.kind = TokenKind::kEnd;
    end.line = toks_.empty() ? 1 : toks_.back().line;
    end.column = 0;
    toks_.push_back(end);
  }

  ParsedUnit ParseUnit() {
    ParsedUnit unit;
    while (Peek().kind != TokenKind::kEnd) {
      const Token& start = Peek();
      std::string type = ParseType();
      const Token& name = ExpectIdent();
      if (PeekIs("(")) {
        ParsedFunction fn;
        fn.name = name.text;
        fn.return_type = type;
        fn.start_line = start.line;
        fn.params = ParseParams();
        if (Accept(";")) continue;  // prototype
        ast_ = &fn.ast;
        fn.body = ParseBlock(-1);
        fn.end_line = fn.ast[fn.body].end_line;
        ast_ = nullptr;
        unit.functions.push_back(std::move(fn));
      } else {
        ast_ = &unit.globals;
        int decl = NewNode(NodeKind::kDeclStmt, start, -1);
        Node(decl).text = type;
        ParseDeclarators(decl, type, name);
        const Token& semi = Expect(";");
        Close(decl, semi.line);
        unit.global_decls.push_back(decl);
        ast_ = nullptr;
      }
    }
    toks_.pop_back();
    unit.tokens = std::move(toks_);
    return unit;
  }

 private:
  // ---- token helpers ----
  const Token& Peek(size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool PeekIs(std::string_view text, size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return (t.kind == TokenKind::kPunct || t.kind == TokenKind::kKeyword) &&
           t.text == text;
  }
  const Token& Next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool Accept(std::string_view text) {
    if (!PeekIs(text)) return false;
    Next();
    return true;
  }
  [[noreturn]] void Fail(const Token& at, const std::string& message) const {
    if (at.kind == TokenKind::kEnd) {
      throw ParseError(at.line, 0, message + " at end of input");
    }
    throw ParseError(at.line, at.column, message + ", found '" + at.text + "'");
  }
  void CheckSupported(const Token& t) const {
    if (t.kind == TokenKind::kIdent && kUnsupportedWords.count(t.text)) {
      throw UnsupportedError(t.line, t.column, t.text);
    }
  }
  const Token& Expect(std::string_view text) {
    if (!PeekIs(text)) {
      CheckSupported(Peek());
      Fail(Peek(), "expected '" + std::string(text) + "'");
    }
    return Next();
  }
  const Token& ExpectIdent() {
    CheckSupported(Peek());
    if (Peek().kind != TokenKind::kIdent) Fail(Peek(), "expected identifier");
    return Next();
  }
  const Token& Previous() const { return toks_[pos_ - 1]; }

  bool PeekIsType() const {
    const Token& t = Peek();
    return t.kind == TokenKind::kKeyword &&
           (t.text == "int" || t.text == "float" || t.text == "bool" ||
            t.text == "char" || t.text == "void");
  }

  std::string ParseType() {
    CheckSupported(Peek());
    if (!PeekIsType()) Fail(Peek(), "expected a type");
    std::string type = Next().text;
    if (PeekIs("*")) {
      if (type != "char") throw UnsupportedError(Peek().line, Peek().column, "*");
      Next();
      type = "char*";
      if (PeekIs("*")) throw UnsupportedError(Peek().line, Peek().column, "*");
    }
    return type;
  }

  std::vector<Param> ParseParams() {
    Expect("(");
    std::vector<Param> params;
    if (PeekIs("void") && PeekIs(")", 1)) {
      Next();
    } else if (!PeekIs(")")) {
      do {
        Param p;
        p.type = ParseType();
        if (p.type == "void") Fail(Previous(), "parameter of type void");
        const Token& name = ExpectIdent();
        p.name = name.text;
        p.line = name.line;
        params.push_back(std::move(p));
      } while (Accept(","));
    }
    Expect(")");
    return params;
  }

  // ---- AST helpers ----
  AstNode& Node(int id) { return (*ast_)[id]; }

  int NewNode(NodeKind kind, const Token& at, int parent) {
    AstNode node;
    node.kind = kind;
    node.line = at.line;
    node.start_line = at.line;
    node.end_line = at.line;
    node.parent = parent;
    ast_->nodes.push_back(std::move(node));
    return ast_->size() - 1;
  }

  void AddChild(int parent, int child) {
    Node(parent).children.push_back(child);
    if (child >= 0) {
      Node(child).parent = parent;
      Node(parent).start_line = std::min(Node(parent).start_line, Node(child).start_line);
      Node(parent).end_line = std::max(Node(parent).end_line, Node(child).end_line);
    }
  }

  void Close(int id, int line) {
    Node(id).end_line = std::max(Node(id).end_line, line);
  }

  // ---- statements ----
  int ParseBlock(int parent) {
    const Token& open = Expect("{");
    int block = NewNode(NodeKind::kBlock, open, parent);
    while (!PeekIs("}")) {
      if (Peek().kind == TokenKind::kEnd) Fail(Peek(), "expected '}'");
      AddChild(block, ParseStatement(block));
    }
    Close(block, Next().line);
    return block;
  }

  int ParseStatement(int parent) {
    const Token& t = Peek();
    CheckSupported(t);
    if (PeekIs("{")) return ParseBlock(parent);
    if (PeekIs("if")) return ParseIf(parent);
    if (PeekIs("while")) return ParseWhile(parent);
    if (PeekIs("do")) return ParseDoWhile(parent);
    if (PeekIs("for")) return ParseFor(parent);
    if (PeekIs("switch")) return ParseSwitch(parent);
    if (PeekIs("try")) return ParseTry(parent);
    if (PeekIs("return")) {
      int node = NewNode(NodeKind::kReturn, Next(), parent);
      if (!PeekIs(";")) {
        AddChild(node, ParseExpr(node));
      } else {
        Node(node).children.push_back(-1);
      }
      Close(node, Expect(";").line);
      return node;
    }
    if (PeekIs("break") || PeekIs("continue")) {
      NodeKind kind = PeekIs("break") ? NodeKind::kBreak : NodeKind::kContinue;
      int node = NewNode(kind, Next(), parent);
      Close(node, Expect(";").line);
      return node;
    }
    if (PeekIs(";")) return NewNode(NodeKind::kEmpty, Next(), parent);
    if (PeekIs("case") || PeekIs("default")) Fail(t, "case label outside switch");
    if (PeekIs("else")) Fail(t, "'else' without 'if'");
    if (PeekIs("catch")) Fail(t, "'catch' without 'try'");
    if (PeekIsType()) {
      int decl = ParseDeclStmtNoSemi(parent);
      Close(decl, Expect(";").line);
      return decl;
    }
    int stmt = NewNode(NodeKind::kExprStmt, t, parent);
    AddChild(stmt, ParseExpr(stmt));
    Close(stmt, Expect(";").line);
    return stmt;
  }

  int ParseDeclStmtNoSemi(int parent) {
    const Token& start = Peek();
    std::string type = ParseType();
    if (type == "void") Fail(Previous(), "variable of type void");
    int decl = NewNode(NodeKind::kDeclStmt, start, parent);
    Node(decl).text = type;
    const Token& name = ExpectIdent();
    ParseDeclarators(decl, type, name);
    return decl;
  }

  // `first` has already been consumed.
  void ParseDeclarators(int decl, const std::string& type, const Token& first) {
    const Token* name = &first;
    while (true) {
      int var = NewNode(NodeKind::kVarDecl, *name, decl);
      Node(var).text = name->text;
      Node(var).type = type;
      if (Accept("=")) {
        AddChild(var, ParseAssignment(var));
      } else {
        Node(var).children.push_back(-1);
      }
      AddChild(decl, var);
      if (!Accept(",")) break;
      name = &ExpectIdent();
    }
  }

  int ParseCondition(int owner) {
    Expect("(");
    int cond = ParseExpr(owner);
    Node(owner).header_end_line = Expect(")").line;
    return cond;
  }

  int ParseIf(int parent) {
    int node = NewNode(NodeKind::kIf, Next(), parent);
    AddChild(node, ParseCondition(node));
    AddChild(node, ParseStatement(node));
    if (PeekIs("else")) {
      Node(node).aux_line = Next().line;
      AddChild(node, ParseStatement(node));
    } else {
      Node(node).children.push_back(-1);
    }
    return node;
  }

  int ParseWhile(int parent) {
    int node = NewNode(NodeKind::kWhile, Next(), parent);
    AddChild(node, ParseCondition(node));
    AddChild(node, ParseStatement(node));
    return node;
  }

  int ParseDoWhile(int parent) {
    int node = NewNode(NodeKind::kDoWhile, Next(), parent);
    AddChild(node, ParseStatement(node));
    Node(node).aux_line = Expect("while").line;
    AddChild(node, ParseCondition(node));
    Close(node, Expect(";").line);
    return node;
  }

  int ParseFor(int parent) {
    int node = NewNode(NodeKind::kFor, Next(), parent);
    Expect("(");
    if (PeekIs(";")) {
      Node(node).children.push_back(-1);
    } else if (PeekIsType()) {
      AddChild(node, ParseDeclStmtNoSemi(node));
    } else {
      int init = NewNode(NodeKind::kExprStmt, Peek(), node);
      AddChild(init, ParseExpr(init));
      AddChild(node, init);
    }
    Expect(";");
    if (PeekIs(";")) {
      Node(node).children.push_back(-1);
    } else {
      AddChild(node, ParseExpr(node));
    }
    Expect(";");
    if (PeekIs(")")) {
      Node(node).children.push_back(-1);
    } else {
      AddChild(node, ParseExpr(node));
    }
    Node(node).header_end_line = Expect(")").line;
    AddChild(node, ParseStatement(node));
    return node;
  }

  int ParseSwitch(int parent) {
    int node = NewNode(NodeKind::kSwitch, Next(), parent);
    AddChild(node, ParseCondition(node));
    Expect("{");
    int current = -1;
    while (!PeekIs("}")) {
      if (Peek().kind == TokenKind::kEnd) Fail(Peek(), "expected '}'");
      if (PeekIs("case") || PeekIs("default")) {
        bool is_default = PeekIs("default");
        current = NewNode(NodeKind::kCase, Next(), node);
        if (is_default) {
          Node(current).children.push_back(-1);
        } else {
          AddChild(current, ParseExpr(current));
        }
        Node(current).header_end_line = Expect(":").line;
        Close(current, Node(current).header_end_line);
        AddChild(node, current);
        continue;
      }
      if (current < 0) Fail(Peek(), "statement before the first case label");
      int stmt = ParseStatement(current);
      AddChild(current, stmt);
      // Keep the switch extent in sync with its growing last case.
      Close(node, Node(stmt).end_line);
    }
    Close(node, Next().line);
    return node;
  }

  int ParseTry(int parent) {
    const Token& kw = Next();
    int node = NewNode(NodeKind::kTry, kw, parent);
    Node(node).header_end_line = kw.line;
    AddChild(node, ParseBlock(node));
    Node(node).aux_line = Expect("catch").line;
    Expect("(");
    if (PeekIsType()) {
      const Token& type_tok = Peek();
      std::string type = ParseType();
      if (Peek().kind == TokenKind::kIdent) {
        const Token& name = Next();
        int decl = NewNode(NodeKind::kVarDecl, name, node);
        Node(decl).text = name.text;
        Node(decl).type = type;
        Node(decl).start_line = type_tok.line;
        Node(decl).children.push_back(-1);
        AddChild(node, decl);
      } else {
        Node(node).children.push_back(-1);
      }
    } else {
      Node(node).children.push_back(-1);
    }
    Node(node).aux_end_line = Expect(")").line;
    AddChild(node, ParseBlock(node));
    return node;
  }

  // ---- expressions ----
  int ParseExpr(int parent) { return ParseAssignment(parent); }

  int ParseAssignment(int parent) {
    int lhs = ParseBinary(parent, 0);
    const Token& op = Peek();
    if (op.kind == TokenKind::kPunct &&
        (op.text == "=" || op.text == "+=" || op.text == "-=" || op.text == "*=" ||
         op.text == "/=")) {
      if (Node(lhs).kind != NodeKind::kIdent) {
        Fail(op, "assignment target must be a variable");
      }
      Next();
      int node = NewNode(NodeKind::kAssign, op, parent);
      Node(node).text = op.text;
      AddChild(node, lhs);
      AddChild(node, ParseAssignment(node));
      return node;
    }
    return lhs;
  }

  static int Precedence(const Token& t) {
    if (t.kind != TokenKind::kPunct) return -1;
    const std::string& s = t.text;
    if (s == "||") return 1;
    if (s == "&&") return 2;
    if (s == "==" || s == "!=") return 3;
    if (s == "<" || s == "<=" || s == ">" || s == ">=") return 4;
    if (s == "+" || s == "-") return 5;
    if (s == "*" || s == "/" || s == "%") return 6;
    return -1;
  }

  // Precedence climbing over the left-associative binary operators.
  int ParseBinary(int parent, int min_prec) {
    int lhs = ParseUnary(parent);
    while (true) {
      const Token& op = Peek();
      int prec = Precedence(op);
      if (prec < 0 || prec < min_prec) break;
      Next();
      int node = NewNode(NodeKind::kBinary, op, parent);
      Node(node).text = op.text;
      AddChild(node, lhs);
      AddChild(node, ParseBinary(node, prec + 1));
      lhs = node;
    }
    return lhs;
  }

  int ParseUnary(int parent) {
    const Token& t = Peek();
    if (t.kind == TokenKind::kPunct && (t.text == "!" || t.text == "-" || t.text == "+")) {
      Next();
      int node = NewNode(NodeKind::kUnary, t, parent);
      Node(node).text = t.text;
      AddChild(node, ParseUnary(node));
      return node;
    }
    if (t.kind == TokenKind::kPunct && (t.text == "++" || t.text == "--")) {
      Next();
      int node = NewNode(NodeKind::kPrefix, t, parent);
      Node(node).text = t.text;
      int operand = ParseUnary(node);
      if (Node(operand).kind != NodeKind::kIdent) {
        Fail(t, "operand of " + t.text + " must be a variable");
      }
      AddChild(node, operand);
      return node;
    }
    if (t.kind == TokenKind::kPunct && t.text == "*") {
      throw UnsupportedError(t.line, t.column, "*");
    }
    return ParsePostfix(parent);
  }

  int ParsePostfix(int parent) {
    int operand = ParsePrimary(parent);
    while (PeekIs("++") || PeekIs("--")) {
      const Token& op = Next();
      if (Node(operand).kind != NodeKind::kIdent) {
        Fail(op, "operand of " + op.text + " must be a variable");
      }
      int node = NewNode(NodeKind::kPostfix, op, parent);
      Node(node).text = op.text;
      AddChild(node, operand);
      operand = node;
    }
    return operand;
  }

  int ParsePrimary(int parent) {
    const Token& t = Peek();
    CheckSupported(t);
    switch (t.kind) {
      case TokenKind::kIdent: {
        Next();
        if (PeekIs("(")) {
          int call = NewNode(NodeKind::kCall, t, parent);
          Node(call).text = t.text;
          Next();
          if (!PeekIs(")")) {
            do {
              AddChild(call, ParseAssignment(call));
            } while (Accept(","));
          }
          Close(call, Expect(")").line);
          return call;
        }
        int id = NewNode(NodeKind::kIdent, t, parent);
        Node(id).text = t.text;
        return id;
      }
      case TokenKind::kInt:
      case TokenKind::kFloat:
      case TokenKind::kString:
      case TokenKind::kChar: {
        Next();
        NodeKind kind = t.kind == TokenKind::kInt     ? NodeKind::kIntLit
                        : t.kind == TokenKind::kFloat ? NodeKind::kFloatLit
                        : t.kind == TokenKind::kString ? NodeKind::kStringLit
                                                       : NodeKind::kCharLit;
        int lit = NewNode(kind, t, parent);
        Node(lit).text = t.text;
        return lit;
      }
      case TokenKind::kKeyword:
        if (t.text == "true" || t.text == "false") {
          Next();
          int lit = NewNode(NodeKind::kBoolLit, t, parent);
          Node(lit).text = t.text;
          return lit;
        }
        if (PeekIsType()) throw UnsupportedError(t.line, t.column, t.text);
        Fail(t, "expected an expression");
      case TokenKind::kPunct:
        if (t.text == "(") {
          Next();
          if (PeekIsType()) {
            throw UnsupportedError(Peek().line, Peek().column, "cast");
          }
          int inner = ParseExpr(parent);
          const Token& close = Expect(")");
          // Parentheses leave no node but widen the extent.
          Node(inner).start_line = std::min(Node(inner).start_line, t.line);
          Node(inner).end_line = std::max(Node(inner).end_line, close.line);
          return inner;
        }
        Fail(t, "expected an expression");
      case TokenKind::kEnd:
        Fail(t, "expected an expression");
    }
    Fail(t, "expected an expression");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  Ast* ast_ = nullptr;
};

}  // namespace

ParsedUnit Parse(std::string_view source) {
  std::vector<Token> tokens = Lex(source);
  int line_count = 0;
  for (char c : source) line_count += c == '\n';
  if (!source.empty() && source.back() != '\n') ++line_count;
  Parser parser(std::move(tokens));
  ParsedUnit unit = parser.ParseUnit();
  unit.line_count = line_count;
  return unit;
}

}  // namespace linelabel::minic
