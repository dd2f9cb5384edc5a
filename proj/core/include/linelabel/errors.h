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

#ifndef LINELABEL_ERRORS_H_
#define LINELABEL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace linelabel {

// Exit-code family an error maps to at the command line.
enum class ErrorClass {
  kInput = 2,     // malformed or inconsistent input files
  kAnalysis = 3,  // input is well formed but cannot be analysed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass error_class, const std::string& kind,
        const std::string& message)
      : std::runtime_error(message), error_class_(error_class), kind_(kind) {}

  ErrorClass error_class() const { return error_class_; }
  // Short machine-readable tag, e.g. "parse", "integrity".
  const std::string& kind() const { return kind_; }

 private:
  ErrorClass error_class_;
  std::string kind_;
};

// Syntax error in a diff or in mini-C source. `line` and `column` are
// 1-based; column is 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorClass::kInput, "parse", Format(line, column, message)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string Format(int line, int column, const std::string& message) {
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  int line_;
  int column_;
};

// Construct recognised by the lexer but outside the supported grammar.
class UnsupportedError : public ParseError {
 public:
  UnsupportedError(int line, int column, const std::string& token)
      : ParseError(line, column, "unsupported construct '" + token + "'"),
        token_(token) {}

  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

// Snapshot/diff disagreement, missing files, binary content.
class IntegrityError : public Error {
 public:
  IntegrityError(const std::string& file, const std::string& message)
      : Error(ErrorClass::kInput, "integrity", file + ": " + message),
        file_(file) {}

  const std::string& file() const { return file_; }

 private:
  std::string file_;
};

class AnalysisError : public Error {
 public:
  explicit AnalysisError(const std::string& message)
      : Error(ErrorClass::kAnalysis, "analysis", message) {}
};

// Training data that cannot produce a meaningful classifier.
class DegenerateModelError : public Error {
 public:
  explicit DegenerateModelError(const std::string& message)
      : Error(ErrorClass::kAnalysis, "degenerate-model", message) {}
};

// Caller broke a documented precondition.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& message)
      : Error(ErrorClass::kInput, "contract", message) {}
};

// A label answer referring to an unknown or unreserved query.
class ConflictError : public Error {
 public:
  ConflictError(const std::string& id, const std::string& message)
      : Error(ErrorClass::kInput, "conflict", message + ": " + id), id_(id) {}

  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

}  // namespace linelabel

#endif  // LINELABEL_ERRORS_H_
