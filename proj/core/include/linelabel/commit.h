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

#ifndef LINELABEL_COMMIT_H_
#define LINELABEL_COMMIT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linelabel/diff.h"
#include "linelabel/jsonl.h"

namespace linelabel {

// A changed file: both snapshots plus the hunks between them. A missing
// pre_text means the file was added; a missing post_text that it was
// deleted.
struct FilePair {
  std::string path;
  std::optional<std::string> pre_text;
  std::optional<std::string> post_text;
  std::vector<diff::Hunk> hunks;

  bool operator==(const FilePair&) const = default;
};

struct CommitRecord {
  std::string commit_id;
  std::optional<std::string> message;
  std::vector<FilePair> files;

  bool operator==(const CommitRecord&) const = default;
};

enum class Side { kPre, kPost };
enum class LineKind { kAdded, kDeleted };

std::string_view SideName(Side side);
std::string_view KindName(LineKind kind);
Side ParseSide(std::string_view name);

// One added or deleted line. Deleted lines live on the pre side, added
// lines on the post side; line_no is 1-based within that snapshot.
struct CommitLine {
  std::string commit_id;
  std::string path;
  Side side = Side::kPost;
  LineKind kind = LineKind::kAdded;
  int line_no = 0;
  std::string text;

  std::string id() const;
  bool operator==(const CommitLine&) const = default;
};

std::string MakeLineId(std::string_view commit_id, std::string_view path,
                       Side side, int line_no);

// Splits an id produced by MakeLineId. Returns nullopt if malformed.
struct LineIdParts {
  std::string commit_id;
  std::string path;
  Side side;
  int line_no;
};
std::optional<LineIdParts> ParseLineId(std::string_view id);

// Builds a FilePair by diffing two snapshots.
FilePair MakeFilePair(const std::string& path,
                      const std::optional<std::string>& pre,
                      const std::optional<std::string>& post);

// Throws IntegrityError if the hunks do not turn pre_text into post_text
// or a snapshot looks binary.
void VerifyFilePair(const FilePair& file);

// One CommitLine per add/del hunk line, ordered by (path, side, line_no).
std::vector<CommitLine> EnumerateCommitLines(const CommitRecord& record);

// Reads <dir>/{meta.json, diff.patch, pre/<path>, post/<path>}.
CommitRecord LoadCommitDir(const std::filesystem::path& dir);

// Loads every commit directory directly under `root`, sorted by name.
std::vector<CommitRecord> LoadCommitCorpus(const std::filesystem::path& root);

// Writes the record under <root>/<commit_id>/.
void WriteCommitDir(const CommitRecord& record,
                    const std::filesystem::path& root);

Json CommitLineToJson(const CommitLine& line);
CommitLine CommitLineFromJson(const Json& json);

}  // namespace linelabel

#endif  // LINELABEL_COMMIT_H_
