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

#ifndef LINELABEL_DIFF_H_
#define LINELABEL_DIFF_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace linelabel::diff {

enum class LineTag : char { kContext = ' ', kAdd = '+', kDel = '-' };

struct HunkLine {
  LineTag tag = LineTag::kContext;
  std::string text;  // without the line terminator
  // Set when "\ No newline at end of file" followed this line.
  bool no_newline = false;

  bool operator==(const HunkLine&) const = default;
};

// One @@ section. Starts are 1-based; a zero-length side uses the
// unified-diff convention of naming the line *before* the change.
struct Hunk {
  int pre_start = 0;
  int pre_len = 0;
  int post_start = 0;
  int post_len = 0;
  std::vector<HunkLine> lines;

  bool operator==(const Hunk&) const = default;
};

struct FileDiff {
  std::string path;
  bool pre_absent = false;   // --- /dev/null
  bool post_absent = false;  // +++ /dev/null
  std::vector<Hunk> hunks;

  bool operator==(const FileDiff&) const = default;
};

// Text split into lines plus whether the final line was terminated.
struct Lines {
  std::vector<std::string> lines;
  bool trailing_newline = true;
};

Lines SplitLines(std::string_view text);
std::string JoinLines(const Lines& lines);

// Parses unified-diff text (git extended headers are tolerated and
// ignored). Throws ParseError with the 1-based offending line on malformed
// headers or hunk-count mismatches; IntegrityError on binary patches.
std::vector<FileDiff> ParseUnifiedDiff(std::string_view text);

std::string FormatUnifiedDiff(std::span<const FileDiff> files);

// Applies hunks to `pre` (nullopt for an added file). Throws
// IntegrityError(path, ...) when a context or deleted line disagrees with
// the snapshot.
std::string ApplyHunks(const std::string& path,
                       const std::optional<std::string>& pre,
                       std::span<const Hunk> hunks);

enum class EditOp { kKeep, kDel, kAdd };

// Minimal line edit script (longest common subsequence).
std::vector<EditOp> DiffLines(std::span<const std::string> pre,
                              std::span<const std::string> post);

// Groups an edit script into hunks with `context` lines of context.
// `ops` must consume exactly pre.lines and post.lines.
std::vector<Hunk> MakeHunks(const Lines& pre, const Lines& post,
                            std::span<const EditOp> ops, int context = 3);

// Convenience: diff two snapshots (nullopt = absent) into a FileDiff.
FileDiff MakeFileDiff(const std::string& path,
                      const std::optional<std::string>& pre,
                      const std::optional<std::string>& post,
                      int context = 3);

}  // namespace linelabel::diff

#endif  // LINELABEL_DIFF_H_
