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

#include "linelabel/diff.h"

#include <algorithm>
#include <charconv>
#include <cstdint>

#include "linelabel/errors.h"

namespace linelabel::diff {
namespace {

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Parses "N" or "N,M" at the front of `s`; advances `s`.
bool ParseRange(std::string_view& s, int& start, int& len) {
  auto parse_int = [&s](int& out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr == begin || out < 0) return false;
    s.remove_prefix(static_cast<size_t>(ptr - begin));
    return true;
  };
  if (!parse_int(start)) return false;
  len = 1;
  if (!s.empty() && s.front() == ',') {
    s.remove_prefix(1);
    if (!parse_int(len)) return false;
  }
  return true;
}

bool ParseHunkHeader(std::string_view line, Hunk& hunk) {
  if (!StartsWith(line, "@@ -")) return false;
  line.remove_prefix(4);
  if (!ParseRange(line, hunk.pre_start, hunk.pre_len)) return false;
  if (!StartsWith(line, " +")) return false;
  line.remove_prefix(2);
  if (!ParseRange(line, hunk.post_start, hunk.post_len)) return false;
  return StartsWith(line, " @@");
}

// "--- a/src/x.c\t2024-01-01" -> "src/x.c"; nullopt for /dev/null.
std::optional<std::string> ParseHeaderPath(std::string_view rest) {
  if (auto tab = rest.find('\t'); tab != std::string_view::npos) {
    rest = rest.substr(0, tab);
  }
  while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\r')) {
    rest.remove_suffix(1);
  }
  if (rest == "/dev/null") return std::nullopt;
  if (StartsWith(rest, "a/") || StartsWith(rest, "b/")) rest.remove_prefix(2);
  return std::string(rest);
}

}  // namespace

Lines SplitLines(std::string_view text) {
  Lines out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      out.lines.emplace_back(text.substr(pos));
      out.trailing_newline = false;
      break;
    }
    out.lines.emplace_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return out;
}

std::string JoinLines(const Lines& lines) {
  std::string out;
  for (size_t i = 0; i < lines.lines.size(); ++i) {
    out += lines.lines[i];
    if (i + 1 < lines.lines.size() || lines.trailing_newline) out += '\n';
  }
  return out;
}

std::vector<FileDiff> ParseUnifiedDiff(std::string_view text) {
  const Lines split = SplitLines(text);
  const std::vector<std::string>& lines = split.lines;
  std::vector<FileDiff> files;
  size_t i = 0;
  auto fail = [&](size_t index, const std::string& message) -> ParseError {
    return ParseError(static_cast<int>(index + 1), 0, message);
  };

  while (i < lines.size()) {
    std::string_view line = lines[i];
    if (StartsWith(line, "Binary files ") || StartsWith(line, "GIT binary patch")) {
      throw IntegrityError("line " + std::to_string(i + 1),
                           "binary patches are not supported");
    }
    if (StartsWith(line, "@@")) {
      throw fail(i, "hunk header outside of a file section");
    }
    if (!StartsWith(line, "--- ")) {
      // Preamble, git extended headers ("diff --git", "index", modes).
      ++i;
      continue;
    }
    std::optional<std::string> pre_path = ParseHeaderPath(line.substr(4));
    if (i + 1 >= lines.size() || !StartsWith(lines[i + 1], "+++ ")) {
      throw fail(i + 1, "expected '+++ ' header after '--- '");
    }
    std::optional<std::string> post_path =
        ParseHeaderPath(std::string_view(lines[i + 1]).substr(4));
    if (!pre_path && !post_path) {
      throw fail(i, "both sides of a file header are /dev/null");
    }
    FileDiff file;
    file.path = post_path ? *post_path : *pre_path;
    file.pre_absent = !pre_path;
    file.post_absent = !post_path;
    i += 2;

    while (i < lines.size() && StartsWith(lines[i], "@@")) {
      Hunk hunk;
      if (!ParseHunkHeader(lines[i], hunk)) {
        throw fail(i, "malformed hunk header '" + lines[i] + "'");
      }
      const size_t header_index = i;
      ++i;
      int pre_seen = 0;
      int post_seen = 0;
      while (pre_seen < hunk.pre_len || post_seen < hunk.post_len) {
        if (i >= lines.size()) {
          throw fail(header_index, "hunk-count mismatch: diff ended early");
        }
        std::string_view body = lines[i];
        if (StartsWith(body, "\\")) {
          if (hunk.lines.empty()) throw fail(i, "stray no-newline marker");
          hunk.lines.back().no_newline = true;
          ++i;
          continue;
        }
        HunkLine hl;
        char tag = body.empty() ? ' ' : body.front();
        if (tag == ' ') {
          hl.tag = LineTag::kContext;
          ++pre_seen;
          ++post_seen;
        } else if (tag == '-') {
          hl.tag = LineTag::kDel;
          ++pre_seen;
        } else if (tag == '+') {
          hl.tag = LineTag::kAdd;
          ++post_seen;
        } else {
          throw fail(i, "hunk-count mismatch: unexpected line inside hunk");
        }
        if (pre_seen > hunk.pre_len || post_seen > hunk.post_len) {
          throw fail(i, "hunk-count mismatch: more lines than the header");
        }
        hl.text = body.empty() ? std::string() : std::string(body.substr(1));
        hunk.lines.push_back(std::move(hl));
        ++i;
      }
      if (i < lines.size() && StartsWith(lines[i], "\\")) {
        if (hunk.lines.empty()) throw fail(i, "stray no-newline marker");
        hunk.lines.back().no_newline = true;
        ++i;
      }
      // Trailing body lines beyond the declared counts.
      if (i < lines.size()) {
        std::string_view next = lines[i];
        bool looks_like_body =
            (StartsWith(next, "+") && !StartsWith(next, "+++ ")) ||
            (StartsWith(next, "-") && !StartsWith(next, "--- ")) ||
            StartsWith(next, " ");
        if (looks_like_body) {
          throw fail(i, "hunk-count mismatch: more lines than the header");
        }
      }
      file.hunks.push_back(std::move(hunk));
    }
    files.push_back(std::move(file));
  }
  return files;
}

std::string FormatUnifiedDiff(std::span<const FileDiff> files) {
  std::string out;
  for (const FileDiff& file : files) {
    out += file.pre_absent ? "--- /dev/null\n" : "--- a/" + file.path + "\n";
    out += file.post_absent ? "+++ /dev/null\n" : "+++ b/" + file.path + "\n";
    for (const Hunk& hunk : file.hunks) {
      out += "@@ -" + std::to_string(hunk.pre_start) + "," +
             std::to_string(hunk.pre_len) + " +" +
             std::to_string(hunk.post_start) + "," +
             std::to_string(hunk.post_len) + " @@\n";
      for (const HunkLine& line : hunk.lines) {
        out += static_cast<char>(line.tag);
        out += line.text;
        out += '\n';
        if (line.no_newline) out += "\\ No newline at end of file\n";
      }
    }
  }
  return out;
}

std::string ApplyHunks(const std::string& path,
                       const std::optional<std::string>& pre,
                       std::span<const Hunk> hunks) {
  const Lines source = pre ? SplitLines(*pre) : Lines{};
  const auto& in = source.lines;
  const int n = static_cast<int>(in.size());
  struct OutLine {
    std::string text;
    bool newline;
  };
  std::vector<OutLine> out;
  auto pre_newline = [&](int index) {
    return index + 1 < n || source.trailing_newline;
  };
  int cursor = 0;  // 0-based index of the next unconsumed pre line
  for (const Hunk& hunk : hunks) {
    int first = hunk.pre_len == 0 ? hunk.pre_start : hunk.pre_start - 1;
    if (first < cursor || first > n) {
      throw IntegrityError(path, "hunk @@ -" + std::to_string(hunk.pre_start) +
                                     " is out of order or out of range");
    }
    for (; cursor < first; ++cursor) out.push_back({in[cursor], pre_newline(cursor)});
    for (const HunkLine& line : hunk.lines) {
      if (line.tag == LineTag::kAdd) {
        out.push_back({line.text, !line.no_newline});
        continue;
      }
      if (cursor >= n || in[cursor] != line.text) {
        throw IntegrityError(
            path, "pre-patch line " + std::to_string(cursor + 1) +
                      " does not match the diff ('" + line.text + "')");
      }
      if (line.tag == LineTag::kContext) {
        out.push_back({line.text, !line.no_newline});
      }
      ++cursor;
    }
  }
  for (; cursor < n; ++cursor) out.push_back({in[cursor], pre_newline(cursor)});

  std::string result;
  for (const OutLine& line : out) {
    result += line.text;
    if (line.newline) result += '\n';
  }
  return result;
}

std::vector<EditOp> DiffLines(std::span<const std::string> pre,
                              std::span<const std::string> post) {
  size_t prefix = 0;
  while (prefix < pre.size() && prefix < post.size() &&
         pre[prefix] == post[prefix]) {
    ++prefix;
  }
  size_t suffix = 0;
  while (suffix < pre.size() - prefix && suffix < post.size() - prefix &&
         pre[pre.size() - 1 - suffix] == post[post.size() - 1 - suffix]) {
    ++suffix;
  }
  const size_t n = pre.size() - prefix - suffix;
  const size_t m = post.size() - prefix - suffix;
  // lcs[i][j] = LCS length of pre[i..n) and post[j..m) (middle section).
  std::vector<uint32_t> lcs((n + 1) * (m + 1), 0);
  auto at = [&](size_t i, size_t j) -> uint32_t& { return lcs[i * (m + 1) + j]; };
  for (size_t i = n; i-- > 0;) {
    for (size_t j = m; j-- > 0;) {
      if (pre[prefix + i] == post[prefix + j]) {
        at(i, j) = at(i + 1, j + 1) + 1;
      } else {
        at(i, j) = std::max(at(i + 1, j), at(i, j + 1));
      }
    }
  }
  std::vector<EditOp> ops(prefix, EditOp::kKeep);
  size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && pre[prefix + i] == post[prefix + j]) {
      ops.push_back(EditOp::kKeep);
      ++i;
      ++j;
    } else if (j == m || (i < n && at(i + 1, j) >= at(i, j + 1))) {
      ops.push_back(EditOp::kDel);
      ++i;
    } else {
      ops.push_back(EditOp::kAdd);
      ++j;
    }
  }
  ops.insert(ops.end(), suffix, EditOp::kKeep);
  return ops;
}

std::vector<Hunk> MakeHunks(const Lines& pre, const Lines& post,
                            std::span<const EditOp> ops, int context) {
  struct Step {
    EditOp op;
    int pre_index;   // index of the pre line consumed (kKeep/kDel), else next
    int post_index;  // index of the post line consumed (kKeep/kAdd), else next
  };
  std::vector<Step> steps;
  steps.reserve(ops.size());
  int pi = 0, qi = 0;
  for (EditOp op : ops) {
    steps.push_back({op, pi, qi});
    if (op != EditOp::kAdd) ++pi;
    if (op != EditOp::kDel) ++qi;
  }
  const int pre_n = static_cast<int>(pre.lines.size());
  const int post_n = static_cast<int>(post.lines.size());
  auto pre_unterminated = [&](int index) {
    return index == pre_n - 1 && !pre.trailing_newline;
  };
  auto post_unterminated = [&](int index) {
    return index == post_n - 1 && !post.trailing_newline;
  };

  std::vector<Hunk> hunks;
  const int total = static_cast<int>(steps.size());
  int s = 0;
  while (s < total) {
    if (steps[s].op == EditOp::kKeep) {
      ++s;
      continue;
    }
    // Extend a change group while the gap of keeps is <= 2 * context.
    int begin = std::max(0, s - context);
    int last_change = s;
    int k = s + 1;
    while (k < total) {
      if (steps[k].op != EditOp::kKeep) {
        last_change = k;
        ++k;
        continue;
      }
      int run_end = k;
      while (run_end < total && steps[run_end].op == EditOp::kKeep) ++run_end;
      if (run_end < total && run_end - k <= 2 * context) {
        k = run_end;
        continue;
      }
      break;
    }
    int end = std::min(total, last_change + 1 + context);
    Hunk hunk;
    for (int t = begin; t < end; ++t) {
      const Step& step = steps[t];
      HunkLine line;
      switch (step.op) {
        case EditOp::kKeep:
          line.tag = LineTag::kContext;
          line.text = pre.lines[step.pre_index];
          line.no_newline = pre_unterminated(step.pre_index);
          ++hunk.pre_len;
          ++hunk.post_len;
          break;
        case EditOp::kDel:
          line.tag = LineTag::kDel;
          line.text = pre.lines[step.pre_index];
          line.no_newline = pre_unterminated(step.pre_index);
          ++hunk.pre_len;
          break;
        case EditOp::kAdd:
          line.tag = LineTag::kAdd;
          line.text = post.lines[step.post_index];
          line.no_newline = post_unterminated(step.post_index);
          ++hunk.post_len;
          break;
      }
      hunk.lines.push_back(std::move(line));
    }
    const Step& first = steps[begin];
    hunk.pre_start = hunk.pre_len == 0 ? first.pre_index : first.pre_index + 1;
    hunk.post_start = hunk.post_len == 0 ? first.post_index : first.post_index + 1;
    hunks.push_back(std::move(hunk));
    s = end;
  }
  return hunks;
}

FileDiff MakeFileDiff(const std::string& path,
                      const std::optional<std::string>& pre,
                      const std::optional<std::string>& post, int context) {
  Lines pre_lines = pre ? SplitLines(*pre) : Lines{};
  Lines post_lines = post ? SplitLines(*post) : Lines{};
  // An unterminated final line differs from the same text with a newline.
  auto keyed = [](const Lines& lines) {
    std::vector<std::string> keys = lines.lines;
    if (!keys.empty() && !lines.trailing_newline) keys.back() += '\0';
    return keys;
  };
  std::vector<std::string> pre_keys = keyed(pre_lines);
  std::vector<std::string> post_keys = keyed(post_lines);
  std::vector<EditOp> ops = DiffLines(pre_keys, post_keys);
  FileDiff file;
  file.path = path;
  file.pre_absent = !pre.has_value();
  file.post_absent = !post.has_value();
  file.hunks = MakeHunks(pre_lines, post_lines, ops, context);
  return file;
}

}  // namespace linelabel::diff
