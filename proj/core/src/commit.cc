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

#include "linelabel/commit.h"

#include <algorithm>
#include <charconv>
#include <tuple>

#include "linelabel/errors.h"

namespace linelabel {

namespace fs = std::filesystem;

std::string_view SideName(Side side) {
  return side == Side::kPre ? "pre" : "post";
}

std::string_view KindName(LineKind kind) {
  return kind == LineKind::kAdded ? "added" : "deleted";
}

Side ParseSide(std::string_view name) {
  if (name == "pre") return Side::kPre;
  if (name == "post") return Side::kPost;
  throw ContractError("unknown side '" + std::string(name) + "'");
}

std::string MakeLineId(std::string_view commit_id, std::string_view path,
                       Side side, int line_no) {
  std::string id;
  id.reserve(commit_id.size() + path.size() + 16);
  id.append(commit_id).append(":").append(path).append(":");
  id.append(SideName(side)).append(":").append(std::to_string(line_no));
  return id;
}

std::optional<LineIdParts> ParseLineId(std::string_view id) {
  // commit ids never contain ':'; paths may, so split from both ends.
  size_t first = id.find(':');
  size_t last = id.rfind(':');
  if (first == std::string_view::npos || last == first) return std::nullopt;
  size_t side_colon = id.rfind(':', last - 1);
  if (side_colon == std::string_view::npos || side_colon <= first) {
    return std::nullopt;
  }
  LineIdParts parts;
  parts.commit_id = std::string(id.substr(0, first));
  parts.path = std::string(id.substr(first + 1, side_colon - first - 1));
  std::string_view side = id.substr(side_colon + 1, last - side_colon - 1);
  if (side != "pre" && side != "post") return std::nullopt;
  parts.side = side == "pre" ? Side::kPre : Side::kPost;
  std::string_view number = id.substr(last + 1);
  auto [ptr, ec] =
      std::from_chars(number.data(), number.data() + number.size(), parts.line_no);
  if (ec != std::errc() || ptr != number.data() + number.size()) {
    return std::nullopt;
  }
  return parts;
}

std::string CommitLine::id() const {
  return MakeLineId(commit_id, path, side, line_no);
}

FilePair MakeFilePair(const std::string& path,
                      const std::optional<std::string>& pre,
                      const std::optional<std::string>& post) {
  FilePair file;
  file.path = path;
  file.pre_text = pre;
  file.post_text = post;
  file.hunks = diff::MakeFileDiff(path, pre, post).hunks;
  return file;
}

void VerifyFilePair(const FilePair& file) {
  for (const auto* text : {&file.pre_text, &file.post_text}) {
    if (*text && text->value().find('\0') != std::string::npos) {
      throw IntegrityError(file.path, "binary files are not supported");
    }
  }
  std::string applied = diff::ApplyHunks(file.path, file.pre_text, file.hunks);
  const std::string expected = file.post_text.value_or("");
  if (applied != expected) {
    throw IntegrityError(file.path,
                         "applying the diff to the pre snapshot does not "
                         "reproduce the post snapshot");
  }
}

std::vector<CommitLine> EnumerateCommitLines(const CommitRecord& record) {
  std::vector<CommitLine> out;
  for (const FilePair& file : record.files) {
    for (const diff::Hunk& hunk : file.hunks) {
      int pre_line = hunk.pre_len == 0 ? hunk.pre_start + 1 : hunk.pre_start;
      int post_line = hunk.post_len == 0 ? hunk.post_start + 1 : hunk.post_start;
      for (const diff::HunkLine& line : hunk.lines) {
        switch (line.tag) {
          case diff::LineTag::kContext:
            ++pre_line;
            ++post_line;
            break;
          case diff::LineTag::kDel:
            out.push_back({record.commit_id, file.path, Side::kPre,
                           LineKind::kDeleted, pre_line++, line.text});
            break;
          case diff::LineTag::kAdd:
            out.push_back({record.commit_id, file.path, Side::kPost,
                           LineKind::kAdded, post_line++, line.text});
            break;
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CommitLine& a, const CommitLine& b) {
                     return std::tie(a.path, a.side, a.line_no) <
                            std::tie(b.path, b.side, b.line_no);
                   });
  return out;
}

CommitRecord LoadCommitDir(const fs::path& dir) {
  CommitRecord record;
  const fs::path meta_path = dir / "meta.json";
  const fs::path diff_path = dir / "diff.patch";
  if (!fs::exists(meta_path)) {
    throw IntegrityError(meta_path.string(), "missing commit metadata");
  }
  if (!fs::exists(diff_path)) {
    throw IntegrityError(diff_path.string(), "missing diff");
  }
  Json meta;
  try {
    meta = Json::parse(ReadFile(meta_path));
    record.commit_id = meta.at("commit_id").get<std::string>();
  } catch (const Json::exception& e) {
    throw IntegrityError(meta_path.string(), e.what());
  }
  if (record.commit_id.empty() ||
      record.commit_id.find(':') != std::string::npos) {
    throw IntegrityError(meta_path.string(),
                         "commit_id must be non-empty and contain no ':'");
  }
  if (meta.contains("message") && meta["message"].is_string()) {
    record.message = meta["message"].get<std::string>();
  }

  std::vector<diff::FileDiff> diffs = diff::ParseUnifiedDiff(ReadFile(diff_path));
  for (diff::FileDiff& file_diff : diffs) {
    FilePair file;
    file.path = file_diff.path;
    if (!file_diff.pre_absent) {
      fs::path pre = dir / "pre" / file.path;
      if (!fs::exists(pre)) {
        throw IntegrityError(file.path, "missing pre-patch snapshot " + pre.string());
      }
      file.pre_text = ReadFile(pre);
    }
    if (!file_diff.post_absent) {
      fs::path post = dir / "post" / file.path;
      if (!fs::exists(post)) {
        throw IntegrityError(file.path, "missing post-patch snapshot " + post.string());
      }
      file.post_text = ReadFile(post);
    }
    file.hunks = std::move(file_diff.hunks);
    VerifyFilePair(file);
    record.files.push_back(std::move(file));
  }
  return record;
}

std::vector<CommitRecord> LoadCommitCorpus(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw IntegrityError(root.string(), "not a directory");
  }
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / "diff.patch")) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<CommitRecord> records;
  records.reserve(dirs.size());
  for (const fs::path& dir : dirs) records.push_back(LoadCommitDir(dir));
  return records;
}

void WriteCommitDir(const CommitRecord& record, const fs::path& root) {
  const fs::path dir = root / record.commit_id;
  fs::create_directories(dir);
  Json meta;
  meta["commit_id"] = record.commit_id;
  if (record.message) meta["message"] = *record.message;
  WriteFileAtomic(dir / "meta.json", meta.dump(2) + "\n");
  std::vector<diff::FileDiff> diffs;
  for (const FilePair& file : record.files) {
    if (file.pre_text) WriteFileAtomic(dir / "pre" / file.path, *file.pre_text);
    if (file.post_text) WriteFileAtomic(dir / "post" / file.path, *file.post_text);
    diffs.push_back({file.path, !file.pre_text.has_value(),
                     !file.post_text.has_value(), file.hunks});
  }
  WriteFileAtomic(dir / "diff.patch", diff::FormatUnifiedDiff(diffs));
}

Json CommitLineToJson(const CommitLine& line) {
  Json json;
  json["id"] = line.id();
  json["commit_id"] = line.commit_id;
  json["path"] = line.path;
  json["side"] = SideName(line.side);
  json["kind"] = KindName(line.kind);
  json["line_no"] = line.line_no;
  json["text"] = line.text;
  return json;
}

CommitLine CommitLineFromJson(const Json& json) {
  CommitLine line;
  line.commit_id = json.at("commit_id").get<std::string>();
  line.path = json.at("path").get<std::string>();
  line.side = ParseSide(json.at("side").get<std::string>());
  line.kind = json.at("kind").get<std::string>() == "added" ? LineKind::kAdded
                                                            : LineKind::kDeleted;
  line.line_no = json.at("line_no").get<int>();
  line.text = json.at("text").get<std::string>();
  return line;
}

}  // namespace linelabel
