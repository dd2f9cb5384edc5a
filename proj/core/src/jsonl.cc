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

#include "linelabel/jsonl.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <unistd.h>

#include "linelabel/errors.h"

namespace linelabel {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IntegrityError(path.string(), "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Json> ReadJsonLines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IntegrityError(path.string(), "cannot open file");
  std::vector<Json> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw IntegrityError(path.string(), "line " + std::to_string(line_no) +
                                              ": malformed record (" +
                                              e.what() + ")");
    }
  }
  return records;
}

std::string FormatJsonLines(const std::vector<Json>& records) {
  std::string out;
  for (const Json& record : records) {
    out += record.dump();
    out += '\n';
  }
  return out;
}

void WriteJsonLines(const std::filesystem::path& path,
                    const std::vector<Json>& records) {
  WriteFileAtomic(path, FormatJsonLines(records));
}

void AppendJsonLine(const std::filesystem::path& path, const Json& record) {
  const std::string line = record.dump() + "\n";
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw IntegrityError(path.string(), "cannot open for append");
  size_t written = 0;
  while (written < line.size()) {
    ssize_t n = ::write(fd, line.data() + written, line.size() - written);
    if (n <= 0) {
      ::close(fd);
      throw IntegrityError(path.string(), "short write");
    }
    written += static_cast<size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
}

void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IntegrityError(tmp.string(), "cannot open for writing");
    out << contents;
    out.flush();
    if (!out) throw IntegrityError(tmp.string(), "write failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace linelabel
