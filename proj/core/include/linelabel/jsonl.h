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

#ifndef LINELABEL_JSONL_H_
#define LINELABEL_JSONL_H_

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace linelabel {

using Json = nlohmann::ordered_json;

// Reads a line-delimited JSON file; blank lines are skipped. Throws
// IntegrityError naming the file and line on malformed records.
std::vector<Json> ReadJsonLines(const std::filesystem::path& path);

// Serialises records one per line with a trailing newline.
std::string FormatJsonLines(const std::vector<Json>& records);

void WriteJsonLines(const std::filesystem::path& path,
                    const std::vector<Json>& records);

// Appends one record and flushes it to disk before returning.
void AppendJsonLine(const std::filesystem::path& path, const Json& record);

std::string ReadFile(const std::filesystem::path& path);

// Writes via a temporary file and rename so readers never observe a
// partially written file.
void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& contents);

}  // namespace linelabel

#endif  // LINELABEL_JSONL_H_
