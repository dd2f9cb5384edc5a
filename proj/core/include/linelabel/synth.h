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

#ifndef LINELABEL_SYNTH_H_
#define LINELABEL_SYNTH_H_

// Seeded generator of synthetic tangled commits over mini-C sources.
// Each commit applies bug-fix templates (lines labelled 1) and refactor
// or formatting templates (lines labelled 0) to a generated file; labels
// follow the template that produced each line.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "linelabel/commit.h"

namespace linelabel::synth {

enum class Category { kFix, kTangled, kRefactor, kFormat };
std::string_view CategoryName(Category category);

struct SynthCommit {
  CommitRecord record;
  Category category = Category::kTangled;
  std::vector<std::string> templates;  // applied template names, in order
  std::map<std::string, int> labels;   // commit line id -> label
  std::map<std::string, std::string> origin;  // commit line id -> template
};

// One commit of the given category; deterministic in (seed, commit_id).
SynthCommit GenerateCommit(uint64_t seed, const std::string& commit_id, Category category);

// `size` commits with ids c0000, c0001, ... and a fixed category mix.
std::vector<SynthCommit> GenerateCorpus(uint64_t seed, int size);

// Writes <out>/commits/<id>/..., <out>/labels.jsonl ({id, label}) and
// <out>/manifest.jsonl ({commit_id, category, templates}).
void WriteCorpus(const std::vector<SynthCommit>& corpus, const std::filesystem::path& out);

}  // namespace linelabel::synth

#endif  // LINELABEL_SYNTH_H_
