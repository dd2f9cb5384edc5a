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

// linelabel: extract -> train -> query/serve -> predict -> report -> eval.
//
// Exit codes: 0 success, 2 input error, 3 analysis error. Errors and
// warnings go to stderr as one JSON object per line.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linelabel/active_learning.h"
#include "linelabel/code_model.h"
#include "linelabel/errors.h"
#include "linelabel/http_service.h"
#include "linelabel/jsonl.h"
#include "linelabel/labeling.h"
#include "linelabel/pipeline.h"
#include "linelabel/synth.h"

namespace fs = std::filesystem;

namespace linelabel {
namespace {

constexpr int kExitInput = static_cast<int>(ErrorClass::kInput);

void EmitWarning(const Json& warning) {
  Json j;
  j["warning"] = warning;
  std::cerr << j.dump() << "\n";
}

void EmitError(const std::string& kind, const std::string& message, int code) {
  Json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  j["exit_code"] = code;
  std::cerr << j.dump() << "\n";
}

// Writes to `path`, or stdout when it is empty or "-".
void Output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    WriteFileAtomic(path, text);
  }
}

// ---- extract ----

struct ExtractArgs {
  std::string commits;
  std::string out;
  std::string function_map;
  std::string lines;
  std::string warnings;
  int jobs = 1;
};

int RunExtract(const ExtractArgs& a) {
  const std::vector<CommitRecord> commits = LoadCommitCorpus(a.commits);
  const CorpusFeatures features = FeaturizeCorpus(commits, a.jobs);
  std::vector<Json> warnings;
  for (const FeatureWarning& w : features.warnings) {
    warnings.push_back(FeatureWarningToJson(w));
    EmitWarning(warnings.back());
  }
  Output(a.out, FormatJsonLines(FeatureRecords(features)));
  if (!a.function_map.empty()) {
    WriteJsonLines(a.function_map, FunctionMapToJson(MakeFunctionMap(features.lines)));
  }
  if (!a.lines.empty()) WriteJsonLines(a.lines, LineRecords(features));
  if (!a.warnings.empty()) WriteJsonLines(a.warnings, warnings);
  return 0;
}

// ---- train ----

struct SessionFlags {
  std::string config;
  std::optional<double> base_fraction;
  std::optional<double> holdout_fraction;
  std::optional<int> batch_size;
  std::optional<int> max_iterations;
  std::optional<uint64_t> seed;
  std::vector<std::string> committee;
  std::string strategy;
  bool discard_skips = false;
};

// Config file first, flags on top.
al::SessionConfig MergeConfig(const SessionFlags& f) {
  Json j = Json::object();
  if (!f.config.empty()) {
    try {
      j = Json::parse(ReadFile(f.config));
    } catch (const Json::exception& e) {
      throw IntegrityError(f.config, e.what());
    }
    if (!j.is_object()) throw IntegrityError(f.config, "config must be a JSON object");
  }
  if (f.base_fraction) j["base_fraction"] = *f.base_fraction;
  if (f.holdout_fraction) j["holdout_fraction"] = *f.holdout_fraction;
  if (f.batch_size) j["batch_size"] = *f.batch_size;
  if (f.max_iterations) j["max_iterations"] = *f.max_iterations;
  if (f.seed) j["seed"] = *f.seed;
  if (!f.committee.empty()) j["committee"] = f.committee;
  if (!f.strategy.empty()) j["strategy"] = f.strategy;
  if (f.discard_skips) j["discard_skips"] = true;
  return al::SessionConfig::FromJson(j);
}

struct TrainArgs {
  std::string features;
  std::string labels;
  std::string holdout_ids;
  std::string function_map;
  std::string out;
  bool force = false;
  SessionFlags session;
};

int RunTrain(const TrainArgs& a) {
  std::vector<al::SessionRow> rows = ReadFeatureRows(a.features);
  if (!a.labels.empty()) AttachLabels(rows, ReadLabels(a.labels));
  std::optional<std::set<std::string>> holdout;
  if (!a.holdout_ids.empty()) {
    holdout.emplace();
    for (const Json& j : ReadJsonLines(a.holdout_ids)) holdout->insert(j.at("id").get<std::string>());
  }
  const al::SessionConfig config = MergeConfig(a.session);
  if (a.force && al::Session::Exists(a.out)) fs::remove_all(a.out);
  al::Session s = al::Session::Create(a.out, std::move(rows), config, holdout);
  if (!a.function_map.empty()) {
    fs::copy_file(a.function_map, fs::path(a.out) / "function_map.jsonl",
                  fs::copy_options::overwrite_existing);
  }
  std::cout << s.Summary().dump() << "\n";
  return 0;
}

// ---- query ----

struct QueryArgs {
  std::string session;
  std::string oracle = "reference";
  int iterations = -1;
  int max_labels = -1;
  double time_limit = 0;
  std::optional<double> target_f1;
};

struct EndOfInput {};

// Prints each batch as one JSON line and reads one {"answers": [...]}
// line back. Stops at end of input.
al::Oracle StdinOracle() {
  return [](const al::QueryBatch& batch) {
    Json out;
    out["iteration"] = batch.iteration;
    out["queries"] = Json::array();
    for (const al::QueryItem& item : batch.items) {
      Json q;
      q["id"] = item.id;
      q["entropy"] = item.entropy;
      q["votes"] = item.votes;
      out["queries"].push_back(std::move(q));
    }
    std::cout << out.dump() << std::endl;
    std::string line;
    std::vector<al::Answer> answers;
    if (!std::getline(std::cin, line)) throw EndOfInput{};
    Json in;
    try {
      in = Json::parse(line);
      for (const Json& a : in.at("answers")) {
        al::Answer answer{a.at("id").get<std::string>(), std::nullopt};
        if (a.contains("label") && !a.at("label").is_null()) answer.label = a.at("label").get<int>();
        answers.push_back(std::move(answer));
      }
    } catch (const Json::exception& e) {
      throw ContractError(std::string("malformed answers line: ") + e.what());
    }
    return answers;
  };
}

int RunQuery(const QueryArgs& a) {
  al::Session s = al::Session::Open(a.session);
  al::Budget budget;
  budget.max_iterations = a.iterations;
  budget.max_labels = a.max_labels;
  if (a.time_limit > 0) budget.time_limit = std::chrono::duration<double>(a.time_limit);
  budget.target_f1 = a.target_f1;
  if (a.oracle == "reference") {
    al::RunSession(s, al::ReferenceOracle(s), budget);
  } else {
    // End of input leaves the batch reserved for the next run.
    try {
      al::RunSession(s, StdinOracle(), budget);
    } catch (const EndOfInput&) {
    }
  }
  std::cerr << s.Summary().dump() << "\n";
  return 0;
}

// ---- serve ----

struct ServeArgs {
  std::string session;
  std::string commits;
  std::string function_map;
  std::string host = "127.0.0.1";
  int port = 8080;
};

HttpFrontend* g_frontend = nullptr;

void StopOnSignal(int) {
  if (g_frontend) g_frontend->Stop();
}

int RunServe(const ServeArgs& a) {
  ServiceOptions options;
  if (!a.commits.empty()) options.commits_dir = a.commits;
  if (!a.function_map.empty()) {
    options.function_map = a.function_map;
  } else if (fs::exists(fs::path(a.session) / "function_map.jsonl")) {
    options.function_map = fs::path(a.session) / "function_map.jsonl";
  }
  LabelingService service(al::Session::Open(a.session), options);
  HttpFrontend frontend(service);
  const int port = frontend.Bind(a.host, a.port);
  if (port < 0) {
    EmitError("bind", "cannot bind " + a.host + ":" + std::to_string(a.port), kExitInput);
    return kExitInput;
  }
  g_frontend = &frontend;
  std::signal(SIGINT, StopOnSignal);
  std::signal(SIGTERM, StopOnSignal);
  Json ready;
  ready["listening"] = a.host + ":" + std::to_string(port);
  std::cerr << ready.dump() << std::endl;
  frontend.Listen();
  g_frontend = nullptr;
  return 0;
}

// ---- predict ----

struct PredictArgs {
  std::string session;
  std::string model;
  std::string features;
  std::string labels;
  std::string out;
};

int RunPredict(const PredictArgs& a) {
  LabeledExport records;
  if (!a.session.empty() && a.features.empty()) {
    records = PredictAll(al::Session::Open(a.session));
  } else {
    if (a.features.empty()) throw ContractError("--features is required with --model");
    const al::Committee committee =
        a.session.empty() ? al::LoadCommittee(a.model)
                          : al::LoadCommittee(fs::path(a.session) / "committee.json");
    std::vector<al::SessionRow> rows = ReadFeatureRows(a.features);
    std::map<std::string, int> human;
    if (!a.labels.empty()) human = ReadLabels(a.labels);
    records = PredictAll(committee, rows, human);
  }
  Output(a.out, FormatJsonLines(ExportToJson(records)));
  return 0;
}

// ---- report ----

struct ReportArgs {
  std::string export_path;
  std::string function_map;
  double threshold = 0.5;
  std::string out;
};

int RunReport(const ReportArgs& a) {
  const LabeledExport records = ExportFromJson(ReadJsonLines(a.export_path));
  const FunctionMap map = FunctionMapFromJson(ReadJsonLines(a.function_map));
  Output(a.out, ReportCorrections(records, map, a.threshold).ToJson().dump(1) + "\n");
  return 0;
}

// ---- eval ----

struct EvalArgs {
  std::string export_path;
  std::string session;
  std::string truth;
  std::string curve_out;
  std::string out;
};

int RunEval(const EvalArgs& a) {
  const std::map<std::string, int> truth = ReadLabels(a.truth);
  Json result;
  if (!a.session.empty()) {
    const al::Session s = al::Session::Open(a.session);
    result["metrics"] = EvaluateExport(PredictAll(s), truth).ToJson();
    result["holdout_metrics"] = s.committee().Evaluate(s.HoldoutData()).ToJson();
    if (!a.curve_out.empty()) {
      std::vector<Json> curve;
      Json base;
      base["iteration"] = 0;
      base["labels_added"] = 0;
      base["metrics"] = s.base_metrics().ToJson();
      curve.push_back(std::move(base));
      for (const al::HistoryPoint& p : s.history()) curve.push_back(p.ToJson());
      WriteJsonLines(a.curve_out, curve);
    }
  } else {
    if (!a.curve_out.empty()) throw ContractError("--curve-out needs --session");
    result["metrics"] = EvaluateExport(ExportFromJson(ReadJsonLines(a.export_path)), truth).ToJson();
  }
  Output(a.out, result.dump() + "\n");
  return 0;
}

// ---- synth ----

struct SynthArgs {
  uint64_t seed = 7;
  int size = 300;
  std::string out;
};

int RunSynth(const SynthArgs& a) {
  if (a.size < 1) throw ContractError("--size must be positive");
  synth::WriteCorpus(synth::GenerateCorpus(a.seed, a.size), a.out);
  return 0;
}

// ---- graph ----

struct GraphArgs {
  std::string file;
  std::string out;
};

int RunGraph(const GraphArgs& a) {
  const minic::SourceUnit unit = minic::BuildSourceUnit(ReadFile(a.file), a.file);
  Output(a.out, minic::DumpGraphs(unit));
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Line-level labeling of commits with query-by-committee active learning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "linelabel 0.1.0");

  ExtractArgs extract;
  auto* ex = app.add_subcommand("extract", "Featurize every changed line of a commit corpus");
  ex->add_option("--commits", extract.commits, "Directory of commit directories")
      ->required()
      ->check(CLI::ExistingDirectory);
  ex->add_option("-o,--out", extract.out, "Feature records (JSON lines; '-' for stdout)")
      ->required();
  ex->add_option("--function-map", extract.function_map, "Also write line -> function records");
  ex->add_option("--lines", extract.lines, "Also write the commit lines with their text");
  ex->add_option("--warnings", extract.warnings, "Also write the warnings to this file");
  ex->add_option("-j,--jobs", extract.jobs, "Worker threads")->check(CLI::PositiveNumber);

  TrainArgs train;
  auto* tr = app.add_subcommand("train", "Create a session and train the base committee");
  tr->add_option("--features", train.features, "Feature records")
      ->required()
      ->check(CLI::ExistingFile);
  tr->add_option("--labels", train.labels, "Known labels ({id, label} records)")
      ->check(CLI::ExistingFile);
  tr->add_option("--holdout-ids", train.holdout_ids, "Fixed held-out ids ({id} records)")
      ->check(CLI::ExistingFile);
  tr->add_option("--function-map", train.function_map, "Stored with the session for reports")
      ->check(CLI::ExistingFile);
  tr->add_option("-o,--out", train.out, "Session directory")->required();
  tr->add_flag("--force", train.force, "Replace an existing session in --out");
  tr->add_option("--config", train.session.config, "Session config (JSON); flags win")
      ->check(CLI::ExistingFile);
  tr->add_option("--base-fraction", train.session.base_fraction);
  tr->add_option("--holdout-fraction", train.session.holdout_fraction);
  tr->add_option("--batch-size", train.session.batch_size);
  tr->add_option("--max-iterations", train.session.max_iterations);
  tr->add_option("--seed", train.session.seed);
  tr->add_option("--committee", train.session.committee,
                 "Member kinds: random_forest, linear_svm, logistic_regression")
      ->delimiter(',');
  tr->add_option("--strategy", train.session.strategy)
      ->check(CLI::IsMember({"committee", "random"}));
  tr->add_flag("--discard-skips", train.session.discard_skips,
               "Drop skipped lines instead of returning them to the pool");

  QueryArgs query;
  auto* qu = app.add_subcommand("query", "Run labeling iterations on a session");
  qu->add_option("--session", query.session)->required()->check(CLI::ExistingDirectory);
  qu->add_option("--oracle", query.oracle,
                 "reference: answer from known labels; stdin: JSON lines dialogue")
      ->check(CLI::IsMember({"reference", "stdin"}));
  qu->add_option("--iterations", query.iterations, "Iteration budget");
  qu->add_option("--max-labels", query.max_labels, "Label budget");
  qu->add_option("--time-limit", query.time_limit, "Seconds");
  qu->add_option("--target-f1", query.target_f1, "Stop once held-out F1 reaches this");

  ServeArgs serve;
  auto* se = app.add_subcommand("serve", "Serve a session over HTTP for annotation");
  se->add_option("--session", serve.session)->required()->check(CLI::ExistingDirectory);
  se->add_option("--commits", serve.commits, "Commit corpus, for hunk context")
      ->check(CLI::ExistingDirectory);
  se->add_option("--function-map", serve.function_map)->check(CLI::ExistingFile);
  se->add_option("--host", serve.host);
  se->add_option("--port", serve.port, "0 picks a free port");

  PredictArgs predict;
  auto* pr = app.add_subcommand("predict", "Label every line with the final committee");
  auto* pr_session = pr->add_option("--session", predict.session)->check(CLI::ExistingDirectory);
  auto* pr_model = pr->add_option("--model", predict.model, "Committee or model file")
                       ->check(CLI::ExistingFile);
  pr_session->excludes(pr_model);
  pr->add_option("--features", predict.features, "Rows to label (default: the session's)")
      ->check(CLI::ExistingFile);
  pr->add_option("--labels", predict.labels, "Human labels that override predictions")
      ->check(CLI::ExistingFile);
  pr->add_option("-o,--out", predict.out, "Export (JSON lines; default stdout)");

  ReportArgs report;
  auto* re = app.add_subcommand("report", "Flag functions dominated by irrelevant lines");
  re->add_option("--export", report.export_path)->required()->check(CLI::ExistingFile);
  re->add_option("--function-map", report.function_map)->required()->check(CLI::ExistingFile);
  re->add_option("--threshold", report.threshold, "Flag when the fraction is above this")
      ->check(CLI::Range(0.0, 1.0));
  re->add_option("-o,--out", report.out);

  EvalArgs eval;
  auto* ev = app.add_subcommand("eval", "Score an export or a session against ground truth");
  auto* ev_export = ev->add_option("--export", eval.export_path)->check(CLI::ExistingFile);
  auto* ev_session = ev->add_option("--session", eval.session)->check(CLI::ExistingDirectory);
  ev_export->excludes(ev_session);
  ev->add_option("--truth", eval.truth)->required()->check(CLI::ExistingFile);
  ev->add_option("--curve-out", eval.curve_out, "Learning curve (JSON lines)");
  ev->add_option("-o,--out", eval.out);

  SynthArgs synth_args;
  auto* sy = app.add_subcommand("synth", "Generate a labeled synthetic commit corpus");
  sy->add_option("--seed", synth_args.seed);
  sy->add_option("--size", synth_args.size, "Number of commits");
  sy->add_option("-o,--out", synth_args.out)->required();

  GraphArgs graph;
  auto* gr = app.add_subcommand("graph", "Print the analysis graphs of a source file");
  gr->add_option("file", graph.file)->required()->check(CLI::ExistingFile);
  gr->add_option("-o,--out", graph.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    EmitError("usage", e.what(), kExitInput);
    return kExitInput;
  }

  try {
    if (*ex) return RunExtract(extract);
    if (*tr) return RunTrain(train);
    if (*qu) return RunQuery(query);
    if (*se) return RunServe(serve);
    if (*pr) {
      if (predict.session.empty() && predict.model.empty()) {
        throw ContractError("predict needs --session or --model");
      }
      return RunPredict(predict);
    }
    if (*re) return RunReport(report);
    if (*ev) {
      if (eval.session.empty() && eval.export_path.empty()) {
        throw ContractError("eval needs --export or --session");
      }
      return RunEval(eval);
    }
    if (*sy) return RunSynth(synth_args);
    if (*gr) return RunGraph(graph);
  } catch (const Error& e) {
    const int code = static_cast<int>(e.error_class());
    EmitError(e.kind(), e.what(), code);
    return code;
  } catch (const Json::exception& e) {
    EmitError("json", e.what(), kExitInput);
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    EmitError("io", e.what(), kExitInput);
    return kExitInput;
  }
  return 0;
}

}  // namespace
}  // namespace linelabel

int main(int argc, char** argv) { return linelabel::Main(argc, argv); }
