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

#ifndef LINELABEL_HTTP_SERVICE_H_
#define LINELABEL_HTTP_SERVICE_H_

#include <memory>
#include <string>

#include "linelabel/labeling.h"

namespace linelabel {

// JSON-over-HTTP front end for a LabelingService:
//
//   GET  /session           session summary
//   GET  /queries           pending batch (selects one if none)
//   POST /labels            {"answers": [...]}; 409 on a stale or unknown id
//   POST /retrain           retrain on the current labeled rows
//   GET  /curve             base metrics and history points
//   GET  /export            labeled export
//   GET  /report?threshold= correction report (default 0.5)
//
// Errors are {"error": {"kind": ..., "message": ...}} with status 400,
// 409, 422 or 500.
class HttpFrontend {
 public:
  explicit HttpFrontend(LabelingService& service);
  ~HttpFrontend();

  // Binds to `port` (0 picks a free one) and returns the bound port, or
  // -1 on failure.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); call after a successful Bind().
  bool Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace linelabel

#endif  // LINELABEL_HTTP_SERVICE_H_
