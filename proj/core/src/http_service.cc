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

#include "linelabel/http_service.h"

#include <functional>

#include "httplib.h"
#include "linelabel/errors.h"

namespace linelabel {

namespace {

void Reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", "application/json");
}

void ReplyError(httplib::Response& res, int status, const std::string& kind,
                const std::string& message) {
  Json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  Reply(res, status, j);
}

// Runs `handler` and maps library errors onto HTTP statuses.
void Guarded(httplib::Response& res, const std::function<Json()>& handler) {
  try {
    Reply(res, 200, handler());
  } catch (const ConflictError& e) {
    ReplyError(res, 409, e.kind(), e.what());
  } catch (const ContractError& e) {
    ReplyError(res, 400, e.kind(), e.what());
  } catch (const DegenerateModelError& e) {
    ReplyError(res, 422, e.kind(), e.what());
  } catch (const Error& e) {
    ReplyError(res, 500, e.kind(), e.what());
  } catch (const Json::exception& e) {
    ReplyError(res, 400, "json", e.what());
  } catch (const std::exception& e) {
    ReplyError(res, 500, "internal", e.what());
  }
}

}  // namespace

struct HttpFrontend::Impl {
  LabelingService& service;
  httplib::Server server;

  explicit Impl(LabelingService& s) : service(s) {
    server.Get("/session", [this](const httplib::Request&, httplib::Response& res) {
      Guarded(res, [&] { return service.SessionInfo(); });
    });
    server.Get("/queries", [this](const httplib::Request&, httplib::Response& res) {
      Guarded(res, [&] { return service.Queries(); });
    });
    server.Post("/labels", [this](const httplib::Request& req, httplib::Response& res) {
      Guarded(res, [&] { return service.SubmitLabels(Json::parse(req.body)); });
    });
    server.Post("/retrain", [this](const httplib::Request&, httplib::Response& res) {
      Guarded(res, [&] { return service.Retrain(); });
    });
    server.Get("/curve", [this](const httplib::Request&, httplib::Response& res) {
      Guarded(res, [&] { return service.Curve(); });
    });
    server.Get("/export", [this](const httplib::Request&, httplib::Response& res) {
      Guarded(res, [&] { return service.Export(); });
    });
    server.Get("/report", [this](const httplib::Request& req, httplib::Response& res) {
      Guarded(res, [&] {
        double threshold = 0.5;
        if (req.has_param("threshold")) {
          const std::string v = req.get_param_value("threshold");
          size_t used = 0;
          try {
            threshold = std::stod(v, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used != v.size()) throw ContractError("threshold is not a number: " + v);
        }
        return service.Report(threshold);
      });
    });
  }
};

HttpFrontend::HttpFrontend(LabelingService& service)
    : impl_(std::make_unique<Impl>(service)) {}

HttpFrontend::~HttpFrontend() = default;

int HttpFrontend::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpFrontend::Listen() { return impl_->server.listen_after_bind(); }

void HttpFrontend::Stop() { impl_->server.stop(); }

}  // namespace linelabel
