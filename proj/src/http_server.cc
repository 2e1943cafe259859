// Copyright 2026 The Scribe Authors
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

#include "scribe/http_server.h"

#include "httplib.h"
#include "nlohmann/json.hpp"
#include "scribe/dataset.h"
#include "scribe/error.h"

namespace scribe {
namespace {

using nlohmann::json;

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

int ParseSessionId(const std::string& text) {
  try {
    std::size_t used = 0;
    const int id = std::stoi(text, &used);
    if (used == text.size() && id > 0) return id;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kNotFound, "unknown session " + text);
}

json PosteriorBody(const Posterior& posterior) {
  json out = json::object();
  for (std::size_t i = 0; i < posterior.labels.size(); ++i) {
    out[posterior.labels[i].ToString()] = posterior.probabilities[i];
  }
  return out;
}

template <typename Fn>
void Guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    Reply(res, HttpStatusFor(e.code()),
          {{"error", std::string(ErrorCodeName(e.code()))}, {"message", e.what()}});
  } catch (const json::exception& e) {
    Reply(res, 400, {{"error", "BadRequest"}, {"message", e.what()}});
  } catch (const std::exception& e) {
    Reply(res, 500, {{"error", "Internal"}, {"message", e.what()}});
  }
}

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadRequest:
    case ErrorCode::kDegenerateTrace:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kUnknownLabel:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kIncompleteSession:
      return 409;
    default:
      return 500;
  }
}

struct HttpServer::Impl {
  explicit Impl(ScribeService& s) : service(s) {}
  ScribeService& service;
  httplib::Server server;
};

HttpServer::HttpServer(ScribeService& service)
    : impl_(std::make_unique<Impl>(service)) {
  ScribeService& svc = impl_->service;
  httplib::Server& srv = impl_->server;

  srv.Post(R"(/users/([^/]+)/sessions)",
           [&svc](const httplib::Request& req, httplib::Response& res) {
             Guarded(res, [&] {
               const SessionStart start = svc.StartSession(req.matches[1]);
               json prompts = json::array();
               for (CharLabel l : start.prompts) prompts.push_back(l.ToString());
               Reply(res, 201, {{"session_id", start.session_id}, {"prompts", prompts}});
             });
           });

  srv.Post(R"(/users/([^/]+)/sessions/([^/]+)/characters)",
           [&svc](const httplib::Request& req, httplib::Response& res) {
             Guarded(res, [&] {
               const int sid = ParseSessionId(req.matches[2]);
               json body;
               try {
                 body = json::parse(req.body);
               } catch (const json::exception& e) {
                 throw Error(ErrorCode::kBadRequest, e.what());
               }
               if (!body.is_object() || !body.contains("prompt") ||
                   !body["prompt"].is_string() || !body.contains("samples")) {
                 throw Error(ErrorCode::kBadRequest, "expected prompt and samples");
               }
               auto prompt = CharLabel::Parse(body["prompt"].get<std::string>());
               if (!prompt) throw Error(ErrorCode::kBadRequest, "bad prompt");
               const RawTrace trace = RawTraceFromJson(body["samples"]);
               const CharacterResult r =
                   svc.HandleCharacter(req.matches[1], sid, *prompt, trace);
               Reply(res, 200,
                     {{"posterior", PosteriorBody(r.posterior)},
                      {"prediction", r.prediction.ToString()},
                      {"duration_s", r.duration},
                      {"generation", r.generation}});
             });
           });

  srv.Get(R"(/users/([^/]+)/sessions/([^/]+)/score)",
          [&svc](const httplib::Request& req, httplib::Response& res) {
            Guarded(res, [&] {
              const int sid = ParseSessionId(req.matches[2]);
              Reply(res, 200, ChannelReportToJson(svc.SessionScore(req.matches[1], sid)));
            });
          });

  srv.Get(R"(/users/([^/]+)/prototypes)",
          [&svc](const httplib::Request& req, httplib::Response& res) {
            Guarded(res, [&] {
              Reply(res, 200, PrototypeStoreToJson(svc.Prototypes(req.matches[1])));
            });
          });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::Listen() { return impl_->server.listen_after_bind(); }

void HttpServer::Stop() { impl_->server.stop(); }

void HttpServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace scribe
