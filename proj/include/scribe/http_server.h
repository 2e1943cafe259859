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

#ifndef SCRIBE_HTTP_SERVER_H_
#define SCRIBE_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "scribe/error.h"
#include "scribe/service.h"

namespace scribe {

// HTTP status for an error code: 400 for bad input, 404 for unknown ids, 409
// for an incomplete session, 500 otherwise.
int HttpStatusFor(ErrorCode code);

// JSON wire API over a ScribeService.
//   POST /users/{id}/sessions
//   POST /users/{id}/sessions/{sid}/characters
//   GET  /users/{id}/sessions/{sid}/score
//   GET  /users/{id}/prototypes
class HttpServer {
 public:
  explicit HttpServer(ScribeService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port, or -1.
  int Bind(const std::string& host, int port);
  // Serves until Stop(). Call after Bind.
  bool Listen();
  void Stop();
  // Blocks until the server accepts connections.
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace scribe

#endif  // SCRIBE_HTTP_SERVER_H_
