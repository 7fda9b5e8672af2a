/* Copyright 2026 The Pathobench Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "pathobench/oracle/server.h"

#include "httplib.h"
#include "pathobench/core/error.h"
#include "pathobench/oracle/protocol.h"

namespace pathobench::oracle {

HttpOracleServer::HttpOracleServer(LineHandler handler)
    : handler_(std::move(handler)), server_(std::make_unique<httplib::Server>()) {
  server_->Post(std::string(kHttpPath),
                [this](const httplib::Request& req, httplib::Response& res) {
                  res.set_content(handler_(req.body) + "\n", "application/json");
                });
}

HttpOracleServer::~HttpOracleServer() { Stop(); }

int HttpOracleServer::Start(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host)
                              : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::kIoError,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void HttpOracleServer::Run(const std::string& host, int port) {
  if (!server_->listen(host, port)) {
    throw Error(ErrorCode::kIoError,
                "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void HttpOracleServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace pathobench::oracle
