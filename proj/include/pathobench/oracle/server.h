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

#ifndef PATHOBENCH_ORACLE_SERVER_H_
#define PATHOBENCH_ORACLE_SERVER_H_

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

namespace httplib {
class Server;
}

namespace pathobench::oracle {

using LineHandler = std::function<std::string(std::string_view)>;

// Serves the oracle protocol at POST /v1/oracle on a background thread.
class HttpOracleServer {
 public:
  explicit HttpOracleServer(LineHandler handler);
  ~HttpOracleServer();
  HttpOracleServer(const HttpOracleServer&) = delete;
  HttpOracleServer& operator=(const HttpOracleServer&) = delete;

  // Binds host:port (port 0 picks a free port) and returns the bound port.
  int Start(const std::string& host, int port);
  // Blocks serving on the calling thread.
  void Run(const std::string& host, int port);
  void Stop();

 private:
  LineHandler handler_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace pathobench::oracle

#endif  // PATHOBENCH_ORACLE_SERVER_H_
