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

#ifndef PATHOBENCH_ORACLE_TRANSPORT_H_
#define PATHOBENCH_ORACLE_TRANSPORT_H_

#include <deque>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>

#include "pathobench/oracle/toy_oracle.h"

namespace pathobench::oracle {

// Moves one serialized request line to an oracle and returns the response
// line. Implementations are safe for concurrent use. Transport failures
// throw Error(kOracleUnavailable).
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string RoundTrip(const std::string& request_line) = 0;
  virtual std::string Describe() const = 0;
};

// Serializes through the wire format even in-process, so the toy oracle and
// remote oracles share one code path.
class InProcessTransport : public Transport {
 public:
  explicit InProcessTransport(std::shared_ptr<const ToyOracle> oracle)
      : oracle_(std::move(oracle)) {}
  std::string RoundTrip(const std::string& request_line) override;
  std::string Describe() const override { return "toy"; }

 private:
  std::shared_ptr<const ToyOracle> oracle_;
};

// Child process speaking newline-delimited JSON on stdin/stdout. The child
// is (re)started lazily; requests are serialized by a mutex.
class StdioTransport : public Transport {
 public:
  explicit StdioTransport(std::string command);
  ~StdioTransport() override;
  StdioTransport(const StdioTransport&) = delete;
  StdioTransport& operator=(const StdioTransport&) = delete;

  std::string RoundTrip(const std::string& request_line) override;
  std::string Describe() const override { return "stdio:" + command_; }

 private:
  void Start();
  void Stop();

  std::string command_;
  std::mutex mu_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string read_buffer_;
};

// POST {url}/v1/oracle with the request as the body.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::string url);
  std::string RoundTrip(const std::string& request_line) override;
  std::string Describe() const override { return "http:" + url_; }

 private:
  std::string url_;
  std::string scheme_host_port_;
  std::string base_path_;
};

// Answers from a recorded transcript (JSONL of {"request", "response"}).
// Requests are matched on method and params, ignoring ids; repeated
// identical requests are served in recording order.
class ReplayTransport : public Transport {
 public:
  static std::unique_ptr<ReplayTransport> FromFile(const std::string& path);
  explicit ReplayTransport(std::string_view transcript);

  std::string RoundTrip(const std::string& request_line) override;
  std::string Describe() const override { return "replay"; }

 private:
  std::mutex mu_;
  std::map<std::string, std::deque<Json>> recorded_;
};

// "toy", "stdio:CMD", "http://..." / "http:URL", or "replay:PATH".
std::unique_ptr<Transport> MakeTransport(const std::string& endpoint,
                                         const ToyOracleOptions& toy_options);

// Line-oriented server loop; returns at end of input.
void ServeStdio(const std::function<std::string(std::string_view)>& handler,
                std::istream& in, std::ostream& out);

}  // namespace pathobench::oracle

#endif  // PATHOBENCH_ORACLE_TRANSPORT_H_
