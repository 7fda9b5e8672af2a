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

#include "pathobench/oracle/transport.h"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "httplib.h"
#include "pathobench/core/error.h"
#include "pathobench/core/formats.h"

namespace pathobench::oracle {

namespace {

[[noreturn]] void Unavailable(const std::string& message) {
  throw Error(ErrorCode::kOracleUnavailable, message);
}

// Canonical request key: method and params, id dropped.
std::string RequestKey(const Json& request) {
  return request.value("method", "") + "\n" +
         request.value("params", Json::object()).dump();
}

}  // namespace

std::string InProcessTransport::RoundTrip(const std::string& request_line) {
  return oracle_->HandleLine(request_line);
}

StdioTransport::StdioTransport(std::string command)
    : command_(std::move(command)) {
  ::signal(SIGPIPE, SIG_IGN);
}

StdioTransport::~StdioTransport() { Stop(); }

void StdioTransport::Start() {
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe(in_pipe) != 0) Unavailable("pipe failed");
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    Unavailable("pipe failed");
  }
  const pid_t pid = ::fork();
  if (pid < 0) Unavailable("fork failed");
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::fcntl(in_pipe[1], F_SETFD, FD_CLOEXEC);
  ::fcntl(out_pipe[0], F_SETFD, FD_CLOEXEC);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  read_buffer_.clear();
}

void StdioTransport::Stop() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    if (::waitpid(pid_, &status, WNOHANG) == 0) {
      ::kill(pid_, SIGTERM);
      ::waitpid(pid_, &status, 0);
    }
  }
  pid_ = -1;
  to_child_ = -1;
  from_child_ = -1;
}

std::string StdioTransport::RoundTrip(const std::string& request_line) {
  std::lock_guard<std::mutex> lock(mu_);
  if (pid_ < 0) Start();
  std::string out = request_line;
  out.push_back('\n');
  size_t written = 0;
  while (written < out.size()) {
    const ssize_t n = ::write(to_child_, out.data() + written, out.size() - written);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      Stop();
      Unavailable("write to oracle process failed: " + command_);
    }
    written += static_cast<size_t>(n);
  }
  for (;;) {
    const size_t nl = read_buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = read_buffer_.substr(0, nl);
      read_buffer_.erase(0, nl + 1);
      return line;
    }
    char buf[65536];
    const ssize_t n = ::read(from_child_, buf, sizeof(buf));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      Stop();
      Unavailable("oracle process closed its output: " + command_);
    }
    read_buffer_.append(buf, static_cast<size_t>(n));
  }
}

HttpTransport::HttpTransport(std::string url) : url_(std::move(url)) {
  const size_t scheme_end = url_.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "oracle URL needs a scheme: " + url_);
  }
  const size_t path_start = url_.find('/', scheme_end + 3);
  scheme_host_port_ = url_.substr(0, path_start);
  base_path_ = path_start == std::string::npos ? "" : url_.substr(path_start);
  while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
}

std::string HttpTransport::RoundTrip(const std::string& request_line) {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(5);
  client.set_read_timeout(300);
  auto res = client.Post(base_path_ + std::string(kHttpPath), request_line,
                         "application/json");
  if (!res) {
    Unavailable("HTTP request to " + url_ + " failed: " +
                httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    Unavailable("HTTP " + std::to_string(res->status) + " from " + url_);
  }
  std::string body = res->body;
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) {
    body.pop_back();
  }
  return body;
}

std::unique_ptr<ReplayTransport> ReplayTransport::FromFile(
    const std::string& path) {
  return std::make_unique<ReplayTransport>(ReadFile(path));
}

ReplayTransport::ReplayTransport(std::string_view transcript) {
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < transcript.size()) {
    size_t nl = transcript.find('\n', pos);
    if (nl == std::string_view::npos) nl = transcript.size();
    const std::string_view line = transcript.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    Json entry;
    try {
      entry = Json::parse(line);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kSchemaError,
                  "transcript line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!entry.contains("request") || !entry.contains("response")) {
      throw Error(ErrorCode::kSchemaError,
                  "transcript line " + std::to_string(line_no) +
                      ": expected {request, response}");
    }
    recorded_[RequestKey(entry["request"])].push_back(entry["response"]);
  }
}

std::string ReplayTransport::RoundTrip(const std::string& request_line) {
  const Json request = Json::parse(request_line);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = recorded_.find(RequestKey(request));
  if (it == recorded_.end() || it->second.empty()) {
    Unavailable("no recorded response for " + request.value("method", "?") +
                " request");
  }
  Json response = it->second.front();
  it->second.pop_front();
  response["id"] = request["id"];
  return response.dump();
}

std::unique_ptr<Transport> MakeTransport(const std::string& endpoint,
                                         const ToyOracleOptions& toy_options) {
  if (endpoint.empty() || endpoint == "toy") {
    return std::make_unique<InProcessTransport>(
        std::make_shared<const ToyOracle>(toy_options));
  }
  if (endpoint.rfind("stdio:", 0) == 0) {
    return std::make_unique<StdioTransport>(endpoint.substr(6));
  }
  if (endpoint.rfind("http://", 0) == 0 || endpoint.rfind("https://", 0) == 0) {
    return std::make_unique<HttpTransport>(endpoint);
  }
  if (endpoint.rfind("http:", 0) == 0) {
    return std::make_unique<HttpTransport>(endpoint.substr(5));
  }
  if (endpoint.rfind("replay:", 0) == 0) {
    return ReplayTransport::FromFile(endpoint.substr(7));
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unrecognised oracle endpoint '" + endpoint +
                  "' (expected toy, stdio:CMD, http:URL or replay:PATH)");
}

void ServeStdio(const std::function<std::string(std::string_view)>& handler,
                std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out << handler(line) << '\n';
    out.flush();
  }
}

}  // namespace pathobench::oracle
