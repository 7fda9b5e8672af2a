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

// Serves the toy oracle over stdio (one JSON request per line) or HTTP.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pathobench/bench/toy_corpus.h"
#include "pathobench/oracle/server.h"
#include "pathobench/oracle/toy_oracle.h"
#include "pathobench/oracle/transport.h"
#include "pathobench/textperturb/attribute_lexicon.h"

int main(int argc, char** argv) {
  CLI::App app{"toy_oracle_server: reference oracle backend"};
  bool stdio = false;
  int port = -1;
  std::string host = "127.0.0.1";
  std::string lexicon;
  bool toy_terms = false;
  uint64_t seed = 0;
  size_t dim = 64;
  auto* s = app.add_flag("--stdio", stdio, "Serve on stdin/stdout");
  auto* h = app.add_option("--http", port, "Serve HTTP on this port (0 picks one)");
  s->excludes(h);
  app.add_option("--host", host, "HTTP bind address")->capture_default_str();
  app.add_option("--attribute-lexicon", lexicon, "Term groups for mask_fill");
  app.add_flag("--toy-terms", toy_terms, "Also serve the toy caption vocabulary (the CLI's default)");
  app.add_option("--seed", seed, "Oracle seed")->capture_default_str();
  app.add_option("--dim", dim, "Embedding dimension")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  if (!stdio && port < 0) {
    std::cerr << "toy_oracle_server: pass --stdio or --http PORT\n";
    return 1;
  }
  try {
    pathobench::oracle::ToyOracleOptions options;
    options.seed = seed;
    options.dim = dim;
    if (!lexicon.empty()) {
      options.term_groups = pathobench::textperturb::AttributeLexicon::Load(lexicon).Groups();
    }
    if (toy_terms) {
      for (auto& group : pathobench::bench::ToyTermGroups()) {
        options.term_groups.push_back(std::move(group));
      }
    }
    const pathobench::oracle::ToyOracle oracle(options);
    auto handler = [&](std::string_view line) { return oracle.HandleLine(line); };
    if (stdio) {
      std::ios::sync_with_stdio(false);
      pathobench::oracle::ServeStdio(handler, std::cin, std::cout);
    } else {
      pathobench::oracle::HttpOracleServer server(handler);
      std::cerr << "toy_oracle_server: listening on " << host << ":" << port << "\n";
      server.Run(host, port);
    }
  } catch (const std::exception& e) {
    std::cerr << "toy_oracle_server: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
