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

#ifndef PATHOBENCH_ORACLE_CONFORMANCE_H_
#define PATHOBENCH_ORACLE_CONFORMANCE_H_

#include <string>
#include <vector>

#include "pathobench/oracle/transport.h"

namespace pathobench::oracle {

struct ConformanceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Drives any oracle endpoint through the protocol schema checks: one valid
// request per method, plus malformed envelopes, an unknown method and bad
// params, each of which must produce exactly one well-formed response with
// the request id echoed (null for unparseable lines). Methods answered with
// error 501 count as disabled, which conforms.
std::vector<ConformanceCheck> RunConformance(Transport& transport,
                                             size_t expected_dim);

}  // namespace pathobench::oracle

#endif  // PATHOBENCH_ORACLE_CONFORMANCE_H_
