// Copyright 2026 The MEC Offload Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Hand-built problems and pools for example-style tests.

#ifndef MEC_TESTS_SUPPORT_FIXTURES_HPP_
#define MEC_TESTS_SUPPORT_FIXTURES_HPP_

#include <vector>

#include "mec/enumerate.hpp"
#include "mec/model.hpp"

namespace mec::testing {

struct ServerSpec {
  ServerId id = 0;
  int bu = 1;
  int cu = 1;
};

// Servers with one direct-rate ring each and jobs that can reach every
// server with generous deadlines. Intended as a frame for hand pools.
Problem frame_problem(const std::vector<ServerSpec>& servers, const std::vector<JobId>& jobs);

struct HandInstance {
  JobId job = 0;
  ServerId server = 0;
  int b = 1;
  int c = 1;
  double u = 0.0;
};

// A pool holding exactly the given instances, ids in list order.
InstancePool hand_pool(const Problem& problem, const std::vector<HandInstance>& instances);

}  // namespace mec::testing

#endif  // MEC_TESTS_SUPPORT_FIXTURES_HPP_
