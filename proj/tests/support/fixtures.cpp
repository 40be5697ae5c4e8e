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

#include "support/fixtures.hpp"

namespace mec::testing {

Problem frame_problem(const std::vector<ServerSpec>& servers, const std::vector<JobId>& jobs) {
  std::vector<EdgeServer> es;
  for (const ServerSpec& s : servers) {
    EdgeServer e;
    e.server_id = s.id;
    e.bandwidth_units = s.bu;
    e.computing_units = s.cu;
    NetworkRing ring;
    ring.per_bu_rate = 1.0;
    e.rings.push_back(ring);
    es.push_back(e);
  }
  std::vector<Job> js;
  for (JobId id : jobs) {
    Job j;
    j.job_id = id;
    j.input_size_mb = 0.5;
    j.deadline = 10.0;
    j.full_utility = 10.0;
    for (const ServerSpec& s : servers) {
      j.accessible_rings.push_back({s.id, 1, 100.0});
      j.processing_times.push_back({s.id, std::vector<double>(s.cu, 1.0)});
    }
    js.push_back(j);
  }
  return Problem(std::move(es), std::move(js), ChannelEnv{});
}

InstancePool hand_pool(const Problem& problem, const std::vector<HandInstance>& instances) {
  std::vector<AssignmentInstance> out;
  for (const HandInstance& h : instances) {
    const EdgeServer& s = problem.server(h.server);
    AssignmentInstance inst;
    inst.job_id = h.job;
    inst.server_id = h.server;
    inst.ring_index = 1;
    inst.bu_alloc = h.b;
    inst.cu_alloc = h.c;
    inst.server_bu = s.bandwidth_units;
    inst.server_cu = s.computing_units;
    inst.utility = h.u;
    inst.norm_bu = static_cast<double>(h.b) / s.bandwidth_units;
    inst.norm_cu = static_cast<double>(h.c) / s.computing_units;
    inst.job_index = problem.job_index(h.job);
    inst.server_index = problem.server_index(h.server);
    out.push_back(inst);
  }
  return InstancePool(problem, std::move(out));
}

}  // namespace mec::testing
