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

// JSON problem documents. Top-level keys are "servers", "jobs" and
// "channel_env"; member names follow the snake_case field names of the
// model types. Processing times are stored per server as an array indexed
// by computing units minus one:
//
//   "processing_times": [{"server_id": 3, "seconds": [0.9, 0.5, 0.36]}]
//
// Penalties are {"kind": "linear_decreasing"} or
// {"kind": "step", "step_levels": [[0.5, 0.8], [1.0, 0.3]]}.

#ifndef MEC_PROBLEM_IO_HPP_
#define MEC_PROBLEM_IO_HPP_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "mec/model.hpp"

namespace mec {

nlohmann::json problem_to_json(const Problem& problem);
// Throws ConfigError for missing/mistyped members or invalid values.
Problem problem_from_json(const nlohmann::json& doc);

Problem load_problem(const std::filesystem::path& path);
void save_problem(const Problem& problem, const std::filesystem::path& path);

}  // namespace mec

#endif  // MEC_PROBLEM_IO_HPP_
