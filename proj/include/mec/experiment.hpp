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

// Batch experiments: synthesize or load problems, run the selected
// algorithms, compare against the exact optimum and emit one CSV row per
// (repetition, algorithm).

#ifndef MEC_EXPERIMENT_HPP_
#define MEC_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "mec/enumerate.hpp"
#include "mec/exact.hpp"
#include "mec/model.hpp"
#include "mec/workload.hpp"

namespace mec {

enum class Algorithm { kIdAssign, kGreedy, kIterative, kGame, kExact };

std::string_view to_string(Algorithm algorithm);
// Throws ConfigError for unknown names.
Algorithm parse_algorithm(std::string_view name);
// Comma-separated names, e.g. "idassign,exact".
std::vector<Algorithm> parse_algorithm_list(std::string_view names);

struct SolverSettings {
  BnBConfig bnb;
  int iterative_max_iters = 20;
  int game_max_rounds = 0;  // <= 0 means 10 * number of jobs
};

struct AlgorithmRun {
  Solution solution;
  std::optional<ExactStatus> status;  // exact only
  double runtime_ms = 0.0;
};

AlgorithmRun run_algorithm(Algorithm algorithm, const InstancePool& pool, const Problem& problem,
                           const SolverSettings& settings);

// alg / opt, or 1 when both are zero. Throws InvariantViolation when alg
// exceeds opt beyond a 1e-9 relative tolerance and std::invalid_argument
// for negative inputs.
double performance_ratio(double alg_utility, double opt_utility);

struct ExperimentSpec {
  std::optional<WorkloadConfig> workload;
  std::optional<std::string> problem_path;
  std::vector<Algorithm> algorithms = {Algorithm::kIdAssign, Algorithm::kGreedy,
                                       Algorithm::kIterative, Algorithm::kGame,
                                       Algorithm::kExact};
  int repetitions = 1;
  std::vector<int> jobset_sizes;  // sweep; empty uses workload->jobset_size
  SolverSettings solvers;
  bool require_ratio = false;  // demands exact in algorithms
  std::string output_path = "results.csv";
  std::uint64_t seed = 1;  // repetition r uses seed + r
  int parallel = 1;

  // Throws ConfigError on the first violated invariant.
  void validate() const;
};

// Every key is optional. "workload" and "problem_path" are exclusive; with
// neither, the default workload is used.
ExperimentSpec experiment_from_json(const nlohmann::json& j);
ExperimentSpec load_experiment(const std::string& path);

struct ResultRow {
  std::uint64_t seed = 0;
  int jobset_size = 0;
  std::optional<double> ru_b;
  std::optional<double> ru_c;
  std::string algorithm;
  double utility = 0.0;
  std::optional<double> opt_utility;
  std::string opt_status;  // empty when exact did not run
  std::optional<double> ratio;
  double runtime_ms = 0.0;
  std::size_t pool_size = 0;
  double enum_ms = 0.0;  // instance enumeration, shared by the repetition

  bool operator==(const ResultRow&) const = default;
};

inline constexpr std::string_view kCsvHeader =
    "seed,jobset_size,ru_b,ru_c,algorithm,utility,opt_utility,opt_status,ratio,runtime_ms,"
    "pool_size,enum_ms";

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ResultRow& row);
// Parses what write_csv_header/write_csv_row produce. Throws ConfigError.
std::vector<ResultRow> parse_results_csv(std::string_view text);

struct ExperimentReport {
  std::vector<ResultRow> rows;  // repetition-major, algorithms in spec order
  std::vector<std::string> violations;
};

// Runs every repetition; rows are returned in order regardless of
// spec.parallel.
ExperimentReport execute_experiment(const ExperimentSpec& spec);

// execute_experiment plus the CSV at spec.output_path. The output file is
// opened before any work so an unwritable path fails fast (ConfigError).
ExperimentReport run_experiment(const ExperimentSpec& spec);

}  // namespace mec

#endif  // MEC_EXPERIMENT_HPP_
