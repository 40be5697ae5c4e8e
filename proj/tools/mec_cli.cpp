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

// mec: experiment runner and single-problem solver.
//
//   mec run   --config exp.json [--out results.csv] [--algorithms a,b] [--seed n] [--parallel k]
//   mec gen   --config exp.json --out problem.json [--seed n] [--jobset-size n]
//   mec solve --problem problem.json --algorithm idassign [--timeout s]
//   mec export-lp --problem problem.json --out model.lp
//
// MEC_LOG_LEVEL selects log verbosity (trace, debug, info, warn, error, off).

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "mec/enumerate.hpp"
#include "mec/exact.hpp"
#include "mec/experiment.hpp"
#include "mec/kernels.hpp"
#include "mec/problem_io.hpp"
#include "mec/workload.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("mec");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("MEC_LOG_LEVEL"))
    spdlog::set_level(spdlog::level::from_str(level));
}

int cmd_run(const std::string& config, const std::string& out, const std::string& algorithms,
            const std::optional<std::uint64_t>& seed, int parallel) {
  mec::ExperimentSpec spec = mec::load_experiment(config);
  if (!out.empty()) spec.output_path = out;
  if (!algorithms.empty()) spec.algorithms = mec::parse_algorithm_list(algorithms);
  if (seed) spec.seed = *seed;
  if (parallel > 0) spec.parallel = parallel;
  const mec::ExperimentReport report = mec::run_experiment(spec);
  if (!report.violations.empty()) {
    std::cerr << report.violations.size() << " invariant violation(s) detected\n";
    return 2;
  }
  return 0;
}

int cmd_gen(const std::string& config, const std::string& out,
            const std::optional<std::uint64_t>& seed, int jobset_size) {
  const mec::ExperimentSpec spec = mec::load_experiment(config);
  if (!spec.workload) throw mec::ConfigError("gen: the config has no workload section");
  mec::WorkloadConfig cfg = *spec.workload;
  if (jobset_size > 0) cfg.jobset_size = jobset_size;
  const mec::SynthesizedProblem synth = mec::synthesize_problem(cfg, seed.value_or(spec.seed));
  mec::save_problem(synth.problem, out);
  std::cout << "wrote " << synth.problem.num_jobs() << " jobs on " << synth.problem.num_servers()
            << " servers to " << out << " (ru_b " << synth.ru_b << ", ru_c " << synth.ru_c
            << ")\n";
  return 0;
}

int cmd_solve(const std::string& problem_path, const std::string& algorithm, double timeout) {
  const mec::Problem problem = mec::load_problem(problem_path);
  const mec::InstancePool pool = mec::enumerate_instances(problem);
  mec::SolverSettings settings;
  settings.bnb.timeout = timeout;
  const mec::Algorithm alg = mec::parse_algorithm(algorithm);
  const mec::AlgorithmRun run = mec::run_algorithm(alg, pool, problem, settings);
  const auto violations = mec::validate_solution(run.solution, pool, problem);

  nlohmann::json doc = {
      {"algorithm", algorithm},
      {"utility", run.solution.total_utility()},
      {"runtime_ms", run.runtime_ms},
      {"pool_size", pool.size()},
      {"kernels", mec::kernels::active_kernels().name},
  };
  if (run.status) doc["status"] = std::string(mec::to_string(*run.status));
  nlohmann::json selected = nlohmann::json::array();
  for (mec::InstanceId id : run.solution.selected()) {
    const mec::AssignmentInstance& inst = pool[id];
    selected.push_back({{"job_id", inst.job_id},
                        {"server_id", inst.server_id},
                        {"ring_index", inst.ring_index},
                        {"bu", inst.bu_alloc},
                        {"cu", inst.cu_alloc},
                        {"completion_time", inst.completion_time},
                        {"utility", inst.utility}});
  }
  doc["selected"] = selected;
  doc["violations"] = violations;
  std::cout << doc.dump(2) << '\n';
  return violations.empty() ? 0 : 2;
}

int cmd_export_lp(const std::string& problem_path, const std::string& out) {
  const mec::Problem problem = mec::load_problem(problem_path);
  const mec::InstancePool pool = mec::enumerate_instances(problem);
  std::ofstream file(out);
  if (!file) throw mec::ConfigError("cannot write " + out);
  mec::write_lp(file, pool, problem);
  return file ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Deadline-constrained job offloading and resource allocation solvers"};
  app.require_subcommand(1);

  std::string config, out, algorithms, problem_path, algorithm = "idassign";
  std::optional<std::uint64_t> seed;
  int parallel = 0;
  int jobset_size = 0;
  double timeout = 600.0;

  CLI::App* run = app.add_subcommand("run", "Run an experiment and write the results CSV");
  run->add_option("--config", config, "Experiment config (JSON)")->required();
  run->add_option("--out", out, "Results CSV path (overrides output_path)");
  run->add_option("--algorithms", algorithms, "Comma-separated subset of "
                                              "idassign,greedy,iterative,game,exact");
  run->add_option("--seed", seed, "Base seed; repetition r uses seed + r");
  run->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);

  CLI::App* gen = app.add_subcommand("gen", "Synthesize one problem from a config");
  gen->add_option("--config", config, "Experiment config (JSON)")->required();
  gen->add_option("--out", out, "Problem JSON path")->required();
  gen->add_option("--seed", seed, "Jobset seed");
  gen->add_option("--jobset-size", jobset_size, "Override the number of jobs");

  CLI::App* solve = app.add_subcommand("solve", "Solve a problem file with one algorithm");
  solve->add_option("--problem", problem_path, "Problem JSON")->required();
  solve->add_option("--algorithm", algorithm, "idassign, greedy, iterative, game or exact")
      ->required();
  solve->add_option("--timeout", timeout, "Exact solver timeout in seconds");

  CLI::App* lp = app.add_subcommand("export-lp", "Write the 0-1 program in LP format");
  lp->add_option("--problem", problem_path, "Problem JSON")->required();
  lp->add_option("--out", out, "LP file path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config, out, algorithms, seed, parallel);
    if (gen->parsed()) return cmd_gen(config, out, seed, jobset_size);
    if (solve->parsed()) return cmd_solve(problem_path, algorithm, timeout);
    if (lp->parsed()) return cmd_export_lp(problem_path, out);
  } catch (const mec::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
