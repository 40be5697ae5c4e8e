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

#include "mec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "mec/baselines.hpp"
#include "mec/localratio.hpp"
#include "mec/problem_io.hpp"

namespace mec {

using nlohmann::json;

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kIdAssign:
      return "idassign";
    case Algorithm::kGreedy:
      return "greedy";
    case Algorithm::kIterative:
      return "iterative";
    case Algorithm::kGame:
      return "game";
    case Algorithm::kExact:
      return "exact";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kIdAssign, Algorithm::kGreedy, Algorithm::kIterative,
                      Algorithm::kGame, Algorithm::kExact})
    if (to_string(a) == name) return a;
  throw ConfigError("unknown algorithm \"" + std::string(name) +
                    "\" (expected idassign, greedy, iterative, game or exact)");
}

std::vector<Algorithm> parse_algorithm_list(std::string_view names) {
  std::vector<Algorithm> out;
  std::size_t start = 0;
  while (start <= names.size()) {
    const std::size_t comma = names.find(',', start);
    std::string_view item = names.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const Algorithm a = parse_algorithm(item);
      if (std::find(out.begin(), out.end(), a) != out.end())
        throw ConfigError("algorithm \"" + std::string(item) + "\" listed twice");
      out.push_back(a);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ConfigError("no algorithms selected");
  return out;
}

AlgorithmRun run_algorithm(Algorithm algorithm, const InstancePool& pool, const Problem& problem,
                           const SolverSettings& settings) {
  AlgorithmRun run;
  const auto start = std::chrono::steady_clock::now();
  switch (algorithm) {
    case Algorithm::kIdAssign:
      run.solution = idassign(pool, problem);
      break;
    case Algorithm::kGreedy:
      run.solution = greedy(pool, problem);
      break;
    case Algorithm::kIterative:
      run.solution = iterative(pool, problem, settings.iterative_max_iters);
      break;
    case Algorithm::kGame:
      run.solution = game(pool, problem, settings.game_max_rounds);
      break;
    case Algorithm::kExact: {
      ExactResult r = exact_opt(pool, problem, settings.bnb);
      run.solution = std::move(r.solution);
      run.status = r.status;
      break;
    }
  }
  run.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return run;
}

double performance_ratio(double alg_utility, double opt_utility) {
  if (alg_utility < 0.0 || opt_utility < 0.0)
    throw std::invalid_argument("performance_ratio: utilities must be non-negative");
  if (alg_utility > opt_utility + 1e-9 * std::max(1.0, opt_utility))
    throw InvariantViolation("performance_ratio: algorithm utility " + std::to_string(alg_utility) +
                             " exceeds the optimum " + std::to_string(opt_utility));
  if (opt_utility == 0.0) return 1.0;
  return std::min(alg_utility / opt_utility, 1.0);
}

void ExperimentSpec::validate() const {
  if (workload && problem_path) throw ConfigError("experiment: workload and problem_path are exclusive");
  if (!workload && !problem_path) throw ConfigError("experiment: no workload or problem_path");
  if (workload) workload->validate();
  if (repetitions < 1) throw ConfigError("experiment: repetitions must be >= 1");
  if (algorithms.empty()) throw ConfigError("experiment: at least one algorithm is required");
  const bool has_exact =
      std::find(algorithms.begin(), algorithms.end(), Algorithm::kExact) != algorithms.end();
  if (require_ratio && !has_exact)
    throw ConfigError("experiment: performance ratios need the exact algorithm");
  for (int n : jobset_sizes)
    if (n < 1) throw ConfigError("experiment: jobset_sizes entries must be >= 1");
  if (!jobset_sizes.empty() && problem_path)
    throw ConfigError("experiment: jobset_sizes needs a workload, not a problem file");
  if (solvers.iterative_max_iters < 1) throw ConfigError("experiment: iterative_max_iters must be >= 1");
  if (parallel < 1) throw ConfigError("experiment: parallel must be >= 1");
  if (output_path.empty()) throw ConfigError("experiment: output_path is empty");
}

namespace {

template <typename T>
T typed(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("experiment: " + key + " has the wrong type");
  }
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

ExperimentSpec experiment_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment: expected a JSON object");
  ExperimentSpec spec;
  bool seed_given = false;
  for (const auto& [key, v] : j.items()) {
    if (key == "workload") {
      spec.workload = workload_from_json(v);
    } else if (key == "problem_path") {
      spec.problem_path = typed<std::string>(v, key);
    } else if (key == "algorithms") {
      spec.algorithms.clear();
      std::string joined;
      for (const auto& name : typed<std::vector<std::string>>(v, key)) joined += name + ",";
      spec.algorithms = parse_algorithm_list(joined);
    } else if (key == "repetitions") {
      spec.repetitions = typed<int>(v, key);
    } else if (key == "jobset_sizes") {
      spec.jobset_sizes = typed<std::vector<int>>(v, key);
    } else if (key == "bnb") {
      if (!v.is_object()) throw ConfigError("experiment: bnb must be an object");
      for (const auto& [bkey, bv] : v.items()) {
        if (bkey == "timeout") spec.solvers.bnb.timeout = typed<double>(bv, "bnb.timeout");
        else if (bkey == "node_limit") spec.solvers.bnb.node_limit = typed<std::uint64_t>(bv, "bnb.node_limit");
        else throw ConfigError("experiment: unknown key \"bnb." + bkey + "\"");
      }
    } else if (key == "iterative_max_iters") {
      spec.solvers.iterative_max_iters = typed<int>(v, key);
    } else if (key == "game_max_rounds") {
      spec.solvers.game_max_rounds = typed<int>(v, key);
    } else if (key == "require_ratio") {
      spec.require_ratio = typed<bool>(v, key);
    } else if (key == "output_path") {
      spec.output_path = typed<std::string>(v, key);
    } else if (key == "seed") {
      spec.seed = typed<std::uint64_t>(v, key);
      seed_given = true;
    } else if (key == "parallel") {
      spec.parallel = typed<int>(v, key);
    } else {
      throw ConfigError("experiment: unknown key \"" + key + "\"");
    }
  }
  if (!spec.workload && !spec.problem_path) spec.workload = WorkloadConfig{};
  if (!seed_given && spec.workload) spec.seed = spec.workload->seed;
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return experiment_from_json(doc);
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const ResultRow& r) {
  out << r.seed << ',' << r.jobset_size << ',' << format_optional(r.ru_b) << ','
      << format_optional(r.ru_c) << ',' << r.algorithm << ',' << format_double(r.utility) << ','
      << format_optional(r.opt_utility) << ',' << r.opt_status << ',' << format_optional(r.ratio)
      << ',' << format_double(r.runtime_ms) << ',' << r.pool_size << ','
      << format_double(r.enum_ms) << '\n';
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::size_t pos = 0;
  int line_no = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw ConfigError("results csv line " + std::to_string(line_no) + ": " + what);
    };
    if (header) {
      if (line != kCsvHeader) fail("unexpected header");
      header = false;
      continue;
    }
    std::vector<std::string_view> f;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (f.size() != 12) fail("expected 12 fields");
    auto num = [&](std::string_view s, auto& out) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc() || ptr != s.data() + s.size()) fail("bad number '" + std::string(s) + "'");
    };
    auto opt = [&](std::string_view s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      double v = 0.0;
      num(s, v);
      return v;
    };
    ResultRow r;
    num(f[0], r.seed);
    num(f[1], r.jobset_size);
    r.ru_b = opt(f[2]);
    r.ru_c = opt(f[3]);
    r.algorithm = std::string(f[4]);
    num(f[5], r.utility);
    r.opt_utility = opt(f[6]);
    r.opt_status = std::string(f[7]);
    r.ratio = opt(f[8]);
    num(f[9], r.runtime_ms);
    num(f[10], r.pool_size);
    num(f[11], r.enum_ms);
    rows.push_back(std::move(r));
  }
  if (header) throw ConfigError("results csv: missing header");
  return rows;
}

namespace {

struct Task {
  int jobset_size = 0;
  int repetition = 0;
};

struct TaskOutput {
  std::vector<ResultRow> rows;
  std::vector<std::string> violations;
};

TaskOutput run_task(const ExperimentSpec& spec, const Task& task, const Problem* fixed_problem) {
  TaskOutput out;
  const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(task.repetition);
  Problem problem;
  std::optional<double> ru_b, ru_c;
  if (fixed_problem) {
    problem = *fixed_problem;
  } else {
    WorkloadConfig cfg = *spec.workload;
    cfg.jobset_size = task.jobset_size;
    SynthesizedProblem synth = synthesize_problem(cfg, seed);
    problem = std::move(synth.problem);
    ru_b = synth.ru_b;
    ru_c = synth.ru_c;
  }

  const auto enum_start = std::chrono::steady_clock::now();
  const InstancePool pool = enumerate_instances(problem);
  const double enum_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - enum_start)
                             .count();
  spdlog::debug("seed {} N={} pool={} enumerated in {:.2f} ms", seed, problem.num_jobs(),
                pool.size(), enum_ms);

  std::vector<AlgorithmRun> runs;
  std::optional<double> opt;
  std::optional<ExactStatus> opt_status;
  for (Algorithm a : spec.algorithms) {
    runs.push_back(run_algorithm(a, pool, problem, spec.solvers));
    const AlgorithmRun& run = runs.back();
    for (const std::string& v : validate_solution(run.solution, pool, problem))
      out.violations.push_back("seed " + std::to_string(seed) + " " + std::string(to_string(a)) +
                               ": " + v);
    if (a == Algorithm::kExact) {
      opt = run.solution.total_utility();
      opt_status = run.status;
    }
    spdlog::debug("seed {} {} utility {} in {:.2f} ms", seed, to_string(a),
                  run.solution.total_utility(), run.runtime_ms);
  }

  for (std::size_t i = 0; i < runs.size(); ++i) {
    ResultRow row;
    row.seed = seed;
    row.jobset_size = problem.num_jobs();
    row.ru_b = ru_b;
    row.ru_c = ru_c;
    row.algorithm = std::string(to_string(spec.algorithms[i]));
    row.utility = runs[i].solution.total_utility();
    row.runtime_ms = runs[i].runtime_ms;
    row.pool_size = pool.size();
    row.enum_ms = enum_ms;
    if (opt) {
      row.opt_utility = opt;
      row.opt_status = std::string(to_string(*opt_status));
      if (*opt_status == ExactStatus::kOptimal) {
        try {
          row.ratio = performance_ratio(row.utility, *opt);
        } catch (const InvariantViolation& e) {
          out.violations.push_back("seed " + std::to_string(seed) + " " + row.algorithm + ": " +
                                   e.what());
        }
      } else if (row.utility <= *opt) {
        // An incumbent is only a lower bound on the optimum.
        row.ratio = *opt == 0.0 ? 1.0 : row.utility / *opt;
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

ExperimentReport execute_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::optional<Problem> fixed_problem;
  if (spec.problem_path) fixed_problem = load_problem(*spec.problem_path);

  std::vector<Task> tasks;
  std::vector<int> sizes = spec.jobset_sizes;
  if (sizes.empty()) sizes.push_back(spec.workload ? spec.workload->jobset_size : 0);
  for (int n : sizes)
    for (int rep = 0; rep < spec.repetitions; ++rep) tasks.push_back({n, rep});

  std::vector<TaskOutput> outputs(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        outputs[i] = run_task(spec, tasks[i], fixed_problem ? &*fixed_problem : nullptr);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_workers =
      std::max(1, std::min(spec.parallel, static_cast<int>(tasks.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  ExperimentReport report;
  for (TaskOutput& o : outputs) {
    for (ResultRow& r : o.rows) report.rows.push_back(std::move(r));
    for (std::string& v : o.violations) {
      spdlog::error("{}", v);
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::ofstream out(spec.output_path);
  if (!out) throw ConfigError("cannot write output file " + spec.output_path);
  ExperimentReport report = execute_experiment(spec);
  write_csv_header(out);
  for (const ResultRow& row : report.rows) write_csv_row(out, row);
  out.flush();
  if (!out) throw ConfigError("failed writing output file " + spec.output_path);
  spdlog::info("wrote {} rows to {}", report.rows.size(), spec.output_path);
  return report;
}

}  // namespace mec
