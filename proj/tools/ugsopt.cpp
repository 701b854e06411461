// Copyright 2026 The ugsopt Authors
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

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ugsopt/budget.hpp"
#include "ugsopt/cluster.hpp"
#include "ugsopt/error.hpp"
#include "ugsopt/json_io.hpp"
#include "ugsopt/scenario.hpp"
#include "ugsopt/service.hpp"

namespace {

using namespace ugsopt;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitSolver = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasible:
      return kExitInfeasible;
    case ErrorCode::kSolverFailure:
      return kExitSolver;
    default:
      return kExitInvalid;
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text << "\n";
  if (!out.flush()) throw Error(ErrorCode::kIo, "cannot write " + path, path);
}

int cmd_validate(const std::string& file) {
  const Instance inst = parse_instance_unvalidated(read_text(file));
  const ValidationReport report = validate(inst);
  if (report.empty()) {
    std::cout << "ok: " << inst.neighborhoods.size() << " neighborhoods, B_T = "
              << json(inst.total_budget).dump() << "\n";
    return kExitOk;
  }
  for (const Violation& v : report) std::cout << v.path << ": " << v.message << "\n";
  return kExitInvalid;
}

int cmd_gen(const std::string& cfg_file, const std::string& out) {
  const GenConfig cfg = parse_gen_config(read_text(cfg_file));
  write_text(out, serialize_instance(generate_synthetic(cfg)));
  return kExitOk;
}

int cmd_allocate(const std::string& file, const std::string& mode, std::optional<double> delta,
                 bool oracle) {
  const Instance inst = parse_instance(read_text(file));
  AllocationOptions opts;
  opts.delta = delta;
  const AllocationMode m = parse_allocation_mode(mode);
  const Allocation a = oracle && m == AllocationMode::kFair ? allocate_lp_oracle(inst, opts)
                                                            : allocate(inst, m, opts);
  std::cout << to_json(a).dump(2) << "\n";
  return kExitOk;
}

int cmd_cluster(const std::string& file, std::optional<int> k, std::uint64_t seed,
                const std::string& only) {
  const Instance inst = parse_instance(read_text(file));
  json out = json::array();
  for (const Neighborhood& nb : inst.neighborhoods) {
    if (!only.empty() && nb.id != only) continue;
    const int kk = k.value_or(default_cluster_count(nb.demand_points.size()));
    const Clustering c = cluster_neighborhood(nb, kk, seed);
    out.push_back({{"neighborhood_id", nb.id}, {"clustering", to_json(c)}});
  }
  if (!only.empty() && out.empty()) {
    throw Error(ErrorCode::kNotFound, "unknown neighborhood " + only, only);
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

void print_run(const CityRun& run) {
  if (run.summary) std::cout << format_city_table(*run.summary);
  for (const NeighborhoodRun& n : run.neighborhoods) {
    if (n.error) std::cout << n.neighborhood_id << ": " << *n.error << "\n";
  }
}

struct SolveArgs {
  std::string file;
  std::string mode = "fair";
  std::optional<double> delta;
  double gap = 1e-6;
  double time_limit = 60.0;
  std::optional<int> k;
  std::uint64_t seed = 1;
  int threads = 1;
  double u0_multiplier = 1.0;
  std::string out;
};

int cmd_solve(const SolveArgs& args) {
  const Instance inst = parse_instance(read_text(args.file));
  ScenarioConfig cfg;
  cfg.instance_id = instance_id_for(inst);
  cfg.mode = parse_allocation_mode(args.mode);
  cfg.delta = args.delta;
  cfg.gap_tol = args.gap;
  cfg.time_limit_s = args.time_limit;
  cfg.cluster_k_all = args.k;
  cfg.seed = args.seed;
  cfg.threads = args.threads;
  cfg.u0_multiplier = args.u0_multiplier;
  CityRun run = run_two_stage(inst, cfg);
  run.run_id = "cli";
  run.created_at = run.started_at;
  if (!args.out.empty()) write_text(args.out, serialize_run(run));
  print_run(run);
  if (run.status == RunStatus::kDone) return kExitOk;
  for (const NeighborhoodRun& n : run.neighborhoods) {
    if (n.error && n.error->rfind(error_code_name(ErrorCode::kInfeasible), 0) == 0) {
      return kExitInfeasible;
    }
  }
  return kExitSolver;
}

int cmd_metrics(const std::string& file) {
  const CityRun run = parse_run(read_text(file));
  std::cout << "run " << run.run_id << " (" << run_status_name(run.status) << ", "
            << allocation_mode_name(run.config.mode) << ")\n";
  print_run(run);
  for (const NeighborhoodRun& n : run.neighborhoods) {
    if (!n.metrics) continue;
    std::cout << n.neighborhood_id << ": mean distance " << n.metrics->mean_distance
              << " km, min-max " << n.metrics->minmax_distance << " km";
    if (n.fine_objective) std::cout << ", unclustered share " << 100.0 * *n.fine_objective << " %";
    std::cout << "\n";
  }
  return run.status == RunStatus::kDone ? kExitOk : kExitSolver;
}

Service* g_service = nullptr;

void on_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

int cmd_serve(const std::string& store, const std::string& bind, int workers) {
  ServiceOptions opts;
  opts.store = store;
  opts.workers = workers;
  parse_bind_address(bind, opts.host, opts.port);
  Service service(opts);
  const int port = service.bind();
  std::cout << "listening on " << opts.host << ":" << port << std::endl;
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  service.listen();
  g_service = nullptr;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage urban green-space planning"};
  app.require_subcommand(1);

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "Check an instance document");
  validate_cmd->add_option("file", file, "Instance JSON")->required();

  std::string cfg_file;
  std::string out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic instance");
  gen_cmd->add_option("config", cfg_file, "Generator config JSON")->required();
  gen_cmd->add_option("-o,--output", out, "Output file (default stdout)");

  std::string mode = "fair";
  std::optional<double> delta;
  bool oracle = false;
  auto* alloc_cmd = app.add_subcommand("allocate", "Stage one: split the city budget");
  alloc_cmd->add_option("file", file, "Instance JSON")->required();
  alloc_cmd->add_option("--mode", mode, "fair or baseline")->check(CLI::IsMember({"fair", "baseline"}));
  alloc_cmd->add_option("--delta", delta, "Override the deviation threshold")->check(CLI::Range(0.0, 1.0));
  alloc_cmd->add_flag("--lp", oracle, "Solve the fair allocation as a linear program");

  std::optional<int> k;
  std::uint64_t seed = 1;
  std::string only;
  auto* cluster_cmd = app.add_subcommand("cluster", "k-means demand aggregation");
  cluster_cmd->add_option("file", file, "Instance JSON")->required();
  cluster_cmd->add_option("--k", k, "Cluster count (default min(n, max(25, ceil(n/12))))");
  cluster_cmd->add_option("--seed", seed, "Seed");
  cluster_cmd->add_option("--neighborhood", only, "Restrict to one neighborhood");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run both stages");
  solve_cmd->add_option("file", solve.file, "Instance JSON")->required();
  solve_cmd->add_option("--mode", solve.mode, "fair or baseline")->check(CLI::IsMember({"fair", "baseline"}));
  solve_cmd->add_option("--delta", solve.delta, "Override the deviation threshold")->check(CLI::Range(0.0, 1.0));
  solve_cmd->add_option("--gap", solve.gap, "Relative gap tolerance");
  solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds per neighborhood");
  solve_cmd->add_option("--k", solve.k, "Cluster every neighborhood to k points (0: default count)");
  solve_cmd->add_option("--seed", solve.seed, "Clustering seed");
  solve_cmd->add_option("--threads", solve.threads, "Neighborhoods solved in parallel");
  solve_cmd->add_option("--u0-multiplier", solve.u0_multiplier, "Scale every no-choice utility");
  solve_cmd->add_option("-o,--output", solve.out, "Write the run document here");

  std::string run_file;
  auto* metrics_cmd = app.add_subcommand("metrics", "Summarize a run document");
  metrics_cmd->add_option("run", run_file, "Run JSON")->required();

  std::string store;
  std::string bind = "127.0.0.1:8080";
  int workers = 2;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP scenario service");
  serve_cmd->add_option("--store", store, "Store directory")->required();
  serve_cmd->add_option("--bind", bind, "host:port");
  serve_cmd->add_option("--workers", workers, "Concurrent runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*validate_cmd) return cmd_validate(file);
    if (*gen_cmd) return cmd_gen(cfg_file, out);
    if (*alloc_cmd) return cmd_allocate(file, mode, delta, oracle);
    if (*cluster_cmd) return cmd_cluster(file, k, seed, only);
    if (*solve_cmd) return cmd_solve(solve);
    if (*metrics_cmd) return cmd_metrics(run_file);
    if (*serve_cmd) return cmd_serve(store, bind, workers);
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "] " << e.path() << ": " << e.what()
              << "\n";
    return exit_code_for(e.code());
  }
  return kExitInvalid;
}
