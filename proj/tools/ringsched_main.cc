// ringsched: fit speed and convergence models, plan allocations, and replay
// cluster simulations from the command line.
//
// Exit status: 0 on success, 1 when the operation fails, 2 on usage errors.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringsched/ringsched.hpp"

namespace {

using namespace ringsched;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_file(path, text);
  }
}

struct FitArgs {
  std::string kind;
  std::string input;
  std::string out;
  std::optional<double> m;
  std::optional<double> n;
};

int run_fit(const FitArgs& args) {
  const std::string text = read_file(args.input);
  ModelFile file;
  if (args.kind == "loss") {
    const auto points = parse_loss_samples(text);
    const LossFit fit = fit_loss_curve_detailed(points);
    file.model = fit.model;
    file.sse = fit.sse;
    file.samples = points.size();
  } else {
    if (!args.m || !args.n) throw UsageError("fit --kind speed needs --m and --n");
    const auto samples = parse_speed_samples(text);
    const ResourceFit fit = fit_resource_model_detailed(samples, *args.m, *args.n);
    file.model = fit.model;
    file.sse = fit.sse;
    file.samples = samples.size();
  }
  emit(args.out, render_model_file(file));
  return 0;
}

struct AllocateArgs {
  std::string jobs;
  int capacity = 0;
  std::string algorithm = "doubling";
  bool power_of_two = false;
  bool place = false;
  int gpus_per_node = 8;
  std::string out;
};

int run_allocate(const AllocateArgs& args) {
  const auto jobs = parse_jobs_file(read_file(args.jobs), args.jobs);
  AllocationPlan plan;
  if (args.algorithm == "doubling") {
    plan = doubling_allocate(jobs, args.capacity);
  } else if (args.algorithm == "greedy") {
    plan = greedy_allocate(jobs, args.capacity);
  } else {
    plan = optimal_allocate_dp(jobs, args.capacity, args.power_of_two);
  }
  std::optional<Placement> placement;
  if (args.place) {
    if (args.capacity % args.gpus_per_node != 0) {
      throw UsageError("--place needs a capacity that is a multiple of --gpus-per-node");
    }
    placement = place_tasks(plan, ClusterConfig{args.gpus_per_node, args.capacity / args.gpus_per_node});
  }
  emit(args.out, render_plan_file(plan, args.algorithm, args.capacity, placement ? &*placement : nullptr));
  return 0;
}

struct SimulateArgs {
  std::string trace;
  std::string save_trace;
  std::string strategy = "precompute";
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  double mean_interarrival = 500.0;
  std::size_t jobs = 114;
  double interval = 60.0;
  double restart_cost = kResnetRestartSeconds;
  bool allow_shrink = false;
  bool table3 = false;
  bool serial = false;
  bool omit_jobs = false;
  std::string out;
};

SimConfig base_config(const SimulateArgs& args) {
  SimConfig config;
  config.scheduling_interval = args.interval;
  config.restart_cost = args.restart_cost;
  config.allow_shrink = args.allow_shrink;
  config.rng_seed = args.seed;
  config.mean_interarrival = args.mean_interarrival;
  config.total_jobs = args.jobs;
  return config;
}

std::string display_name(const std::string& strategy) {
  static const std::map<std::string, std::string> names{
      {"precompute", "Precompute"}, {"exploratory", "Exploratory"}, {"fixed8", "Eight"},
      {"fixed4", "Four"},           {"fixed2", "Two"},              {"fixed1", "One"}};
  const auto it = names.find(strategy);
  return it == names.end() ? strategy : it->second;
}

int run_table3(const SimulateArgs& args) {
  if (args.seeds < 1) throw UsageError("--seeds must be >= 1");
  const SimConfig base = base_config(args);
  const auto levels = contention_levels();
  std::vector<RunResult> runs;
  for (std::size_t i = 0; i < args.seeds; ++i) {
    const std::uint64_t seed = args.seed + i;
    std::cerr << "table3: seed " << seed << " (" << levels.size() * all_strategies().size() << " runs)\n";
    auto batch = run_contention_sweep(base, seed, levels, all_strategies(), !args.serial);
    runs.insert(runs.end(), batch.begin(), batch.end());
  }
  Json provenance{{"source", "generated"},
                  {"seeds", Json::array()},
                  {"levels", Json::array()}};
  for (std::size_t i = 0; i < args.seeds; ++i) provenance["seeds"].push_back(args.seed + i);
  for (const auto& level : levels) {
    provenance["levels"].push_back(Json{{"name", level.name},
                                        {"mean_interarrival", level.mean_interarrival},
                                        {"total_jobs", level.total_jobs},
                                        {"spec", contention_workload_spec(level.mean_interarrival,
                                                                          level.total_jobs, args.seed)}});
  }
  emit(args.out, render_report(base, provenance, runs, !args.omit_jobs));

  std::vector<ReportRow> rows;
  for (const auto& r : runs) {
    rows.push_back({display_name(r.report.strategy), r.contention, r.seed, r.report.mean_completion_hours});
  }
  if (!args.out.empty() && args.out != "-") std::cout << format_comparison(build_comparison(rows));
  return 0;
}

int run_simulate(const SimulateArgs& args) {
  if (args.table3) return run_table3(args);
  const auto strategy = Strategy::parse(args.strategy);
  SimConfig config = base_config(args);
  config.strategy = *strategy;

  Workload workload;
  Json provenance;
  if (!args.trace.empty()) {
    workload = load_trace(args.trace);
    provenance = Json{{"source", "trace"}, {"path", args.trace}, {"seed", workload.seed},
                      {"jobs", workload.jobs.size()}};
    config.total_jobs = workload.jobs.size();
    if (workload.spec) config.mean_interarrival = workload.spec->mean_interarrival;
  } else {
    const WorkloadSpec spec = contention_workload_spec(args.mean_interarrival, args.jobs, args.seed);
    workload = generate_workload(spec);
    provenance = Json{{"source", "generated"}, {"spec", spec}};
  }
  if (!args.save_trace.empty()) save_trace(args.save_trace, workload);

  std::cerr << "simulate: " << config.strategy.name() << ", " << workload.jobs.size() << " jobs\n";
  RunResult run;
  run.seed = args.seed;
  run.mean_interarrival = config.mean_interarrival;
  run.report = run_simulation(config, workload);
  std::cerr << "simulate: mean completion " << run.report.mean_completion_hours << " h\n";
  emit(args.out, render_report(config, provenance, {run}, !args.omit_jobs));
  return 0;
}

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string csv;
};

int run_report(const ReportArgs& args) {
  std::vector<ReportRow> rows;
  for (const auto& path : args.inputs) {
    auto part = load_report(path);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::cout << format_comparison(build_comparison(rows));
  if (!args.csv.empty()) write_file(args.csv, comparison_csv(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model-driven GPU allocation for elastic deep-learning jobs"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a loss-curve or speed model from samples");
  fit_cmd->add_option("--kind", fit.kind, "Sample kind")->required()->check(CLI::IsMember({"loss", "speed"}));
  fit_cmd->add_option("input", fit.input, "Sample file: 'step loss' or 'workers speed' per line")
      ->required()
      ->check(CLI::ExistingFile);
  fit_cmd->add_option("-o,--out", fit.out, "Model file to write (default: stdout)");
  fit_cmd->add_option("--m", fit.m, "Global batch size for the speed model")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--n", fit.n, "Gradient size in bytes for the speed model")->check(CLI::PositiveNumber);

  AllocateArgs alloc;
  auto* alloc_cmd = app.add_subcommand("allocate", "Plan worker counts for a set of jobs");
  alloc_cmd->add_option("jobs", alloc.jobs, "Jobs file")->required()->check(CLI::ExistingFile);
  alloc_cmd->add_option("-c,--capacity", alloc.capacity, "Total GPUs")->required()->check(CLI::Range(1, 1 << 20));
  alloc_cmd->add_option("-a,--algorithm", alloc.algorithm, "Allocation algorithm")
      ->check(CLI::IsMember({"doubling", "greedy", "optimal"}));
  alloc_cmd->add_flag("--power-of-two", alloc.power_of_two, "Restrict the optimal solver to powers of two");
  alloc_cmd->add_flag("--place", alloc.place, "Also place the plan onto nodes");
  alloc_cmd->add_option("--gpus-per-node", alloc.gpus_per_node, "GPUs per node for placement")
      ->check(CLI::Range(1, 1 << 10));
  alloc_cmd->add_option("-o,--out", alloc.out, "Plan file to write (default: stdout)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate a cluster workload");
  auto* trace_opt = sim_cmd->add_option("--trace", sim.trace, "Workload trace to replay")->check(CLI::ExistingFile);
  sim_cmd->add_option("--save-trace", sim.save_trace, "Write the simulated workload as a trace");
  sim_cmd->add_option("-s,--strategy", sim.strategy, "Scheduling strategy")
      ->check(CLI::Validator(
          [](std::string& name) -> std::string {
            return Strategy::parse(name) ? std::string{}
                                         : "unknown strategy '" + name + "'; valid: " + std::string(kStrategyNames);
          },
          "STRATEGY"));
  sim_cmd->add_option("--seed", sim.seed, "Workload seed");
  sim_cmd->add_option("--seeds", sim.seeds, "Number of consecutive seeds for --table3");
  sim_cmd->add_option("--mean-interarrival", sim.mean_interarrival, "Mean seconds between arrivals")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--jobs", sim.jobs, "Number of generated jobs")->check(CLI::Range(1, 1 << 24));
  sim_cmd->add_option("--interval", sim.interval, "Scheduling interval in seconds")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--restart-cost", sim.restart_cost, "Seconds paused per resize")
      ->check(CLI::NonNegativeNumber);
  sim_cmd->add_flag("--allow-shrink", sim.allow_shrink, "Let adaptive strategies shrink running jobs");
  auto* table3_opt = sim_cmd->add_flag("--table3", sim.table3, "Run every strategy at every contention level");
  sim_cmd->add_flag("--serial", sim.serial, "Run --table3 simulations one at a time");
  sim_cmd->add_flag("--omit-jobs", sim.omit_jobs, "Leave per-job records out of the report");
  sim_cmd->add_option("-o,--out", sim.out, "Report file to write")->required();
  table3_opt->excludes(trace_opt);

  ReportArgs rep;
  auto* rep_cmd = app.add_subcommand("report", "Compare mean completion times across reports");
  rep_cmd->add_option("reports", rep.inputs, "Report files")->required()->check(CLI::ExistingFile);
  rep_cmd->add_option("--csv", rep.csv, "Also write the rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*fit_cmd) return run_fit(fit);
    if (*alloc_cmd) return run_allocate(alloc);
    if (*sim_cmd) return run_simulate(sim);
    if (*rep_cmd) return run_report(rep);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InsufficientDataError& e) {
    std::cerr << "error: " << e.what()
              << "\nhint: loss fits need at least three distinct steps; speed fits need at least two distinct "
                 "worker counts\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
