#pragma once

// Run reports: the machine-readable result of one or more simulations, plus
// the contention-sweep driver and the comparison table built from reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ringsched/error.hpp"
#include "ringsched/serialization.hpp"
#include "ringsched/simulator.hpp"
#include "ringsched/workload.hpp"

namespace ringsched {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "ringsched-report";
inline constexpr int kReportSchemaVersion = 1;

struct ContentionLevel {
  std::string name;
  double mean_interarrival;
  std::size_t total_jobs;
};

// Arrival settings of the contention experiments on a 64-GPU cluster.
inline std::vector<ContentionLevel> contention_levels() {
  return {{"extreme", 250.0, 206}, {"moderate", 500.0, 114}, {"none", 1000.0, 44}};
}

struct RunResult {
  std::string contention;  // empty for single runs
  std::uint64_t seed = 0;
  double mean_interarrival = 0.0;
  SimReport report;
};

inline Json to_json_value(const JobRecord& r) {
  return Json{{"id", r.id},
              {"arrival", r.arrival},
              {"start", r.start},
              {"completion", r.completion},
              {"restarts", r.restarts},
              {"paused_seconds", r.paused_seconds},
              {"gpu_seconds", r.gpu_seconds},
              {"epochs", r.epochs},
              {"final_workers", r.final_workers},
              {"learning_rate", r.learning_rate}};
}

inline Json config_to_json(const SimConfig& c) {
  Json forced = Json::array();
  for (const auto& f : c.forced_resizes) {
    forced.push_back(Json{{"job", f.job}, {"at_epoch", f.at_epoch}, {"workers", f.workers}});
  }
  return Json{{"cluster", c.cluster},
              {"scheduling_interval", c.scheduling_interval},
              {"restart_cost", c.restart_cost},
              {"strategy", c.strategy.name()},
              {"rng_seed", c.rng_seed},
              {"mean_interarrival", c.mean_interarrival},
              {"total_jobs", c.total_jobs},
              {"max_workers", c.max_workers},
              {"allow_shrink", c.allow_shrink},
              {"explore_window", c.explore_window},
              {"explore_workers", c.explore_workers},
              {"convergence_margin", c.convergence_margin},
              {"forced_resizes", forced}};
}

inline Json run_to_json(const RunResult& run, bool include_jobs) {
  const SimReport& r = run.report;
  Json j{{"strategy", r.strategy},
         {"contention", run.contention},
         {"seed", run.seed},
         {"mean_interarrival", run.mean_interarrival},
         {"total_jobs", r.total_jobs},
         {"mean_completion_hours", r.mean_completion_hours},
         {"peak_simultaneous_jobs", r.peak_simultaneous_jobs},
         {"peak_allocated_gpus", r.peak_allocated_gpus},
         {"capacity", r.capacity},
         {"capacity_violations", r.capacity_violations},
         {"makespan", r.makespan},
         {"events_processed", r.events_processed}};
  if (include_jobs) {
    Json jobs = Json::array();
    for (const auto& rec : r.jobs) jobs.push_back(to_json_value(rec));
    j["jobs"] = std::move(jobs);
  }
  return j;
}

inline std::string render_report(const SimConfig& config, const Json& workload_provenance,
                                 const std::vector<RunResult>& runs, bool include_jobs = true) {
  Json runs_json = Json::array();
  for (const auto& run : runs) runs_json.push_back(run_to_json(run, include_jobs));
  Json doc{{"schema", kReportSchema},
           {"schema_version", kReportSchemaVersion},
           {"tool_version", kToolVersion},
           {"config", config_to_json(config)},
           {"workload", workload_provenance},
           {"runs", runs_json}};
  return doc.dump(2) + "\n";
}

// Runs every strategy at every contention level on freshly generated
// workloads. Each run is independent; results come back in (level, strategy)
// order regardless of `parallel`.
inline std::vector<RunResult> run_contention_sweep(const SimConfig& base, std::uint64_t seed,
                                                   const std::vector<ContentionLevel>& levels,
                                                   const std::vector<Strategy>& strategies,
                                                   bool parallel) {
  struct Task {
    ContentionLevel level;
    Strategy strategy;
  };
  std::vector<Task> tasks;
  for (const auto& level : levels) {
    for (const auto& strategy : strategies) tasks.push_back({level, strategy});
  }
  std::map<std::string, Workload> workloads;
  for (const auto& level : levels) {
    workloads[level.name] = generate_workload(contention_workload_spec(level.mean_interarrival, level.total_jobs, seed));
  }
  auto run_one = [&](const Task& task) {
    SimConfig config = base;
    config.strategy = task.strategy;
    config.rng_seed = seed;
    config.mean_interarrival = task.level.mean_interarrival;
    config.total_jobs = task.level.total_jobs;
    RunResult result;
    result.contention = task.level.name;
    result.seed = seed;
    result.mean_interarrival = task.level.mean_interarrival;
    result.report = run_simulation(config, workloads.at(task.level.name));
    return result;
  };

  std::vector<RunResult> out;
  out.reserve(tasks.size());
  if (!parallel) {
    for (const auto& task : tasks) out.push_back(run_one(task));
    return out;
  }
  std::vector<std::future<RunResult>> futures;
  futures.reserve(tasks.size());
  for (const auto& task : tasks) futures.push_back(std::async(std::launch::async, run_one, task));
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

// One row of a parsed report, enough to build comparison tables.
struct ReportRow {
  std::string strategy;
  std::string contention;
  std::uint64_t seed = 0;
  double mean_completion_hours = 0.0;
};

inline std::vector<ReportRow> parse_report(const std::string& text, const std::string& origin = "report") {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(origin + ": " + e.what(), 0);
  }
  try {
    if (doc.at("schema").get<std::string>() != kReportSchema) throw ParseError(origin + ": not a report", 0);
    const int version = doc.at("schema_version").get<int>();
    if (version != kReportSchemaVersion) {
      throw VersionMismatchError(origin + ": report schema version " + std::to_string(version) +
                                 " (expected " + std::to_string(kReportSchemaVersion) + ")");
    }
    std::vector<ReportRow> rows;
    for (const auto& run : doc.at("runs")) {
      rows.push_back({run.at("strategy").get<std::string>(), run.at("contention").get<std::string>(),
                      run.at("seed").get<std::uint64_t>(), run.at("mean_completion_hours").get<double>()});
    }
    return rows;
  } catch (const Json::exception& e) {
    throw ParseError(origin + ": " + e.what(), 0);
  }
}

inline std::vector<ReportRow> load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_report(buf.str(), path.string());
}

struct ComparisonTable {
  std::vector<std::string> strategies;   // row order
  std::vector<std::string> contentions;  // column order
  // (strategy, contention) -> mean over seeds of mean completion hours
  std::map<std::pair<std::string, std::string>, double> cells;
  std::map<std::pair<std::string, std::string>, int> counts;
};

inline ComparisonTable build_comparison(const std::vector<ReportRow>& rows) {
  ComparisonTable t;
  std::map<std::pair<std::string, std::string>, double> sums;
  for (const auto& r : rows) {
    if (std::find(t.strategies.begin(), t.strategies.end(), r.strategy) == t.strategies.end()) {
      t.strategies.push_back(r.strategy);
    }
    if (std::find(t.contentions.begin(), t.contentions.end(), r.contention) == t.contentions.end()) {
      t.contentions.push_back(r.contention);
    }
    sums[{r.strategy, r.contention}] += r.mean_completion_hours;
    ++t.counts[{r.strategy, r.contention}];
  }
  for (const auto& [key, sum] : sums) t.cells[key] = sum / t.counts[key];
  return t;
}

inline std::string format_comparison(const ComparisonTable& t) {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-14s", "strategy");
  out << buf;
  for (const auto& c : t.contentions) {
    std::snprintf(buf, sizeof buf, " %12s", c.empty() ? "-" : c.c_str());
    out << buf;
  }
  out << "\n";
  for (const auto& s : t.strategies) {
    std::snprintf(buf, sizeof buf, "%-14s", s.c_str());
    out << buf;
    for (const auto& c : t.contentions) {
      const auto it = t.cells.find({s, c});
      if (it == t.cells.end()) {
        std::snprintf(buf, sizeof buf, " %12s", "n/a");
      } else {
        std::snprintf(buf, sizeof buf, " %12.2f", it->second);
      }
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

inline std::string comparison_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "strategy,contention,seed,mean_completion_hours\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.9g", r.mean_completion_hours);
    out << r.strategy << ',' << r.contention << ',' << r.seed << ',' << buf << '\n';
  }
  return out.str();
}

}  // namespace ringsched
