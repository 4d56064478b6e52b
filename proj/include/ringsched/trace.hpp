#pragma once

// Workload trace files: one JSON object per line. The first line is a header
// carrying the format version, seed, job count and (optionally) the generating
// spec; each following line is one job.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ringsched/error.hpp"
#include "ringsched/serialization.hpp"
#include "ringsched/workload.hpp"

namespace ringsched {

inline constexpr const char* kTraceFormat = "ringsched-trace";
inline constexpr int kTraceVersion = 1;

inline std::string serialize_trace(const Workload& workload) {
  Json header{{"format", kTraceFormat},
              {"version", kTraceVersion},
              {"seed", workload.seed},
              {"jobs", workload.jobs.size()}};
  header["spec"] = workload.spec ? Json(*workload.spec) : Json(nullptr);
  std::string out = header.dump();
  out.push_back('\n');
  for (const auto& job : workload.jobs) {
    out += Json(job).dump();
    out.push_back('\n');
  }
  return out;
}

inline Workload parse_trace(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto parse_line = [&](const std::string& text) {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("malformed record: ") + e.what(), line_no);
    }
  };

  if (!std::getline(in, line)) throw ParseError("empty trace file (missing header)", 1);
  ++line_no;
  const Json header = parse_line(line);
  Workload workload;
  std::size_t expected = 0;
  try {
    if (header.at("format").get<std::string>() != kTraceFormat) {
      throw ParseError("not a trace file", line_no);
    }
    const int version = header.at("version").get<int>();
    if (version != kTraceVersion) {
      throw VersionMismatchError("trace version " + std::to_string(version) +
                                 " is not supported (expected " + std::to_string(kTraceVersion) + ")");
    }
    workload.seed = header.at("seed").get<std::uint64_t>();
    expected = header.at("jobs").get<std::size_t>();
    if (!header.at("spec").is_null()) workload.spec = header.at("spec").get<WorkloadSpec>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad header: ") + e.what(), line_no);
  }

  double last_arrival = 0.0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const Json record = parse_line(line);
    SimJob job;
    try {
      job = record.get<SimJob>();
    } catch (const Json::exception& e) {
      throw ParseError(std::string("bad job record: ") + e.what(), line_no);
    }
    if (job.arrival_time < last_arrival) throw ParseError("arrival times must be nondecreasing", line_no);
    last_arrival = job.arrival_time;
    workload.jobs.push_back(job);
  }
  if (workload.jobs.size() != expected) {
    throw ParseError("truncated trace: header declares " + std::to_string(expected) +
                         " jobs but file holds " + std::to_string(workload.jobs.size()),
                     line_no + 1);
  }
  return workload;
}

inline Workload parse_trace(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

inline void save_trace(const std::filesystem::path& path, const Workload& workload) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << serialize_trace(workload);
  if (!out) throw Error("write failed: " + path.string());
}

inline Workload load_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_trace(in);
}

}  // namespace ringsched
