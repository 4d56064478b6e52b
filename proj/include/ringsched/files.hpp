#pragma once

// Small versioned file formats used by the command-line tool: sample text
// files, fitted-model files, job lists for the allocator and plan files.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ringsched/allocator.hpp"
#include "ringsched/error.hpp"
#include "ringsched/fitting.hpp"
#include "ringsched/placement.hpp"
#include "ringsched/serialization.hpp"

namespace ringsched {

inline constexpr const char* kModelFormat = "ringsched-model";
inline constexpr const char* kJobsFormat = "ringsched-jobs";
inline constexpr const char* kPlanFormat = "ringsched-plan";
inline constexpr int kFileFormatVersion = 1;

enum class SampleKind { kLoss, kSpeed };

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

// Two whitespace-separated numbers per line. '#' starts a comment; blank lines
// are skipped.
inline std::vector<std::pair<double, double>> parse_sample_pairs(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double a = 0.0;
    double b = 0.0;
    if (!(fields >> a)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("expected two numbers", line_no);
    }
    if (!(fields >> b)) throw ParseError("expected two numbers", line_no);
    std::string extra;
    if (fields >> extra) throw ParseError("unexpected trailing field '" + extra + "'", line_no);
    if (!std::isfinite(a) || !std::isfinite(b)) throw ParseError("non-finite value", line_no);
    out.emplace_back(a, b);
  }
  return out;
}

inline std::vector<LossPoint> parse_loss_samples(const std::string& text) {
  std::vector<LossPoint> out;
  std::size_t index = 0;
  for (const auto& [k, l] : parse_sample_pairs(text)) {
    ++index;
    if (k < 0.0 || k != std::floor(k)) {
      throw ParseError("sample " + std::to_string(index) + ": step must be a non-negative integer", 0);
    }
    out.push_back({static_cast<std::int64_t>(k), l});
  }
  return out;
}

inline std::vector<SpeedSample> parse_speed_samples(const std::string& text) {
  std::vector<SpeedSample> out;
  std::size_t index = 0;
  for (const auto& [w, s] : parse_sample_pairs(text)) {
    ++index;
    if (w < 1.0 || w != std::floor(w)) {
      throw ParseError("sample " + std::to_string(index) + ": worker count must be an integer >= 1", 0);
    }
    out.push_back({static_cast<int>(w), s});
  }
  return out;
}

// A fitted model plus the diagnostics of the fit that produced it.
struct ModelFile {
  std::variant<LossCurveModel, ResourceModel> model;
  double sse = 0.0;
  std::size_t samples = 0;
};

inline std::string render_model_file(const ModelFile& f) {
  Json doc{{"format", kModelFormat}, {"version", kFileFormatVersion}};
  if (const auto* loss = std::get_if<LossCurveModel>(&f.model)) {
    doc["kind"] = "loss";
    doc["model"] = *loss;
  } else {
    doc["kind"] = "speed";
    doc["model"] = std::get<ResourceModel>(f.model);
  }
  doc["sse"] = f.sse;
  doc["samples"] = f.samples;
  return doc.dump(2) + "\n";
}

namespace files_detail {

inline Json parse_document(const std::string& text, const char* format, const std::string& origin) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(origin + ": " + e.what(), 0);
  }
  if (!doc.is_object() || !doc.contains("format") || doc["format"] != format) {
    throw ParseError(origin + ": expected a " + std::string(format) + " document", 0);
  }
  if (!doc.contains("version") || !doc["version"].is_number_integer()) {
    throw ParseError(origin + ": missing version", 0);
  }
  const int version = doc["version"].get<int>();
  if (version != kFileFormatVersion) {
    throw VersionMismatchError(origin + ": " + format + " version " + std::to_string(version) +
                               " (expected " + std::to_string(kFileFormatVersion) + ")");
  }
  return doc;
}

}  // namespace files_detail

inline ModelFile parse_model_file(const std::string& text, const std::string& origin = "model") {
  const Json doc = files_detail::parse_document(text, kModelFormat, origin);
  try {
    ModelFile f;
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "loss") {
      f.model = doc.at("model").get<LossCurveModel>();
    } else if (kind == "speed") {
      f.model = doc.at("model").get<ResourceModel>();
    } else {
      throw ParseError(origin + ": unknown model kind '" + kind + "'", 0);
    }
    f.sse = doc.at("sse").get<double>();
    f.samples = doc.at("samples").get<std::size_t>();
    return f;
  } catch (const Json::exception& e) {
    throw ParseError(origin + ": " + e.what(), 0);
  }
}

// Jobs file: {"format": "ringsched-jobs", "version": 1, "jobs": [...]}; each
// job carries its remaining epochs and a fitted speed model.
inline std::string render_jobs_file(const std::vector<JobState<ResourceModel>>& jobs) {
  Json list = Json::array();
  for (const auto& j : jobs) {
    list.push_back(Json{{"id", j.job_id},
                        {"remaining_epochs", j.remaining_epochs},
                        {"model", j.model},
                        {"current_workers", j.current_workers},
                        {"arrival_time", j.arrival_time},
                        {"max_workers", j.max_workers}});
  }
  return Json{{"format", kJobsFormat}, {"version", kFileFormatVersion}, {"jobs", list}}.dump(2) + "\n";
}

inline std::vector<JobState<ResourceModel>> parse_jobs_file(const std::string& text,
                                                            const std::string& origin = "jobs") {
  const Json doc = files_detail::parse_document(text, kJobsFormat, origin);
  std::vector<JobState<ResourceModel>> out;
  std::size_t index = 0;
  try {
    for (const auto& j : doc.at("jobs")) {
      JobState<ResourceModel> s;
      s.job_id = j.at("id").get<JobId>();
      s.remaining_epochs = j.at("remaining_epochs").get<double>();
      s.model = j.at("model").get<ResourceModel>();
      s.current_workers = j.value("current_workers", 0);
      s.arrival_time = j.value("arrival_time", 0.0);
      s.max_workers = j.value("max_workers", 0);
      out.push_back(s);
      ++index;
    }
  } catch (const Json::exception& e) {
    throw ParseError(origin + ": job " + std::to_string(index) + ": " + e.what(), 0);
  }
  return out;
}

inline std::string render_plan_file(const AllocationPlan& plan, const std::string& algorithm, int capacity,
                                    const Placement* placement) {
  Json doc{{"format", kPlanFormat},
           {"version", kFileFormatVersion},
           {"algorithm", algorithm},
           {"capacity", capacity}};
  doc["plan"] = plan_to_json(plan);
  if (placement != nullptr) doc["placement"] = placement_to_json(*placement);
  return doc.dump(2) + "\n";
}

}  // namespace ringsched
