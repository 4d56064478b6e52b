#pragma once

// JSON mappings for the value types that appear in files. Key order is fixed
// (ordered_json) so identical values always serialize to identical bytes.

#include <json.hpp>

#include "ringsched/allocator.hpp"
#include "ringsched/costmodel.hpp"
#include "ringsched/fitting.hpp"
#include "ringsched/placement.hpp"
#include "ringsched/workload.hpp"

namespace ringsched {

using Json = nlohmann::ordered_json;

inline void to_json(Json& j, const CommParams& c) {
  j = Json{{"alpha", c.alpha}, {"beta", c.beta}, {"gamma", c.gamma}};
}
inline void from_json(const Json& j, CommParams& c) {
  j.at("alpha").get_to(c.alpha);
  j.at("beta").get_to(c.beta);
  j.at("gamma").get_to(c.gamma);
}

inline void to_json(Json& j, const JobProfile& p) {
  j = Json{{"m", p.m},
           {"n", p.n},
           {"t_forward", p.t_forward},
           {"t_back", p.t_back},
           {"steps_per_epoch", p.steps_per_epoch},
           {"comm", p.comm},
           {"restart_cost", p.restart_cost},
           {"base_lr", p.base_lr},
           {"step_overhead", p.step_overhead},
           {"epoch_overhead", p.epoch_overhead}};
}
inline void from_json(const Json& j, JobProfile& p) {
  j.at("m").get_to(p.m);
  j.at("n").get_to(p.n);
  j.at("t_forward").get_to(p.t_forward);
  j.at("t_back").get_to(p.t_back);
  j.at("steps_per_epoch").get_to(p.steps_per_epoch);
  j.at("comm").get_to(p.comm);
  j.at("restart_cost").get_to(p.restart_cost);
  j.at("base_lr").get_to(p.base_lr);
  j.at("step_overhead").get_to(p.step_overhead);
  j.at("epoch_overhead").get_to(p.epoch_overhead);
}

inline void to_json(Json& j, const ResourceModel& r) {
  j = Json{{"theta", {r.theta0, r.theta1, r.theta2, r.theta3}}, {"m", r.m}, {"n", r.n}};
}
inline void from_json(const Json& j, ResourceModel& r) {
  const auto& t = j.at("theta");
  if (!t.is_array() || t.size() != 4) throw Json::type_error::create(302, "theta must have 4 entries", &j);
  t.at(0).get_to(r.theta0);
  t.at(1).get_to(r.theta1);
  t.at(2).get_to(r.theta2);
  t.at(3).get_to(r.theta3);
  j.at("m").get_to(r.m);
  j.at("n").get_to(r.n);
}

inline void to_json(Json& j, const LossCurveModel& l) {
  j = Json{{"beta", {l.beta0, l.beta1, l.beta2}}};
}
inline void from_json(const Json& j, LossCurveModel& l) {
  const auto& b = j.at("beta");
  if (!b.is_array() || b.size() != 3) throw Json::type_error::create(302, "beta must have 3 entries", &j);
  b.at(0).get_to(l.beta0);
  b.at(1).get_to(l.beta1);
  b.at(2).get_to(l.beta2);
}

inline void to_json(Json& j, const Range& r) { j = Json::array({r.lo, r.hi}); }
inline void from_json(const Json& j, Range& r) {
  if (!j.is_array() || j.size() != 2) throw Json::type_error::create(302, "range must be [lo, hi]", &j);
  j.at(0).get_to(r.lo);
  j.at(1).get_to(r.hi);
}

inline void to_json(Json& j, const ProfileDistribution& d) {
  j = Json{{"t_forward", d.t_forward}, {"t_back", d.t_back},   {"n", d.n},
           {"m", d.m},                 {"epochs", d.epochs},   {"loss_offset", d.loss_offset},
           {"loss_asymptote", d.loss_asymptote}};
}
inline void from_json(const Json& j, ProfileDistribution& d) {
  j.at("t_forward").get_to(d.t_forward);
  j.at("t_back").get_to(d.t_back);
  j.at("n").get_to(d.n);
  j.at("m").get_to(d.m);
  j.at("epochs").get_to(d.epochs);
  j.at("loss_offset").get_to(d.loss_offset);
  j.at("loss_asymptote").get_to(d.loss_asymptote);
}

inline void to_json(Json& j, const WorkloadSpec& s) {
  j = Json{{"total_jobs", s.total_jobs},
           {"mean_interarrival", s.mean_interarrival},
           {"distribution", s.distribution},
           {"base", s.base},
           {"epoch_images", s.epoch_images},
           {"convergence_margin", s.convergence_margin},
           {"rng_seed", s.rng_seed}};
}
inline void from_json(const Json& j, WorkloadSpec& s) {
  j.at("total_jobs").get_to(s.total_jobs);
  j.at("mean_interarrival").get_to(s.mean_interarrival);
  j.at("distribution").get_to(s.distribution);
  j.at("base").get_to(s.base);
  j.at("epoch_images").get_to(s.epoch_images);
  j.at("convergence_margin").get_to(s.convergence_margin);
  j.at("rng_seed").get_to(s.rng_seed);
}

inline void to_json(Json& j, const SimJob& job) {
  j = Json{{"id", job.id},
           {"arrival", job.arrival_time},
           {"epochs", job.true_epochs},
           {"profile", job.profile},
           {"loss", job.loss}};
}
inline void from_json(const Json& j, SimJob& job) {
  j.at("id").get_to(job.id);
  j.at("arrival").get_to(job.arrival_time);
  j.at("epochs").get_to(job.true_epochs);
  j.at("profile").get_to(job.profile);
  j.at("loss").get_to(job.loss);
}

inline void to_json(Json& j, const ClusterConfig& c) {
  j = Json{{"gpus_per_node", c.gpus_per_node}, {"node_count", c.node_count}};
}
inline void from_json(const Json& j, ClusterConfig& c) {
  j.at("gpus_per_node").get_to(c.gpus_per_node);
  j.at("node_count").get_to(c.node_count);
}

inline Json plan_to_json(const AllocationPlan& plan) {
  Json jobs = Json::array();
  for (const auto& [id, a] : plan.jobs) {
    jobs.push_back(Json{{"id", id}, {"workers", a.workers}, {"predicted_time", a.predicted_time}});
  }
  return Json{{"objective", plan.objective}, {"total_workers", plan.total_workers()}, {"jobs", jobs}};
}

inline Json placement_to_json(const Placement& placement) {
  Json jobs = Json::array();
  for (const auto& [id, slices] : placement.jobs) {
    Json nodes = Json::array();
    for (const auto& s : slices) nodes.push_back(Json{{"node", s.node}, {"gpus", s.gpus}});
    jobs.push_back(Json{{"id", id}, {"nodes", nodes}});
  }
  return jobs;
}

}  // namespace ringsched
