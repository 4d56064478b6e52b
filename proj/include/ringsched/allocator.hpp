#pragma once

// GPU allocation across concurrent jobs. Each scheduling interval solves
//
//   minimize   sum_j Q_j / f_j(w_j)
//   subject to sum_j w_j <= C,  w_j >= 1 integer
//
// where Q_j is the job's remaining epochs and f_j its speed model. The doubling
// heuristic is the production path; the greedy +1 heuristic and the exact DP
// exist as a baseline and an oracle.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ringsched/costmodel.hpp"
#include "ringsched/error.hpp"

namespace ringsched {

using JobId = std::uint64_t;

template <SpeedModel Model = ResourceModel>
struct JobState {
  JobId job_id = 0;
  double remaining_epochs = 0.0;  // Q
  Model model{};
  int current_workers = 0;  // 0 while queued
  double arrival_time = 0.0;
  int max_workers = 0;  // 0: largest power of two <= capacity
};

struct Assignment {
  int workers = 0;
  double predicted_time = 0.0;  // seconds, Q / f(w)
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct AllocationPlan {
  std::map<JobId, Assignment> jobs;
  double objective = 0.0;  // sum of predicted times

  int total_workers() const {
    int total = 0;
    for (const auto& [id, a] : jobs) total += a.workers;
    return total;
  }
  int workers(JobId id) const {
    const auto it = jobs.find(id);
    return it == jobs.end() ? 0 : it->second.workers;
  }
};

inline int largest_power_of_two_at_most(int c) {
  return c < 1 ? 0 : static_cast<int>(std::bit_floor(static_cast<unsigned>(c)));
}

namespace alloc_detail {

template <SpeedModel Model>
double job_time(const JobState<Model>& job, int w) {
  if (job.remaining_epochs == 0.0) return 0.0;
  return job.remaining_epochs / job.model.speed(w);
}

template <SpeedModel Model>
int worker_cap(const JobState<Model>& job, int capacity) {
  return job.max_workers > 0 ? std::min(job.max_workers, capacity)
                             : largest_power_of_two_at_most(capacity);
}

template <SpeedModel Model>
void validate(std::span<const JobState<Model>> jobs, int capacity) {
  if (capacity < 0) throw DomainError("allocation: capacity must be nonnegative");
  std::set<JobId> seen;
  for (const auto& job : jobs) {
    if (!(job.remaining_epochs >= 0.0)) throw DomainError("allocation: remaining epochs must be >= 0");
    if (job.max_workers < 0) throw DomainError("allocation: max_workers must be >= 0");
    if (!seen.insert(job.job_id).second) {
      throw DomainError("allocation: duplicate job id " + std::to_string(job.job_id));
    }
  }
  if (jobs.size() > static_cast<std::size_t>(capacity)) {
    throw OverCapacityError("allocation: " + std::to_string(jobs.size()) + " jobs exceed capacity " +
                            std::to_string(capacity) + "; queue the excess");
  }
}

// Deterministic preference among equal gains: earlier arrival, then lower id.
template <SpeedModel Model>
bool precedes(const JobState<Model>& a, const JobState<Model>& b) {
  if (a.arrival_time != b.arrival_time) return a.arrival_time < b.arrival_time;
  return a.job_id < b.job_id;
}

template <SpeedModel Model>
AllocationPlan make_plan(std::span<const JobState<Model>> jobs, const std::vector<int>& w) {
  AllocationPlan plan;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const double t = job_time(jobs[i], w[i]);
    plan.jobs[jobs[i].job_id] = Assignment{w[i], t};
    plan.objective += t;
  }
  return plan;
}

// Shared loop for the two incremental heuristics. `next(w)` is the candidate
// worker count and `gain(job, w)` its score.
template <SpeedModel Model, class Next, class Gain>
AllocationPlan incremental_allocate(std::span<const JobState<Model>> jobs, int capacity, Next next,
                                    Gain gain, bool from_current = false) {
  validate(jobs, capacity);
  std::vector<int> w(jobs.size(), 1);
  if (from_current) {
    for (std::size_t i = 0; i < jobs.size(); ++i) w[i] = std::max(1, jobs[i].current_workers);
  }
  int free = capacity;
  for (int x : w) free -= x;
  if (free < 0) throw OverCapacityError("allocation: current workers exceed capacity");
  std::vector<int> cap(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) cap[i] = std::max(1, worker_cap(jobs[i], capacity));

  for (;;) {
    std::ptrdiff_t best = -1;
    double best_gain = 0.0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const int target = next(w[i]);
      if (target > cap[i] || target - w[i] > free) continue;
      const double g = gain(jobs[i], w[i], target);
      if (!(g > 0.0)) continue;
      if (best < 0 || g > best_gain ||
          (g == best_gain && precedes(jobs[i], jobs[static_cast<std::size_t>(best)]))) {
        best = static_cast<std::ptrdiff_t>(i);
        best_gain = g;
      }
    }
    if (best < 0) break;
    const auto b = static_cast<std::size_t>(best);
    const int target = next(w[b]);
    free -= target - w[b];
    w[b] = target;
  }
  return make_plan(jobs, w);
}

}  // namespace alloc_detail

// Doubling heuristic: start every job at one worker, then repeatedly double
// the job with the best per-added-GPU reduction in predicted time,
//   (Q/f(w) - Q/f(2w)) / w,
// as long as that job's cap and the free capacity allow a full doubling.
//
// With `grow_only`, running jobs start from their current worker count instead
// of one, so no job is ever shrunk.
template <SpeedModel Model>
AllocationPlan doubling_allocate(std::span<const JobState<Model>> jobs, int capacity,
                                 bool grow_only = false) {
  return alloc_detail::incremental_allocate(
      jobs, capacity, [](int w) { return 2 * w; },
      [](const JobState<Model>& job, int w, int target) {
        return (alloc_detail::job_time(job, w) - alloc_detail::job_time(job, target)) / w;
      },
      grow_only);
}

// Baseline: add one worker at a time to the job with the best absolute gain.
template <SpeedModel Model>
AllocationPlan greedy_allocate(std::span<const JobState<Model>> jobs, int capacity) {
  return alloc_detail::incremental_allocate(
      jobs, capacity, [](int w) { return w + 1; },
      [](const JobState<Model>& job, int w, int target) {
        return alloc_detail::job_time(job, w) - alloc_detail::job_time(job, target);
      });
}

inline constexpr std::size_t kDpMaxJobs = 16;
inline constexpr int kDpMaxCapacity = 64;

// Exact minimum by dynamic programming over (job suffix, capacity left).
// Among equal-cost plans the earliest jobs get the fewest workers.
template <SpeedModel Model>
AllocationPlan optimal_allocate_dp(std::span<const JobState<Model>> jobs, int capacity,
                                   bool power_of_two_only) {
  if (jobs.size() > kDpMaxJobs || capacity > kDpMaxCapacity) {
    throw InstanceTooLargeError("optimal_allocate_dp: limited to " + std::to_string(kDpMaxJobs) +
                                " jobs and capacity " + std::to_string(kDpMaxCapacity));
  }
  alloc_detail::validate(jobs, capacity);
  const std::size_t n = jobs.size();
  const auto c_max = static_cast<std::size_t>(capacity);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<std::vector<double>> cost(n);
  for (std::size_t i = 0; i < n; ++i) {
    cost[i].assign(c_max + 1, kInf);
    const int cap = std::max(1, alloc_detail::worker_cap(jobs[i], capacity));
    for (int w = 1; w <= cap; ++w) {
      if (power_of_two_only && !is_power_of_two(w)) continue;
      cost[i][static_cast<std::size_t>(w)] = alloc_detail::job_time(jobs[i], w);
    }
  }

  // best[i][c]: minimum total time for jobs i..n-1 using at most c workers.
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(c_max + 1, kInf));
  std::fill(best[n].begin(), best[n].end(), 0.0);
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t c = 0; c <= c_max; ++c) {
      for (std::size_t w = 1; w <= c; ++w) {
        if (cost[i][w] == kInf || best[i + 1][c - w] == kInf) continue;
        best[i][c] = std::min(best[i][c], cost[i][w] + best[i + 1][c - w]);
      }
    }
  }
  if (n > 0 && best[0][c_max] == kInf) {
    throw OverCapacityError("optimal_allocate_dp: no feasible plan");
  }

  std::vector<int> chosen(n, 0);
  std::size_t c = c_max;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = best[i][c];
    const double slack = 1e-12 * std::max(1.0, std::abs(target));
    for (std::size_t w = 1; w <= c; ++w) {
      if (cost[i][w] == kInf || best[i + 1][c - w] == kInf) continue;
      if (cost[i][w] + best[i + 1][c - w] <= target + slack) {
        chosen[i] = static_cast<int>(w);
        c -= w;
        break;
      }
    }
  }
  return alloc_detail::make_plan(jobs, chosen);
}

template <SpeedModel Model>
AllocationPlan doubling_allocate(const std::vector<JobState<Model>>& jobs, int capacity,
                                 bool grow_only = false) {
  return doubling_allocate(std::span<const JobState<Model>>(jobs), capacity, grow_only);
}

template <SpeedModel Model>
AllocationPlan greedy_allocate(const std::vector<JobState<Model>>& jobs, int capacity) {
  return greedy_allocate(std::span<const JobState<Model>>(jobs), capacity);
}

template <SpeedModel Model>
AllocationPlan optimal_allocate_dp(const std::vector<JobState<Model>>& jobs, int capacity,
                                   bool power_of_two_only) {
  return optimal_allocate_dp(std::span<const JobState<Model>>(jobs), capacity, power_of_two_only);
}

}  // namespace ringsched
