#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ringsched/allocator.hpp"
#include "ringsched/workload.hpp"

namespace ringsched {
namespace {

using Jobs = std::vector<JobState<ResourceModel>>;

Jobs random_jobs(std::mt19937_64& rng, std::size_t count) {
  std::uniform_real_distribution<double> q(1.0, 200.0);
  std::uniform_real_distribution<double> t0(1e-3, 5e-2), t1(0.0, 2.0), t2(0.0, 2e-6), t3(0.1, 5.0);
  std::uniform_real_distribution<double> n(1e5, 1e7);
  Jobs jobs;
  for (std::size_t i = 0; i < count; ++i) {
    JobState<ResourceModel> j;
    j.job_id = 100 + i;
    j.remaining_epochs = q(rng);
    j.model = ResourceModel{t0(rng), t1(rng), t2(rng), t3(rng), 128, n(rng)};
    j.arrival_time = static_cast<double>(i);
    jobs.push_back(j);
  }
  return jobs;
}

oracle::BruteForceResult brute(const Jobs& jobs, int capacity, bool pow2) {
  std::vector<int> caps;
  for (const auto& j : jobs) caps.push_back(j.max_workers > 0 ? std::min(j.max_workers, capacity)
                                                              : largest_power_of_two_at_most(capacity));
  return oracle::brute_force_allocation(jobs.size(), capacity, caps, [&](std::size_t i, int w) {
    if (pow2 && (w & (w - 1)) != 0) return std::numeric_limits<double>::infinity();
    const auto& m = jobs[i].model;
    const double epoch = m.theta0 * m.m / w + m.theta1 * (w - 1) + m.theta2 * (w - 1) * m.n / w + m.theta3;
    return jobs[i].remaining_epochs * epoch;
  });
}

void expect_feasible(const AllocationPlan& plan, const Jobs& jobs, int capacity) {
  EXPECT_LE(plan.total_workers(), capacity);
  EXPECT_EQ(plan.jobs.size(), jobs.size());
  for (const auto& j : jobs) EXPECT_GE(plan.workers(j.job_id), 1);
}

TEST(Doubling, SingleJobDoublesWhileItHelps) {
  Jobs jobs(1);
  jobs[0].job_id = 1;
  jobs[0].remaining_epochs = 10;
  jobs[0].model = ResourceModel{1.0, 0.0, 0.0, 0.0, 1, 1};  // perfect scaling
  const auto plan = doubling_allocate(jobs, 8);
  EXPECT_EQ(plan.workers(1), 8);
  EXPECT_DOUBLE_EQ(plan.objective, 10.0 / 8.0);
}

TEST(Doubling, StopsWhenCommunicationDominates) {
  Jobs jobs(1);
  jobs[0].job_id = 1;
  jobs[0].remaining_epochs = 10;
  jobs[0].model = ResourceModel{0.0, 1.0, 0.0, 1.0, 1, 1};  // only overhead grows with w
  EXPECT_EQ(doubling_allocate(jobs, 64).workers(1), 1);
}

TEST(Doubling, FinishedJobKeepsOneWorker) {
  Jobs jobs(2);
  jobs[0] = {1, 0.0, ResourceModel{1, 0, 0, 0, 1, 1}, 0, 0.0, 0};
  jobs[1] = {2, 5.0, ResourceModel{1, 0, 0, 0, 1, 1}, 0, 1.0, 0};
  const auto plan = doubling_allocate(jobs, 16);
  EXPECT_EQ(plan.workers(1), 1);
  EXPECT_EQ(plan.workers(2), 8);
}

TEST(Doubling, TiesGoToEarlierArrival) {
  Jobs jobs(2);
  jobs[0] = {7, 4.0, ResourceModel{1, 0, 0, 0, 1, 1}, 0, 5.0, 0};
  jobs[1] = {3, 4.0, ResourceModel{1, 0, 0, 0, 1, 1}, 0, 2.0, 0};
  // Three free GPUs after the initial ones: only one of the two can double.
  const auto plan = doubling_allocate(jobs, 3);
  EXPECT_EQ(plan.workers(3), 2);
  EXPECT_EQ(plan.workers(7), 1);
}

TEST(Doubling, GrowOnlyNeverShrinks) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto jobs = random_jobs(rng, 4);
    std::uniform_int_distribution<int> cur(0, 3);
    for (auto& j : jobs) j.current_workers = 1 << cur(rng);
    const auto plan = doubling_allocate(jobs, 64, true);
    for (const auto& j : jobs) EXPECT_GE(plan.workers(j.job_id), j.current_workers);
    EXPECT_LE(plan.total_workers(), 64);
  }
}

TEST(Doubling, RespectsMaxWorkers) {
  Jobs jobs(1);
  jobs[0] = {1, 10.0, ResourceModel{1, 0, 0, 0, 1, 1}, 0, 0.0, 4};
  EXPECT_EQ(doubling_allocate(jobs, 64).workers(1), 4);
}

TEST(Allocation, RejectsInvalidInstances) {
  Jobs jobs(3);
  for (std::size_t i = 0; i < 3; ++i) jobs[i] = {i, 1.0, ResourceModel{1, 0, 0, 0, 1, 1}, 0, 0.0, 0};
  EXPECT_THROW(doubling_allocate(jobs, 2), OverCapacityError);
  EXPECT_THROW(greedy_allocate(jobs, 2), OverCapacityError);
  EXPECT_THROW(optimal_allocate_dp(jobs, 2, false), OverCapacityError);
  jobs[2].job_id = 0;
  EXPECT_THROW(doubling_allocate(jobs, 8), DomainError);
  jobs[2].job_id = 2;
  jobs[1].remaining_epochs = -1;
  EXPECT_THROW(doubling_allocate(jobs, 8), DomainError);
}

TEST(Allocation, DpRejectsLargeInstances) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(optimal_allocate_dp(random_jobs(rng, 17), 64, false), InstanceTooLargeError);
  EXPECT_THROW(optimal_allocate_dp(random_jobs(rng, 2), 65, false), InstanceTooLargeError);
}

TEST(Allocation, EmptyInstanceIsEmptyPlan) {
  const Jobs none;
  EXPECT_TRUE(doubling_allocate(none, 8).jobs.empty());
  EXPECT_TRUE(optimal_allocate_dp(none, 8, false).jobs.empty());
}

TEST(Dp, MatchesBruteForce) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<int> cap(4, 16);
  for (int trial = 0; trial < 150; ++trial) {
    const auto jobs = random_jobs(rng, static_cast<std::size_t>(count(rng)));
    const int c = std::max(cap(rng), static_cast<int>(jobs.size()));
    for (bool pow2 : {false, true}) {
      const auto dp = optimal_allocate_dp(jobs, c, pow2);
      const auto bf = brute(jobs, c, pow2);
      EXPECT_NEAR(dp.objective, bf.objective, 1e-9 * bf.objective) << trial;
      expect_feasible(dp, jobs, c);
    }
  }
}

TEST(Sandwich, HeuristicsBetweenOptimaAndFeasible) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> count(1, 6);
  std::uniform_int_distribution<int> cap(1, 32);
  for (int trial = 0; trial < 200; ++trial) {
    const auto jobs = random_jobs(rng, static_cast<std::size_t>(count(rng)));
    const int c = std::max(cap(rng), static_cast<int>(jobs.size()));
    const auto d = doubling_allocate(jobs, c);
    const auto g = greedy_allocate(jobs, c);
    const auto opt = optimal_allocate_dp(jobs, c, false);
    const auto opt2 = optimal_allocate_dp(jobs, c, true);
    expect_feasible(d, jobs, c);
    expect_feasible(g, jobs, c);
    for (const auto& [id, a] : d.jobs) EXPECT_TRUE(is_power_of_two(a.workers));
    const double eps = 1e-9 * opt.objective;
    EXPECT_GE(d.objective, opt2.objective - eps);
    EXPECT_GE(opt2.objective, opt.objective - eps);
    EXPECT_GE(g.objective, opt.objective - eps);
    if (jobs.size() == 1) {
      EXPECT_NEAR(d.objective, opt2.objective, eps);
    }
  }
}

// Per-step time with a fixed global batch: going from 8 to 9 workers swaps the
// doubling-halving all-reduce for binary blocks.
JobState<ProfileSpeed> eight_to_nine_job(double alpha) {
  JobProfile p = calibrate_resnet_profile();
  p.epoch_overhead = 0.0;
  p.step_overhead = 0.0;
  p.m = 1024;
  p.n = 4'000'000;
  p.comm.alpha = alpha;
  return {1, 100.0, ProfileSpeed{p, BatchScaling::kFixedGlobal}, 0, 0.0, 16};
}

TEST(LocalOptimum, GreedyStallsAtEightWhereDoublingReachesSixteen) {
  const auto job = eight_to_nine_job(6e-3);
  const std::vector<JobState<ProfileSpeed>> jobs{job};
  EXPECT_GT(job.model.speed(8), job.model.speed(9));
  const auto g = greedy_allocate(jobs, 16);
  const auto d = doubling_allocate(jobs, 16);
  const auto opt = optimal_allocate_dp(jobs, 16, false);
  EXPECT_EQ(g.workers(1), 8);
  EXPECT_EQ(d.workers(1), 16);
  EXPECT_EQ(opt.workers(1), 16);
}

}  // namespace
}  // namespace ringsched
