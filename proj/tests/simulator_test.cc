#include <gtest/gtest.h>

#include <numeric>

#include "ringsched/simulator.hpp"
#include "ringsched/workload.hpp"

namespace ringsched {
namespace {

SimJob resnet_job(JobId id, double arrival, double epochs) {
  SimJob job;
  job.id = id;
  job.arrival_time = arrival;
  job.profile = calibrate_resnet_profile();
  job.true_epochs = epochs;
  job.loss = convergent_loss_curve(2.0, 0.2, epochs * job.profile.steps_per_epoch, kDefaultConvergenceMargin);
  return job;
}

SimConfig config_for(Strategy s) {
  SimConfig c;
  c.strategy = s;
  return c;
}

TEST(SimEvent, OrdersByTimeThenKindThenJob) {
  const SimEvent completion{10.0, EventKind::kJobCompletion, 5, 0};
  const SimEvent arrival{10.0, EventKind::kJobArrival, 1, 0};
  const SimEvent tick{10.0, EventKind::kScheduleTick, 0, 0};
  const SimEvent restart{10.0, EventKind::kRestartComplete, 0, 0};
  const SimEvent earlier{9.0, EventKind::kScheduleTick, 9, 0};
  EXPECT_LT(earlier, completion);
  EXPECT_LT(completion, arrival);
  EXPECT_LT(arrival, tick);
  EXPECT_LT(tick, restart);
  EXPECT_LT((SimEvent{10.0, EventKind::kJobArrival, 0, 0}), arrival);
  EXPECT_FALSE(arrival < arrival);
}

TEST(ExplorePhase, StepsThroughWorkerCounts) {
  const std::vector<int> workers{1, 2, 4, 8};
  EXPECT_EQ(explore_phase_schedule(100.0, 100.0, 150.0, workers), 1);
  EXPECT_EQ(explore_phase_schedule(100.0, 249.9, 150.0, workers), 1);
  EXPECT_EQ(explore_phase_schedule(100.0, 250.0, 150.0, workers), 2);
  EXPECT_EQ(explore_phase_schedule(100.0, 500.0, 150.0, workers), 4);
  EXPECT_EQ(explore_phase_schedule(100.0, 699.0, 150.0, workers), 8);
  EXPECT_EQ(explore_phase_schedule(100.0, 700.0, 150.0, workers), std::nullopt);
  EXPECT_EQ(explore_phase_schedule(100.0, 50.0, 150.0, workers), std::nullopt);
}

TEST(Strategy, ParseAndName) {
  for (const auto& s : all_strategies()) EXPECT_EQ(Strategy::parse(s.name()), s);
  EXPECT_EQ(Strategy::parse("eight"), Strategy::fixed(8));
  EXPECT_FALSE(Strategy::parse("fixed3").has_value());
}

TEST(Simulation, SingleFixedJobRunsAtModeledSpeed) {
  const std::vector<SimJob> jobs{resnet_job(0, 0.0, 170)};
  const auto r = run_simulation(config_for(Strategy::fixed(8)), std::span<const SimJob>(jobs));
  const double expect = 170 * ProfileSpeed{jobs[0].profile}.epoch_time(8);
  ASSERT_EQ(r.jobs.size(), 1u);
  EXPECT_NEAR(r.jobs[0].completion, expect, 1e-6);
  EXPECT_EQ(r.jobs[0].restarts, 0);
  EXPECT_EQ(r.jobs[0].final_workers, 8);
  EXPECT_DOUBLE_EQ(r.jobs[0].learning_rate, 0.8);
  EXPECT_NEAR(r.jobs[0].gpu_seconds, 8 * expect, 1e-6);
}

TEST(Simulation, ArrivalBetweenTicksWaitsForNextTick) {
  const std::vector<SimJob> jobs{resnet_job(0, 30.0, 10)};
  const auto r = run_simulation(config_for(Strategy::fixed(1)), std::span<const SimJob>(jobs));
  EXPECT_DOUBLE_EQ(r.jobs[0].start, 60.0);
}

TEST(Simulation, ForcedResizeMatchesHandComputation) {
  const std::vector<SimJob> jobs{resnet_job(0, 0.0, 171)};
  SimConfig c = config_for(Strategy::fixed(4));
  c.forced_resizes.push_back({0, 51.0, 8});
  const auto r = run_simulation(c, std::span<const SimJob>(jobs));
  const ProfileSpeed truth{jobs[0].profile};
  const double reach = 51.0 * truth.epoch_time(4);
  const double tick = std::ceil(reach / c.scheduling_interval) * c.scheduling_interval;
  const double at_tick = tick / truth.epoch_time(4);
  const double expect = tick + c.restart_cost + (171.0 - at_tick) * truth.epoch_time(8);
  EXPECT_NEAR(r.jobs[0].completion, expect, 1e-6);
  EXPECT_EQ(r.jobs[0].restarts, 1);
  EXPECT_DOUBLE_EQ(r.jobs[0].paused_seconds, c.restart_cost);
  EXPECT_DOUBLE_EQ(r.jobs[0].learning_rate, 0.8);
  EXPECT_EQ(r.jobs[0].final_workers, 8);
}

TEST(Simulation, PrecomputeGivesLoneJobTheCap) {
  const std::vector<SimJob> jobs{resnet_job(0, 0.0, 160)};
  const auto r = run_simulation(config_for(Strategy::precompute()), std::span<const SimJob>(jobs));
  EXPECT_EQ(r.jobs[0].final_workers, 8);
  EXPECT_EQ(r.jobs[0].restarts, 0);
}

TEST(Simulation, ExplorationCostsTimeForALoneJob) {
  const std::vector<SimJob> jobs{resnet_job(0, 0.0, 160)};
  const auto fixed = run_simulation(config_for(Strategy::fixed(8)), std::span<const SimJob>(jobs));
  const auto expl = run_simulation(config_for(Strategy::exploratory()), std::span<const SimJob>(jobs));
  EXPECT_GT(expl.jobs[0].completion, fixed.jobs[0].completion);
  EXPECT_EQ(expl.jobs[0].final_workers, 8);
  EXPECT_GE(expl.jobs[0].restarts, 3);
}

class WorkloadRuns : public ::testing::TestWithParam<Strategy> {};

TEST_P(WorkloadRuns, InvariantsHold) {
  const auto w = generate_workload(contention_workload_spec(400.0, 40, 5));
  SimConfig c = config_for(GetParam());
  const auto r = run_simulation(c, w);
  EXPECT_EQ(r.capacity_violations, 0u);
  EXPECT_LE(r.peak_allocated_gpus, 64);
  ASSERT_EQ(r.jobs.size(), w.jobs.size());
  double gpu_seconds = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < w.jobs.size(); ++i) {
    const auto& rec = r.jobs[i];
    EXPECT_EQ(rec.id, w.jobs[i].id);
    EXPECT_GE(rec.start, rec.arrival);
    EXPECT_GT(rec.completion, rec.start);
    EXPECT_DOUBLE_EQ(rec.epochs, w.jobs[i].true_epochs);
    EXPECT_NEAR(rec.paused_seconds, rec.restarts * c.restart_cost, 1e-6);
    // Never faster than 8 workers with no queueing.
    EXPECT_GE(rec.completion - rec.arrival,
              w.jobs[i].true_epochs * ProfileSpeed{w.jobs[i].profile}.epoch_time(8) - 1e-6);
    gpu_seconds += rec.gpu_seconds;
    total += rec.completion - rec.arrival;
  }
  EXPECT_LE(gpu_seconds, 64.0 * r.makespan);
  EXPECT_NEAR(r.mean_completion_hours, total / w.jobs.size() / 3600.0, 1e-12);
  if (GetParam().kind == StrategyKind::kFixed) {
    for (const auto& rec : r.jobs) {
      EXPECT_EQ(rec.restarts, 0);
      EXPECT_EQ(rec.final_workers, GetParam().fixed_workers);
    }
  }
}

TEST_P(WorkloadRuns, Deterministic) {
  const auto w = generate_workload(contention_workload_spec(300.0, 30, 8));
  const auto c = config_for(GetParam());
  const auto a = run_simulation(c, w);
  const auto b = run_simulation(c, w);
  EXPECT_EQ(a.jobs, b.jobs);
  EXPECT_EQ(a.events_processed, b.events_processed);
}

INSTANTIATE_TEST_SUITE_P(AllStrategies, WorkloadRuns, ::testing::ValuesIn(all_strategies()),
                         [](const auto& info) { return info.param.name(); });

TEST(Simulation, GrowOnlyKeepsAllocationsMonotone) {
  const auto w = generate_workload(contention_workload_spec(500.0, 30, 2));
  const auto r = run_simulation(config_for(Strategy::precompute()), w);
  // With grow-only planning every resize is an increase, so a job restarts at
  // most log2(8) times.
  for (const auto& rec : r.jobs) EXPECT_LE(rec.restarts, 3);
}

TEST(Simulation, ShrinkAllowedStillSafe) {
  const auto w = generate_workload(contention_workload_spec(300.0, 30, 2));
  SimConfig c = config_for(Strategy::precompute());
  c.allow_shrink = true;
  const auto r = run_simulation(c, w);
  EXPECT_EQ(r.capacity_violations, 0u);
}

TEST(Simulation, ConfigValidation) {
  const std::vector<SimJob> jobs{resnet_job(0, 0.0, 10)};
  const std::span<const SimJob> span(jobs);
  SimConfig c;
  c.scheduling_interval = 0;
  EXPECT_THROW(run_simulation(c, span), ConfigError);
  c = SimConfig{};
  c.strategy = Strategy::fixed(65);
  EXPECT_THROW(run_simulation(c, span), ConfigError);
  c = SimConfig{};
  c.forced_resizes.push_back({9, 1.0, 2});
  EXPECT_THROW(run_simulation(c, span), ConfigError);
  EXPECT_THROW(run_simulation(SimConfig{}, std::span<const SimJob>{}), ConfigError);
  std::vector<SimJob> dup{resnet_job(0, 0.0, 10), resnet_job(0, 1.0, 10)};
  EXPECT_THROW(run_simulation(SimConfig{}, std::span<const SimJob>(dup)), ConfigError);
}

}  // namespace
}  // namespace ringsched
