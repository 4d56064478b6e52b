#pragma once

// Job profiles calibrated from ResNet-110/CIFAR-10 measurements and seeded
// synthetic workloads built around them.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ringsched/allocator.hpp"
#include "ringsched/costmodel.hpp"
#include "ringsched/error.hpp"
#include "ringsched/fitting.hpp"

namespace ringsched {

inline constexpr double kCifarEpochImages = 50000.0;
inline constexpr std::int64_t kResnetBatchPerGpu = 128;

// Single-node profiling of ResNet-110 at 128 images per GPU.
struct ProfilingRow {
  int gpus;
  double t_forward_ms;
  double t_back_ms;
  double t_total_ms;
  double images_per_sec;
};
inline constexpr std::array<ProfilingRow, 4> kResnetProfiling{{
    {1, 108.0, 236.5, 402.5, 318.0},
    {2, 110.2, 274.6, 427.2, 576.2},
    {4, 107.1, 290.1, 444.3, 1152.4},
    {8, 106.0, 307.4, 470.2, 2177.8},
}};

// End-to-end training runs to convergence, optionally resized mid-run.
struct TrainingRun {
  int gpus_init;
  std::optional<double> steps_stop;
  std::optional<int> gpus_new;
  double steps_total;
  double epochs;
  double minutes;
};
inline const std::array<TrainingRun, 6> kResnetRuns{{
    {1, std::nullopt, std::nullopt, 62.5e3, 160, 368},
    {2, std::nullopt, std::nullopt, 33.2e3, 170, 232},
    {4, std::nullopt, std::nullopt, 15.6e3, 160, 126},
    {8, std::nullopt, std::nullopt, 8.3e3, 170, 84},
    {4, 5e3, 8, 10.9e3, 171, 104},
    {4, 10e3, 8, 12.9e3, 162, 113},
}};

inline constexpr double kResnetRestartSeconds = 10.0;

// ResNet-110 on CIFAR-10 with m = 128 examples per worker.
//
// Compute constants are the profiled forward/backward times; the remainder of
// the 1-GPU step is a fixed per-step overhead. ResNet-110 has ~1.7M fp32
// parameters. Bandwidth terms assume ~12.5 GB/s; the per-message latency is
// inflated to absorb framework overhead and lands the 4->8 GPU scaling
// efficiency within half a point of the measured one. The per-epoch overhead
// (evaluation, checkpointing) closes the gap to the measured 8-GPU run time.
inline JobProfile calibrate_resnet_profile() {
  const auto& one = kResnetProfiling[0];
  JobProfile p;
  p.m = kResnetBatchPerGpu;
  p.n = 6'800'000;
  p.t_forward = one.t_forward_ms * 1e-3 / static_cast<double>(kResnetBatchPerGpu);
  p.t_back = one.t_back_ms * 1e-3 / static_cast<double>(kResnetBatchPerGpu);
  p.steps_per_epoch = kCifarEpochImages / static_cast<double>(kResnetBatchPerGpu);
  p.comm = CommParams{6.0e-3, 8.0e-11, 1.0e-11};
  p.restart_cost = kResnetRestartSeconds;
  p.base_lr = 0.1;
  p.step_overhead = (one.t_total_ms - one.t_forward_ms - one.t_back_ms) * 1e-3;

  const TrainingRun& eight = kResnetRuns[3];
  const double measured = eight.minutes * 60.0 / eight.epochs;
  const double modeled = ProfileSpeed{p, BatchScaling::kPerWorker}.epoch_time(eight.gpus_init);
  p.epoch_overhead = std::max(0.0, measured - modeled);
  return p;
}

inline double rescale_learning_rate(double lr_last, int gpus_last, int gpus_new) {
  if (gpus_last < 1 || gpus_new < 1) throw DomainError("rescale_learning_rate: GPU counts must be >= 1");
  if (!(lr_last > 0.0)) throw DomainError("rescale_learning_rate: learning rate must be positive");
  return lr_last * static_cast<double>(gpus_new) / static_cast<double>(gpus_last);
}

// Poisson arrivals: cumulative sums of i.i.d. exponential gaps.
inline std::vector<double> generate_arrivals(double mean_interarrival, std::size_t total_jobs,
                                             std::uint64_t seed) {
  if (!(mean_interarrival > 0.0)) throw DomainError("generate_arrivals: mean must be positive");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> gap(1.0 / mean_interarrival);
  std::vector<double> out;
  out.reserve(total_jobs);
  double t = 0.0;
  for (std::size_t i = 0; i < total_jobs; ++i) {
    t += gap(rng);
    out.push_back(t);
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool valid() const { return lo > 0.0 && hi >= lo; }
  friend bool operator==(const Range&, const Range&) = default;
};

struct ProfileDistribution {
  Range t_forward;  // seconds per example
  Range t_back;     // seconds per example
  Range n;          // bytes
  Range m;          // examples per worker; sampled as an integer
  Range epochs;     // true convergence epochs
  Range loss_offset;     // beta1 of the true loss curve
  Range loss_asymptote;  // beta2 of the true loss curve
  friend bool operator==(const ProfileDistribution&, const ProfileDistribution&) = default;
};

struct WorkloadSpec {
  std::size_t total_jobs = 1;
  double mean_interarrival = 500.0;
  ProfileDistribution distribution;
  JobProfile base;  // fields not randomized are copied from here
  double epoch_images = kCifarEpochImages;
  double convergence_margin = kDefaultConvergenceMargin;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (total_jobs < 1) throw ConfigError("workload: total_jobs must be >= 1");
    if (!(mean_interarrival > 0.0)) throw ConfigError("workload: mean_interarrival must be positive");
    const auto& d = distribution;
    for (const Range* r : {&d.t_forward, &d.t_back, &d.n, &d.m, &d.epochs, &d.loss_offset}) {
      if (!r->valid()) throw ConfigError("workload: profile ranges must be positive with lo <= hi");
    }
    if (d.loss_asymptote.lo < 0.0 || d.loss_asymptote.hi < d.loss_asymptote.lo) {
      throw ConfigError("workload: loss asymptote range invalid");
    }
    if (d.loss_offset.hi >= 1.0 / convergence_margin) {
      throw ConfigError("workload: loss offset must stay below 1/convergence_margin");
    }
    if (!(epoch_images > 0.0) || !(convergence_margin > 0.0)) {
      throw ConfigError("workload: epoch_images and convergence_margin must be positive");
    }
  }
  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

// Ranges used for the contention experiments: ResNet-like compute around the
// calibrated profile, with gradient sizes from small CNNs up to ~250M fp32
// parameters so jobs differ in how well they scale.
inline WorkloadSpec contention_workload_spec(double mean_interarrival, std::size_t total_jobs,
                                             std::uint64_t seed) {
  const JobProfile base = calibrate_resnet_profile();
  WorkloadSpec spec;
  spec.total_jobs = total_jobs;
  spec.mean_interarrival = mean_interarrival;
  spec.base = base;
  spec.rng_seed = seed;
  spec.distribution.t_forward = {base.t_forward * 0.5, base.t_forward * 1.5};
  spec.distribution.t_back = {base.t_back * 0.5, base.t_back * 1.5};
  spec.distribution.n = {1.0e6, 1.0e9};
  spec.distribution.m = {128, 128};
  spec.distribution.epochs = {160, 170};
  spec.distribution.loss_offset = {1.0, 3.0};
  spec.distribution.loss_asymptote = {0.05, 0.4};
  return spec;
}

struct SimJob {
  JobId id = 0;
  double arrival_time = 0.0;
  JobProfile profile;  // m is per worker; the job trains with weak scaling
  double true_epochs = 0.0;
  LossCurveModel loss;  // true curve in reference-batch steps
  friend bool operator==(const SimJob&, const SimJob&) = default;
};

struct Workload {
  std::optional<WorkloadSpec> spec;
  std::uint64_t seed = 0;
  std::vector<SimJob> jobs;
  friend bool operator==(const Workload&, const Workload&) = default;
};

// True loss curve whose excess over the asymptote reaches `margin` exactly at
// the job's convergence step.
inline LossCurveModel convergent_loss_curve(double beta1, double beta2, double convergence_step,
                                            double margin) {
  if (!(convergence_step > 0.0) || !(beta1 < 1.0 / margin)) {
    throw DomainError("convergent_loss_curve: invalid parameters");
  }
  return LossCurveModel{(1.0 / margin - beta1) / convergence_step, beta1, beta2};
}

inline Workload generate_workload(const WorkloadSpec& spec) {
  spec.validate();
  Workload out;
  out.spec = spec;
  out.seed = spec.rng_seed;
  const auto arrivals = generate_arrivals(spec.mean_interarrival, spec.total_jobs, spec.rng_seed);

  std::seed_seq seq{static_cast<std::uint32_t>(spec.rng_seed),
                    static_cast<std::uint32_t>(spec.rng_seed >> 32), 0x70726f66u};
  std::mt19937_64 rng(seq);
  auto uniform = [&rng](const Range& r) {
    if (r.lo == r.hi) return r.lo;
    return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
  };
  const auto& d = spec.distribution;
  for (std::size_t i = 0; i < spec.total_jobs; ++i) {
    SimJob job;
    job.id = i;
    job.arrival_time = arrivals[i];
    job.profile = spec.base;
    job.profile.t_forward = uniform(d.t_forward);
    job.profile.t_back = uniform(d.t_back);
    job.profile.n = static_cast<std::int64_t>(std::llround(uniform(d.n)));
    job.profile.m = static_cast<std::int64_t>(std::llround(uniform(d.m)));
    job.profile.steps_per_epoch = spec.epoch_images / static_cast<double>(job.profile.m);
    job.true_epochs = uniform(d.epochs);
    const double beta1 = uniform(d.loss_offset);
    const double beta2 = uniform(d.loss_asymptote);
    job.loss = convergent_loss_curve(beta1, beta2, job.true_epochs * job.profile.steps_per_epoch,
                                     spec.convergence_margin);
    out.jobs.push_back(job);
  }
  return out;
}

}  // namespace ringsched
