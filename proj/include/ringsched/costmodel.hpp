#pragma once

// Per-minibatch time models for ring-architecture data-parallel training.
//
// Three all-reduce algorithms are modeled with the usual latency/bandwidth/
// compute (alpha/beta/gamma) cost terms. On top of them sits the parametric
// speed model f(w) used by the scheduler, which is learned per job.

#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "ringsched/error.hpp"

namespace ringsched {

struct CommParams {
  double alpha = 0.0;  // seconds per message
  double beta = 0.0;   // seconds per byte transferred
  double gamma = 0.0;  // seconds per byte reduced

  bool valid() const {
    return std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma) &&
           alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0;
  }
  friend bool operator==(const CommParams&, const CommParams&) = default;
};

// Measured constants of one training job.
//
// `m` is the global minibatch of the reference configuration. step_time()
// treats it as the batch shared by all `w` workers; the weak-scaling helper
// below grows it with the worker count instead.
struct JobProfile {
  std::int64_t m = 1;            // examples per step (global)
  std::int64_t n = 1;            // model size in bytes
  double t_forward = 0.0;        // seconds per example
  double t_back = 0.0;           // seconds per example
  double steps_per_epoch = 1.0;  // at batch size m
  CommParams comm;
  double restart_cost = 0.0;     // seconds
  double base_lr = 0.1;          // learning rate at one worker
  double step_overhead = 0.0;    // seconds per step not scaling with m (input pipeline, optimizer)
  double epoch_overhead = 0.0;   // seconds per epoch (evaluation, checkpointing)

  bool valid() const {
    return m >= 1 && n >= 1 && t_forward > 0.0 && t_back > 0.0 &&
           steps_per_epoch >= 1.0 && restart_cost >= 0.0 && base_lr > 0.0 &&
           step_overhead >= 0.0 && epoch_overhead >= 0.0 && comm.valid();
  }
  friend bool operator==(const JobProfile&, const JobProfile&) = default;
};

enum class AllReduceAlgo { kRing, kDoublingHalving, kBinaryBlocks };

inline std::string_view to_string(AllReduceAlgo algo) {
  switch (algo) {
    case AllReduceAlgo::kRing:
      return "ring";
    case AllReduceAlgo::kDoublingHalving:
      return "doubling-halving";
    case AllReduceAlgo::kBinaryBlocks:
      return "binary-blocks";
  }
  return "unknown";
}

inline constexpr bool is_power_of_two(std::int64_t w) {
  return w >= 1 && std::has_single_bit(static_cast<std::uint64_t>(w));
}

inline constexpr double kDefaultAlgoThresholdBytes = 1e7;

// Communication seconds for one all-reduce of `n` bytes over `w` workers.
// A single worker exchanges nothing, so w == 1 costs zero for every algorithm.
inline double allreduce_time(AllReduceAlgo algo, std::int64_t w, std::int64_t n,
                             const CommParams& comm) {
  if (w < 1) throw DomainError("allreduce_time: worker count must be >= 1");
  if (n < 1) throw DomainError("allreduce_time: model size must be >= 1 byte");
  if (algo == AllReduceAlgo::kDoublingHalving && !is_power_of_two(w)) {
    throw InvalidAlgorithmError(
        "doubling-halving requires a power-of-two worker count, got " +
        std::to_string(w));
  }
  if (w == 1) return 0.0;

  const double wd = static_cast<double>(w);
  const double nd = static_cast<double>(n);
  switch (algo) {
    case AllReduceAlgo::kRing: {
      const double steps = wd - 1.0;
      const double chunk = nd / wd;
      return steps * 4.0 * comm.alpha + steps * chunk * 4.0 * comm.beta +
             steps * chunk * 2.0 * comm.gamma;
    }
    case AllReduceAlgo::kDoublingHalving: {
      const double rounds = static_cast<double>(std::bit_width(static_cast<std::uint64_t>(w)) - 1);
      return 4.0 * rounds * comm.alpha + 4.0 * nd * comm.beta + 2.5 * nd * comm.gamma;
    }
    case AllReduceAlgo::kBinaryBlocks: {
      // ceil(log2(w)) == bit_width(w - 1) for w >= 1.
      const double rounds = static_cast<double>(std::bit_width(static_cast<std::uint64_t>(w - 1)));
      return (5.0 + 4.0 * rounds) * comm.alpha + 7.0 * nd * comm.beta + 3.0 * nd * comm.gamma;
    }
  }
  throw InvalidAlgorithmError("unknown all-reduce algorithm");
}

// Seconds per optimizer step: the global minibatch split over w workers, the
// fixed per-step overhead, then the gradient all-reduce.
inline double step_time(const JobProfile& profile, std::int64_t w, AllReduceAlgo algo) {
  const double comm = allreduce_time(algo, w, profile.n, profile.comm);
  const double compute = static_cast<double>(profile.m) * (profile.t_forward + profile.t_back) /
                         static_cast<double>(w);
  return compute + profile.step_overhead + comm;
}

inline AllReduceAlgo select_algorithm(std::int64_t w, std::int64_t n,
                                      double n_threshold = kDefaultAlgoThresholdBytes) {
  if (static_cast<double>(n) > n_threshold) return AllReduceAlgo::kRing;
  return is_power_of_two(w) ? AllReduceAlgo::kDoublingHalving : AllReduceAlgo::kBinaryBlocks;
}

// Profile with the per-worker batch held at `profile.m`, i.e. the global batch
// grows to m * w and an epoch takes proportionally fewer steps.
inline JobProfile weak_scaled(JobProfile profile, std::int64_t w) {
  if (w < 1) throw DomainError("weak_scaled: worker count must be >= 1");
  profile.m *= w;
  profile.steps_per_epoch /= static_cast<double>(w);
  return profile;
}

// Fitted speed model: f(w) = 1 / (t0*m/w + t1*(w-1) + t2*(w-1)*n/w + t3),
// in epochs per second.
struct ResourceModel {
  double theta0 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
  double m = 1.0;
  double n = 1.0;

  // Seconds per epoch at w workers; the reciprocal of speed().
  double epoch_time(std::int64_t w) const {
    if (w < 1) throw DomainError("ResourceModel: worker count must be >= 1");
    const double wd = static_cast<double>(w);
    return theta0 * (m / wd) + theta1 * (wd - 1.0) + theta2 * (wd - 1.0) * (n / wd) + theta3;
  }

  double speed(std::int64_t w) const {
    const double inner = epoch_time(w);
    if (!(inner > 0.0) || !std::isfinite(inner)) {
      throw DegenerateModelError("resource model predicts a non-positive step time at w=" +
                                 std::to_string(w));
    }
    return 1.0 / inner;
  }

  bool valid() const {
    return theta0 >= 0.0 && theta1 >= 0.0 && theta2 >= 0.0 && theta3 >= 0.0 && m > 0.0 &&
           n > 0.0 && (theta3 > 0.0 || theta0 * m > 0.0);
  }
  friend bool operator==(const ResourceModel&, const ResourceModel&) = default;
};

inline double predict_speed(const ResourceModel& model, std::int64_t w) { return model.speed(w); }

// Anything that can report a training speed (epochs/second) for a worker count.
template <class M>
concept SpeedModel = requires(const M& model, std::int64_t w) {
  { model.speed(w) } -> std::convertible_to<double>;
};

enum class BatchScaling {
  kFixedGlobal,  // global batch stays at m; workers split it
  kPerWorker,    // each worker keeps m examples; global batch is m * w
};

// Speed derived directly from the cost model, with the all-reduce algorithm
// picked per worker count. This is the "ground truth" a simulated job runs at.
struct ProfileSpeed {
  JobProfile profile;
  BatchScaling scaling = BatchScaling::kPerWorker;
  double n_threshold = kDefaultAlgoThresholdBytes;

  double epoch_time(std::int64_t w) const {
    const JobProfile p = scaling == BatchScaling::kPerWorker ? weak_scaled(profile, w) : profile;
    const AllReduceAlgo algo = select_algorithm(w, p.n, n_threshold);
    return p.steps_per_epoch * step_time(p, w, algo) + p.epoch_overhead;
  }

  double speed(std::int64_t w) const { return 1.0 / epoch_time(w); }
};

static_assert(SpeedModel<ResourceModel>);
static_assert(SpeedModel<ProfileSpeed>);

}  // namespace ringsched
