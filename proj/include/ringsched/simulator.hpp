#pragma once

// Discrete-event simulation of a shared GPU cluster.
//
// Jobs arrive over time, the scheduler re-plans at fixed ticks, and each job
// accrues epochs at its true speed for the number of workers it trains with.
// A job whose worker count changes is checkpointed and restarted, which costs
// `restart_cost` seconds of paused progress while it keeps its GPUs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ringsched/allocator.hpp"
#include "ringsched/costmodel.hpp"
#include "ringsched/error.hpp"
#include "ringsched/fitting.hpp"
#include "ringsched/placement.hpp"
#include "ringsched/workload.hpp"

namespace ringsched {

enum class StrategyKind { kPrecompute, kExploratory, kFixed };

struct Strategy {
  StrategyKind kind = StrategyKind::kPrecompute;
  int fixed_workers = 0;  // only for kFixed

  static Strategy precompute() { return {StrategyKind::kPrecompute, 0}; }
  static Strategy exploratory() { return {StrategyKind::kExploratory, 0}; }
  static Strategy fixed(int k) { return {StrategyKind::kFixed, k}; }

  std::string name() const {
    switch (kind) {
      case StrategyKind::kPrecompute:
        return "precompute";
      case StrategyKind::kExploratory:
        return "exploratory";
      case StrategyKind::kFixed:
        return "fixed" + std::to_string(fixed_workers);
    }
    return "unknown";
  }

  static std::optional<Strategy> parse(std::string_view name) {
    if (name == "precompute") return precompute();
    if (name == "exploratory") return exploratory();
    if (name == "fixed1" || name == "one") return fixed(1);
    if (name == "fixed2" || name == "two") return fixed(2);
    if (name == "fixed4" || name == "four") return fixed(4);
    if (name == "fixed8" || name == "eight") return fixed(8);
    return std::nullopt;
  }
  friend bool operator==(const Strategy&, const Strategy&) = default;
};

inline constexpr std::string_view kStrategyNames =
    "precompute, exploratory, fixed1, fixed2, fixed4, fixed8";

// The six strategies compared in the contention experiments, in table order.
inline std::vector<Strategy> all_strategies() {
  return {Strategy::precompute(), Strategy::exploratory(), Strategy::fixed(8),
          Strategy::fixed(4),     Strategy::fixed(2),      Strategy::fixed(1)};
}

// Move a running job to `workers` once it has trained `at_epoch` epochs.
// Applied at the first scheduling tick after the threshold is crossed.
struct ForcedResize {
  JobId job = 0;
  double at_epoch = 0.0;
  int workers = 0;
  friend bool operator==(const ForcedResize&, const ForcedResize&) = default;
};

struct SimConfig {
  ClusterConfig cluster{8, 8};
  double scheduling_interval = 60.0;
  double restart_cost = kResnetRestartSeconds;
  Strategy strategy;
  std::uint64_t rng_seed = 0;
  double mean_interarrival = 500.0;
  std::size_t total_jobs = 0;
  int max_workers = 8;
  // Adaptive strategies never shrink a job below its last planned allocation
  // unless this is set. The exploration reservation is not a planned allocation.
  bool allow_shrink = false;
  double explore_window = 150.0;
  std::vector<int> explore_workers{1, 2, 4, 8};
  double convergence_margin = kDefaultConvergenceMargin;
  std::vector<ForcedResize> forced_resizes;

  void validate() const {
    cluster.validate();
    if (!(scheduling_interval > 0.0)) throw ConfigError("simulation: scheduling_interval must be > 0");
    if (!(restart_cost >= 0.0)) throw ConfigError("simulation: restart_cost must be >= 0");
    if (!(mean_interarrival > 0.0)) throw ConfigError("simulation: mean_interarrival must be > 0");
    if (max_workers < 1) throw ConfigError("simulation: max_workers must be >= 1");
    if (strategy.kind == StrategyKind::kFixed &&
        (strategy.fixed_workers < 1 || strategy.fixed_workers > cluster.capacity())) {
      throw ConfigError("simulation: fixed strategy needs 1 <= k <= capacity");
    }
    if (strategy.kind == StrategyKind::kExploratory) {
      if (explore_workers.empty() || !(explore_window > 0.0)) {
        throw ConfigError("simulation: exploration needs a positive window and worker list");
      }
      if (explore_gpus() > cluster.capacity()) {
        throw ConfigError("simulation: exploration reserves more GPUs than the cluster has");
      }
    }
  }

  int explore_gpus() const {
    return explore_workers.empty() ? 0 : *std::max_element(explore_workers.begin(), explore_workers.end());
  }
};

enum class EventKind : int {
  kJobCompletion = 0,
  kJobArrival = 1,
  kScheduleTick = 2,
  kRestartComplete = 3,
  kExploreStep = 4,
};

struct SimEvent {
  double timestamp = 0.0;
  EventKind kind = EventKind::kScheduleTick;
  JobId job = 0;
  std::uint64_t version = 0;  // completion events go stale when the job is re-planned

  // Strict weak order used by the event queue: earliest first, then kind, then job.
  friend bool operator<(const SimEvent& a, const SimEvent& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.job != b.job) return a.job < b.job;
    return a.version < b.version;
  }
};

struct JobRecord {
  JobId id = 0;
  double arrival = 0.0;
  double start = 0.0;
  double completion = 0.0;
  int restarts = 0;
  double paused_seconds = 0.0;
  double gpu_seconds = 0.0;
  double epochs = 0.0;
  int final_workers = 0;
  double learning_rate = 0.0;
  friend bool operator==(const JobRecord&, const JobRecord&) = default;
};

struct SimReport {
  std::string strategy;
  std::vector<JobRecord> jobs;
  double mean_completion_hours = 0.0;
  std::size_t peak_simultaneous_jobs = 0;
  std::size_t total_jobs = 0;
  double makespan = 0.0;
  int capacity = 0;
  int peak_allocated_gpus = 0;
  std::size_t capacity_violations = 0;  // events after which allocation exceeded capacity
  std::size_t events_processed = 0;
};

// Worker count for a job that started exploring at `explore_start`: one entry
// of `workers` per consecutive window. Returns nullopt once exploration is over.
inline std::optional<int> explore_phase_schedule(double explore_start, double now, double window,
                                                 std::span<const int> workers) {
  const double age = now - explore_start;
  if (age < 0.0) return std::nullopt;
  const auto index = static_cast<std::size_t>(std::floor(age / window));
  if (index >= workers.size()) return std::nullopt;
  return workers[index];
}

namespace sim_detail {

enum class Phase { kPending, kQueued, kExploring, kRunning, kDone };

struct JobRuntime {
  const SimJob* job = nullptr;
  ProfileSpeed truth;
  Phase phase = Phase::kPending;
  int held = 0;    // GPUs reserved
  int active = 0;  // workers training
  double epochs = 0.0;
  double last_update = 0.0;
  double paused_until = -std::numeric_limits<double>::infinity();
  std::uint64_t version = 0;
  int restarts = 0;
  double paused_total = 0.0;
  double start_time = -1.0;
  double completion_time = -1.0;
  double gpu_seconds = 0.0;
  double lr = 0.0;
  int last_workers = 0;
  int planned = 0;  // last allocation chosen by the adaptive planner

  // Exploration bookkeeping.
  double explore_start = 0.0;
  std::size_t explore_index = 0;
  double window_epochs = 0.0;
  double window_active = 0.0;
  std::vector<SpeedSample> samples;
  std::optional<ResourceModel> fitted;

  // Loss observations and the cached convergence estimate they imply.
  std::vector<LossPoint> losses;
  std::optional<LossCurveModel> loss_fit;
  std::size_t losses_at_fit = 0;

  double speed() const { return active > 0 ? truth.speed(active) : 0.0; }
  double ref_steps() const { return epochs * job->profile.steps_per_epoch; }
};

class Simulation {
 public:
  Simulation(const SimConfig& config, std::span<const SimJob> jobs) : config_(config) {
    config_.validate();
    if (jobs.empty()) throw ConfigError("simulation: workload is empty");
    runtimes_.reserve(jobs.size());
    for (const auto& job : jobs) {
      if (!job.profile.valid()) throw ConfigError("simulation: invalid profile for job " + std::to_string(job.id));
      if (!(job.true_epochs > 0.0)) throw ConfigError("simulation: true epochs must be positive");
      JobRuntime rt;
      rt.job = &job;
      rt.truth = ProfileSpeed{job.profile, BatchScaling::kPerWorker};
      rt.lr = job.profile.base_lr;
      runtimes_.push_back(std::move(rt));
    }
    // FIFO order by arrival, then id.
    order_.resize(runtimes_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const SimJob& ja = *runtimes_[a].job;
      const SimJob& jb = *runtimes_[b].job;
      if (ja.arrival_time != jb.arrival_time) return ja.arrival_time < jb.arrival_time;
      return ja.id < jb.id;
    });
    for (std::size_t i = 0; i < runtimes_.size(); ++i) index_of_[runtimes_[i].job->id] = i;
    if (index_of_.size() != runtimes_.size()) throw ConfigError("simulation: duplicate job ids");
    for (const auto& f : config_.forced_resizes) {
      if (!index_of_.contains(f.job)) throw ConfigError("simulation: forced resize names unknown job");
      if (f.workers < 1 || f.workers > config_.cluster.capacity()) {
        throw ConfigError("simulation: forced resize worker count out of range");
      }
    }
    std::stable_sort(config_.forced_resizes.begin(), config_.forced_resizes.end(),
                     [](const ForcedResize& a, const ForcedResize& b) { return a.at_epoch < b.at_epoch; });
    forced_applied_.assign(config_.forced_resizes.size(), false);
  }

  SimReport run() {
    for (const auto& rt : runtimes_) push({rt.job->arrival_time, EventKind::kJobArrival, rt.job->id, 0});
    push({0.0, EventKind::kScheduleTick, 0, 0});

    while (!events_.empty()) {
      const SimEvent ev = events_.top();
      events_.pop();
      now_ = ev.timestamp;
      switch (ev.kind) {
        case EventKind::kJobCompletion:
          on_completion(ev);
          break;
        case EventKind::kJobArrival:
          on_arrival(ev);
          break;
        case EventKind::kScheduleTick:
          on_tick();
          break;
        case EventKind::kRestartComplete:
          break;
        case EventKind::kExploreStep:
          on_explore_step(ev);
          break;
      }
      ++events_processed_;
      audit();
    }
    return report();
  }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const { return b < a; }
  };

  void push(const SimEvent& ev) { events_.push(ev); }

  JobRuntime& runtime(JobId id) { return runtimes_[index_of_.at(id)]; }

  void advance(JobRuntime& rt) {
    const double t = now_;
    if (t <= rt.last_update) return;
    rt.gpu_seconds += static_cast<double>(rt.held) * (t - rt.last_update);
    if (rt.active > 0) {
      const double from = std::max(rt.last_update, rt.paused_until);
      if (t > from) {
        const double gained = (t - from) * rt.speed();
        rt.epochs = std::min(rt.job->true_epochs, rt.epochs + gained);
        rt.window_epochs += gained;
        rt.window_active += t - from;
      }
    }
    rt.last_update = t;
  }

  void schedule_completion(JobRuntime& rt) {
    ++rt.version;
    if (rt.active == 0) return;
    const double start = std::max(now_, rt.paused_until);
    const double left = std::max(0.0, rt.job->true_epochs - rt.epochs);
    push({start + left / rt.speed(), EventKind::kJobCompletion, rt.job->id, rt.version});
  }

  // Change the GPUs a job holds and the workers it trains with. Must be called
  // after advance(rt) at the current time.
  void set_allocation(JobRuntime& rt, int held, int active) {
    if (held == rt.held && active == rt.active) return;
    const bool was_training = rt.active > 0;
    if (was_training && active > 0 && active != rt.active) {
      const double until = now_ + config_.restart_cost;
      rt.paused_total += until - std::max(now_, rt.paused_until);
      rt.paused_until = until;
      ++rt.restarts;
      rt.lr = rescale_learning_rate(rt.lr, rt.active, active);
      if (config_.restart_cost > 0.0) push({until, EventKind::kRestartComplete, rt.job->id, 0});
    } else if (!was_training && active > 0) {
      if (rt.start_time < 0.0) rt.start_time = now_;
      rt.lr = rescale_learning_rate(rt.job->profile.base_lr, 1, active);
    }
    rt.held = held;
    rt.active = active;
    schedule_completion(rt);
  }

  int allocated() const {
    int total = 0;
    for (const auto& rt : runtimes_) total += rt.held;
    return total;
  }

  void audit() {
    const int total = allocated();
    peak_allocated_ = std::max(peak_allocated_, total);
    if (total > config_.cluster.capacity()) ++violations_;
    std::size_t live = 0;
    for (const auto& rt : runtimes_) {
      if (rt.phase != Phase::kPending && rt.phase != Phase::kDone) ++live;
    }
    peak_live_ = std::max(peak_live_, live);
  }

  void on_arrival(const SimEvent& ev) {
    JobRuntime& rt = runtime(ev.job);
    rt.phase = Phase::kQueued;
    rt.last_update = now_;
  }

  void on_completion(const SimEvent& ev) {
    JobRuntime& rt = runtime(ev.job);
    if (ev.version != rt.version || rt.phase == Phase::kDone) return;
    advance(rt);
    rt.epochs = rt.job->true_epochs;
    rt.completion_time = now_;
    rt.phase = Phase::kDone;
    rt.last_workers = rt.active;
    rt.held = 0;
    rt.active = 0;
    ++rt.version;
    ++done_;
  }

  void on_explore_step(const SimEvent& ev) {
    JobRuntime& rt = runtime(ev.job);
    if (rt.phase != Phase::kExploring || ev.version != rt.explore_index) return;
    advance(rt);
    if (rt.window_active > 0.0) {
      rt.samples.push_back({rt.active, rt.window_epochs / rt.window_active});
    }
    rt.window_epochs = 0.0;
    rt.window_active = 0.0;
    ++rt.explore_index;
    if (rt.explore_index < config_.explore_workers.size()) {
      set_allocation(rt, rt.held, config_.explore_workers[rt.explore_index]);
      push({rt.explore_start + config_.explore_window * static_cast<double>(rt.explore_index + 1),
            EventKind::kExploreStep, rt.job->id, rt.explore_index});
      return;
    }
    try {
      rt.fitted = fit_resource_model(rt.samples, static_cast<double>(rt.job->profile.m),
                                     static_cast<double>(rt.job->profile.n));
    } catch (const Error&) {
      rt.fitted.reset();
    }
    rt.phase = Phase::kRunning;
  }

  void observe_loss(JobRuntime& rt) {
    const double k = rt.ref_steps();
    const auto step = static_cast<std::int64_t>(std::llround(k));
    if (!rt.losses.empty() && rt.losses.back().k == step) return;
    rt.losses.push_back({step, rt.job->loss.predict(static_cast<double>(step))});
    if (rt.losses.size() >= 128) {
      std::vector<LossPoint> thinned;
      for (std::size_t i = 0; i < rt.losses.size(); i += 2) thinned.push_back(rt.losses[i]);
      if (thinned.back() != rt.losses.back()) thinned.push_back(rt.losses.back());
      rt.losses = std::move(thinned);
      rt.losses_at_fit = 0;
    }
  }

  // Remaining epochs as the scheduler sees them.
  double estimated_remaining(JobRuntime& rt) {
    const double spe = rt.job->profile.steps_per_epoch;
    if (config_.strategy.kind == StrategyKind::kPrecompute) {
      return remaining_epochs(rt.job->loss, rt.ref_steps(), config_.convergence_margin, spe);
    }
    // Refit whenever the history has doubled since the last fit.
    if (rt.losses_at_fit == 0 || rt.losses.size() >= 2 * rt.losses_at_fit) {
      try {
        rt.loss_fit = fit_loss_curve(rt.losses);
        rt.losses_at_fit = rt.losses.size();
      } catch (const Error&) {
        // Too little history; keep the previous estimate.
      }
    }
    if (!rt.loss_fit) return rt.job->true_epochs;
    return remaining_epochs(*rt.loss_fit, rt.ref_steps(), config_.convergence_margin, spe);
  }

  void apply_forced_resizes() {
    for (std::size_t i = 0; i < config_.forced_resizes.size(); ++i) {
      if (forced_applied_[i]) continue;
      const ForcedResize& f = config_.forced_resizes[i];
      JobRuntime& rt = runtime(f.job);
      if (rt.phase != Phase::kRunning || rt.active == 0 || rt.epochs < f.at_epoch) continue;
      const int free = config_.cluster.capacity() - allocated() + rt.held;
      if (f.workers > free) continue;  // retry next tick
      set_allocation(rt, f.workers, f.workers);
      forced_applied_[i] = true;
    }
  }

  void on_tick() {
    for (auto& rt : runtimes_) {
      if (rt.phase == Phase::kDone || rt.phase == Phase::kPending) continue;
      advance(rt);
      if (rt.active > 0 && config_.strategy.kind == StrategyKind::kExploratory) observe_loss(rt);
    }
    switch (config_.strategy.kind) {
      case StrategyKind::kFixed:
        schedule_fixed();
        break;
      case StrategyKind::kPrecompute:
        schedule_precompute();
        break;
      case StrategyKind::kExploratory:
        schedule_exploratory();
        break;
    }
    apply_forced_resizes();
    if (done_ < runtimes_.size()) {
      push({now_ + config_.scheduling_interval, EventKind::kScheduleTick, 0, 0});
    }
  }

  void schedule_fixed() {
    const int k = config_.strategy.fixed_workers;
    int free = config_.cluster.capacity() - allocated();
    for (std::size_t idx : order_) {
      JobRuntime& rt = runtimes_[idx];
      if (rt.phase != Phase::kQueued) continue;
      if (free < k) break;  // strict FIFO: later jobs wait behind the head
      rt.phase = Phase::kRunning;
      set_allocation(rt, k, k);
      free -= k;
    }
  }

  // Live jobs in FIFO order, optionally filtered by phase.
  template <class Pred>
  std::vector<std::size_t> live_jobs(Pred pred) const {
    std::vector<std::size_t> out;
    for (std::size_t idx : order_) {
      const auto& rt = runtimes_[idx];
      if (rt.phase != Phase::kPending && rt.phase != Phase::kDone && pred(rt)) out.push_back(idx);
    }
    return out;
  }

  template <SpeedModel Model, class MakeModel>
  void plan_and_apply(const std::vector<std::size_t>& members, int capacity, MakeModel make_model) {
    if (members.empty() || capacity <= 0) return;
    std::vector<JobState<Model>> states;
    states.reserve(members.size());
    for (std::size_t idx : members) {
      JobRuntime& rt = runtimes_[idx];
      JobState<Model> s;
      s.job_id = rt.job->id;
      s.remaining_epochs = estimated_remaining(rt);
      s.model = make_model(rt);
      s.current_workers = rt.planned;
      s.arrival_time = rt.job->arrival_time;
      s.max_workers = config_.max_workers;
      states.push_back(std::move(s));
    }
    const AllocationPlan plan = doubling_allocate(states, capacity, !config_.allow_shrink);
    for (std::size_t idx : members) {
      JobRuntime& rt = runtimes_[idx];
      const int w = plan.workers(rt.job->id);
      rt.phase = Phase::kRunning;
      rt.planned = w;
      set_allocation(rt, w, w);
    }
  }

  // Admit live jobs in FIFO order while each can get at least one GPU.
  std::vector<std::size_t> admitted(const std::vector<std::size_t>& candidates, int capacity) const {
    std::vector<std::size_t> out;
    int used = 0;
    for (std::size_t idx : candidates) {
      const auto& rt = runtimes_[idx];
      const int need = config_.allow_shrink ? 1 : std::max(1, rt.planned);
      if (used + need > capacity) {
        if (rt.planned > 0) throw Error("simulation: running job lost its allocation");
        break;
      }
      used += need;
      out.push_back(idx);
    }
    return out;
  }

  void schedule_precompute() {
    const auto live = live_jobs([](const JobRuntime&) { return true; });
    const int capacity = config_.cluster.capacity();
    plan_and_apply<ProfileSpeed>(admitted(live, capacity), capacity,
                                 [](const JobRuntime& rt) { return rt.truth; });
  }

  void schedule_exploratory() {
    const int capacity = config_.cluster.capacity();
    const int reserve = config_.explore_gpus();
    auto exploring = live_jobs([](const JobRuntime& rt) { return rt.phase == Phase::kExploring; });
    auto explored = live_jobs([](const JobRuntime& rt) { return rt.phase == Phase::kRunning; });
    const auto queued = live_jobs([](const JobRuntime& rt) { return rt.phase == Phase::kQueued; });

    int explored_floor = 0;
    for (std::size_t idx : explored) {
      explored_floor += config_.allow_shrink ? 1 : std::max(1, runtimes_[idx].planned);
    }
    for (std::size_t idx : queued) {
      const int needed = reserve * static_cast<int>(exploring.size() + 1) + explored_floor;
      if (needed > capacity) break;
      JobRuntime& rt = runtimes_[idx];
      rt.phase = Phase::kExploring;
      rt.explore_start = now_;
      rt.explore_index = 0;
      rt.window_epochs = 0.0;
      rt.window_active = 0.0;
      exploring.push_back(idx);
    }
    // While jobs still queue, one reservation stays free for the queue head so
    // grow-only allocations cannot starve admission. Explored floors always fit.
    const bool backlog = std::any_of(queued.begin(), queued.end(),
                                     [this](std::size_t idx) { return runtimes_[idx].phase == Phase::kQueued; });
    const int slack = backlog ? reserve : 0;
    const int left = std::max(explored_floor, capacity - reserve * static_cast<int>(exploring.size()) - slack);
    plan_and_apply<ResourceModel>(admitted(explored, left), left, [](const JobRuntime& rt) {
      return rt.fitted ? *rt.fitted : ResourceModel{0.0, 0.0, 0.0, 1.0, 1.0, 1.0};
    });
    for (std::size_t idx : exploring) {
      JobRuntime& rt = runtimes_[idx];
      if (rt.held == 0) {
        set_allocation(rt, reserve, config_.explore_workers.front());
        push({now_ + config_.explore_window, EventKind::kExploreStep, rt.job->id, 0});
      }
    }
  }

  SimReport report() const {
    SimReport r;
    r.strategy = config_.strategy.name();
    r.capacity = config_.cluster.capacity();
    r.total_jobs = runtimes_.size();
    double total = 0.0;
    std::vector<JobRecord> records;
    for (const auto& rt : runtimes_) {
      JobRecord rec;
      rec.id = rt.job->id;
      rec.arrival = rt.job->arrival_time;
      rec.start = rt.start_time;
      rec.completion = rt.completion_time;
      rec.restarts = rt.restarts;
      rec.paused_seconds = rt.paused_total;
      rec.gpu_seconds = rt.gpu_seconds;
      rec.epochs = rt.epochs;
      rec.learning_rate = rt.lr;
      rec.final_workers = rt.last_workers;
      records.push_back(rec);
      total += rt.completion_time - rt.job->arrival_time;
      r.makespan = std::max(r.makespan, rt.completion_time);
    }
    std::sort(records.begin(), records.end(),
              [](const JobRecord& a, const JobRecord& b) { return a.id < b.id; });
    r.jobs = std::move(records);
    r.mean_completion_hours = total / static_cast<double>(runtimes_.size()) / 3600.0;
    r.peak_simultaneous_jobs = peak_live_;
    r.peak_allocated_gpus = peak_allocated_;
    r.capacity_violations = violations_;
    r.events_processed = events_processed_;
    return r;
  }

  SimConfig config_;
  std::vector<JobRuntime> runtimes_;
  std::vector<std::size_t> order_;
  std::map<JobId, std::size_t> index_of_;
  std::vector<bool> forced_applied_;
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> events_;
  double now_ = 0.0;
  std::size_t done_ = 0;
  std::size_t peak_live_ = 0;
  int peak_allocated_ = 0;
  std::size_t violations_ = 0;
  std::size_t events_processed_ = 0;
};

}  // namespace sim_detail

inline SimReport run_simulation(const SimConfig& config, std::span<const SimJob> jobs) {
  return sim_detail::Simulation(config, jobs).run();
}

inline SimReport run_simulation(const SimConfig& config, const Workload& workload) {
  return run_simulation(config, std::span<const SimJob>(workload.jobs));
}

}  // namespace ringsched
