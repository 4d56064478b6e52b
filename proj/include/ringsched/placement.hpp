#pragma once

// Mapping allocated worker counts onto physical nodes.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ringsched/allocator.hpp"
#include "ringsched/error.hpp"

namespace ringsched {

struct ClusterConfig {
  int gpus_per_node = 8;
  int node_count = 8;

  int capacity() const { return gpus_per_node * node_count; }
  void validate() const {
    if (gpus_per_node < 1 || node_count < 1) {
      throw ConfigError("cluster: gpus_per_node and node_count must be >= 1");
    }
  }
  friend bool operator==(const ClusterConfig&, const ClusterConfig&) = default;
};

struct NodeSlice {
  int node = 0;
  int gpus = 0;
  friend bool operator==(const NodeSlice&, const NodeSlice&) = default;
};

struct Placement {
  std::map<JobId, std::vector<NodeSlice>> jobs;

  int nodes_used(JobId id) const {
    const auto it = jobs.find(id);
    return it == jobs.end() ? 0 : static_cast<int>(it->second.size());
  }
  std::vector<int> node_load(int node_count) const {
    std::vector<int> load(static_cast<std::size_t>(node_count), 0);
    for (const auto& [id, slices] : jobs) {
      for (const auto& s : slices) load[static_cast<std::size_t>(s.node)] += s.gpus;
    }
    return load;
  }
};

// First-fit decreasing. Jobs are taken largest first (ties by id). A job that
// fits on one node goes to the first node with room; larger jobs take the
// emptiest nodes first, which minimizes the nodes that job spans.
// `free_gpus` is the per-node free capacity before placement.
inline Placement place_tasks(const AllocationPlan& plan, const ClusterConfig& cluster,
                             std::vector<int> free_gpus) {
  cluster.validate();
  if (free_gpus.size() != static_cast<std::size_t>(cluster.node_count)) {
    throw DimensionMismatchError("place_tasks: free-slot vector does not match node count");
  }
  std::vector<std::pair<JobId, int>> order;
  for (const auto& [id, a] : plan.jobs) {
    if (a.workers < 0) throw DomainError("place_tasks: negative worker count");
    if (a.workers > 0) order.emplace_back(id, a.workers);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  const int total_free = std::accumulate(free_gpus.begin(), free_gpus.end(), 0);
  const int demand = std::accumulate(order.begin(), order.end(), 0,
                                     [](int acc, const auto& e) { return acc + e.second; });
  if (demand > total_free) {
    throw InfeasiblePlacementError("place_tasks: plan needs " + std::to_string(demand) +
                                   " GPUs but only " + std::to_string(total_free) + " are free");
  }

  Placement placement;
  for (const auto& [id, workers] : order) {
    auto& slices = placement.jobs[id];
    const auto fit = std::find_if(free_gpus.begin(), free_gpus.end(),
                                  [w = workers](int f) { return f >= w; });
    if (fit != free_gpus.end()) {
      *fit -= workers;
      slices.push_back({static_cast<int>(fit - free_gpus.begin()), workers});
      continue;
    }
    std::vector<int> nodes(free_gpus.size());
    std::iota(nodes.begin(), nodes.end(), 0);
    std::stable_sort(nodes.begin(), nodes.end(), [&](int a, int b) {
      return free_gpus[static_cast<std::size_t>(a)] > free_gpus[static_cast<std::size_t>(b)];
    });
    int left = workers;
    for (int node : nodes) {
      if (left == 0) break;
      int& f = free_gpus[static_cast<std::size_t>(node)];
      const int take = std::min(f, left);
      if (take == 0) break;
      f -= take;
      left -= take;
      slices.push_back({node, take});
    }
    if (left > 0) {
      throw InfeasiblePlacementError("place_tasks: cannot place job " + std::to_string(id));
    }
    std::sort(slices.begin(), slices.end(),
              [](const NodeSlice& a, const NodeSlice& b) { return a.node < b.node; });
  }
  return placement;
}

inline Placement place_tasks(const AllocationPlan& plan, const ClusterConfig& cluster) {
  cluster.validate();
  return place_tasks(plan, cluster,
                     std::vector<int>(static_cast<std::size_t>(cluster.node_count),
                                      cluster.gpus_per_node));
}

}  // namespace ringsched
