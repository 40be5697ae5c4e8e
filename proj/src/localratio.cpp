// Copyright 2026 The MEC Offload Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mec/localratio.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mec {

namespace {

struct StaticKey {
  bool heavy;
  Ratio max_norm;
  Ratio min_norm;

  friend std::strong_ordering operator<=>(const StaticKey& a, const StaticKey& b) {
    if (auto c = a.heavy <=> b.heavy; c != 0) return c;
    if (auto c = a.max_norm <=> b.max_norm; c != 0) return c;
    return a.min_norm <=> b.min_norm;
  }
  friend bool operator==(const StaticKey&, const StaticKey&) = default;
};

StaticKey static_key(const AssignmentInstance& inst) {
  const Ratio b = inst.exact_norm_bu();
  const Ratio c = inst.exact_norm_cu();
  return {!inst.is_light(), std::max(b, c), std::min(b, c)};
}

// True when a is preferred over b as pivot.
bool pivot_before(const AssignmentInstance& a, double wa, const AssignmentInstance& b, double wb) {
  const auto ka = static_key(a);
  const auto kb = static_key(b);
  if (ka != kb) return ka < kb;
  if (wa != wb) return wa > wb;
  return a.instance_id < b.instance_id;
}

Solution replay_layers(const std::vector<LayerTrace>& layers, const InstancePool& pool,
                       const Problem& problem) {
  Solution solution(problem);
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    const AssignmentInstance& inst = pool[it->pivot];
    if (check_add_feasible(solution, inst, problem)) solution.add(inst);
  }
  return solution;
}

// Forward pass with weights stored per server in structure-of-arrays lanes
// so one layer's server-wide update is a single kernel call.
class Engine {
 public:
  Engine(const InstancePool& pool, const IdAssignOptions& options)
      : pool_(pool),
        kernels_(options.kernels != nullptr ? *options.kernels : kernels::active_kernels()),
        observer_(options.observer),
        lanes_(pool.num_servers()),
        slot_(pool.size(), -1),
        job_lists_(pool.num_jobs()) {
    for (int k = 0; k < pool.num_servers(); ++k) {
      Lane& lane = lanes_[k];
      for (InstanceId id : pool.server_instances(k)) {
        const AssignmentInstance& inst = pool[id];
        if (!(inst.utility > kDropEpsilon)) continue;
        slot_[id] = static_cast<std::int32_t>(lane.id.size());
        lane.id.push_back(id);
        lane.job.push_back(inst.job_index);
        lane.coef.push_back(inst.norm_bu + inst.norm_cu);
        lane.weight.push_back(inst.utility);
      }
    }
    for (int j = 0; j < pool.num_jobs(); ++j) {
      for (InstanceId id : pool.job_instances(j))
        if (slot_[id] >= 0) job_lists_[j].push_back(id);
    }

    order_.reserve(pool.size());
    for (const auto& inst : pool.all())
      if (slot_[inst.instance_id] >= 0) order_.push_back(inst.instance_id);
    std::vector<StaticKey> keys;
    keys.reserve(pool.size());
    for (const auto& inst : pool.all()) keys.push_back(static_key(inst));
    std::stable_sort(order_.begin(), order_.end(),
                     [&](InstanceId a, InstanceId b) { return keys[a] < keys[b]; });
    for (std::size_t i = 0; i < order_.size(); ++i) {
      if (i == 0 || keys[order_[i]] != keys[order_[i - 1]]) bucket_begin_.push_back(i);
    }
    bucket_end_.resize(bucket_begin_.size());
    for (std::size_t b = 0; b < bucket_begin_.size(); ++b)
      bucket_end_[b] = b + 1 < bucket_begin_.size() ? bucket_begin_[b + 1] : order_.size();
  }

  std::vector<LayerTrace> run() {
    std::vector<LayerTrace> layers;
    std::vector<InstanceId> live;
    std::vector<double> before;
    std::vector<double> after;
    for (;;) {
      const InstanceId pivot = next_pivot();
      if (pivot < 0) break;
      const AssignmentInstance& p = pool_[pivot];
      LayerTrace layer{static_cast<int>(layers.size()) + 1, pivot, weight(pivot), p.is_light()};
      if (layers.size() >= pool_.size())
        throw InvariantViolation("IDAssign produced more layers than instances");
      if (observer_ != nullptr) snapshot(live, before);

      const std::size_t dead = sweep_server(p.server_index, p.job_index, layer.pivot_weight);
      update_job(p.job_index, p.server_index, layer.pivot_weight);
      if (observer_ != nullptr) {
        after.clear();
        for (InstanceId id : live) after.push_back(weight(id));
        observer_->on_layer(layer, live, before, after);
      }
      if (2 * dead > lanes_[p.server_index].id.size()) compact(p.server_index);
      layers.push_back(layer);
    }
    return layers;
  }

 private:
  struct Lane {
    std::vector<double> weight;
    std::vector<std::int32_t> job;
    std::vector<double> coef;
    std::vector<InstanceId> id;
  };

  // Weight of an instance that still has a lane slot.
  double weight(InstanceId id) const { return lanes_[pool_[id].server_index].weight[slot_[id]]; }
  bool alive(InstanceId id) const { return slot_[id] >= 0 && weight(id) > kDropEpsilon; }

  InstanceId next_pivot() {
    while (bucket_ < bucket_begin_.size()) {
      std::size_t end = bucket_end_[bucket_];
      InstanceId best = -1;
      double best_w = 0.0;
      for (std::size_t i = bucket_begin_[bucket_]; i < end;) {
        const InstanceId id = order_[i];
        if (!alive(id)) {
          order_[i] = order_[--end];
          continue;
        }
        const double w = weight(id);
        if (best < 0 || w > best_w || (w == best_w && id < best)) {
          best = id;
          best_w = w;
        }
        ++i;
      }
      bucket_end_[bucket_] = end;
      if (best >= 0) return best;
      ++bucket_;
    }
    return -1;
  }

  std::size_t sweep_server(int server, int job, double pivot_weight) {
    Lane& lane = lanes_[server];
    return kernels_.decompose_sweep(lane.weight, lane.job, lane.coef, job, pivot_weight,
                                    kDropEpsilon);
  }

  // Same-job instances on other servers lose the full pivot weight.
  void update_job(int job, int pivot_server, double pivot_weight) {
    std::vector<InstanceId>& ids = job_lists_[job];
    std::size_t out = 0;
    for (InstanceId id : ids) {
      if (!alive(id)) continue;
      const int k = pool_[id].server_index;
      if (k != pivot_server) {
        double& w = lanes_[k].weight[slot_[id]];
        w = w - pivot_weight;
      }
      ids[out++] = id;
    }
    ids.resize(out);
  }

  void compact(int server) {
    Lane& lane = lanes_[server];
    std::size_t out = 0;
    for (std::size_t i = 0; i < lane.id.size(); ++i) {
      const InstanceId id = lane.id[i];
      if (!(lane.weight[i] > kDropEpsilon)) {
        slot_[id] = -1;
        continue;
      }
      slot_[id] = static_cast<std::int32_t>(out);
      lane.id[out] = id;
      lane.job[out] = lane.job[i];
      lane.coef[out] = lane.coef[i];
      lane.weight[out] = lane.weight[i];
      ++out;
    }
    lane.id.resize(out);
    lane.job.resize(out);
    lane.coef.resize(out);
    lane.weight.resize(out);
  }

  void snapshot(std::vector<InstanceId>& live, std::vector<double>& before) const {
    live.clear();
    before.clear();
    for (const auto& inst : pool_.all()) {
      if (!alive(inst.instance_id)) continue;
      live.push_back(inst.instance_id);
      before.push_back(weight(inst.instance_id));
    }
  }

  const InstancePool& pool_;
  const kernels::KernelTable& kernels_;
  LayerObserver* observer_;
  std::vector<Lane> lanes_;
  std::vector<std::int32_t> slot_;
  std::vector<std::vector<InstanceId>> job_lists_;
  std::vector<InstanceId> order_;
  std::vector<std::size_t> bucket_begin_;
  std::vector<std::size_t> bucket_end_;
  std::size_t bucket_ = 0;
};

}  // namespace

InstanceId select_pivot(std::span<const InstanceId> live, std::span<const double> weights,
                        const InstancePool& pool) {
  if (live.empty()) throw std::invalid_argument("select_pivot: empty live set");
  InstanceId best = live.front();
  for (InstanceId id : live.subspan(1))
    if (pivot_before(pool[id], weights[id], pool[best], weights[best])) best = id;
  return best;
}

Decomposition decompose(std::span<const double> weights, InstanceId pivot,
                        std::span<const InstanceId> live, const InstancePool& pool) {
  Decomposition d{std::vector<double>(weights.size(), 0.0),
                  std::vector<double>(weights.begin(), weights.end())};
  const AssignmentInstance& p = pool[pivot];
  const double pw = weights[pivot];
  for (InstanceId id : live) {
    const AssignmentInstance& inst = pool[id];
    double w1 = 0.0;
    if (inst.job_index == p.job_index) {
      w1 = pw * 1.0;
    } else if (inst.server_index == p.server_index) {
      w1 = pw * (inst.norm_bu + inst.norm_cu);
    }
    d.w1[id] = w1;
    d.w2[id] = weights[id] - w1;
  }
  return d;
}

IdAssignResult idassign_traced(const InstancePool& pool, const Problem& problem,
                               const IdAssignOptions& options) {
  IdAssignResult result;
  result.layers = Engine(pool, options).run();
  result.solution = replay_layers(result.layers, pool, problem);
  return result;
}

Solution idassign(const InstancePool& pool, const Problem& problem) {
  return idassign_traced(pool, problem).solution;
}

IdAssignResult idassign_reference(const InstancePool& pool, const Problem& problem) {
  std::vector<double> w(pool.size());
  std::vector<InstanceId> live(pool.size());
  for (const auto& inst : pool.all()) {
    w[inst.instance_id] = inst.utility;
    live[inst.instance_id] = inst.instance_id;
  }
  IdAssignResult result;
  for (;;) {
    std::erase_if(live, [&](InstanceId id) { return w[id] <= kDropEpsilon; });
    if (live.empty()) break;
    if (result.layers.size() >= pool.size())
      throw InvariantViolation("IDAssign produced more layers than instances");
    const InstanceId pivot = select_pivot(live, w, pool);
    result.layers.push_back({static_cast<int>(result.layers.size()) + 1, pivot, w[pivot],
                             pool[pivot].is_light()});
    w = decompose(w, pivot, live, pool).w2;
  }
  result.solution = replay_layers(result.layers, pool, problem);
  return result;
}

}  // namespace mec
