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

// IDAssign: a local-ratio 1/6-approximation for the joint offloading and
// resource allocation problem.
//
// Each layer drops instances whose residual weight is <= 0, picks a pivot
// (light instances before heavy ones, smallest max(b~, c~) first), and
// subtracts from every live instance
//
//   w1(l) = w(pivot)                 if l belongs to the pivot's job
//         = w(pivot) * (b~_l + c~_l) if l is on the pivot's server only
//         = 0                        otherwise.
//
// The pivots are then replayed innermost layer first, each one added to
// the solution when it still fits. The recursion is unrolled into a
// forward pass and a backward pass over an explicit layer stack.

#ifndef MEC_LOCALRATIO_HPP_
#define MEC_LOCALRATIO_HPP_

#include <span>
#include <vector>

#include "mec/enumerate.hpp"
#include "mec/kernels.hpp"
#include "mec/model.hpp"

namespace mec {

// Residual weights at or below this are treated as zero (dropped).
inline constexpr double kDropEpsilon = 1e-12;

struct LayerTrace {
  int layer_index = 0;
  InstanceId pivot = -1;
  double pivot_weight = 0.0;
  bool pivot_light = false;
};

// Called once per layer with the instances live at the start of the layer
// and their weights before and after the decomposition. Attaching an
// observer costs O(|pool|) per layer.
class LayerObserver {
 public:
  virtual ~LayerObserver() = default;
  virtual void on_layer(const LayerTrace& layer, std::span<const InstanceId> live,
                        std::span<const double> before, std::span<const double> after) = 0;
};

struct IdAssignOptions {
  const kernels::KernelTable* kernels = nullptr;  // null: kernels::active_kernels()
  LayerObserver* observer = nullptr;
};

struct IdAssignResult {
  Solution solution;
  std::vector<LayerTrace> layers;
};

// Pivot rule: among live light instances (or, if none, live heavy ones) the
// smallest max(b~, c~); ties by smaller min(b~, c~), then larger weight, then
// smaller id. `weights` is indexed by instance id. Throws
// std::invalid_argument on an empty live set.
InstanceId select_pivot(std::span<const InstanceId> live, std::span<const double> weights,
                        const InstancePool& pool);

// Both vectors are indexed by instance id; entries outside `live` are
// w1 = 0 and w2 = weights.
struct Decomposition {
  std::vector<double> w1;
  std::vector<double> w2;
};

Decomposition decompose(std::span<const double> weights, InstanceId pivot,
                        std::span<const InstanceId> live, const InstancePool& pool);

Solution idassign(const InstancePool& pool, const Problem& problem);
IdAssignResult idassign_traced(const InstancePool& pool, const Problem& problem,
                               const IdAssignOptions& options = {});

// Straightforward O(|pool|^2) transcription built directly on select_pivot
// and decompose. Produces the same layers and solution as idassign; used as
// a cross-check.
IdAssignResult idassign_reference(const InstancePool& pool, const Problem& problem);

}  // namespace mec

#endif  // MEC_LOCALRATIO_HPP_
