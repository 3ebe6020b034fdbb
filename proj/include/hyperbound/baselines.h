//
// Copyright 2026 The Hyperbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef HYPERBOUND_BASELINES_H_
#define HYPERBOUND_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperbound/hypergraph.h"
#include "hyperbound/ordering.h"

namespace hyperbound {

enum class BaselineMethod { kGreedy, kExact };

std::string_view BaselineMethodName(BaselineMethod method);

struct BaselineResult {
  std::vector<EdgeId> matching;  // ascending
  BaselineMethod method = BaselineMethod::kGreedy;
  std::optional<std::size_t> optimum;  // exact only
  std::uint64_t instance_fingerprint = 0;
};

// Sequential scan in preference order: an edge is kept iff every owner still
// has spare capacity. The result is maximal with respect to the scan.
absl::StatusOr<BaselineResult> Greedy(const Hypergraph& g,
                                      const CapacityMap& caps,
                                      const OrderingSpec& ordering);

// Same scan over an explicit order; `scan_order` must list every edge index of
// `g` exactly once.
BaselineResult GreedyInOrder(const Hypergraph& g, const CapacityMap& caps,
                             std::span<const EdgeIndex> scan_order);

inline constexpr std::size_t kDefaultExactLimit = 24;

// Maximum-cardinality feasible edge set by depth-first branch and bound over
// include/exclude decisions. TooLarge when the graph has more than `limit`
// edges.
absl::StatusOr<BaselineResult> ExactOptimal(
    const Hypergraph& g, const CapacityMap& caps,
    std::size_t limit = kDefaultExactLimit);

}  // namespace hyperbound

#endif  // HYPERBOUND_BASELINES_H_
