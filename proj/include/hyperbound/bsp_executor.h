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

#ifndef HYPERBOUND_BSP_EXECUTOR_H_
#define HYPERBOUND_BSP_EXECUTOR_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperbound/engine.h"
#include "hyperbound/hypergraph.h"

namespace hyperbound {

// Owner worker of an entity under `id mod worker_count` sharding.
constexpr std::size_t WorkerOf(std::uint64_t id, std::size_t worker_count) {
  return static_cast<std::size_t>(id % worker_count);
}

// Multi-worker execution of the bounding rounds.
//
// Per round: workers compute proposals for their vertex shard and route each
// (user -> edge) message into a per-destination outbox; after a barrier each
// worker tallies the messages addressed to its edge shard and reports the
// unanimously proposed edges; the commit is then applied once, single
// threaded, in ascending id order. Workers only read the previous round's
// committed state, so the result is identical to Run() for every worker
// count.
absl::StatusOr<RunResult> ParallelRun(const Hypergraph& g,
                                      const CapacityMap& caps,
                                      const EngineConfig& config,
                                      std::size_t worker_count);

struct PhaseCounts {
  std::size_t round = 0;
  // user -> edge proposal messages.
  std::uint64_t proposal_messages = 0;
  // edge -> owner commit notifications.
  std::uint64_t commit_messages = 0;

  friend bool operator==(const PhaseCounts&, const PhaseCounts&) = default;
};

struct PhaseStats {
  std::vector<PhaseCounts> rounds;
  std::uint64_t total_proposal_messages = 0;
  std::uint64_t total_commit_messages = 0;
};

PhaseStats ComputePhaseStats(const Hypergraph& g, const RoundTrace& trace);

}  // namespace hyperbound

#endif  // HYPERBOUND_BSP_EXECUTOR_H_
