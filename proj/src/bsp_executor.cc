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

#include "hyperbound/bsp_executor.h"

#include <algorithm>
#include <thread>
#include <utility>

#include "src/strings.h"
#include "hyperbound/errors.h"
#include "src/engine_internal.h"

namespace hyperbound {
namespace {

// Runs fn(worker) for every worker and returns after all of them finish.
// Worker 0 runs on the calling thread.
template <typename Fn>
void RunPhase(std::size_t worker_count, const Fn& fn) {
  if (worker_count == 1) {
    fn(std::size_t{0});
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(worker_count - 1);
  for (std::size_t w = 1; w < worker_count; ++w) {
    threads.emplace_back([&fn, w] { fn(w); });
  }
  fn(std::size_t{0});
}

struct WorkerBuffers {
  // outbox[dest]: edges this worker's users proposed, routed to the edge's
  // owning worker.
  std::vector<std::vector<EdgeIndex>> outbox;
  std::vector<EdgeIndex> scratch;
  std::vector<EdgeIndex> unanimous;
};

}  // namespace

absl::StatusOr<RunResult> ParallelRun(const Hypergraph& g,
                                      const CapacityMap& caps,
                                      const EngineConfig& config,
                                      std::size_t worker_count) {
  if (worker_count == 0) {
    return MakeError(ErrorKind::kInvalidConfig, "worker count must be >= 1");
  }
  if (absl::Status s = ValidateConfig(config); !s.ok()) return s;
  absl::StatusOr<PreferenceIndex> preferences =
      PreferenceIndex::Build(g, config.ordering);
  if (!preferences.ok()) return preferences.status();

  const std::size_t workers = worker_count;
  std::vector<std::vector<VertexIndex>> vertex_shard(workers);
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    vertex_shard[WorkerOf(g.vertices()[v].value, workers)].push_back(v);
  }
  std::vector<std::uint32_t> edge_owner(g.num_edges());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    edge_owner[e] =
        static_cast<std::uint32_t>(WorkerOf(g.edge_ids()[e].value, workers));
  }

  RunResult result;
  RoundState& state = result.final_state;
  state = InitState(g, caps);
  std::vector<std::uint32_t> cursor(g.num_vertices(), 0);
  std::vector<std::uint32_t> tally(g.num_edges(), 0);
  std::vector<WorkerBuffers> buffers(workers);
  for (WorkerBuffers& b : buffers) b.outbox.resize(workers);
  std::vector<std::size_t> proposal_count(workers, 0);

  while (state.eligible_count > 0 &&
         (!config.max_rounds.has_value() || state.round < *config.max_rounds)) {
    const RoundState& committed = state;

    RunPhase(workers, [&](std::size_t w) {
      WorkerBuffers& b = buffers[w];
      for (auto& box : b.outbox) box.clear();
      std::size_t made = 0;
      for (VertexIndex v : vertex_shard[w]) {
        b.scratch.clear();
        made += internal::ProposeFor(g, caps, committed, *preferences, v,
                                     &cursor[v], b.scratch);
        for (EdgeIndex e : b.scratch) b.outbox[edge_owner[e]].push_back(e);
      }
      proposal_count[w] = made;
    });

    RunPhase(workers, [&](std::size_t w) {
      WorkerBuffers& b = buffers[w];
      b.unanimous.clear();
      for (std::size_t src = 0; src < workers; ++src) {
        for (EdgeIndex e : buffers[src].outbox[w]) {
          if (internal::Tally(g, e, tally)) b.unanimous.push_back(e);
        }
      }
      for (std::size_t src = 0; src < workers; ++src) {
        for (EdgeIndex e : buffers[src].outbox[w]) tally[e] = 0;
      }
    });

    std::vector<EdgeIndex> accepted;
    RoundRecord record;
    record.round = state.round + 1;
    for (std::size_t w = 0; w < workers; ++w) {
      record.proposal_count += proposal_count[w];
      accepted.insert(accepted.end(), buffers[w].unanimous.begin(),
                      buffers[w].unanimous.end());
    }
    std::sort(accepted.begin(), accepted.end());
    record.accepted.reserve(accepted.size());
    for (EdgeIndex e : accepted) record.accepted.push_back(g.edge_ids()[e]);

    absl::StatusOr<CommitResult> commit =
        ApplyAccepted(g, caps, record.accepted, state);
    if (!commit.ok()) return commit.status();
    record.newly_saturated = std::move(commit->newly_saturated);
    const bool idle = record.accepted.empty();
    result.trace.push_back(std::move(record));
    if (idle && config.early_stop) break;
  }
  result.matching = state.Matching(g);
  return result;
}

PhaseStats ComputePhaseStats(const Hypergraph& g, const RoundTrace& trace) {
  PhaseStats stats;
  for (const RoundRecord& record : trace) {
    PhaseCounts counts;
    counts.round = record.round;
    counts.proposal_messages = record.proposal_count;
    for (EdgeId id : record.accepted) {
      if (std::optional<EdgeIndex> e = g.FindEdge(id)) {
        counts.commit_messages += g.owners(*e).size();
      }
    }
    stats.total_proposal_messages += counts.proposal_messages;
    stats.total_commit_messages += counts.commit_messages;
    stats.rounds.push_back(counts);
  }
  return stats;
}

}  // namespace hyperbound
