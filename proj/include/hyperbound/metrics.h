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

#ifndef HYPERBOUND_METRICS_H_
#define HYPERBOUND_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperbound/baselines.h"
#include "hyperbound/engine.h"
#include "hyperbound/hypergraph.h"

namespace hyperbound {

struct RunReport {
  std::size_t matched_count = 0;
  std::size_t total_edges = 0;
  // matched_count / total_edges; 0 for an empty graph.
  double retention = 0.0;
  std::size_t rounds_executed = 0;
  std::vector<std::size_t> per_round_accepted;
  // degree in (V, M) -> number of users with that degree, over all of V.
  std::map<std::uint64_t, std::size_t> degree_histogram;
  // Users whose degree in M equals their capacity (b(u) = 0 users included).
  std::size_t saturated_users = 0;
  std::uint64_t instance_fingerprint = 0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

// Summarizes a selection. Degrees are recounted from `matching` alone, so the
// report is an audit of the engine rather than a copy of its state.
// InfeasibleInput when some user exceeds its capacity or `matching` names an
// edge outside the graph.
absl::StatusOr<RunReport> Report(const Hypergraph& g, const CapacityMap& caps,
                                 std::span<const EdgeId> matching);
absl::StatusOr<RunReport> Report(const Hypergraph& g, const CapacityMap& caps,
                                 std::span<const EdgeId> matching,
                                 const RoundTrace& trace);

// Recounted degree of each vertex (dense order) in (V, matching).
absl::StatusOr<std::vector<std::uint64_t>> DegreesIn(
    const Hypergraph& g, std::span<const EdgeId> matching);

struct Outcome {
  std::string label;
  std::size_t matched_count = 0;
  std::uint64_t instance_fingerprint = 0;

  static Outcome From(std::string label, const RunReport& report);
  static Outcome From(std::string label, const BaselineResult& result);
};

struct Comparison {
  std::string numerator_label;
  std::string denominator_label;
  std::size_t numerator = 0;
  std::size_t denominator = 0;
  // a / b; 1 when both are 0; nullopt (undefined) when only b is 0.
  std::optional<double> ratio;
};

// InstanceMismatch when the two outcomes come from different instances.
absl::StatusOr<Comparison> Compare(const Outcome& a, const Outcome& b);

}  // namespace hyperbound

#endif  // HYPERBOUND_METRICS_H_
