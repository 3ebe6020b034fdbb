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

#include "hyperbound/metrics.h"

#include <numeric>
#include <utility>

#include "src/strings.h"
#include "hyperbound/errors.h"

namespace hyperbound {

absl::StatusOr<std::vector<std::uint64_t>> DegreesIn(
    const Hypergraph& g, std::span<const EdgeId> matching) {
  std::vector<std::uint64_t> degree(g.num_vertices(), 0);
  std::vector<std::uint8_t> seen(g.num_edges(), 0);
  for (EdgeId id : matching) {
    std::optional<EdgeIndex> e = g.FindEdge(id);
    if (!e.has_value()) {
      return MakeError(ErrorKind::kInfeasibleInput,
                       internal::StrCat("edge ", id.value, " is not in the graph"));
    }
    if (seen[*e]++) {
      return MakeError(ErrorKind::kInfeasibleInput,
                       internal::StrCat("edge ", id.value, " selected twice"));
    }
    for (VertexIndex v : g.owner_indices(*e)) ++degree[v];
  }
  return degree;
}

absl::StatusOr<RunReport> Report(const Hypergraph& g, const CapacityMap& caps,
                                 std::span<const EdgeId> matching) {
  absl::StatusOr<std::vector<std::uint64_t>> degree = DegreesIn(g, matching);
  if (!degree.ok()) return degree.status();

  RunReport report;
  report.matched_count = matching.size();
  report.total_edges = g.num_edges();
  report.retention = g.num_edges() == 0
                         ? 0.0
                         : static_cast<double>(matching.size()) /
                               static_cast<double>(g.num_edges());
  report.instance_fingerprint = g.Fingerprint();
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    const std::uint64_t capacity = caps.Lookup(g.vertices()[v]);
    const std::uint64_t d = (*degree)[v];
    if (d > capacity) {
      return MakeError(ErrorKind::kInfeasibleInput,
                       internal::StrCat("vertex ", g.vertices()[v].value,
                                    " has degree ", d, " > capacity ",
                                    capacity));
    }
    ++report.degree_histogram[d];
    if (d == capacity) ++report.saturated_users;
  }
  return report;
}

absl::StatusOr<RunReport> Report(const Hypergraph& g, const CapacityMap& caps,
                                 std::span<const EdgeId> matching,
                                 const RoundTrace& trace) {
  absl::StatusOr<RunReport> report = Report(g, caps, matching);
  if (!report.ok()) return report;
  report->rounds_executed = trace.size();
  for (const RoundRecord& record : trace) {
    report->per_round_accepted.push_back(record.accepted.size());
  }
  const std::size_t accepted =
      std::accumulate(report->per_round_accepted.begin(),
                      report->per_round_accepted.end(), std::size_t{0});
  if (accepted != report->matched_count) {
    return MakeError(ErrorKind::kInfeasibleInput,
                     internal::StrCat("trace accepts ", accepted,
                                  " edges but the matching has ",
                                  report->matched_count));
  }
  return report;
}

Outcome Outcome::From(std::string label, const RunReport& report) {
  return {std::move(label), report.matched_count, report.instance_fingerprint};
}

Outcome Outcome::From(std::string label, const BaselineResult& result) {
  return {std::move(label), result.matching.size(),
          result.instance_fingerprint};
}

absl::StatusOr<Comparison> Compare(const Outcome& a, const Outcome& b) {
  if (a.instance_fingerprint != b.instance_fingerprint) {
    return MakeError(ErrorKind::kInstanceMismatch,
                     internal::StrCat(a.label, " and ", b.label,
                                  " were computed on different instances"));
  }
  Comparison c{a.label, b.label, a.matched_count, b.matched_count,
               std::nullopt};
  if (b.matched_count == 0) {
    if (a.matched_count == 0) c.ratio = 1.0;
  } else {
    c.ratio = static_cast<double>(a.matched_count) /
              static_cast<double>(b.matched_count);
  }
  return c;
}

}  // namespace hyperbound
