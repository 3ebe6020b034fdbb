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

#ifndef HYPERBOUND_IO_H_
#define HYPERBOUND_IO_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hyperbound/hypergraph.h"
#include "hyperbound/metrics.h"
#include "json.hpp"

namespace hyperbound {

inline constexpr std::string_view kFormatVersion = "hyperbound/1";

// Edge list: one record per line, `edge_id<TAB>owner[,owner...]<TAB>[weight]`.
// Blank lines and lines starting with '#' are skipped. The trailing weight
// field (and its tab) may be omitted. Errors name the 1-based line.
// `capacities` only contributes override vertices to V.
absl::StatusOr<Hypergraph> ParseEdgeList(std::string_view text,
                                         const CapacityMap& capacities = {});

// Canonical text: ascending edge ids, ascending owners, shortest round-trip
// weight, always three fields.
std::string SerializeEdgeList(const Hypergraph& g);

// Capacity file: `user_id<TAB>capacity` lines; unlisted users get
// `default_capacity`.
absl::StatusOr<CapacityMap> ParseCapacities(std::string_view text,
                                            std::uint64_t default_capacity);
std::string SerializeCapacities(const CapacityMap& caps);

// Selected-edges file: one id per line, ascending.
std::string SerializeSelection(std::span<const EdgeId> matching);
absl::StatusOr<std::vector<EdgeId>> ParseSelection(std::string_view text);

// Run parameters that determine a result and are echoed in the summary.
struct SummaryConfig {
  std::string ordering = "hash";
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_rounds;
  bool early_stop = true;
  std::uint64_t default_capacity = 1;
  std::size_t capacity_overrides = 0;
};

nlohmann::json ReportToJson(const RunReport& report);
nlohmann::json ConfigToJson(const SummaryConfig& config);

struct ResultBundle {
  std::string selected_edges;
  std::string summary;
};

// Builds the selected-edges text and the JSON summary. Internal error if the
// summary's matched_count disagrees with the selection's line count.
absl::StatusOr<ResultBundle> MakeResultBundle(
    std::string_view method, const SummaryConfig& config,
    const RunReport& report, std::span<const EdgeId> matching,
    std::optional<std::size_t> optimum = std::nullopt);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

struct FixedSize {
  std::size_t size = 1;
};
// P(size = k) proportional to k^-exponent for k in [1, max_size].
struct ZipfSize {
  double exponent = 1.0;
  std::size_t max_size = 1;
};
using EdgeSizeSpec = std::variant<FixedSize, ZipfSize>;

struct UniformPopularity {};
// User i (0-based) drawn with weight (i + 1)^-alpha.
struct ZipfPopularity {
  double alpha = 1.0;
};
using PopularitySpec = std::variant<UniformPopularity, ZipfPopularity>;

struct GeneratorSpec {
  std::size_t users = 1;
  std::size_t edges = 0;
  EdgeSizeSpec edge_size = FixedSize{1};
  PopularitySpec popularity = UniformPopularity{};
  std::uint64_t seed = 0;
};

// Edge ids 0..edges-1 over users 0..users-1, owners drawn without replacement
// within an edge. Randomness is the Mix64 counter stream of `seed`, so output
// is reproducible bit for bit. Unsatisfiable when an edge could need more
// owners than there are users.
absl::StatusOr<Hypergraph> Generate(const GeneratorSpec& spec);

}  // namespace hyperbound

#endif  // HYPERBOUND_IO_H_
