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

#include "hyperbound/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>
#include <unordered_map>
#include <utility>

#include "src/strings.h"
#include "hyperbound/errors.h"
#include "hyperbound/mix64.h"

namespace hyperbound {
namespace {

absl::Status LineError(ErrorKind kind, std::size_t line,
                       std::string_view detail) {
  return MakeError(kind, internal::StrCat("line ", line, ": ", detail));
}

absl::StatusOr<std::uint64_t> ParseUnsigned(std::string_view field,
                                            std::size_t line,
                                            std::string_view what) {
  std::uint64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    return LineError(ErrorKind::kIntegerOverflow, line,
                     internal::StrCat(what, " '", field, "' exceeds 64 bits"));
  }
  if (field.empty() || ec != std::errc() || ptr != last) {
    return LineError(ErrorKind::kMalformedLine, line,
                     internal::StrCat(what, " '", field,
                                  "' is not a decimal unsigned integer"));
  }
  return value;
}

absl::StatusOr<double> ParseWeight(std::string_view field, std::size_t line) {
  double value = 0;
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value) ||
      value < 0) {
    return LineError(ErrorKind::kMalformedLine, line,
                     internal::StrCat("weight '", field,
                                  "' is not a finite non-negative number"));
  }
  return value == 0.0 ? 0.0 : value;
}

// Calls fn(line_number, line) for every non-blank, non-comment line; stops at
// the first error.
template <typename Fn>
absl::Status ForEachLine(std::string_view text, const Fn& fn) {
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_number;
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;
    if (absl::Status s = fn(line_number, line); !s.ok()) return s;
  }
  return absl::OkStatus();
}

void AppendUnsigned(std::string& out, std::uint64_t value) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

void AppendDouble(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

std::size_t CountLines(std::string_view text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

// Discrete sampler over weights w_0..w_{n-1} by inverse CDF.
class CdfSampler {
 public:
  explicit CdfSampler(std::vector<double> weights) : weights_(weights) {
    cdf_.resize(weights.size());
    double total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      total += weights[i];
      cdf_[i] = total;
    }
  }

  std::size_t Sample(Mix64Stream& rng) const {
    const double target = rng.NextUnit() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    return std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
  }

  double weight(std::size_t i) const { return weights_[i]; }
  std::size_t size() const { return cdf_.size(); }

 private:
  std::vector<double> weights_;
  std::vector<double> cdf_;
};

std::vector<double> ZipfWeights(std::size_t n, double exponent) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::pow(static_cast<double>(i + 1), -exponent);
  }
  return w;
}

// Draws `k` distinct users. Rejection sampling first; if that stalls, falls
// back to drawing from the explicit list of users not yet chosen.
void DrawOwners(std::size_t k, std::size_t users, const CdfSampler* zipf,
                Mix64Stream& rng, std::vector<VertexId>& out) {
  out.clear();
  auto draw = [&]() -> std::uint64_t {
    return zipf != nullptr ? zipf->Sample(rng) : rng.NextBelow(users);
  };
  auto taken = [&](std::uint64_t u) {
    return std::find(out.begin(), out.end(), VertexId{u}) != out.end();
  };
  std::size_t attempts = 0;
  const std::size_t budget = 16 * k + 64;
  while (out.size() < k && attempts < budget) {
    ++attempts;
    const std::uint64_t u = draw();
    if (!taken(u)) out.push_back(VertexId{u});
  }
  if (out.size() == k) return;

  std::vector<std::uint64_t> rest;
  std::vector<double> rest_weight;
  for (std::uint64_t u = 0; u < users; ++u) {
    if (taken(u)) continue;
    rest.push_back(u);
    rest_weight.push_back(zipf != nullptr ? zipf->weight(u) : 1.0);
  }
  while (out.size() < k) {
    CdfSampler sampler(rest_weight);
    const std::size_t i = sampler.Sample(rng);
    out.push_back(VertexId{rest[i]});
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    rest_weight.erase(rest_weight.begin() + static_cast<std::ptrdiff_t>(i));
  }
}

}  // namespace

absl::StatusOr<Hypergraph> ParseEdgeList(std::string_view text,
                                         const CapacityMap& capacities) {
  std::vector<EdgeRecord> records;
  std::unordered_map<std::uint64_t, std::size_t> first_line;
  absl::Status status = ForEachLine(
      text, [&](std::size_t line, std::string_view content) -> absl::Status {
        std::vector<std::string_view> fields = internal::Split(content, '\t');
        if (fields.size() != 2 && fields.size() != 3) {
          return LineError(ErrorKind::kMalformedLine, line,
                           internal::StrCat("expected 2 or 3 tab-separated "
                                        "fields, found ",
                                        fields.size()));
        }
        absl::StatusOr<std::uint64_t> id =
            ParseUnsigned(fields[0], line, "edge id");
        if (!id.ok()) return id.status();
        auto [it, inserted] = first_line.emplace(*id, line);
        if (!inserted) {
          return LineError(ErrorKind::kDuplicateEdgeId, line,
                           internal::StrCat("edge ", *id, " already defined on line ",
                                        it->second));
        }
        if (fields[1].empty()) {
          return LineError(ErrorKind::kEmptyOwnerList, line,
                           internal::StrCat("edge ", *id, " has no owners"));
        }
        EdgeRecord record{EdgeId{*id}, {}, std::nullopt};
        for (std::string_view owner : internal::Split(fields[1], ',')) {
          absl::StatusOr<std::uint64_t> u =
              ParseUnsigned(owner, line, "owner id");
          if (!u.ok()) return u.status();
          record.owners.push_back(VertexId{*u});
        }
        if (fields.size() == 3 && !fields[2].empty()) {
          absl::StatusOr<double> w = ParseWeight(fields[2], line);
          if (!w.ok()) return w.status();
          record.weight = *w;
        }
        records.push_back(std::move(record));
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  return Hypergraph::Build(std::move(records), capacities);
}

std::string SerializeEdgeList(const Hypergraph& g) {
  std::string out;
  out.reserve(g.num_edges() * 24);
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    Hyperedge h = g.edge(e);
    AppendUnsigned(out, h.id.value);
    out.push_back('\t');
    for (std::size_t i = 0; i < h.owners.size(); ++i) {
      if (i > 0) out.push_back(',');
      AppendUnsigned(out, h.owners[i].value);
    }
    out.push_back('\t');
    if (h.weight.has_value()) AppendDouble(out, *h.weight);
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<CapacityMap> ParseCapacities(std::string_view text,
                                            std::uint64_t default_capacity) {
  CapacityMap caps(default_capacity);
  std::unordered_map<std::uint64_t, std::size_t> first_line;
  absl::Status status = ForEachLine(
      text, [&](std::size_t line, std::string_view content) -> absl::Status {
        std::vector<std::string_view> fields = internal::Split(content, '\t');
        if (fields.size() != 2) {
          return LineError(ErrorKind::kMalformedLine, line,
                           internal::StrCat("expected 2 tab-separated fields, "
                                        "found ",
                                        fields.size()));
        }
        absl::StatusOr<std::uint64_t> user =
            ParseUnsigned(fields[0], line, "user id");
        if (!user.ok()) return user.status();
        absl::StatusOr<std::uint64_t> capacity =
            ParseUnsigned(fields[1], line, "capacity");
        if (!capacity.ok()) return capacity.status();
        auto [it, inserted] = first_line.emplace(*user, line);
        if (!inserted) {
          return LineError(ErrorKind::kMalformedLine, line,
                           internal::StrCat("user ", *user,
                                        " already listed on line ",
                                        it->second));
        }
        caps.Set(VertexId{*user}, *capacity);
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  return caps;
}

std::string SerializeCapacities(const CapacityMap& caps) {
  std::string out;
  for (const auto& [user, capacity] : caps.overrides()) {
    AppendUnsigned(out, user.value);
    out.push_back('\t');
    AppendUnsigned(out, capacity);
    out.push_back('\n');
  }
  return out;
}

std::string SerializeSelection(std::span<const EdgeId> matching) {
  std::vector<EdgeId> sorted(matching.begin(), matching.end());
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  out.reserve(sorted.size() * 8);
  for (EdgeId id : sorted) {
    AppendUnsigned(out, id.value);
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<std::vector<EdgeId>> ParseSelection(std::string_view text) {
  std::vector<EdgeId> out;
  absl::Status status = ForEachLine(
      text, [&](std::size_t line, std::string_view content) -> absl::Status {
        absl::StatusOr<std::uint64_t> id = ParseUnsigned(content, line, "edge id");
        if (!id.ok()) return id.status();
        if (!out.empty() && out.back().value >= *id) {
          return LineError(ErrorKind::kMalformedLine, line,
                           "edge ids must be strictly ascending");
        }
        out.push_back(EdgeId{*id});
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  return out;
}

nlohmann::json ReportToJson(const RunReport& report) {
  nlohmann::json histogram = nlohmann::json::array();
  for (const auto& [degree, users] : report.degree_histogram) {
    histogram.push_back({{"degree", degree}, {"users", users}});
  }
  return {
      {"matched_count", report.matched_count},
      {"total_edges", report.total_edges},
      {"retention", report.retention},
      {"rounds_executed", report.rounds_executed},
      {"per_round_accepted", report.per_round_accepted},
      {"degree_histogram", std::move(histogram)},
      {"saturated_users", report.saturated_users},
  };
}

nlohmann::json ConfigToJson(const SummaryConfig& config) {
  nlohmann::json max_rounds = "unbounded";
  if (config.max_rounds.has_value()) max_rounds = *config.max_rounds;
  return {
      {"ordering", config.ordering},
      {"seed", config.seed},
      {"max_rounds", std::move(max_rounds)},
      {"early_stop", config.early_stop},
      {"default_capacity", config.default_capacity},
      {"capacity_overrides", config.capacity_overrides},
  };
}

absl::StatusOr<ResultBundle> MakeResultBundle(
    std::string_view method, const SummaryConfig& config,
    const RunReport& report, std::span<const EdgeId> matching,
    std::optional<std::size_t> optimum) {
  ResultBundle bundle;
  bundle.selected_edges = SerializeSelection(matching);
  nlohmann::json summary = {
      {"format_version", kFormatVersion},
      {"method", method},
      {"config", ConfigToJson(config)},
      {"report", ReportToJson(report)},
  };
  if (optimum.has_value()) summary["optimum"] = *optimum;
  bundle.summary = summary.dump(2) + "\n";

  const std::size_t lines = CountLines(bundle.selected_edges);
  if (lines != report.matched_count) {
    return absl::InternalError(internal::StrCat(
        "summary matched_count ", report.matched_count,
        " disagrees with ", lines, " selected-edge lines"));
  }
  return bundle;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIo, internal::StrCat("cannot open ", path));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    return MakeError(ErrorKind::kIo, internal::StrCat("cannot read ", path));
  }
  return std::move(buffer).str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return MakeError(ErrorKind::kIo, internal::StrCat("cannot create ", path));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) {
    return MakeError(ErrorKind::kIo, internal::StrCat("cannot write ", path));
  }
  return absl::OkStatus();
}

absl::StatusOr<Hypergraph> Generate(const GeneratorSpec& spec) {
  if (spec.users == 0) {
    return MakeError(ErrorKind::kInvalidConfig, "users must be >= 1");
  }
  std::size_t largest = 0;
  std::optional<CdfSampler> size_sampler;
  if (const auto* fixed = std::get_if<FixedSize>(&spec.edge_size)) {
    if (fixed->size == 0) {
      return MakeError(ErrorKind::kInvalidConfig, "edge size must be >= 1");
    }
    largest = fixed->size;
  } else {
    const auto& zipf = std::get<ZipfSize>(spec.edge_size);
    if (zipf.max_size == 0 || !std::isfinite(zipf.exponent) ||
        zipf.exponent < 0) {
      return MakeError(ErrorKind::kInvalidConfig,
                       "zipf edge size needs max_size >= 1, exponent >= 0");
    }
    largest = zipf.max_size;
    size_sampler.emplace(ZipfWeights(zipf.max_size, zipf.exponent));
  }
  if (largest > spec.users) {
    return MakeError(ErrorKind::kUnsatisfiable,
                     internal::StrCat("edge size ", largest, " exceeds ",
                                  spec.users, " users"));
  }
  std::optional<CdfSampler> popularity;
  if (const auto* zipf = std::get_if<ZipfPopularity>(&spec.popularity)) {
    if (!std::isfinite(zipf->alpha) || zipf->alpha < 0) {
      return MakeError(ErrorKind::kInvalidConfig, "zipf alpha must be >= 0");
    }
    popularity.emplace(ZipfWeights(spec.users, zipf->alpha));
  }

  Mix64Stream rng(spec.seed);
  std::vector<EdgeRecord> records;
  records.reserve(spec.edges);
  std::vector<VertexId> owners;
  for (std::size_t i = 0; i < spec.edges; ++i) {
    const std::size_t k =
        size_sampler.has_value() ? size_sampler->Sample(rng) + 1 : largest;
    DrawOwners(k, spec.users, popularity ? &*popularity : nullptr, rng, owners);
    records.push_back({EdgeId{i}, owners, std::nullopt});
  }
  return Hypergraph::Build(std::move(records));
}

}  // namespace hyperbound
