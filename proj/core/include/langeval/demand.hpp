#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace langeval {

// Sub-feature ids of a demand snapshot, in column order.
inline constexpr std::array<std::string_view, 3> kDemandFeatures{
    "web_search_share", "active_repositories", "job_posts"};

struct DemandEntry {
  std::string subject;
  double web_search_share = 0.0;    // percent
  double active_repositories = 0.0; // count
  double job_posts = 0.0;           // count

  double feature(std::size_t index) const;
  double& feature(std::size_t index);

  friend bool operator==(const DemandEntry&, const DemandEntry&) = default;
};

// Industry-demand statistics taken at one point in time.
struct DemandSnapshot {
  std::string as_of;
  std::vector<DemandEntry> entries;
  std::vector<std::string> sources;

  const DemandEntry* find(std::string_view subject) const noexcept;

  friend bool operator==(const DemandSnapshot&, const DemandSnapshot&) = default;
};

struct NormalizedDemand {
  std::string subject;
  std::array<double, 3> features{};  // value / column max
  double score = 0.0;                // mean of features
};

// Index of a sub-feature id in kDemandFeatures, or -1.
int demand_feature_index(std::string_view feature_id) noexcept;

// Throws SnapshotError on a negative value, a duplicated subject, or (when
// `subjects` is non-empty) a subject that is missing from the snapshot.
void validate_snapshot(const DemandSnapshot& snapshot, std::span<const std::string> subjects = {});

// Per subject, the mean over sub-features of value / max-over-subjects(value).
// Throws SnapshotError when a sub-feature is zero for every subject.
std::vector<NormalizedDemand> normalize_demand(const DemandSnapshot& snapshot);

// JSON form: {as_of, entries[{subject, web_search_share, active_repositories,
// job_posts}], sources[]}. `pointer` prefixes field locations in errors.
DemandSnapshot snapshot_from_json(const nlohmann::ordered_json& j, const std::string& pointer = "");
nlohmann::ordered_json to_json(const DemandSnapshot& snapshot);

// Reads a standalone snapshot file and validates it.
DemandSnapshot load_snapshot(const std::filesystem::path& path,
                             std::span<const std::string> subjects = {});

}  // namespace langeval
