#include "langeval/demand.hpp"

#include <algorithm>
#include <set>

#include "json_util.hpp"
#include "langeval/dataset_io.hpp"
#include "langeval/errors.hpp"

namespace langeval {

using detail::json;

double DemandEntry::feature(std::size_t index) const {
  switch (index) {
    case 0: return web_search_share;
    case 1: return active_repositories;
    case 2: return job_posts;
    default: throw InvalidArgument("demand feature index out of range");
  }
}

double& DemandEntry::feature(std::size_t index) {
  switch (index) {
    case 0: return web_search_share;
    case 1: return active_repositories;
    case 2: return job_posts;
    default: throw InvalidArgument("demand feature index out of range");
  }
}

const DemandEntry* DemandSnapshot::find(std::string_view subject) const noexcept {
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const DemandEntry& e) { return e.subject == subject; });
  return it == entries.end() ? nullptr : &*it;
}

int demand_feature_index(std::string_view feature_id) noexcept {
  for (std::size_t i = 0; i < kDemandFeatures.size(); ++i) {
    if (kDemandFeatures[i] == feature_id) return static_cast<int>(i);
  }
  return -1;
}

void validate_snapshot(const DemandSnapshot& snapshot, std::span<const std::string> subjects) {
  std::set<std::string, std::less<>> seen;
  for (const auto& e : snapshot.entries) {
    if (!seen.insert(e.subject).second) {
      throw SnapshotError("demand snapshot: subject '" + e.subject + "' appears more than once");
    }
    for (std::size_t f = 0; f < kDemandFeatures.size(); ++f) {
      if (!(e.feature(f) >= 0.0)) {
        throw SnapshotError("demand snapshot: negative " + std::string(kDemandFeatures[f]) +
                            " for subject '" + e.subject + "'");
      }
    }
  }
  for (const auto& s : subjects) {
    if (!seen.contains(s)) {
      throw SnapshotError("demand snapshot: missing subject '" + s + "'");
    }
  }
}

std::vector<NormalizedDemand> normalize_demand(const DemandSnapshot& snapshot) {
  validate_snapshot(snapshot);
  std::array<double, 3> column_max{};
  for (const auto& e : snapshot.entries) {
    for (std::size_t f = 0; f < 3; ++f) column_max[f] = std::max(column_max[f], e.feature(f));
  }
  for (std::size_t f = 0; f < 3; ++f) {
    if (!(column_max[f] > 0.0)) {
      throw SnapshotError("demand snapshot is degenerate: " + std::string(kDemandFeatures[f]) +
                          " is zero for every subject");
    }
  }

  std::vector<NormalizedDemand> out;
  out.reserve(snapshot.entries.size());
  for (const auto& e : snapshot.entries) {
    NormalizedDemand n;
    n.subject = e.subject;
    double sum = 0.0;
    for (std::size_t f = 0; f < 3; ++f) {
      n.features[f] = e.feature(f) / column_max[f];
      sum += n.features[f];
    }
    n.score = sum / 3.0;
    out.push_back(std::move(n));
  }
  return out;
}

DemandSnapshot snapshot_from_json(const json& j, const std::string& pointer) {
  detail::reject_unknown(j, {"as_of", "entries", "sources"}, pointer);
  DemandSnapshot s;
  s.as_of = detail::get_string(j, "as_of", pointer);

  const auto entries_ptr = detail::child(pointer, "entries");
  const json& entries = detail::require(j, "entries", pointer);
  detail::expect_array(entries, entries_ptr);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto p = detail::child(entries_ptr, i);
    const json& e = entries[i];
    detail::reject_unknown(e, {"subject", "web_search_share", "active_repositories", "job_posts"}, p);
    DemandEntry entry;
    entry.subject = detail::get_string(e, "subject", p);
    for (std::size_t f = 0; f < 3; ++f) {
      entry.feature(f) = detail::get_number(e, kDemandFeatures[f], p);
    }
    s.entries.push_back(std::move(entry));
  }

  if (const json* sources = detail::optional_field(j, "sources")) {
    const auto sp = detail::child(pointer, "sources");
    detail::expect_array(*sources, sp);
    for (std::size_t i = 0; i < sources->size(); ++i) {
      s.sources.push_back(detail::as_string((*sources)[i], detail::child(sp, i)));
    }
  }
  return s;
}

json to_json(const DemandSnapshot& snapshot) {
  json j = json::object();
  j["as_of"] = snapshot.as_of;
  json entries = json::array();
  for (const auto& e : snapshot.entries) {
    json je = json::object();
    je["subject"] = e.subject;
    for (std::size_t f = 0; f < 3; ++f) je[std::string(kDemandFeatures[f])] = detail::number(e.feature(f));
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  j["sources"] = snapshot.sources;
  return j;
}

DemandSnapshot load_snapshot(const std::filesystem::path& path, std::span<const std::string> subjects) {
  const std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), e.what());
  }
  DemandSnapshot s = snapshot_from_json(j);
  validate_snapshot(s, subjects);
  return s;
}

}  // namespace langeval
