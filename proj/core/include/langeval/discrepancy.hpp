#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "langeval/dataset.hpp"
#include "langeval/scoring.hpp"

namespace langeval {

// Published per-parameter unit score.
struct PublishedParameterCell {
  std::string subject;
  std::string parameter;
  double value = 0.0;
};

// Published overall score pair.
struct PublishedOverallCell {
  std::string subject;
  std::optional<double> ls;
  std::optional<double> ls_bounded;
};

// One published table, recomputed under a named weight profile and filter.
struct PublishedTable {
  std::string id;
  std::string label;  // display name used in locations
  std::string title;
  std::string profile = "default";
  CategoryFilter category = CategoryFilter::All;
  std::string note;
  std::vector<PublishedParameterCell> parameter_cells;
  std::vector<PublishedOverallCell> overall_cells;
};

struct PublishedTables {
  std::vector<PublishedTable> tables;
};

PublishedTables published_tables_from_json(const nlohmann::ordered_json& j);
PublishedTables load_published_tables(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const PublishedTables& tables);

inline constexpr double kDiscrepancyThreshold = 0.005;

struct DiscrepancyEntry {
  std::string table;      // label
  std::string subject;    // id
  std::string field;      // parameter id, "ls" or "ls_bounded"
  std::string location;   // human readable
  double published = 0.0;
  double recomputed = 0.0;
  double delta = 0.0;     // published - recomputed
  std::string note;
};

struct DiscrepancyReport {
  std::vector<DiscrepancyEntry> entries;
};

// Entries for every published value that differs from recomputation by more
// than kDiscrepancyThreshold. Cells naming unknown subjects, parameters or
// profiles are reported with a note instead of throwing.
DiscrepancyReport discrepancy_report(const Dataset& dataset, const PublishedTables& published);

nlohmann::ordered_json to_json(const DiscrepancyReport& report);

}  // namespace langeval
