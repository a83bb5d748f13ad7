#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "langeval/dataset.hpp"
#include "langeval/discrepancy.hpp"
#include "langeval/scoring.hpp"
#include "langeval/sensitivity.hpp"

namespace langeval {

enum class ReportKind {
  ParameterTable,
  OverallTable,
  DemandTable,
  TransitionTable,
  WhatIfTable,
  DiscrepancyReport
};

enum class OutputFormat { Table, Csv, Json, Markdown };

std::string_view to_string(ReportKind kind) noexcept;
std::string_view to_string(OutputFormat format) noexcept;
std::optional<ReportKind> parse_report_kind(std::string_view text);
// "table", "csv", "json", "md"/"markdown"
std::optional<OutputFormat> parse_output_format(std::string_view text);

struct ReportSpec {
  ReportKind kind = ReportKind::OverallTable;
  OutputFormat format = OutputFormat::Table;
  int decimals = 2;
};

// Fixed-point text rounded half away from zero, e.g. (0.125, 2) -> "0.13".
std::string format_decimal(double value, int decimals);
// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

// A rectangular table rendered to plain text, CSV or markdown. JSON output is
// produced from the engine types instead, at full precision.
struct TextTable {
  using Cell = std::variant<std::string, double, long long>;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string render_text_table(const TextTable& table, OutputFormat format, int decimals = 2);

// Columns: subject, in-scope parameters in framework order, LS, LS'. Rows in
// ranking order.
std::string render_parameter_table(const std::vector<ScoreCard>& ranking, const Dataset& dataset,
                                   const WeightProfile& profile, CategoryFilter filter,
                                   const ReportSpec& spec);
// Columns: subject, LS, LS'.
std::string render_overall_table(const std::vector<ScoreCard>& ranking, const Dataset& dataset,
                                 const WeightProfile& profile, CategoryFilter filter,
                                 const ReportSpec& spec);
// Raw snapshot values with the normalized demand score; rows in `order`.
std::string render_demand_table(const Dataset& dataset, const std::vector<std::string>& order,
                                const ReportSpec& spec);
// Pairwise cost vectors, total cost and transferability rating; rows and
// columns in dataset subject order.
std::string render_transition_table(const Dataset& dataset, const ReportSpec& spec);
// Columns: subject, LS, LS', baseline rank, rank. Baseline is the same
// filter under the unmodified base profile.
std::string render_whatif_table(const WhatIfResult& result, const std::vector<ScoreCard>& baseline,
                                const Dataset& dataset, const ReportSpec& spec);
std::string render_discrepancy_report(const DiscrepancyReport& report, const ReportSpec& spec);
std::string render_sweep(const SweepResult& sweep, const Dataset& dataset, const ReportSpec& spec);
std::string render_stability(const StabilityInterval& interval, const Dataset& dataset,
                             const ReportSpec& spec);

// Everything a report may need. `whatif` is used by WhatIfTable;
// `published` by DiscrepancyReport.
struct ReportContext {
  const Dataset* dataset = nullptr;
  WeightProfile profile;
  CategoryFilter category = CategoryFilter::All;
  std::optional<WhatIfRequest> whatif;
  const PublishedTables* published = nullptr;
};

// Throws InvalidArgument when the context lacks data the kind requires.
std::string render_report(const ReportSpec& spec, const ReportContext& context);

}  // namespace langeval
