#include "langeval/report.hpp"

#include <algorithm>
#include <cmath>

#include "json_util.hpp"
#include "langeval/errors.hpp"
#include "langeval/transition.hpp"

namespace langeval {

using detail::json;

std::string_view to_string(ReportKind kind) noexcept {
  switch (kind) {
    case ReportKind::ParameterTable: return "parameter-table";
    case ReportKind::OverallTable: return "overall-table";
    case ReportKind::DemandTable: return "demand-table";
    case ReportKind::TransitionTable: return "transition-table";
    case ReportKind::WhatIfTable: return "whatif-table";
    case ReportKind::DiscrepancyReport: return "discrepancy-report";
  }
  return "overall-table";
}

std::string_view to_string(OutputFormat format) noexcept {
  switch (format) {
    case OutputFormat::Table: return "table";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Markdown: return "md";
  }
  return "table";
}

std::optional<ReportKind> parse_report_kind(std::string_view text) {
  for (auto k : {ReportKind::ParameterTable, ReportKind::OverallTable, ReportKind::DemandTable,
                 ReportKind::TransitionTable, ReportKind::WhatIfTable, ReportKind::DiscrepancyReport}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "table" || text == "plain-table") return OutputFormat::Table;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  if (text == "md" || text == "markdown") return OutputFormat::Markdown;
  return std::nullopt;
}

std::string format_decimal(double value, int decimals) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  decimals = std::clamp(decimals, 0, 12);
  long long scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  // The small bias absorbs binary representation error, so 0.635 rounds up.
  const double scaled = std::floor(std::fabs(value) * static_cast<double>(scale) + 0.5 + 1e-9);
  const auto units = static_cast<long long>(scaled);
  std::string out = (value < 0 && units != 0) ? "-" : "";
  out += std::to_string(units / scale);
  if (decimals > 0) {
    std::string frac = std::to_string(units % scale);
    out += "." + std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
  }
  return out;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

std::string cell_text(const TextTable::Cell& cell, int decimals) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* d = std::get_if<double>(&cell)) return format_decimal(*d, decimals);
  return std::to_string(std::get<long long>(cell));
}

json cell_json(const TextTable::Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  return std::get<long long>(cell);
}

std::string markdown_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string render_text_table(const TextTable& table, OutputFormat format, int decimals) {
  const std::size_t cols = table.header.size();
  std::vector<std::vector<std::string>> text;
  std::vector<bool> numeric(cols, false);
  for (const auto& row : table.rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < cols; ++c) {
      if (c < row.size()) {
        line.push_back(cell_text(row[c], decimals));
        if (!std::holds_alternative<std::string>(row[c])) numeric[c] = true;
      } else {
        line.emplace_back();
      }
    }
    text.push_back(std::move(line));
  }

  std::string out;
  switch (format) {
    case OutputFormat::Json: {
      json arr = json::array();
      for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < cols && c < row.size(); ++c) obj[table.header[c]] = cell_json(row[c]);
        arr.push_back(std::move(obj));
      }
      return arr.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t c = 0; c < line.size(); ++c) {
          if (c) out += ',';
          out += csv_field(line[c]);
        }
        out += "\r\n";
      };
      emit(table.header);
      for (const auto& line : text) emit(line);
      return out;
    }
    case OutputFormat::Markdown: {
      auto emit = [&](const std::vector<std::string>& line) {
        out += "|";
        for (const auto& cell : line) out += " " + markdown_escape(cell) + " |";
        out += "\n";
      };
      emit(table.header);
      out += "|";
      for (std::size_t c = 0; c < cols; ++c) out += numeric[c] ? " ---: |" : " --- |";
      out += "\n";
      for (const auto& line : text) emit(line);
      return out;
    }
    case OutputFormat::Table: {
      std::vector<std::size_t> width(cols, 0);
      for (std::size_t c = 0; c < cols; ++c) width[c] = table.header[c].size();
      for (const auto& line : text) {
        for (std::size_t c = 0; c < cols; ++c) width[c] = std::max(width[c], line[c].size());
      }
      auto emit = [&](const std::vector<std::string>& line) {
        std::string l;
        for (std::size_t c = 0; c < cols; ++c) {
          if (c) l += "  ";
          const std::string pad(width[c] - line[c].size(), ' ');
          l += numeric[c] ? pad + line[c] : line[c] + pad;
        }
        while (!l.empty() && l.back() == ' ') l.pop_back();
        out += l + "\n";
      };
      emit(table.header);
      std::string rule;
      for (std::size_t c = 0; c < cols; ++c) {
        if (c) rule += "  ";
        rule += std::string(width[c], '-');
      }
      out += rule + "\n";
      for (const auto& line : text) emit(line);
      return out;
    }
  }
  return out;
}

namespace {

std::string name_of(const Dataset& ds, const std::string& id) {
  const Subject* s = ds.find_subject(id);
  return s ? s->name : id;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string render_parameter_table(const std::vector<ScoreCard>& ranking, const Dataset& dataset,
                                   const WeightProfile& profile, CategoryFilter filter, const ReportSpec& spec) {
  if (spec.format == OutputFormat::Json) return dump(ranking_to_json(ranking, profile, filter));
  TextTable t;
  t.header.push_back("Subject");
  for (const auto& p : dataset.framework.parameters) {
    if (in_scope(filter, p.category)) t.header.push_back(p.name);
  }
  t.header.push_back("LS");
  t.header.push_back("LS'");
  for (const auto& card : ranking) {
    std::vector<TextTable::Cell> row{name_of(dataset, card.subject)};
    for (const auto& p : card.parameters) row.emplace_back(p.score.score);
    row.emplace_back(card.ls);
    row.emplace_back(card.ls_bounded);
    t.rows.push_back(std::move(row));
  }
  return render_text_table(t, spec.format, spec.decimals);
}

std::string render_overall_table(const std::vector<ScoreCard>& ranking, const Dataset& dataset,
                                 const WeightProfile& profile, CategoryFilter filter, const ReportSpec& spec) {
  if (spec.format == OutputFormat::Json) return dump(ranking_to_json(ranking, profile, filter));
  TextTable t;
  t.header = {"Subject", "LS", "LS'"};
  for (const auto& card : ranking) t.rows.push_back({name_of(dataset, card.subject), card.ls, card.ls_bounded});
  return render_text_table(t, spec.format, spec.decimals);
}

std::string render_demand_table(const Dataset& dataset, const std::vector<std::string>& order,
                                const ReportSpec& spec) {
  const Parameter* demand = nullptr;
  std::size_t demand_index = 0;
  for (std::size_t i = 0; i < dataset.framework.parameters.size(); ++i) {
    if (dataset.framework.parameters[i].score_mode == ScoreMode::DemandNormalized) {
      demand = &dataset.framework.parameters[i];
      demand_index = i;
      break;
    }
  }
  if (demand == nullptr && !dataset.demand) throw InvalidArgument("dataset has no demand data");

  std::optional<ScoreTable> scores;
  if (demand != nullptr) scores.emplace(dataset);
  const RatingIndex idx(dataset.ratings);

  struct Row {
    std::string subject;
    std::array<double, 3> raw{};
    std::array<double, 3> normalized{};
    double score = 0.0;
  };
  std::vector<Row> rows;
  for (const auto& id : order) {
    Row r;
    r.subject = id;
    const DemandEntry* e = dataset.demand ? dataset.demand->find(id) : nullptr;
    ParameterScore ps = demand != nullptr ? scores->row(id).parameters[demand_index]
                                          : demand_parameter_score(*dataset.demand, id);
    for (std::size_t f = 0; f < kDemandFeatures.size(); ++f) {
      const Rating* rating = demand ? idx.find(id, demand->id, kDemandFeatures[f]) : nullptr;
      const auto* raw = rating ? std::get_if<RawValue>(&rating->value) : nullptr;
      r.raw[f] = raw ? raw->value : (e ? e->feature(f) : 0.0);
      r.normalized[f] = f < ps.sub_scores.size() ? ps.sub_scores[f] : 0.0;
    }
    r.score = ps.score;
    rows.push_back(r);
  }

  if (spec.format == OutputFormat::Json) {
    json entries = json::array();
    for (const auto& r : rows) {
      json j = json::object();
      j["subject"] = r.subject;
      for (std::size_t f = 0; f < kDemandFeatures.size(); ++f) j[std::string(kDemandFeatures[f])] = r.raw[f];
      j["normalized"] = r.normalized;
      j["score"] = r.score;
      entries.push_back(std::move(j));
    }
    return dump(json{{"as_of", dataset.demand ? dataset.demand->as_of : ""}, {"entries", std::move(entries)}});
  }
  TextTable t;
  t.header = {"Subject", "Web search share", "Active repositories", "Job posts", "Demand"};
  for (const auto& r : rows) {
    std::vector<TextTable::Cell> row{name_of(dataset, r.subject)};
    for (double v : r.raw) {
      if (v == std::floor(v) && std::fabs(v) < 1e15) {
        row.emplace_back(static_cast<long long>(v));
      } else {
        row.emplace_back(v);
      }
    }
    row.emplace_back(r.score);
    t.rows.push_back(std::move(row));
  }
  return render_text_table(t, spec.format, spec.decimals);
}

std::string render_transition_table(const Dataset& dataset, const ReportSpec& spec) {
  const std::size_t n = dataset.subjects.size();
  if (!dataset.transition_costs && n > 1) throw InvalidArgument("dataset has no transition cost matrix");
  const auto& m = dataset.transition_costs;

  auto vector_text = [](const CostVector& v) {
    return std::to_string(v.units[0]) + "/" + std::to_string(v.units[1]) + "/" + std::to_string(v.units[2]);
  };

  if (spec.format == OutputFormat::Json) {
    json subjects = json::array();
    for (const auto& from : dataset.subjects) {
      json costs = json::object();
      for (const auto& to : dataset.subjects) {
        if (to.id == from.id) continue;
        const auto v = pair_cost(from.id, to.id, *m);
        costs[to.id] = json::array({v.units[0], v.units[1], v.units[2]});
      }
      const int total = n > 1 ? total_cost(from.id, *m) : 0;
      subjects.push_back(json{{"subject", from.id},
                              {"costs", std::move(costs)},
                              {"total", total},
                              {"rating", to_string(cost_rating(total, n))}});
    }
    const auto nn = static_cast<double>(n);
    return dump(json{{"n", n},
                     {"thresholds", json::array({2 * nn, 2.5 * nn, 3 * nn})},
                     {"subjects", std::move(subjects)}});
  }

  TextTable t;
  t.header.push_back("Subject");
  for (const auto& s : dataset.subjects) t.header.push_back(s.name);
  t.header.push_back("Total cost");
  t.header.push_back("Rating");
  for (const auto& from : dataset.subjects) {
    std::vector<TextTable::Cell> row{from.name};
    for (const auto& to : dataset.subjects) {
      row.emplace_back(to.id == from.id ? std::string("-") : vector_text(pair_cost(from.id, to.id, *m)));
    }
    const int total = n > 1 ? total_cost(from.id, *m) : 0;
    row.emplace_back(static_cast<long long>(total));
    row.emplace_back(std::string(display_name(cost_rating(total, n))));
    t.rows.push_back(std::move(row));
  }
  return render_text_table(t, spec.format, spec.decimals);
}

std::string render_whatif_table(const WhatIfResult& result, const std::vector<ScoreCard>& baseline,
                                const Dataset& dataset, const ReportSpec& spec) {
  auto baseline_rank = [&](const std::string& id) -> long long {
    for (std::size_t i = 0; i < baseline.size(); ++i) {
      if (baseline[i].subject == id) return static_cast<long long>(i + 1);
    }
    return 0;
  };
  if (spec.format == OutputFormat::Json) {
    json j = to_json(result);
    json base = json::array();
    for (const auto& c : baseline) base.push_back(c.subject);
    j["baseline"] = std::move(base);
    return dump(j);
  }
  TextTable t;
  t.header = {"Subject", "LS", "LS'", "Baseline rank", "Rank"};
  for (std::size_t i = 0; i < result.ranking.size(); ++i) {
    const auto& c = result.ranking[i];
    t.rows.push_back({name_of(dataset, c.subject), c.ls, c.ls_bounded, baseline_rank(c.subject),
                      static_cast<long long>(i + 1)});
  }
  return render_text_table(t, spec.format, spec.decimals);
}

std::string render_discrepancy_report(const DiscrepancyReport& report, const ReportSpec& spec) {
  if (spec.format == OutputFormat::Json) return dump(to_json(report));
  TextTable t;
  t.header = {"Location", "Published", "Recomputed", "Delta", "Note"};
  for (const auto& e : report.entries) {
    std::string delta = format_decimal(e.delta, spec.decimals);
    if (delta[0] != '-') delta = "+" + delta;
    t.rows.push_back({e.location, e.published, e.recomputed, delta, e.note});
  }
  return render_text_table(t, spec.format, spec.decimals);
}

std::string render_sweep(const SweepResult& sweep, const Dataset& dataset, const ReportSpec& spec) {
  if (spec.format == OutputFormat::Json) return dump(to_json(sweep));
  TextTable grid;
  grid.header.push_back("Weight");
  const std::size_t n = sweep.rankings.empty() ? 0 : sweep.rankings.front().size();
  for (std::size_t i = 0; i < n; ++i) grid.header.push_back("Rank " + std::to_string(i + 1));
  for (std::size_t g = 0; g < sweep.grid.size(); ++g) {
    std::vector<TextTable::Cell> row{sweep.grid[g]};
    for (const auto& id : sweep.rankings[g]) row.emplace_back(name_of(dataset, id));
    grid.rows.push_back(std::move(row));
  }
  TextTable cross;
  cross.header = {"Crossover weight", "Ahead below", "Ahead above"};
  for (const auto& c : sweep.crossovers) {
    cross.rows.push_back({c.weight, name_of(dataset, c.ahead_before), name_of(dataset, c.ahead_after)});
  }
  return render_text_table(grid, spec.format, spec.decimals) + "\n" +
         render_text_table(cross, spec.format, spec.decimals);
}

std::string render_stability(const StabilityInterval& s, const Dataset& dataset, const ReportSpec& spec) {
  if (spec.format == OutputFormat::Json) return dump(to_json(s));
  TextTable t;
  t.header = {"Parameter", "Top subject", "Weight", "Lower", "Upper", "Challenger below", "Challenger above"};
  std::vector<TextTable::Cell> row{s.parameter, name_of(dataset, s.top_subject), s.current_weight, s.lower};
  if (s.upper) {
    row.emplace_back(*s.upper);
  } else {
    row.emplace_back(std::string("open"));
  }
  row.emplace_back(s.challenger_below ? name_of(dataset, *s.challenger_below) : std::string("-"));
  row.emplace_back(s.challenger_above ? name_of(dataset, *s.challenger_above) : std::string("-"));
  t.rows.push_back(std::move(row));
  return render_text_table(t, spec.format, spec.decimals);
}

std::string render_report(const ReportSpec& spec, const ReportContext& ctx) {
  if (ctx.dataset == nullptr) throw InvalidArgument("report needs a dataset");
  const Dataset& ds = *ctx.dataset;
  switch (spec.kind) {
    case ReportKind::ParameterTable:
      return render_parameter_table(rank(ds, ctx.profile, ctx.category), ds, ctx.profile, ctx.category, spec);
    case ReportKind::OverallTable:
      return render_overall_table(rank(ds, ctx.profile, ctx.category), ds, ctx.profile, ctx.category, spec);
    case ReportKind::DemandTable: {
      std::vector<std::string> order;
      for (const auto& c : rank(ds, ctx.profile, ctx.category)) order.push_back(c.subject);
      return render_demand_table(ds, order, spec);
    }
    case ReportKind::TransitionTable:
      return render_transition_table(ds, spec);
    case ReportKind::WhatIfTable: {
      if (!ctx.whatif) throw InvalidArgument("whatif-table needs a what-if request");
      const WhatIfResult result = what_if(ds, *ctx.whatif);
      WhatIfRequest base;
      base.profile = ctx.whatif->profile;
      base.category = ctx.whatif->category;
      const auto baseline = rank(ds, apply_weight_overrides(ds, base), base.category);
      return render_whatif_table(result, baseline, ds, spec);
    }
    case ReportKind::DiscrepancyReport:
      if (ctx.published == nullptr) throw InvalidArgument("discrepancy-report needs published tables");
      return render_discrepancy_report(discrepancy_report(ds, *ctx.published), spec);
  }
  throw InvalidArgument("unknown report kind");
}

}  // namespace langeval
