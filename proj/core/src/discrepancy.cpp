#include "langeval/discrepancy.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "json_util.hpp"
#include "langeval/dataset_io.hpp"
#include "langeval/errors.hpp"

namespace langeval {

using detail::child;
using detail::json;

namespace {

PublishedTable table_from_json(const json& j, const std::string& p) {
  detail::reject_unknown(j, {"id", "label", "title", "profile", "category", "note", "parameter_cells", "overall_cells"},
                         p);
  PublishedTable t;
  t.id = detail::get_string(j, "id", p);
  t.label = detail::get_string(j, "label", p);
  if (const json* v = detail::optional_field(j, "title")) t.title = detail::as_string(*v, child(p, "title"));
  if (const json* v = detail::optional_field(j, "profile")) t.profile = detail::as_string(*v, child(p, "profile"));
  if (const json* v = detail::optional_field(j, "note")) t.note = detail::as_string(*v, child(p, "note"));
  if (const json* v = detail::optional_field(j, "category")) {
    const auto text = detail::as_string(*v, child(p, "category"));
    auto f = parse_category_filter(text);
    if (!f) throw ParseError(child(p, "category"), "expected \"all\", \"technical\" or \"environmental\"");
    t.category = *f;
  }
  if (const json* cells = detail::optional_field(j, "parameter_cells")) {
    const auto cp = child(p, "parameter_cells");
    detail::expect_array(*cells, cp);
    for (std::size_t i = 0; i < cells->size(); ++i) {
      const auto q = child(cp, i);
      detail::reject_unknown((*cells)[i], {"subject", "parameter", "value"}, q);
      t.parameter_cells.push_back({detail::get_string((*cells)[i], "subject", q),
                                   detail::get_string((*cells)[i], "parameter", q),
                                   detail::get_number((*cells)[i], "value", q)});
    }
  }
  if (const json* cells = detail::optional_field(j, "overall_cells")) {
    const auto cp = child(p, "overall_cells");
    detail::expect_array(*cells, cp);
    for (std::size_t i = 0; i < cells->size(); ++i) {
      const auto q = child(cp, i);
      const json& c = (*cells)[i];
      detail::reject_unknown(c, {"subject", "ls", "ls_bounded"}, q);
      PublishedOverallCell cell;
      cell.subject = detail::get_string(c, "subject", q);
      if (const json* v = detail::optional_field(c, "ls")) cell.ls = detail::as_number(*v, child(q, "ls"));
      if (const json* v = detail::optional_field(c, "ls_bounded")) {
        cell.ls_bounded = detail::as_number(*v, child(q, "ls_bounded"));
      }
      t.overall_cells.push_back(std::move(cell));
    }
  }
  return t;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string compact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string subject_name(const Dataset& ds, const std::string& id) {
  const Subject* s = ds.find_subject(id);
  return s ? s->name : id;
}

class Builder {
 public:
  explicit Builder(const Dataset& ds) : ds_(ds) {
    try {
      table_.emplace(ds);
    } catch (const Error& e) {
      scoring_error_ = e.what();
    }
  }

  void add_table(const PublishedTable& t) {
    const std::size_t first = report_.entries.size();
    const WeightProfile* profile = ds_.find_profile(t.profile);
    std::optional<WeightProfile> fallback;
    if (profile == nullptr && t.profile == "default") profile = &fallback.emplace(ds_.default_profile());

    for (const auto& cell : t.parameter_cells) parameter_cell(t, cell);
    for (const auto& cell : t.overall_cells) overall_cell(t, profile, cell);
    annotate_uniform_columns(first);
    if (!t.note.empty()) {
      for (std::size_t i = first; i < report_.entries.size(); ++i) append_note(report_.entries[i], t.note);
    }
  }

  DiscrepancyReport take() { return std::move(report_); }

 private:
  static void append_note(DiscrepancyEntry& e, const std::string& note) {
    if (!e.note.empty()) e.note += "; ";
    e.note += note;
  }

  void push(const PublishedTable& t, const std::string& subject, const std::string& field, std::string what,
            double published, std::optional<double> recomputed, std::string note) {
    DiscrepancyEntry e;
    e.table = t.label;
    e.subject = subject;
    e.field = field;
    e.location = t.label + ", " + subject_name(ds_, subject) + ", " + what;
    e.published = published;
    e.recomputed = recomputed.value_or(0.0);
    e.delta = published - e.recomputed;
    e.note = std::move(note);
    if (recomputed && std::fabs(e.delta) <= kDiscrepancyThreshold) return;
    report_.entries.push_back(std::move(e));
  }

  const SubjectScores* row(const std::string& subject) const {
    if (!table_) return nullptr;
    for (const auto& r : table_->rows()) {
      if (r.subject == subject) return &r;
    }
    return nullptr;
  }

  void parameter_cell(const PublishedTable& t, const PublishedParameterCell& cell) {
    const auto index = ds_.framework.index_of(cell.parameter);
    const std::string what = index ? ds_.framework.parameters[*index].name : cell.parameter;
    if (!index) return push(t, cell.subject, cell.parameter, what, cell.value, std::nullopt,
                                "unknown parameter '" + cell.parameter + "'");
    const SubjectScores* r = row(cell.subject);
    if (r == nullptr) {
      return push(t, cell.subject, cell.parameter, what, cell.value, std::nullopt,
                  table_ ? "unknown subject '" + cell.subject + "'" : "not recomputable: " + scoring_error_);
    }
    push(t, cell.subject, cell.parameter, what, cell.value, r->parameters[*index].score, {});
  }

  void overall_cell(const PublishedTable& t, const WeightProfile* profile, const PublishedOverallCell& cell) {
    const SubjectScores* r = row(cell.subject);
    std::string missing;
    if (profile == nullptr) {
      missing = "unknown weight profile '" + t.profile + "'";
    } else if (r == nullptr) {
      missing = table_ ? "unknown subject '" + cell.subject + "'" : "not recomputable: " + scoring_error_;
    }
    std::optional<ScoreCard> card;
    if (missing.empty()) {
      try {
        card = score_card(*r, ds_.framework, *profile, t.category);
      } catch (const Error& e) {
        missing = e.what();
      }
    }
    if (cell.ls) {
      push(t, cell.subject, "ls", "LS", *cell.ls, card ? std::optional(card->ls) : std::nullopt, missing);
    }
    if (cell.ls_bounded) {
      std::string note = missing;
      if (card && *cell.ls_bounded > 0.0 && card->weight_total > 0.0) {
        // Which weight total the published bounded value was divided by.
        const double implied = cell.ls.value_or(card->ls) / *cell.ls_bounded;
        if (std::fabs(implied - card->weight_total) > 0.05 * card->weight_total) {
          double profile_total = 0.0;
          for (const auto& [id, w] : profile->weights) profile_total += w;
          note = "published value implies divisor " + fixed(implied, 2) + "; in-scope weight total is " +
                 compact(card->weight_total);
          if (std::fabs(implied - profile_total) <= 0.05 * profile_total) {
            note += ", full-profile weight total is " + compact(profile_total);
          }
        }
      }
      push(t, cell.subject, "ls_bounded", "LS'", *cell.ls_bounded,
           card ? std::optional(card->ls_bounded) : std::nullopt, note);
    }
  }

  // A column whose every reported cell is off by the same amount is flagged as
  // a uniform offset.
  void annotate_uniform_columns(std::size_t first) {
    std::map<std::string, std::vector<std::size_t>> columns;
    for (std::size_t i = first; i < report_.entries.size(); ++i) columns[report_.entries[i].field].push_back(i);
    for (const auto& [field, idx] : columns) {
      if (idx.size() < 2) continue;
      const double d0 = report_.entries[idx.front()].delta;
      bool uniform = true;
      for (auto i : idx) uniform = uniform && std::fabs(report_.entries[i].delta - d0) <= kDiscrepancyThreshold;
      if (!uniform) continue;
      const std::string note = "uniform offset " + std::string(d0 > 0 ? "+" : "") + fixed(d0, 2) + " across " +
                               std::to_string(idx.size()) + " cells";
      for (auto i : idx) append_note(report_.entries[i], note);
    }
  }

  const Dataset& ds_;
  std::optional<ScoreTable> table_;
  std::string scoring_error_;
  DiscrepancyReport report_;
};

}  // namespace

PublishedTables published_tables_from_json(const json& j) {
  detail::reject_unknown(j, {"tables"}, "");
  const json& tables = detail::require(j, "tables", "");
  detail::expect_array(tables, "/tables");
  PublishedTables out;
  for (std::size_t i = 0; i < tables.size(); ++i) out.tables.push_back(table_from_json(tables[i], child("/tables", i)));
  return out;
}

PublishedTables load_published_tables(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), e.what());
  }
  try {
    return published_tables_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.location(), e.message());
  }
}

json to_json(const PublishedTables& tables) {
  json arr = json::array();
  for (const auto& t : tables.tables) {
    json jt = json::object();
    jt["id"] = t.id;
    jt["label"] = t.label;
    jt["title"] = t.title;
    jt["profile"] = t.profile;
    jt["category"] = to_string(t.category);
    jt["note"] = t.note;
    json pcs = json::array();
    for (const auto& c : t.parameter_cells) {
      pcs.push_back(json{{"subject", c.subject}, {"parameter", c.parameter}, {"value", c.value}});
    }
    jt["parameter_cells"] = std::move(pcs);
    json ocs = json::array();
    for (const auto& c : t.overall_cells) {
      json jc = json{{"subject", c.subject}};
      if (c.ls) jc["ls"] = *c.ls;
      if (c.ls_bounded) jc["ls_bounded"] = *c.ls_bounded;
      ocs.push_back(std::move(jc));
    }
    jt["overall_cells"] = std::move(ocs);
    arr.push_back(std::move(jt));
  }
  return json{{"tables", std::move(arr)}};
}

DiscrepancyReport discrepancy_report(const Dataset& dataset, const PublishedTables& published) {
  Builder b(dataset);
  for (const auto& t : published.tables) b.add_table(t);
  return b.take();
}

json to_json(const DiscrepancyReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back(json{{"table", e.table},
                           {"subject", e.subject},
                           {"field", e.field},
                           {"location", e.location},
                           {"published", e.published},
                           {"recomputed", e.recomputed},
                           {"delta", e.delta},
                           {"note", e.note}});
  }
  return json{{"threshold", kDiscrepancyThreshold}, {"entries", std::move(entries)}};
}

}  // namespace langeval
