#include "langeval/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include "json_util.hpp"
#include "langeval/dataset_io.hpp"
#include "langeval/errors.hpp"

namespace langeval {

using detail::child;
using detail::json;

WeightProfile apply_weight_overrides(const Dataset& dataset, const WhatIfRequest& request) {
  WeightProfile profile;
  if (const auto* p = dataset.find_profile(request.profile)) {
    profile = *p;
  } else if (request.profile == "default") {
    profile = dataset.default_profile();
  } else {
    throw OverrideError("profile", "unknown weight profile '" + request.profile + "'");
  }
  for (const auto& [id, w] : request.weights) {
    const std::string field = "weights." + id;
    if (dataset.framework.find(id) == nullptr) throw OverrideError(field, "unknown parameter '" + id + "'");
    if (!(w > 0.0) || !std::isfinite(w)) throw OverrideError(field, "weight must be a finite number > 0");
    profile.weights[id] = w;
  }
  return profile;
}

namespace {

void check_override(const Dataset& ds, const RatingOverride& o, const std::string& field) {
  const auto& t = o.target;
  if (ds.find_subject(t.subject) == nullptr) {
    throw OverrideError(field + ".subject", "unknown subject '" + t.subject + "'");
  }
  const Parameter* p = ds.framework.find(t.parameter);
  if (p == nullptr) throw OverrideError(field + ".parameter", "unknown parameter '" + t.parameter + "'");
  const SubParameter* sub = nullptr;
  if (t.sub_parameter) {
    sub = p->find_sub(*t.sub_parameter);
    if (sub == nullptr) {
      throw OverrideError(field + ".sub_parameter", "unknown sub-parameter '" + *t.sub_parameter + "'");
    }
  }
  const std::string vf = field + ".value";
  if (std::holds_alternative<Level>(o.value)) {
    if (p->score_mode != ScoreMode::AggregateSubRatings || sub == nullptr ||
        sub->kind != SubParameterKind::Qualitative) {
      throw OverrideError(vf, "a qualitative level needs a rated sub-parameter cell");
    }
  } else if (const auto* raw = std::get_if<RawValue>(&o.value)) {
    if (p->score_mode != ScoreMode::DemandNormalized || sub == nullptr) {
      throw OverrideError(vf, "a raw value needs a demand sub-feature cell");
    }
    if (!(raw->value >= 0.0) || !std::isfinite(raw->value)) throw OverrideError(vf, "raw value must be >= 0");
  } else {
    const double v = std::get<DirectScore>(o.value).value;
    if (p->score_mode != ScoreMode::DirectOverride || sub != nullptr) {
      throw OverrideError(vf, "a direct score needs a direct-override parameter without sub-parameter");
    }
    if (!(v >= 0.0 && v <= 1.0)) throw OverrideError(vf, "direct score must lie in [0, 1]");
  }
}

}  // namespace

Dataset apply_rating_overrides(const Dataset& dataset, const std::vector<RatingOverride>& overrides) {
  Dataset out = dataset;
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    const auto& o = overrides[i];
    check_override(dataset, o, "ratings[" + std::to_string(i) + "]");
    Rating r{o.target.subject, o.target.parameter, o.target.sub_parameter, o.value, Provenance::User};
    auto it = std::find_if(out.ratings.begin(), out.ratings.end(), [&](const Rating& x) {
      return x.subject == r.subject && x.parameter == r.parameter && x.sub_parameter == r.sub_parameter;
    });
    if (it != out.ratings.end()) {
      *it = std::move(r);
    } else {
      out.ratings.push_back(std::move(r));
    }
  }
  return out;
}

WhatIfResult what_if(const Dataset& dataset, const WhatIfRequest& request) {
  WhatIfResult result;
  result.profile = apply_weight_overrides(dataset, request);
  result.category = request.category;
  if (request.ratings.empty()) {
    result.ranking = rank(dataset, result.profile, request.category);
    return result;
  }
  const Dataset modified = apply_rating_overrides(dataset, request.ratings);
  std::optional<ScoreTable> table;
  try {
    table.emplace(modified);
  } catch (const Error& e) {
    throw OverrideError("ratings", e.what());
  }
  result.ranking = rank(*table, result.profile, request.category);
  return result;
}

WhatIfRequest whatif_request_from_json(const json& j) {
  detail::reject_unknown(j, {"profile", "weights", "ratings", "category"}, "");
  WhatIfRequest req;
  if (const json* v = detail::optional_field(j, "profile")) req.profile = detail::as_string(*v, "/profile");
  if (const json* v = detail::optional_field(j, "category")) {
    const auto text = detail::as_string(*v, "/category");
    auto f = parse_category_filter(text);
    if (!f) throw ParseError("/category", "expected \"all\", \"technical\" or \"environmental\"");
    req.category = *f;
  }
  if (const json* v = detail::optional_field(j, "weights")) {
    detail::expect_object(*v, "/weights");
    for (const auto& [id, w] : v->items()) req.weights[id] = detail::as_number(w, child("/weights", id));
  }
  if (const json* v = detail::optional_field(j, "ratings")) {
    detail::expect_array(*v, "/ratings");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto p = child("/ratings", i);
      const json& r = (*v)[i];
      detail::reject_unknown(r, {"subject", "parameter", "sub_parameter", "value"}, p);
      RatingOverride o;
      o.target.subject = detail::get_string(r, "subject", p);
      o.target.parameter = detail::get_string(r, "parameter", p);
      if (const json* s = detail::optional_field(r, "sub_parameter")) {
        o.target.sub_parameter = detail::as_string(*s, child(p, "sub_parameter"));
      }
      o.value = rating_value_from_json(detail::require(r, "value", p), o.target.sub_parameter.has_value(),
                                       child(p, "value"));
      req.ratings.push_back(std::move(o));
    }
  }
  return req;
}

json to_json(const WhatIfRequest& request) {
  json weights = json::object();
  for (const auto& [id, w] : request.weights) weights[id] = w;
  json ratings = json::array();
  for (const auto& o : request.ratings) {
    json r = json{{"subject", o.target.subject}, {"parameter", o.target.parameter}};
    if (o.target.sub_parameter) r["sub_parameter"] = *o.target.sub_parameter;
    r["value"] = to_json(o.value);
    ratings.push_back(std::move(r));
  }
  return json{{"profile", request.profile},
              {"weights", std::move(weights)},
              {"ratings", std::move(ratings)},
              {"category", to_string(request.category)}};
}

json to_json(const WhatIfResult& result) { return ranking_to_json(result.ranking, result.profile, result.category); }

namespace {

std::size_t in_scope_index(const Framework& fw, CategoryFilter filter, std::string_view parameter) {
  const auto index = fw.index_of(parameter);
  if (!index) throw InvalidArgument("unknown parameter '" + std::string(parameter) + "'");
  const std::size_t i = *index;
  if (!in_scope(filter, fw.parameters[i].category)) {
    throw InvalidArgument("parameter '" + std::string(parameter) + "' is outside the category filter");
  }
  return i;
}

}  // namespace

std::vector<AffineScore> affine_scores(const ScoreTable& table, const WeightProfile& profile, CategoryFilter filter,
                                       std::string_view parameter) {
  const auto& fw = table.framework();
  const std::size_t k = in_scope_index(fw, filter, parameter);
  std::vector<AffineScore> out;
  for (const auto& row : table.rows()) {
    AffineScore a{row.subject, 0.0, row.parameters[k].score};
    for (std::size_t i = 0; i < fw.parameters.size(); ++i) {
      if (i == k || !in_scope(filter, fw.parameters[i].category)) continue;
      a.intercept += profile.weight(fw.parameters[i].id) * row.parameters[i].score;
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::optional<double> crossover_weight(const AffineScore& a, const AffineScore& b) noexcept {
  const double ds = a.slope - b.slope;
  if (std::fabs(ds) < 1e-12) return std::nullopt;
  return (b.intercept - a.intercept) / ds;
}

SweepResult weight_sweep(const ScoreTable& table, const WeightProfile& profile, CategoryFilter filter,
                         std::string_view parameter, double w_min, double w_max, int steps) {
  if (!(w_min > 0.0) || !(w_min <= w_max) || !std::isfinite(w_max)) {
    throw InvalidArgument("sweep range must satisfy 0 < from <= to");
  }
  if (steps < 2) throw InvalidArgument("sweep needs at least 2 steps");
  in_scope_index(table.framework(), filter, parameter);

  SweepResult out;
  out.parameter = std::string(parameter);
  out.profile = profile.name;
  out.category = filter;
  WeightProfile p = profile;
  for (int i = 0; i < steps; ++i) {
    const double w = i == steps - 1 ? w_max : w_min + (w_max - w_min) * i / (steps - 1);
    out.grid.push_back(w);
    p.weights[std::string(parameter)] = w;
    std::vector<std::string> ids;
    for (const auto& c : rank(table, p, filter)) ids.push_back(c.subject);
    out.rankings.push_back(std::move(ids));
  }

  const auto lines = affine_scores(table, profile, filter, parameter);
  for (std::size_t a = 0; a < lines.size(); ++a) {
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      const auto w = crossover_weight(lines[a], lines[b]);
      if (!w || *w < w_min || *w > w_max) continue;
      // Below the crossing the flatter line is ahead.
      const bool a_flatter = lines[a].slope < lines[b].slope;
      out.crossovers.push_back({*w, a_flatter ? lines[a].subject : lines[b].subject,
                                a_flatter ? lines[b].subject : lines[a].subject});
    }
  }
  std::sort(out.crossovers.begin(), out.crossovers.end(), [](const Crossover& x, const Crossover& y) {
    if (x.weight != y.weight) return x.weight < y.weight;
    if (x.ahead_before != y.ahead_before) return x.ahead_before < y.ahead_before;
    return x.ahead_after < y.ahead_after;
  });
  return out;
}

SweepResult weight_sweep(const Dataset& dataset, const WeightProfile& profile, CategoryFilter filter,
                         std::string_view parameter, double w_min, double w_max, int steps) {
  return weight_sweep(ScoreTable(dataset), profile, filter, parameter, w_min, w_max, steps);
}

json to_json(const SweepResult& result) {
  json crossovers = json::array();
  for (const auto& c : result.crossovers) {
    crossovers.push_back(json{{"weight", c.weight}, {"ahead_before", c.ahead_before}, {"ahead_after", c.ahead_after}});
  }
  return json{{"parameter", result.parameter},
              {"profile", result.profile},
              {"category", to_string(result.category)},
              {"grid", result.grid},
              {"rankings", result.rankings},
              {"crossovers", std::move(crossovers)}};
}

ContributionBreakdown contribution(const ScoreCard& card) {
  ContributionBreakdown out;
  out.subject = card.subject;
  out.ls = card.ls;
  out.zero_total = !(card.ls > 0.0);
  for (const auto& p : card.parameters) {
    out.parameters.push_back({p.score.parameter, p.weighted, out.zero_total ? 0.0 : p.weighted / card.ls});
  }
  return out;
}

ContributionBreakdown contribution(const Dataset& dataset, std::string_view subject, const WeightProfile& profile,
                                   CategoryFilter filter) {
  return contribution(score_card(dataset, subject, profile, filter));
}

StabilityInterval rank_stability(const ScoreTable& table, const WeightProfile& profile, CategoryFilter filter,
                                 std::string_view parameter) {
  StabilityInterval out;
  out.parameter = std::string(parameter);
  out.current_weight = profile.weight(parameter);
  const auto lines = affine_scores(table, profile, filter, parameter);
  const auto ranking = rank(table, profile, filter);
  if (ranking.empty()) {
    out.lower = 0.0;
    return out;
  }
  out.top_subject = ranking.front().subject;
  const auto top = std::find_if(lines.begin(), lines.end(), [&](const AffineScore& a) {
    return a.subject == out.top_subject;
  });

  const double w0 = out.current_weight;
  for (const auto& c : lines) {
    if (c.subject == out.top_subject) continue;
    const auto w = crossover_weight(*top, c);
    if (!w) continue;
    if (c.slope > top->slope) {
      const double at = std::max(*w, w0);
      if (!out.upper || at < *out.upper) {
        out.upper = at;
        out.challenger_above = c.subject;
      }
    } else if (*w > 0.0) {
      const double at = std::min(*w, w0);
      if (at > out.lower) {
        out.lower = at;
        out.challenger_below = c.subject;
      }
    }
  }
  return out;
}

StabilityInterval rank_stability(const Dataset& dataset, const WeightProfile& profile, CategoryFilter filter,
                                 std::string_view parameter) {
  return rank_stability(ScoreTable(dataset), profile, filter, parameter);
}

json to_json(const StabilityInterval& s) {
  json j = json::object();
  j["parameter"] = s.parameter;
  j["top_subject"] = s.top_subject;
  j["current_weight"] = s.current_weight;
  j["lower"] = s.lower;
  j["upper"] = s.upper ? json(*s.upper) : json(nullptr);
  j["challenger_below"] = s.challenger_below ? json(*s.challenger_below) : json(nullptr);
  j["challenger_above"] = s.challenger_above ? json(*s.challenger_above) : json(nullptr);
  return j;
}

}  // namespace langeval
