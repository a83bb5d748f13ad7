#include "langeval/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "json_util.hpp"
#include "langeval/errors.hpp"

namespace langeval {

using detail::json;

std::string_view to_string(CategoryFilter filter) noexcept {
  switch (filter) {
    case CategoryFilter::All: return "all";
    case CategoryFilter::Technical: return "technical";
    case CategoryFilter::Environmental: return "environmental";
  }
  return "all";
}

std::optional<CategoryFilter> parse_category_filter(std::string_view text) {
  if (text == "all") return CategoryFilter::All;
  if (text == "technical" || text == "tech") return CategoryFilter::Technical;
  if (text == "environmental" || text == "env") return CategoryFilter::Environmental;
  return std::nullopt;
}

bool in_scope(CategoryFilter filter, Category category) noexcept {
  switch (filter) {
    case CategoryFilter::All: return true;
    case CategoryFilter::Technical: return category == Category::Technical;
    case CategoryFilter::Environmental: return category == Category::Environmental;
  }
  return true;
}

double map_level(Level level, const RatingScale& scale) noexcept { return scale.score(level); }

ParameterScore parameter_score(std::string_view subject, const Parameter& parameter,
                               const RatingIndex& ratings, const RatingScale& scale) {
  ParameterScore out;
  out.parameter = parameter.id;
  const std::string where = "subject '" + std::string(subject) + "', parameter '" + parameter.id + "'";

  if (parameter.score_mode == ScoreMode::DirectOverride) {
    const Rating* r = ratings.find(subject, parameter.id, std::nullopt);
    const auto* direct = r ? std::get_if<DirectScore>(&r->value) : nullptr;
    if (direct == nullptr) throw MissingRatingError("missing direct score for " + where);
    out.score = direct->value;
    out.provenance[static_cast<std::size_t>(r->provenance)] += 1;
    out.source = "direct";
    return out;
  }
  if (parameter.score_mode != ScoreMode::AggregateSubRatings) {
    throw InvalidArgument("parameter '" + parameter.id + "' is not scored from rating cells");
  }
  if (parameter.sub_parameters.empty()) {
    throw MissingRatingError("parameter '" + parameter.id + "' has no sub-parameters");
  }

  double sum = 0.0;
  for (const auto& sub : parameter.sub_parameters) {
    const Rating* r = ratings.find(subject, parameter.id, sub.id);
    const auto* level = r ? std::get_if<Level>(&r->value) : nullptr;
    if (level == nullptr) {
      throw MissingRatingError("missing rating for " + where + ", sub-parameter '" + sub.id + "'");
    }
    const double s = map_level(*level, scale);
    out.sub_scores.push_back(s);
    out.provenance[static_cast<std::size_t>(r->provenance)] += 1;
    sum += s;
  }
  // Each sub-parameter contributes at most 1, so the maximum is the count.
  out.score = sum / static_cast<double>(parameter.sub_parameters.size());
  out.source = "ratings";
  return out;
}

ParameterScore parameter_score(std::string_view subject, const Parameter& parameter,
                               std::span<const Rating> ratings, const RatingScale& scale) {
  return parameter_score(subject, parameter, RatingIndex(ratings), scale);
}

namespace {

ParameterScore demand_score_from(const std::vector<NormalizedDemand>& normalized,
                                 std::string_view subject, std::string parameter_id) {
  auto it = std::find_if(normalized.begin(), normalized.end(),
                         [&](const NormalizedDemand& n) { return n.subject == subject; });
  if (it == normalized.end()) {
    throw UnknownSubjectError("demand snapshot has no entry for subject '" + std::string(subject) + "'");
  }
  ParameterScore out;
  out.parameter = std::move(parameter_id);
  out.score = it->score;
  out.sub_scores.assign(it->features.begin(), it->features.end());
  out.source = "demand-snapshot";
  return out;
}

// Snapshot restricted to the dataset subjects, with raw-value ratings of this
// parameter taking precedence over snapshot values.
DemandSnapshot effective_snapshot(const Dataset& ds, const Parameter& parameter, const RatingIndex& idx,
                                  std::vector<std::array<int, kProvenanceCount>>& provenance) {
  DemandSnapshot snap;
  if (ds.demand) {
    snap.as_of = ds.demand->as_of;
    snap.sources = ds.demand->sources;
  }
  provenance.assign(ds.subjects.size(), {});
  for (std::size_t i = 0; i < ds.subjects.size(); ++i) {
    const auto& s = ds.subjects[i];
    const DemandEntry* base = ds.demand ? ds.demand->find(s.id) : nullptr;
    DemandEntry e;
    e.subject = s.id;
    for (std::size_t f = 0; f < kDemandFeatures.size(); ++f) {
      const Rating* r = idx.find(s.id, parameter.id, kDemandFeatures[f]);
      const auto* raw = r ? std::get_if<RawValue>(&r->value) : nullptr;
      if (raw != nullptr) {
        e.feature(f) = raw->value;
        provenance[i][static_cast<std::size_t>(r->provenance)] += 1;
      } else if (base != nullptr) {
        e.feature(f) = base->feature(f);
      } else {
        throw UnknownSubjectError("no demand data for subject '" + s.id + "', feature '" +
                                  std::string(kDemandFeatures[f]) + "'");
      }
    }
    snap.entries.push_back(std::move(e));
  }
  return snap;
}

}  // namespace

ParameterScore demand_parameter_score(const DemandSnapshot& snapshot, std::string_view subject) {
  if (snapshot.find(subject) == nullptr) {
    throw UnknownSubjectError("demand snapshot has no entry for subject '" + std::string(subject) + "'");
  }
  return demand_score_from(normalize_demand(snapshot), subject, "demand");
}

ScoreTable::ScoreTable(const Dataset& dataset) : framework_(dataset.framework) {
  const RatingIndex idx(dataset.ratings);
  const auto& fw = dataset.framework;

  rows_.reserve(dataset.subjects.size());
  for (const auto& s : dataset.subjects) {
    rows_.push_back(SubjectScores{s.id, std::vector<ParameterScore>(fw.parameters.size())});
  }

  for (std::size_t pi = 0; pi < fw.parameters.size(); ++pi) {
    const Parameter& p = fw.parameters[pi];
    switch (p.score_mode) {
      case ScoreMode::AggregateSubRatings:
      case ScoreMode::DirectOverride:
        for (auto& row : rows_) row.parameters[pi] = parameter_score(row.subject, p, idx, fw.scale);
        break;
      case ScoreMode::DemandNormalized: {
        std::vector<std::array<int, kProvenanceCount>> prov;
        const auto normalized = normalize_demand(effective_snapshot(dataset, p, idx, prov));
        for (std::size_t si = 0; si < rows_.size(); ++si) {
          rows_[si].parameters[pi] = demand_score_from(normalized, rows_[si].subject, p.id);
          rows_[si].parameters[pi].provenance = prov[si];
        }
        break;
      }
      case ScoreMode::TransitionCost: {
        const std::size_t n = dataset.subjects.size();
        for (auto& row : rows_) {
          int total = 0;
          if (n > 1) {
            if (!dataset.transition_costs) {
              throw MissingRatingError("parameter '" + p.id + "' needs a transition cost matrix");
            }
            total = total_cost(row.subject, *dataset.transition_costs);
          }
          ParameterScore ps;
          ps.parameter = p.id;
          ps.score = map_level(cost_rating(total, n), fw.scale);
          ps.source = "transition-matrix";
          row.parameters[pi] = std::move(ps);
        }
        break;
      }
    }
  }
}

const SubjectScores& ScoreTable::row(std::string_view subject) const {
  auto it = std::find_if(rows_.begin(), rows_.end(), [&](const SubjectScores& r) { return r.subject == subject; });
  if (it == rows_.end()) throw UnknownSubjectError("unknown subject '" + std::string(subject) + "'");
  return *it;
}

const ScoredParameter* ScoreCard::find(std::string_view parameter) const noexcept {
  auto it = std::find_if(parameters.begin(), parameters.end(),
                         [&](const ScoredParameter& p) { return p.score.parameter == parameter; });
  return it == parameters.end() ? nullptr : &*it;
}

ScoreCard score_card(const SubjectScores& scores, const Framework& framework, const WeightProfile& profile,
                     CategoryFilter filter) {
  if (scores.parameters.size() != framework.parameters.size()) {
    throw InvalidArgument("score row does not match the framework");
  }
  ScoreCard card;
  card.subject = scores.subject;
  card.profile = profile.name;
  card.category = filter;
  for (std::size_t i = 0; i < framework.parameters.size(); ++i) {
    const Parameter& p = framework.parameters[i];
    if (!in_scope(filter, p.category)) continue;
    const double w = profile.weight(p.id);
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("weight for parameter '" + p.id + "' must be a finite number > 0");
    }
    ScoredParameter sp{scores.parameters[i], p.category, w, w * scores.parameters[i].score};
    card.ls += sp.weighted;
    card.weight_total += w;
    if (p.category == Category::Technical) {
      card.ls_tech += sp.weighted;
      card.tech_weight_total += w;
    } else {
      card.ls_env += sp.weighted;
      card.env_weight_total += w;
    }
    card.parameters.push_back(std::move(sp));
  }
  card.ls_bounded = card.weight_total > 0.0 ? card.ls / card.weight_total : 0.0;
  card.ls_tech_bounded = card.tech_weight_total > 0.0 ? card.ls_tech / card.tech_weight_total : 0.0;
  card.ls_env_bounded = card.env_weight_total > 0.0 ? card.ls_env / card.env_weight_total : 0.0;
  return card;
}

ScoreCard score_card(const Dataset& dataset, std::string_view subject, const WeightProfile& profile,
                     CategoryFilter filter) {
  if (dataset.find_subject(subject) == nullptr) {
    throw UnknownSubjectError("unknown subject '" + std::string(subject) + "'");
  }
  const ScoreTable table(dataset);
  return score_card(table.row(subject), dataset.framework, profile, filter);
}

double unbounded_score(const Dataset& dataset, std::string_view subject, const WeightProfile& profile) {
  return score_card(dataset, subject, profile).ls;
}

double bounded_score(const Dataset& dataset, std::string_view subject, const WeightProfile& profile) {
  return score_card(dataset, subject, profile).ls_bounded;
}

SplitScores split_scores(const Dataset& dataset, std::string_view subject, const WeightProfile& profile) {
  const ScoreCard c = score_card(dataset, subject, profile);
  return {c.ls_tech, c.ls_env, c.ls_tech_bounded, c.ls_env_bounded};
}

namespace {
long long quantize(double v) noexcept { return std::llround(v * 1e9); }
}  // namespace

bool ranks_before(const ScoreCard& a, const ScoreCard& b) noexcept {
  const auto qa = quantize(a.ls_bounded);
  const auto qb = quantize(b.ls_bounded);
  if (qa != qb) return qa > qb;
  const auto ta = quantize(a.ls_tech_bounded);
  const auto tb = quantize(b.ls_tech_bounded);
  if (ta != tb) return ta > tb;
  return a.subject < b.subject;
}

std::vector<ScoreCard> rank(const ScoreTable& table, const WeightProfile& profile, CategoryFilter filter) {
  std::vector<ScoreCard> cards;
  cards.reserve(table.rows().size());
  for (const auto& row : table.rows()) cards.push_back(score_card(row, table.framework(), profile, filter));
  std::sort(cards.begin(), cards.end(), ranks_before);
  return cards;
}

std::vector<ScoreCard> rank(const Dataset& dataset, const WeightProfile& profile, CategoryFilter filter) {
  return rank(ScoreTable(dataset), profile, filter);
}

json to_json(const ScoreCard& card) {
  json j = json::object();
  j["subject"] = card.subject;
  j["profile"] = card.profile;
  j["category"] = to_string(card.category);
  j["ls"] = card.ls;
  j["ls_bounded"] = card.ls_bounded;
  j["ls_tech"] = card.ls_tech;
  j["ls_env"] = card.ls_env;
  j["ls_tech_bounded"] = card.ls_tech_bounded;
  j["ls_env_bounded"] = card.ls_env_bounded;
  j["weight_total"] = card.weight_total;
  j["tech_weight_total"] = card.tech_weight_total;
  j["env_weight_total"] = card.env_weight_total;
  json params = json::array();
  for (const auto& p : card.parameters) {
    json jp = json::object();
    jp["id"] = p.score.parameter;
    jp["category"] = to_string(p.category);
    jp["weight"] = p.weight;
    jp["score"] = p.score.score;
    jp["weighted"] = p.weighted;
    jp["sub_scores"] = p.score.sub_scores;
    jp["source"] = p.score.source;
    json prov = json::object();
    for (std::size_t k = 0; k < kProvenanceCount; ++k) {
      if (p.score.provenance[k] > 0) prov[std::string(to_string(static_cast<Provenance>(k)))] = p.score.provenance[k];
    }
    jp["provenance"] = std::move(prov);
    params.push_back(std::move(jp));
  }
  j["parameters"] = std::move(params);
  return j;
}

ScoreCard score_card_from_json(const json& j) {
  detail::reject_unknown(j, {"subject", "profile", "category", "ls", "ls_bounded", "ls_tech", "ls_env",
                             "ls_tech_bounded", "ls_env_bounded", "weight_total", "tech_weight_total",
                             "env_weight_total", "parameters"},
                         "");
  ScoreCard c;
  c.subject = detail::get_string(j, "subject", "");
  c.profile = detail::get_string(j, "profile", "");
  const auto cat = detail::get_string(j, "category", "");
  auto filter = parse_category_filter(cat);
  if (!filter) throw ParseError("/category", "unknown category filter \"" + cat + "\"");
  c.category = *filter;
  c.ls = detail::get_number(j, "ls", "");
  c.ls_bounded = detail::get_number(j, "ls_bounded", "");
  c.ls_tech = detail::get_number(j, "ls_tech", "");
  c.ls_env = detail::get_number(j, "ls_env", "");
  c.ls_tech_bounded = detail::get_number(j, "ls_tech_bounded", "");
  c.ls_env_bounded = detail::get_number(j, "ls_env_bounded", "");
  c.weight_total = detail::get_number(j, "weight_total", "");
  c.tech_weight_total = detail::get_number(j, "tech_weight_total", "");
  c.env_weight_total = detail::get_number(j, "env_weight_total", "");
  const json& params = detail::require(j, "parameters", "");
  detail::expect_array(params, "/parameters");
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto p = detail::child("/parameters", i);
    const json& jp = params[i];
    detail::reject_unknown(jp, {"id", "category", "weight", "score", "weighted", "sub_scores", "source", "provenance"}, p);
    ScoredParameter sp;
    sp.score.parameter = detail::get_string(jp, "id", p);
    const auto pc = detail::get_string(jp, "category", p);
    auto category = parse_category(pc);
    if (!category) throw ParseError(detail::child(p, "category"), "unknown category");
    sp.category = *category;
    sp.weight = detail::get_number(jp, "weight", p);
    sp.score.score = detail::get_number(jp, "score", p);
    sp.weighted = detail::get_number(jp, "weighted", p);
    const json& subs = detail::require(jp, "sub_scores", p);
    detail::expect_array(subs, detail::child(p, "sub_scores"));
    for (std::size_t k = 0; k < subs.size(); ++k) {
      sp.score.sub_scores.push_back(detail::as_number(subs[k], detail::child(detail::child(p, "sub_scores"), k)));
    }
    sp.score.source = detail::get_string(jp, "source", p);
    const json& prov = detail::require(jp, "provenance", p);
    detail::expect_object(prov, detail::child(p, "provenance"));
    for (const auto& [key, value] : prov.items()) {
      auto tag = parse_provenance(key);
      if (!tag || !value.is_number_integer()) {
        throw ParseError(detail::child(detail::child(p, "provenance"), key), "invalid provenance count");
      }
      sp.score.provenance[static_cast<std::size_t>(*tag)] = value.get<int>();
    }
    c.parameters.push_back(std::move(sp));
  }
  return c;
}

json ranking_to_json(const std::vector<ScoreCard>& ranking, const WeightProfile& profile, CategoryFilter filter) {
  json weights = json::object();
  for (const auto& [id, w] : profile.weights) weights[id] = w;
  json cards = json::array();
  for (const auto& c : ranking) cards.push_back(to_json(c));
  return json{{"profile", profile.name},
              {"category", to_string(filter)},
              {"weights", std::move(weights)},
              {"ranking", std::move(cards)}};
}

std::vector<ScoreCard> ranking_from_json(const json& j) {
  detail::expect_object(j, "");
  const json& cards = detail::require(j, "ranking", "");
  detail::expect_array(cards, "/ranking");
  std::vector<ScoreCard> out;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    try {
      out.push_back(score_card_from_json(cards[i]));
    } catch (const ParseError& e) {
      throw ParseError(detail::child("/ranking", i) + e.location(), e.message());
    }
  }
  return out;
}

}  // namespace langeval
