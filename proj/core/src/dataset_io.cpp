#include "langeval/dataset_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json_util.hpp"
#include "langeval/errors.hpp"

namespace langeval {

using detail::child;
using detail::json;

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

RatingScale scale_from_json(const json& j, const std::string& p) {
  detail::reject_unknown(j, {"no", "partially", "mostly", "fully"}, p);
  std::array<double, 4> scores{};
  for (Level l : kAllLevels) {
    scores[static_cast<std::size_t>(l)] = detail::get_number(j, to_string(l), p);
  }
  try {
    return RatingScale(scores);
  } catch (const InvalidArgument& e) {
    throw ParseError(p, e.what());
  }
}

json to_json(const RatingScale& scale) {
  json j = json::object();
  for (Level l : kAllLevels) j[std::string(to_string(l))] = detail::number(scale.score(l));
  return j;
}

Parameter parameter_from_json(const json& j, const std::string& p) {
  detail::reject_unknown(j, {"id", "name", "category", "score_mode", "sub_parameters"}, p);
  Parameter param;
  param.id = detail::get_string(j, "id", p);
  param.name = detail::get_string(j, "name", p);

  const auto cat = detail::get_string(j, "category", p);
  if (auto c = parse_category(cat)) {
    param.category = *c;
  } else {
    throw ParseError(child(p, "category"), "expected \"technical\" or \"environmental\", got \"" + cat + "\"");
  }

  const auto mode = detail::get_string(j, "score_mode", p);
  if (auto m = parse_score_mode(mode)) {
    param.score_mode = *m;
  } else {
    throw ParseError(child(p, "score_mode"), "unknown score mode \"" + mode + "\"");
  }

  const auto sp = child(p, "sub_parameters");
  const json& subs = detail::require(j, "sub_parameters", p);
  detail::expect_array(subs, sp);
  std::set<std::string, std::less<>> seen;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto q = child(sp, i);
    detail::reject_unknown(subs[i], {"id", "name", "kind"}, q);
    SubParameter sub;
    sub.id = detail::get_string(subs[i], "id", q);
    sub.name = detail::get_string(subs[i], "name", q);
    if (const json* k = detail::optional_field(subs[i], "kind")) {
      const auto ks = detail::as_string(*k, child(q, "kind"));
      auto kind = parse_sub_parameter_kind(ks);
      if (!kind) throw ParseError(child(q, "kind"), "unknown sub-parameter kind \"" + ks + "\"");
      sub.kind = *kind;
    }
    if (!seen.insert(sub.id).second) throw DuplicateIdError(child(q, "id"), sub.id);
    param.sub_parameters.push_back(std::move(sub));
  }
  return param;
}

json to_json(const Parameter& param) {
  json j = json::object();
  j["id"] = param.id;
  j["name"] = param.name;
  j["category"] = to_string(param.category);
  j["score_mode"] = to_string(param.score_mode);
  json subs = json::array();
  for (const auto& s : param.sub_parameters) {
    subs.push_back(json{{"id", s.id}, {"name", s.name}, {"kind", to_string(s.kind)}});
  }
  j["sub_parameters"] = std::move(subs);
  return j;
}

Subject subject_from_json(const json& j, const std::string& p) {
  detail::reject_unknown(j, {"id", "name", "transition"}, p);
  Subject s;
  s.id = detail::get_string(j, "id", p);
  s.name = detail::get_string(j, "name", p);
  if (const json* t = detail::optional_field(j, "transition")) {
    const auto tp = child(p, "transition");
    detail::reject_unknown(*t, {"paradigm", "typing", "strength"}, tp);
    TransitionAttributes a;
    a.paradigm = detail::get_string(*t, "paradigm", tp);
    const auto typing = detail::get_string(*t, "typing", tp);
    if (typing == "static") {
      a.typing = Typing::Static;
    } else if (typing == "dynamic") {
      a.typing = Typing::Dynamic;
    } else {
      throw ParseError(child(tp, "typing"), "expected \"static\" or \"dynamic\"");
    }
    const auto strength = detail::get_string(*t, "strength", tp);
    if (strength == "strong") {
      a.strength = TypeStrength::Strong;
    } else if (strength == "weak") {
      a.strength = TypeStrength::Weak;
    } else {
      throw ParseError(child(tp, "strength"), "expected \"strong\" or \"weak\"");
    }
    s.transition = std::move(a);
  }
  return s;
}

json to_json(const Subject& s) {
  json j = json::object();
  j["id"] = s.id;
  j["name"] = s.name;
  if (s.transition) {
    j["transition"] = json{{"paradigm", s.transition->paradigm},
                           {"typing", to_string(s.transition->typing)},
                           {"strength", to_string(s.transition->strength)}};
  }
  return j;
}

Rating rating_from_json(const json& j, const std::string& p, const Dataset& ds) {
  detail::reject_unknown(j, {"subject", "parameter", "sub_parameter", "value", "provenance"}, p);
  Rating r;
  r.subject = detail::get_string(j, "subject", p);
  if (ds.find_subject(r.subject) == nullptr) {
    throw UnresolvedReferenceError(child(p, "subject"), r.subject, "subject");
  }
  r.parameter = detail::get_string(j, "parameter", p);
  const Parameter* param = ds.framework.find(r.parameter);
  if (param == nullptr) throw UnresolvedReferenceError(child(p, "parameter"), r.parameter, "parameter");
  if (const json* sub = detail::optional_field(j, "sub_parameter")) {
    r.sub_parameter = detail::as_string(*sub, child(p, "sub_parameter"));
    if (param->find_sub(*r.sub_parameter) == nullptr) {
      throw UnresolvedReferenceError(child(p, "sub_parameter"), *r.sub_parameter,
                                     "sub-parameter of '" + r.parameter + "'");
    }
  }
  r.value = rating_value_from_json(detail::require(j, "value", p), r.sub_parameter.has_value(),
                                   child(p, "value"));
  const auto prov = detail::get_string(j, "provenance", p);
  auto pv = parse_provenance(prov);
  if (!pv) {
    throw ParseError(child(p, "provenance"),
                     "expected one of \"paper\", \"editorial\", \"inferred\", \"user\"");
  }
  r.provenance = *pv;
  return r;
}

TransitionCostMatrix costs_from_json(const json& j, const std::string& p, const Dataset& ds) {
  detail::expect_array(j, p);
  std::vector<TransitionCostEntry> entries;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto q = child(p, i);
    detail::reject_unknown(j[i], {"from", "to", "costs"}, q);
    TransitionCostEntry e;
    e.from = detail::get_string(j[i], "from", q);
    e.to = detail::get_string(j[i], "to", q);
    if (ds.find_subject(e.from) == nullptr) throw UnresolvedReferenceError(child(q, "from"), e.from, "subject");
    if (ds.find_subject(e.to) == nullptr) throw UnresolvedReferenceError(child(q, "to"), e.to, "subject");
    if (e.from == e.to) throw ParseError(q, "transition cost from a subject to itself");
    const auto cp = child(q, "costs");
    const json& costs = detail::require(j[i], "costs", q);
    if (!costs.is_array() || costs.size() != 3) throw ParseError(cp, "expected an array of three 0/1 values");
    for (std::size_t k = 0; k < 3; ++k) {
      if (!costs[k].is_number_integer() || (costs[k] != 0 && costs[k] != 1)) {
        throw ParseError(child(cp, k), "expected 0 or 1");
      }
      e.costs.units[k] = costs[k].get<std::uint8_t>();
    }
    for (const auto& prev : entries) {
      if (prev.from == e.from && prev.to == e.to) {
        throw DuplicateIdError(q, e.from + "->" + e.to);
      }
    }
    entries.push_back(std::move(e));
  }
  return TransitionCostMatrix(ds.subject_ids(), std::move(entries));
}

}  // namespace

RatingValue rating_value_from_json(const json& j, bool has_sub_parameter, const std::string& pointer) {
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    if (auto level = parse_level(text)) return *level;
    throw ParseError(pointer, "unknown qualitative level \"" + text + "\"");
  }
  if (j.is_number()) {
    const double v = j.get<double>();
    if (has_sub_parameter) return RawValue{v};
    return DirectScore{v};
  }
  throw ParseError(pointer, "expected a qualitative level or a number");
}

json to_json(const RatingValue& value) {
  if (const auto* l = std::get_if<Level>(&value)) return std::string(to_string(*l));
  if (const auto* r = std::get_if<RawValue>(&value)) return detail::number(r->value);
  return detail::number(std::get<DirectScore>(value).value);
}

json to_json(const Rating& r) {
  json j = json::object();
  j["subject"] = r.subject;
  j["parameter"] = r.parameter;
  if (r.sub_parameter) j["sub_parameter"] = *r.sub_parameter;
  j["value"] = to_json(r.value);
  j["provenance"] = to_string(r.provenance);
  return j;
}

WeightProfile profile_from_json(const json& j, const Framework& framework, const std::string& p) {
  detail::reject_unknown(j, {"name", "weights"}, p);
  WeightProfile profile;
  if (const json* name = detail::optional_field(j, "name")) {
    profile.name = detail::as_string(*name, child(p, "name"));
  }
  const auto wp = child(p, "weights");
  const json& weights = detail::require(j, "weights", p);
  detail::expect_object(weights, wp);
  for (const auto& [id, w] : weights.items()) {
    if (framework.find(id) == nullptr) throw UnresolvedReferenceError(child(wp, id), id, "parameter");
    profile.weights[id] = detail::as_number(w, child(wp, id));
  }
  return profile;
}

json to_json(const WeightProfile& profile) {
  json weights = json::object();
  for (const auto& [id, w] : profile.weights) weights[id] = detail::number(w);
  return json{{"name", profile.name}, {"weights", std::move(weights)}};
}

Dataset dataset_from_json(const json& j) {
  detail::reject_unknown(j, {"framework", "subjects", "ratings", "demand", "transition_costs", "weight_profiles"}, "");
  Dataset ds;

  {
    const std::string p = "/framework";
    const json& fw = detail::require(j, "framework", "");
    detail::reject_unknown(fw, {"scale", "parameters"}, p);
    if (const json* scale = detail::optional_field(fw, "scale")) {
      ds.framework.scale = scale_from_json(*scale, child(p, "scale"));
    }
    const auto pp = child(p, "parameters");
    const json& params = detail::require(fw, "parameters", p);
    detail::expect_array(params, pp);
    for (std::size_t i = 0; i < params.size(); ++i) {
      Parameter param = parameter_from_json(params[i], child(pp, i));
      if (ds.framework.find(param.id) != nullptr) throw DuplicateIdError(child(child(pp, i), "id"), param.id);
      ds.framework.parameters.push_back(std::move(param));
    }
  }

  {
    const std::string p = "/subjects";
    const json& subjects = detail::require(j, "subjects", "");
    detail::expect_array(subjects, p);
    for (std::size_t i = 0; i < subjects.size(); ++i) {
      Subject s = subject_from_json(subjects[i], child(p, i));
      if (ds.find_subject(s.id) != nullptr) throw DuplicateIdError(child(child(p, i), "id"), s.id);
      ds.subjects.push_back(std::move(s));
    }
  }

  {
    const std::string p = "/ratings";
    const json& ratings = detail::require(j, "ratings", "");
    detail::expect_array(ratings, p);
    ds.ratings.reserve(ratings.size());
    for (std::size_t i = 0; i < ratings.size(); ++i) {
      ds.ratings.push_back(rating_from_json(ratings[i], child(p, i), ds));
    }
  }

  if (const json* demand = detail::optional_field(j, "demand")) {
    DemandSnapshot snap = snapshot_from_json(*demand, "/demand");
    std::set<std::string, std::less<>> seen;
    for (std::size_t i = 0; i < snap.entries.size(); ++i) {
      const auto q = child("/demand/entries", i);
      const auto& subject = snap.entries[i].subject;
      if (ds.find_subject(subject) == nullptr) throw UnresolvedReferenceError(child(q, "subject"), subject, "subject");
      if (!seen.insert(subject).second) throw DuplicateIdError(child(q, "subject"), subject);
    }
    ds.demand = std::move(snap);
  }

  if (const json* costs = detail::optional_field(j, "transition_costs")) {
    ds.transition_costs = costs_from_json(*costs, "/transition_costs", ds);
  }

  {
    const std::string p = "/weight_profiles";
    const json& profiles = detail::require(j, "weight_profiles", "");
    detail::expect_array(profiles, p);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const auto q = child(p, i);
      WeightProfile profile = profile_from_json(profiles[i], ds.framework, q);
      if (!profiles[i].contains("name")) throw ParseError(child(q, "name"), "missing required field");
      if (ds.find_profile(profile.name) != nullptr) throw DuplicateIdError(child(q, "name"), profile.name);
      ds.weight_profiles.push_back(std::move(profile));
    }
  }
  return ds;
}

Dataset parse_dataset(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_column(text, e.byte), e.what());
  }
  return dataset_from_json(j);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Dataset load_dataset(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_dataset(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.location(), e.message());
  }
}

json to_json(const Dataset& ds) {
  json j = json::object();
  json params = json::array();
  for (const auto& p : ds.framework.parameters) params.push_back(to_json(p));
  j["framework"] = json{{"scale", to_json(ds.framework.scale)}, {"parameters", std::move(params)}};

  json subjects = json::array();
  for (const auto& s : ds.subjects) subjects.push_back(to_json(s));
  j["subjects"] = std::move(subjects);

  json ratings = json::array();
  for (const auto& r : ds.ratings) ratings.push_back(to_json(r));
  j["ratings"] = std::move(ratings);

  j["demand"] = ds.demand ? to_json(*ds.demand) : json(nullptr);

  if (ds.transition_costs) {
    json costs = json::array();
    for (const auto& e : ds.transition_costs->entries()) {
      costs.push_back(json{{"from", e.from}, {"to", e.to}, {"costs", {e.costs.units[0], e.costs.units[1], e.costs.units[2]}}});
    }
    j["transition_costs"] = std::move(costs);
  } else {
    j["transition_costs"] = nullptr;
  }

  json profiles = json::array();
  for (const auto& p : ds.weight_profiles) profiles.push_back(to_json(p));
  j["weight_profiles"] = std::move(profiles);
  return j;
}

std::string save_dataset(const Dataset& dataset) { return to_json(dataset).dump(2) + "\n"; }

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << save_dataset(dataset);
}

}  // namespace langeval
