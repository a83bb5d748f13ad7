#include "langeval/criteria.hpp"

#include <algorithm>
#include <cctype>

#include "langeval/errors.hpp"

namespace langeval {

namespace {

std::string normalize_token(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

std::string_view to_string(Level level) noexcept {
  switch (level) {
    case Level::No: return "no";
    case Level::Partially: return "partially";
    case Level::Mostly: return "mostly";
    case Level::Fully: return "fully";
  }
  return "no";
}

std::string_view display_name(Level level) noexcept {
  switch (level) {
    case Level::No: return "No";
    case Level::Partially: return "Partially";
    case Level::Mostly: return "Mostly";
    case Level::Fully: return "Fully";
  }
  return "No";
}

std::optional<Level> parse_level(std::string_view text) {
  const std::string t = normalize_token(text);
  if (t == "fully" || t == "full" || t == "fully supported") return Level::Fully;
  if (t == "mostly" || t == "mostly supported") return Level::Mostly;
  if (t == "partially" || t == "partial" || t == "partially supported") return Level::Partially;
  if (t == "no" || t == "none" || t == "not supported") return Level::No;
  return std::nullopt;
}

RatingScale::RatingScale() noexcept : scores_{0.0, 0.40, 0.70, 1.0} {}

RatingScale::RatingScale(const std::array<double, 4>& scores) : scores_(scores) {
  if (scores_[0] != 0.0) throw InvalidArgument("rating scale: score(No) must be 0");
  if (scores_[3] != 1.0) throw InvalidArgument("rating scale: score(Fully) must be 1");
  for (std::size_t i = 1; i < scores_.size(); ++i) {
    if (!(scores_[i] > scores_[i - 1])) {
      throw InvalidArgument("rating scale must be strictly increasing: score(" +
                            std::string(to_string(kAllLevels[i])) + ") <= score(" +
                            std::string(to_string(kAllLevels[i - 1])) + ")");
    }
  }
}

std::vector<std::pair<Level, double>> list_levels(const RatingScale& scale) {
  std::vector<std::pair<Level, double>> out;
  out.reserve(kAllLevels.size());
  for (Level l : kAllLevels) out.emplace_back(l, scale.score(l));
  return out;
}

std::string_view to_string(Category c) noexcept {
  return c == Category::Technical ? "technical" : "environmental";
}

std::string_view to_string(SubParameterKind k) noexcept {
  return k == SubParameterKind::Qualitative ? "qualitative" : "quantitative-raw";
}

std::string_view to_string(ScoreMode m) noexcept {
  switch (m) {
    case ScoreMode::AggregateSubRatings: return "aggregate-sub-ratings";
    case ScoreMode::DirectOverride: return "direct-override";
    case ScoreMode::DemandNormalized: return "demand-normalized";
    case ScoreMode::TransitionCost: return "transition-cost";
  }
  return "aggregate-sub-ratings";
}

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Paper: return "paper";
    case Provenance::Editorial: return "editorial";
    case Provenance::Inferred: return "inferred";
    case Provenance::User: return "user";
  }
  return "paper";
}

std::string_view to_string(Typing t) noexcept { return t == Typing::Static ? "static" : "dynamic"; }

std::string_view to_string(TypeStrength s) noexcept {
  return s == TypeStrength::Strong ? "strong" : "weak";
}

std::optional<Category> parse_category(std::string_view text) {
  if (text == "technical") return Category::Technical;
  if (text == "environmental") return Category::Environmental;
  return std::nullopt;
}

std::optional<SubParameterKind> parse_sub_parameter_kind(std::string_view text) {
  if (text == "qualitative") return SubParameterKind::Qualitative;
  if (text == "quantitative-raw") return SubParameterKind::QuantitativeRaw;
  return std::nullopt;
}

std::optional<ScoreMode> parse_score_mode(std::string_view text) {
  for (auto m : {ScoreMode::AggregateSubRatings, ScoreMode::DirectOverride,
                 ScoreMode::DemandNormalized, ScoreMode::TransitionCost}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::optional<Provenance> parse_provenance(std::string_view text) {
  for (auto p : {Provenance::Paper, Provenance::Editorial, Provenance::Inferred, Provenance::User}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

const SubParameter* Parameter::find_sub(std::string_view sub_id) const noexcept {
  auto it = std::find_if(sub_parameters.begin(), sub_parameters.end(),
                         [&](const SubParameter& s) { return s.id == sub_id; });
  return it == sub_parameters.end() ? nullptr : &*it;
}

std::size_t Framework::technical_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(parameters.begin(), parameters.end(), [](const Parameter& p) {
    return p.category == Category::Technical;
  }));
}

std::size_t Framework::environmental_count() const noexcept { return n() - technical_count(); }

const Parameter* Framework::find(std::string_view parameter_id) const noexcept {
  auto i = index_of(parameter_id);
  return i ? &parameters[*i] : nullptr;
}

std::optional<std::size_t> Framework::index_of(std::string_view parameter_id) const noexcept {
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (parameters[i].id == parameter_id) return i;
  }
  return std::nullopt;
}

double WeightProfile::weight(std::string_view parameter_id) const {
  auto it = weights.find(parameter_id);
  if (it == weights.end()) {
    throw InvalidArgument("weight profile '" + name + "' has no weight for parameter '" +
                          std::string(parameter_id) + "'");
  }
  return it->second;
}

WeightProfile WeightProfile::uniform(const Framework& framework, double w, std::string name) {
  WeightProfile p;
  p.name = std::move(name);
  for (const auto& param : framework.parameters) p.weights[param.id] = w;
  return p;
}

}  // namespace langeval
