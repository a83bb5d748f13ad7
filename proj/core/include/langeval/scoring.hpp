#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "langeval/dataset.hpp"

namespace langeval {

// Which parameters are in scope for a score.
enum class CategoryFilter : std::uint8_t { All, Technical, Environmental };

std::string_view to_string(CategoryFilter filter) noexcept;
// Accepts "all", "technical"/"tech", "environmental"/"env".
std::optional<CategoryFilter> parse_category_filter(std::string_view text);
bool in_scope(CategoryFilter filter, Category category) noexcept;

double map_level(Level level, const RatingScale& scale) noexcept;

// Unit score LS(i) of one subject on one parameter.
struct ParameterScore {
  std::string parameter;
  double score = 0.0;
  // Mapped sub-ratings (aggregate), normalized sub-features (demand); empty
  // for direct and transition parameters.
  std::vector<double> sub_scores;
  // Contributing ratings per provenance tag.
  std::array<int, kProvenanceCount> provenance{};
  // "ratings", "direct", "demand-snapshot" or "transition-matrix".
  std::string source;

  friend bool operator==(const ParameterScore&, const ParameterScore&) = default;
};

// Mean of mapped sub-ratings, or the stored unit score for direct-override
// parameters. Throws MissingRatingError naming subject/parameter/sub-parameter.
ParameterScore parameter_score(std::string_view subject, const Parameter& parameter,
                               const RatingIndex& ratings, const RatingScale& scale);
ParameterScore parameter_score(std::string_view subject, const Parameter& parameter,
                               std::span<const Rating> ratings, const RatingScale& scale);

// Demand parameter score: mean of the subject's three max-normalized
// sub-features. Throws UnknownSubjectError when the snapshot lacks the subject.
ParameterScore demand_parameter_score(const DemandSnapshot& snapshot, std::string_view subject);

// Every parameter score of one subject, in framework order.
struct SubjectScores {
  std::string subject;
  std::vector<ParameterScore> parameters;
};

// Parameter scores for all subjects of a dataset. Weight-independent, so a
// table can be reused across many profiles.
class ScoreTable {
 public:
  // Throws MissingRatingError / UnknownSubjectError / SnapshotError when the
  // dataset cannot be scored.
  explicit ScoreTable(const Dataset& dataset);

  const Framework& framework() const noexcept { return framework_; }
  const std::vector<SubjectScores>& rows() const noexcept { return rows_; }
  const SubjectScores& row(std::string_view subject) const;

 private:
  Framework framework_;
  std::vector<SubjectScores> rows_;
};

struct ScoredParameter {
  ParameterScore score;
  Category category = Category::Technical;
  double weight = 1.0;
  double weighted = 0.0;  // weight * score

  friend bool operator==(const ScoredParameter&, const ScoredParameter&) = default;
};

// Scores of one subject under one weight profile. Bounded variants divide by
// the weight subtotal of the parameters they sum over and are 0 when that
// subtotal is empty.
struct ScoreCard {
  std::string subject;
  std::string profile;
  CategoryFilter category = CategoryFilter::All;
  std::vector<ScoredParameter> parameters;  // in-scope parameters, framework order
  double ls = 0.0;
  double ls_bounded = 0.0;
  double ls_tech = 0.0;
  double ls_env = 0.0;
  double ls_tech_bounded = 0.0;
  double ls_env_bounded = 0.0;
  double weight_total = 0.0;
  double tech_weight_total = 0.0;
  double env_weight_total = 0.0;

  const ScoredParameter* find(std::string_view parameter) const noexcept;

  friend bool operator==(const ScoreCard&, const ScoreCard&) = default;
};

// Throws InvalidArgument for a missing or non-positive in-scope weight.
ScoreCard score_card(const SubjectScores& scores, const Framework& framework,
                     const WeightProfile& profile, CategoryFilter filter = CategoryFilter::All);
ScoreCard score_card(const Dataset& dataset, std::string_view subject,
                     const WeightProfile& profile, CategoryFilter filter = CategoryFilter::All);

// LS = sum of w(i) * LS(i) over the framework parameters.
double unbounded_score(const Dataset& dataset, std::string_view subject, const WeightProfile& profile);
// LS' = LS / sum of w(i).
double bounded_score(const Dataset& dataset, std::string_view subject, const WeightProfile& profile);

struct SplitScores {
  double ls_tech = 0.0;
  double ls_env = 0.0;
  double ls_tech_bounded = 0.0;
  double ls_env_bounded = 0.0;
};
SplitScores split_scores(const Dataset& dataset, std::string_view subject, const WeightProfile& profile);

// Strict ordering used by rank(): LS' desc, LS'_tech desc, subject id asc.
// Scores that agree to 1e-9 compare equal.
bool ranks_before(const ScoreCard& a, const ScoreCard& b) noexcept;

std::vector<ScoreCard> rank(const ScoreTable& table, const WeightProfile& profile,
                            CategoryFilter filter = CategoryFilter::All);
std::vector<ScoreCard> rank(const Dataset& dataset, const WeightProfile& profile,
                            CategoryFilter filter = CategoryFilter::All);

// Canonical ScoreCard JSON: subject, profile, category, ls, ls_bounded,
// ls_tech, ls_env, ls_tech_bounded, ls_env_bounded, parameters[].
nlohmann::ordered_json to_json(const ScoreCard& card);
ScoreCard score_card_from_json(const nlohmann::ordered_json& j);

// {"profile", "category", "weights", "ranking": [ScoreCard...]}
nlohmann::ordered_json ranking_to_json(const std::vector<ScoreCard>& ranking,
                                       const WeightProfile& profile, CategoryFilter filter);
std::vector<ScoreCard> ranking_from_json(const nlohmann::ordered_json& j);

}  // namespace langeval
