#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace langeval {

// Four ordered qualitative levels, lowest first.
enum class Level : std::uint8_t { No = 0, Partially = 1, Mostly = 2, Fully = 3 };

inline constexpr std::array<Level, 4> kAllLevels{Level::No, Level::Partially, Level::Mostly,
                                                 Level::Fully};

// Canonical serialized token: "no", "partially", "mostly", "fully".
std::string_view to_string(Level level) noexcept;
// "No", "Partially", "Mostly", "Fully".
std::string_view display_name(Level level) noexcept;
// Accepts canonical tokens and documented aliases ("Full", "Mostly supported",
// "Not supported", ...), case-insensitively.
std::optional<Level> parse_level(std::string_view text);

// Maps each level to a unit score. Scores must be strictly increasing in level
// order with No -> 0 and Fully -> 1.
class RatingScale {
 public:
  // Fully 1, Mostly 0.70, Partially 0.40, No 0.
  RatingScale() noexcept;
  // Scores indexed by level (No, Partially, Mostly, Fully). Throws
  // InvalidArgument when the invariants do not hold.
  explicit RatingScale(const std::array<double, 4>& scores);

  double score(Level level) const noexcept { return scores_[static_cast<std::size_t>(level)]; }
  const std::array<double, 4>& scores() const noexcept { return scores_; }

  friend bool operator==(const RatingScale&, const RatingScale&) = default;

 private:
  std::array<double, 4> scores_;
};

// Ascending (level, score) pairs.
std::vector<std::pair<Level, double>> list_levels(const RatingScale& scale);

enum class Category : std::uint8_t { Technical, Environmental };
enum class SubParameterKind : std::uint8_t { Qualitative, QuantitativeRaw };

// How a parameter's unit score is obtained.
//  - AggregateSubRatings: mean of mapped qualitative sub-ratings.
//  - DirectOverride: a stored unit score per subject.
//  - DemandNormalized: max-normalized demand snapshot values.
//  - TransitionCost: map_level(cost_rating(total transition cost)).
enum class ScoreMode : std::uint8_t {
  AggregateSubRatings,
  DirectOverride,
  DemandNormalized,
  TransitionCost
};

enum class Provenance : std::uint8_t { Paper, Editorial, Inferred, User };
inline constexpr std::size_t kProvenanceCount = 4;

std::string_view to_string(Category c) noexcept;
std::string_view to_string(SubParameterKind k) noexcept;
std::string_view to_string(ScoreMode m) noexcept;
std::string_view to_string(Provenance p) noexcept;
std::optional<Category> parse_category(std::string_view text);
std::optional<SubParameterKind> parse_sub_parameter_kind(std::string_view text);
std::optional<ScoreMode> parse_score_mode(std::string_view text);
std::optional<Provenance> parse_provenance(std::string_view text);

struct SubParameter {
  std::string id;
  std::string name;
  SubParameterKind kind = SubParameterKind::Qualitative;

  friend bool operator==(const SubParameter&, const SubParameter&) = default;
};

struct Parameter {
  std::string id;
  std::string name;
  Category category = Category::Technical;
  ScoreMode score_mode = ScoreMode::AggregateSubRatings;
  std::vector<SubParameter> sub_parameters;

  const SubParameter* find_sub(std::string_view sub_id) const noexcept;

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct Framework {
  RatingScale scale;
  std::vector<Parameter> parameters;

  std::size_t n() const noexcept { return parameters.size(); }
  std::size_t technical_count() const noexcept;
  std::size_t environmental_count() const noexcept;
  const Parameter* find(std::string_view parameter_id) const noexcept;
  std::optional<std::size_t> index_of(std::string_view parameter_id) const noexcept;

  friend bool operator==(const Framework&, const Framework&) = default;
};

enum class Typing : std::uint8_t { Static, Dynamic };
enum class TypeStrength : std::uint8_t { Strong, Weak };

std::string_view to_string(Typing t) noexcept;
std::string_view to_string(TypeStrength s) noexcept;

// Attributes consumed by the advisory transition-cost generator.
struct TransitionAttributes {
  std::string paradigm;
  Typing typing = Typing::Static;
  TypeStrength strength = TypeStrength::Strong;

  friend bool operator==(const TransitionAttributes&, const TransitionAttributes&) = default;
};

struct Subject {
  std::string id;
  std::string name;
  std::optional<TransitionAttributes> transition;

  friend bool operator==(const Subject&, const Subject&) = default;
};

// Raw quantitative observation (percent share, count).
struct RawValue {
  double value = 0.0;
  friend bool operator==(const RawValue&, const RawValue&) = default;
};

// Parameter-level unit score in [0, 1].
struct DirectScore {
  double value = 0.0;
  friend bool operator==(const DirectScore&, const DirectScore&) = default;
};

using RatingValue = std::variant<Level, RawValue, DirectScore>;

struct Rating {
  std::string subject;
  std::string parameter;
  std::optional<std::string> sub_parameter;  // absent for direct scores
  RatingValue value;
  Provenance provenance = Provenance::Paper;

  friend bool operator==(const Rating&, const Rating&) = default;
};

struct WeightProfile {
  std::string name;
  std::map<std::string, double, std::less<>> weights;

  // Throws InvalidArgument when the parameter has no weight.
  double weight(std::string_view parameter_id) const;

  // Every framework parameter weighted `w`.
  static WeightProfile uniform(const Framework& framework, double w = 1.0,
                               std::string name = "default");

  friend bool operator==(const WeightProfile&, const WeightProfile&) = default;
};

}  // namespace langeval
