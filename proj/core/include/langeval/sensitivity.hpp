#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "langeval/dataset.hpp"
#include "langeval/scoring.hpp"

namespace langeval {

struct CellTarget {
  std::string subject;
  std::string parameter;
  std::optional<std::string> sub_parameter;

  friend bool operator==(const CellTarget&, const CellTarget&) = default;
};

struct RatingOverride {
  CellTarget target;
  RatingValue value;

  friend bool operator==(const RatingOverride&, const RatingOverride&) = default;
};

struct WhatIfRequest {
  std::string profile = "default";
  std::map<std::string, double, std::less<>> weights;  // parameter id -> new weight
  std::vector<RatingOverride> ratings;
  CategoryFilter category = CategoryFilter::All;

  friend bool operator==(const WhatIfRequest&, const WhatIfRequest&) = default;
};

struct WhatIfResult {
  WeightProfile profile;
  CategoryFilter category = CategoryFilter::All;
  std::vector<ScoreCard> ranking;
};

// Base profile with weight overrides applied. Throws OverrideError for an
// unknown profile/parameter or a non-positive weight.
WeightProfile apply_weight_overrides(const Dataset& dataset, const WhatIfRequest& request);

// Copy of the dataset with rating overrides applied (provenance `user`).
// Throws OverrideError when a target does not exist or the value kind does
// not fit the cell.
Dataset apply_rating_overrides(const Dataset& dataset, const std::vector<RatingOverride>& overrides);

// Full scoring under the modified profile, ratings and filter. The input
// dataset is never modified.
WhatIfResult what_if(const Dataset& dataset, const WhatIfRequest& request);

// Field-level ParseError on malformed input. Missing fields take defaults.
WhatIfRequest whatif_request_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const WhatIfRequest& request);
nlohmann::ordered_json to_json(const WhatIfResult& result);

// LS of a subject as an affine function of one parameter's weight:
// LS(w) = intercept + w * slope, with the other in-scope weights held fixed.
struct AffineScore {
  std::string subject;
  double intercept = 0.0;
  double slope = 0.0;
  double at(double w) const noexcept { return intercept + w * slope; }
};

std::vector<AffineScore> affine_scores(const ScoreTable& table, const WeightProfile& profile,
                                       CategoryFilter filter, std::string_view parameter);

// Weight at which `a` and `b` have equal LS, if the lines are not parallel.
std::optional<double> crossover_weight(const AffineScore& a, const AffineScore& b) noexcept;

struct Crossover {
  double weight = 0.0;
  std::string ahead_before;  // ranked higher just below `weight`
  std::string ahead_after;   // ranked higher just above `weight`
};

struct SweepResult {
  std::string parameter;
  std::string profile;
  CategoryFilter category = CategoryFilter::All;
  std::vector<double> grid;                         // inclusive of both ends
  std::vector<std::vector<std::string>> rankings;   // subject ids per grid point
  std::vector<Crossover> crossovers;                // sorted by weight
};

// Rankings over an evenly spaced weight grid plus closed-form crossovers in
// [w_min, w_max]. Throws InvalidArgument unless 0 < w_min <= w_max and
// steps >= 2, or when the parameter is unknown or out of scope.
SweepResult weight_sweep(const ScoreTable& table, const WeightProfile& profile, CategoryFilter filter,
                         std::string_view parameter, double w_min, double w_max, int steps);
SweepResult weight_sweep(const Dataset& dataset, const WeightProfile& profile, CategoryFilter filter,
                         std::string_view parameter, double w_min, double w_max, int steps);

nlohmann::ordered_json to_json(const SweepResult& result);

struct Contribution {
  std::string parameter;
  double weighted = 0.0;
  double share = 0.0;
};

struct ContributionBreakdown {
  std::string subject;
  double ls = 0.0;
  bool zero_total = false;  // LS == 0; all shares reported as 0
  std::vector<Contribution> parameters;
};

ContributionBreakdown contribution(const ScoreCard& card);
ContributionBreakdown contribution(const Dataset& dataset, std::string_view subject,
                                   const WeightProfile& profile,
                                   CategoryFilter filter = CategoryFilter::All);

// Weight interval around the current weight of `parameter` in which the
// top-ranked subject stays on top. `lower` is clamped at 0; a missing
// `upper` means the interval is open above.
struct StabilityInterval {
  std::string parameter;
  std::string top_subject;
  double current_weight = 0.0;
  double lower = 0.0;
  std::optional<double> upper;
  std::optional<std::string> challenger_below;
  std::optional<std::string> challenger_above;
};

StabilityInterval rank_stability(const ScoreTable& table, const WeightProfile& profile,
                                 CategoryFilter filter, std::string_view parameter);
StabilityInterval rank_stability(const Dataset& dataset, const WeightProfile& profile,
                                 CategoryFilter filter, std::string_view parameter);

nlohmann::ordered_json to_json(const StabilityInterval& interval);

}  // namespace langeval
