#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "langeval/criteria.hpp"
#include "langeval/demand.hpp"
#include "langeval/transition.hpp"

namespace langeval {

// Everything needed to score a set of subjects. Immutable after load.
struct Dataset {
  Framework framework;
  std::vector<Subject> subjects;
  std::vector<Rating> ratings;
  std::optional<DemandSnapshot> demand;
  std::optional<TransitionCostMatrix> transition_costs;
  std::vector<WeightProfile> weight_profiles;

  const Subject* find_subject(std::string_view id) const noexcept;
  const WeightProfile* find_profile(std::string_view name) const noexcept;
  std::vector<std::string> subject_ids() const;

  // The profile named "default" if present, otherwise all weights 1.
  WeightProfile default_profile() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Lookup of rating cells by (subject, parameter, sub-parameter). The first
// occurrence of a duplicated cell wins; the validator reports duplicates.
class RatingIndex {
 public:
  RatingIndex() = default;
  explicit RatingIndex(std::span<const Rating> ratings);

  const Rating* find(std::string_view subject, std::string_view parameter,
                     std::optional<std::string_view> sub_parameter) const;

 private:
  static std::string key(std::string_view subject, std::string_view parameter,
                         std::optional<std::string_view> sub_parameter);
  std::unordered_map<std::string, const Rating*> cells_;
};

}  // namespace langeval
