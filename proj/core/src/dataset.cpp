#include "langeval/dataset.hpp"

#include <algorithm>

namespace langeval {

const Subject* Dataset::find_subject(std::string_view id) const noexcept {
  auto it = std::find_if(subjects.begin(), subjects.end(), [&](const Subject& s) { return s.id == id; });
  return it == subjects.end() ? nullptr : &*it;
}

const WeightProfile* Dataset::find_profile(std::string_view name) const noexcept {
  auto it = std::find_if(weight_profiles.begin(), weight_profiles.end(),
                         [&](const WeightProfile& p) { return p.name == name; });
  return it == weight_profiles.end() ? nullptr : &*it;
}

std::vector<std::string> Dataset::subject_ids() const {
  std::vector<std::string> ids;
  ids.reserve(subjects.size());
  for (const auto& s : subjects) ids.push_back(s.id);
  return ids;
}

WeightProfile Dataset::default_profile() const {
  if (const auto* p = find_profile("default")) return *p;
  return WeightProfile::uniform(framework);
}

RatingIndex::RatingIndex(std::span<const Rating> ratings) {
  cells_.reserve(ratings.size());
  for (const auto& r : ratings) {
    std::optional<std::string_view> sub;
    if (r.sub_parameter) sub = *r.sub_parameter;
    cells_.try_emplace(key(r.subject, r.parameter, sub), &r);
  }
}

const Rating* RatingIndex::find(std::string_view subject, std::string_view parameter,
                                std::optional<std::string_view> sub_parameter) const {
  auto it = cells_.find(key(subject, parameter, sub_parameter));
  return it == cells_.end() ? nullptr : it->second;
}

std::string RatingIndex::key(std::string_view subject, std::string_view parameter,
                             std::optional<std::string_view> sub_parameter) {
  std::string k;
  k.reserve(subject.size() + parameter.size() + 16);
  k.append(subject).push_back('\x1f');
  k.append(parameter).push_back('\x1f');
  if (sub_parameter) {
    k.push_back('s');
    k.append(*sub_parameter);
  } else {
    k.push_back('d');
  }
  return k;
}

}  // namespace langeval
