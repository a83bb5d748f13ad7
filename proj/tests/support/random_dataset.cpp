#include "random_dataset.hpp"

#include <string>

#include "langeval/demand.hpp"
#include "langeval/transition.hpp"

namespace langeval::testing {

Dataset DatasetGenerator::next() {
  Dataset ds;
  if (limits_.random_scale && uniform_int(0, 2) == 0) {
    // Keep adjacent levels at least 0.05 apart.
    const double a = uniform(0.05, 0.45);
    const double b = uniform(a + 0.05, 0.95);
    ds.framework.scale = RatingScale({0.0, a, b, 1.0});
  }

  const int n_subjects = uniform_int(1, limits_.max_subjects);
  for (int s = 0; s < n_subjects; ++s) {
    Subject subject{"s" + std::to_string(s), "Subject " + std::to_string(s), std::nullopt};
    ds.subjects.push_back(std::move(subject));
  }

  bool has_demand = false;
  bool has_transition = false;
  const int n_params = uniform_int(1, limits_.max_parameters);
  for (int p = 0; p < n_params; ++p) {
    Parameter param;
    param.id = "p" + std::to_string(p);
    param.name = "Parameter " + std::to_string(p);
    param.category = uniform_int(0, 1) == 0 ? Category::Technical : Category::Environmental;
    const int roll = uniform_int(0, 9);
    if (roll == 0 && limits_.allow_direct) {
      param.score_mode = ScoreMode::DirectOverride;
      param.sub_parameters.push_back({"whole", "Whole", SubParameterKind::Qualitative});
    } else if (roll == 1 && limits_.allow_demand && !has_demand) {
      has_demand = true;
      param.score_mode = ScoreMode::DemandNormalized;
      for (auto f : kDemandFeatures) {
        param.sub_parameters.push_back({std::string(f), std::string(f), SubParameterKind::QuantitativeRaw});
      }
    } else if (roll == 2 && limits_.allow_transition && !has_transition) {
      has_transition = true;
      param.score_mode = ScoreMode::TransitionCost;
      param.sub_parameters.push_back({"cost", "Cost", SubParameterKind::Qualitative});
    } else {
      param.score_mode = ScoreMode::AggregateSubRatings;
      const int n_subs = uniform_int(1, limits_.max_sub_parameters);
      for (int k = 0; k < n_subs; ++k) {
        param.sub_parameters.push_back({"q" + std::to_string(k), "Sub " + std::to_string(k),
                                        SubParameterKind::Qualitative});
      }
    }
    ds.framework.parameters.push_back(std::move(param));
  }

  for (const auto& param : ds.framework.parameters) {
    for (const auto& subject : ds.subjects) {
      switch (param.score_mode) {
        case ScoreMode::AggregateSubRatings:
          for (const auto& sub : param.sub_parameters) {
            const auto level = static_cast<Level>(uniform_int(0, 3));
            ds.ratings.push_back({subject.id, param.id, sub.id, level, Provenance::Paper});
          }
          break;
        case ScoreMode::DirectOverride: {
          // Occasionally land exactly on 0 or 1.
          const int r = uniform_int(0, 9);
          const double v = r == 0 ? 0.0 : r == 1 ? 1.0 : uniform(0.0, 1.0);
          ds.ratings.push_back({subject.id, param.id, std::nullopt, DirectScore{v}, Provenance::Inferred});
          break;
        }
        case ScoreMode::DemandNormalized:
        case ScoreMode::TransitionCost:
          break;
      }
    }
  }

  if (has_demand) {
    DemandSnapshot snap;
    snap.as_of = "2000-01-01";
    for (const auto& subject : ds.subjects) {
      DemandEntry e;
      e.subject = subject.id;
      for (std::size_t f = 0; f < kDemandFeatures.size(); ++f) e.feature(f) = uniform(0.0, 1000.0);
      snap.entries.push_back(std::move(e));
    }
    // Guarantee a positive maximum per feature.
    for (std::size_t f = 0; f < kDemandFeatures.size(); ++f) snap.entries.front().feature(f) += 1.0;
    ds.demand = std::move(snap);
  }

  if (has_transition) {
    std::vector<TransitionCostEntry> entries;
    for (const auto& a : ds.subjects) {
      for (const auto& b : ds.subjects) {
        if (a.id == b.id) continue;
        TransitionCostEntry e{a.id, b.id, {}};
        for (auto& u : e.costs.units) u = static_cast<std::uint8_t>(uniform_int(0, 1));
        entries.push_back(std::move(e));
      }
    }
    ds.transition_costs = TransitionCostMatrix(ds.subject_ids(), std::move(entries));
  }

  WeightProfile profile;
  profile.name = "default";
  for (const auto& param : ds.framework.parameters) profile.weights[param.id] = uniform(0.1, 5.0);
  ds.weight_profiles.push_back(std::move(profile));
  return ds;
}

}  // namespace langeval::testing
