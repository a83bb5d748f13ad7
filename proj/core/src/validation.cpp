#include "langeval/validation.hpp"

#include <cmath>
#include <map>
#include <tuple>

namespace langeval {

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::EmptyFramework: return "empty-framework";
    case ViolationKind::EmptySubParameters: return "empty-sub-parameters";
    case ViolationKind::MixedSubParameterKinds: return "mixed-sub-parameter-kinds";
    case ViolationKind::InvalidScale: return "invalid-scale";
    case ViolationKind::MissingRating: return "missing-rating";
    case ViolationKind::DuplicateRating: return "duplicate-rating";
    case ViolationKind::KindMismatch: return "kind-mismatch";
    case ViolationKind::DirectScoreOutOfRange: return "direct-score-out-of-range";
    case ViolationKind::NegativeRawValue: return "negative-raw-value";
    case ViolationKind::MissingWeight: return "missing-weight";
    case ViolationKind::NonPositiveWeight: return "non-positive-weight";
    case ViolationKind::MissingDemandData: return "missing-demand-data";
    case ViolationKind::DegenerateDemand: return "degenerate-demand";
    case ViolationKind::MissingTransitionCost: return "missing-transition-cost";
  }
  return "unknown";
}

namespace {

std::string cell(std::string_view subject, std::string_view parameter, std::string_view sub = {}) {
  std::string out = "ratings[" + std::string(subject) + "/" + std::string(parameter);
  if (!sub.empty()) out += "/" + std::string(sub);
  return out + "]";
}

class Checker {
 public:
  explicit Checker(const Dataset& ds) : ds_(ds), index_(ds.ratings) {}

  ValidationReport run() {
    check_framework();
    check_ratings();
    check_coverage();
    check_profiles();
    return std::move(report_);
  }

 private:
  void add(ViolationKind kind, std::string location, std::string message) {
    report_.violations.push_back({kind, std::move(location), std::move(message)});
  }

  void check_framework() {
    const auto& fw = ds_.framework;
    if (fw.parameters.empty()) {
      add(ViolationKind::EmptyFramework, "framework.parameters", "framework must contain >=1 parameter");
    }
    const auto& s = fw.scale.scores();
    bool monotone = true;
    for (std::size_t i = 1; i < s.size(); ++i) monotone = monotone && s[i] > s[i - 1];
    if (s[0] != 0.0 || s[3] != 1.0 || !monotone) {
      add(ViolationKind::InvalidScale, "framework.scale",
          "scale must be strictly increasing with No = 0 and Fully = 1");
    }

    for (const auto& p : fw.parameters) {
      const std::string loc = "framework.parameters[" + p.id + "]";
      if (p.sub_parameters.empty()) {
        add(ViolationKind::EmptySubParameters, loc, "parameter '" + p.id + "' has no sub-parameters");
        continue;
      }
      const auto kind = p.sub_parameters.front().kind;
      bool mixed = false;
      for (const auto& sub : p.sub_parameters) mixed = mixed || sub.kind != kind;
      if (mixed) {
        add(ViolationKind::MixedSubParameterKinds, loc,
            "sub-parameters of '" + p.id + "' do not share one kind");
        continue;
      }
      switch (p.score_mode) {
        case ScoreMode::AggregateSubRatings:
          if (kind != SubParameterKind::Qualitative) {
            add(ViolationKind::KindMismatch, loc, "aggregate-sub-ratings needs qualitative sub-parameters");
          }
          break;
        case ScoreMode::DemandNormalized: {
          bool ok = kind == SubParameterKind::QuantitativeRaw && p.sub_parameters.size() == kDemandFeatures.size();
          for (const auto& sub : p.sub_parameters) ok = ok && demand_feature_index(sub.id) >= 0;
          if (!ok) {
            add(ViolationKind::KindMismatch, loc,
                "demand-normalized needs the quantitative-raw sub-parameters web_search_share, "
                "active_repositories, job_posts");
          }
          break;
        }
        case ScoreMode::DirectOverride:
        case ScoreMode::TransitionCost:
          break;
      }
    }
  }

  void check_ratings() {
    std::map<std::tuple<std::string, std::string, std::string, bool>, int> seen;
    for (const auto& r : ds_.ratings) {
      const Parameter* p = ds_.framework.find(r.parameter);
      const std::string sub = r.sub_parameter.value_or("");
      const std::string loc = cell(r.subject, r.parameter, sub);
      if (++seen[{r.subject, r.parameter, sub, r.sub_parameter.has_value()}] == 2) {
        add(ViolationKind::DuplicateRating, loc, "rating cell appears more than once");
      }
      if (p == nullptr) continue;  // loader resolves references

      const SubParameter* sp = r.sub_parameter ? p->find_sub(*r.sub_parameter) : nullptr;
      if (std::holds_alternative<Level>(r.value)) {
        if (sp == nullptr || sp->kind != SubParameterKind::Qualitative) {
          add(ViolationKind::KindMismatch, loc, "qualitative level on a non-qualitative cell");
        }
      } else if (const auto* raw = std::get_if<RawValue>(&r.value)) {
        if (sp == nullptr || sp->kind != SubParameterKind::QuantitativeRaw ||
            p->score_mode != ScoreMode::DemandNormalized) {
          add(ViolationKind::KindMismatch, loc, "raw value is only valid on demand sub-features");
        } else if (!(raw->value >= 0.0)) {
          add(ViolationKind::NegativeRawValue, loc, "raw value must be non-negative");
        }
      } else {
        const double v = std::get<DirectScore>(r.value).value;
        if (p->score_mode != ScoreMode::DirectOverride) {
          add(ViolationKind::KindMismatch, loc, "direct score on a parameter that is not direct-override");
        } else if (!(v >= 0.0 && v <= 1.0)) {
          add(ViolationKind::DirectScoreOutOfRange, loc, "direct score must lie in [0, 1]");
        }
      }
    }
  }

  void check_coverage() {
    for (const auto& p : ds_.framework.parameters) {
      switch (p.score_mode) {
        case ScoreMode::AggregateSubRatings:
          for (const auto& s : ds_.subjects) {
            for (const auto& sub : p.sub_parameters) {
              if (sub.kind != SubParameterKind::Qualitative) continue;
              const Rating* r = index_.find(s.id, p.id, sub.id);
              if (r == nullptr) {
                add(ViolationKind::MissingRating, cell(s.id, p.id, sub.id), "missing rating");
              }
            }
          }
          break;
        case ScoreMode::DirectOverride:
          for (const auto& s : ds_.subjects) {
            if (index_.find(s.id, p.id, std::nullopt) == nullptr) {
              add(ViolationKind::MissingRating, cell(s.id, p.id), "missing direct score");
            }
          }
          break;
        case ScoreMode::DemandNormalized:
          check_demand(p);
          break;
        case ScoreMode::TransitionCost:
          check_transition(p);
          break;
      }
    }
  }

  void check_demand(const Parameter& p) {
    if (ds_.demand) {
      for (const auto& e : ds_.demand->entries) {
        for (std::size_t f = 0; f < kDemandFeatures.size(); ++f) {
          if (!(e.feature(f) >= 0.0)) {
            add(ViolationKind::NegativeRawValue, "demand.entries[" + e.subject + "]." + std::string(kDemandFeatures[f]),
                "demand values must be non-negative");
          }
        }
      }
    }
    std::array<double, 3> column_max{};
    bool complete = true;
    for (const auto& s : ds_.subjects) {
      const DemandEntry* e = ds_.demand ? ds_.demand->find(s.id) : nullptr;
      for (std::size_t f = 0; f < kDemandFeatures.size(); ++f) {
        const Rating* r = index_.find(s.id, p.id, kDemandFeatures[f]);
        const auto* raw = r ? std::get_if<RawValue>(&r->value) : nullptr;
        if (raw == nullptr && e == nullptr) {
          add(ViolationKind::MissingDemandData, cell(s.id, p.id, kDemandFeatures[f]),
              "no demand snapshot entry or raw rating");
          complete = false;
          continue;
        }
        const double v = raw ? raw->value : e->feature(f);
        if (v > column_max[f]) column_max[f] = v;
      }
    }
    if (complete && !ds_.subjects.empty()) {
      for (std::size_t f = 0; f < kDemandFeatures.size(); ++f) {
        if (!(column_max[f] > 0.0)) {
          add(ViolationKind::DegenerateDemand, "demand." + std::string(kDemandFeatures[f]),
              "sub-feature is zero for every subject");
        }
      }
    }
  }

  void check_transition(const Parameter& p) {
    if (!ds_.transition_costs) {
      if (ds_.subjects.size() > 1) {
        add(ViolationKind::MissingTransitionCost, "transition_costs",
            "parameter '" + p.id + "' needs a transition cost matrix");
      }
      return;
    }
    for (const auto& [from, to] : ds_.transition_costs->missing_pairs()) {
      add(ViolationKind::MissingTransitionCost, "transition_costs[" + from + "->" + to + "]",
          "missing transition cost entry");
    }
    for (const auto& [a, b] : ds_.transition_costs->asymmetric_pairs()) {
      report_.notes.push_back("transition_costs: " + a + "->" + b + " differs from " + b + "->" + a);
    }
  }

  void check_profiles() {
    for (const auto& profile : ds_.weight_profiles) {
      for (const auto& p : ds_.framework.parameters) {
        const std::string loc = "weight_profiles[" + profile.name + "].weights." + p.id;
        auto it = profile.weights.find(p.id);
        if (it == profile.weights.end()) {
          add(ViolationKind::MissingWeight, loc, "no weight for parameter '" + p.id + "'");
        } else if (!(it->second > 0.0) || !std::isfinite(it->second)) {
          add(ViolationKind::NonPositiveWeight, loc, "weight must be a finite number > 0");
        }
      }
    }
  }

  const Dataset& ds_;
  RatingIndex index_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_dataset(const Dataset& dataset) { return Checker(dataset).run(); }

}  // namespace langeval
