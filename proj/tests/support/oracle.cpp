#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "langeval/sensitivity.hpp"

namespace langeval::testing {

namespace {

const Rating* scan(const Dataset& ds, const std::string& subject, const std::string& param,
                   const std::optional<std::string>& sub) {
  for (const auto& r : ds.ratings) {
    if (r.subject == subject && r.parameter == param && r.sub_parameter == sub) return &r;
  }
  return nullptr;
}

double demand_value(const Dataset& ds, const std::string& subject, const Parameter& param, std::size_t f) {
  const Rating* r = scan(ds, subject, param.id, param.sub_parameters[f].id);
  if (r != nullptr) return std::get<RawValue>(r->value).value;
  for (const auto& e : ds.demand->entries) {
    if (e.subject == subject) {
      const std::string& id = param.sub_parameters[f].id;
      if (id == "web_search_share") return e.web_search_share;
      if (id == "active_repositories") return e.active_repositories;
      return e.job_posts;
    }
  }
  throw std::logic_error("no demand value for " + subject);
}

}  // namespace

double oracle_parameter_score(const Dataset& ds, const std::string& subject, const Parameter& param) {
  const auto& levels = ds.framework.scale.scores();
  switch (param.score_mode) {
    case ScoreMode::AggregateSubRatings: {
      double sum = 0.0;
      for (const auto& sub : param.sub_parameters) {
        const Rating* r = scan(ds, subject, param.id, sub.id);
        sum += levels[static_cast<std::size_t>(std::get<Level>(r->value))];
      }
      return sum / static_cast<double>(param.sub_parameters.size());
    }
    case ScoreMode::DirectOverride:
      return std::get<DirectScore>(scan(ds, subject, param.id, std::nullopt)->value).value;
    case ScoreMode::DemandNormalized: {
      double total = 0.0;
      for (std::size_t f = 0; f < param.sub_parameters.size(); ++f) {
        double max = 0.0;
        for (const auto& s : ds.subjects) max = std::max(max, demand_value(ds, s.id, param, f));
        total += demand_value(ds, subject, param, f) / max;
      }
      return total / static_cast<double>(param.sub_parameters.size());
    }
    case ScoreMode::TransitionCost: {
      const double n = static_cast<double>(ds.subjects.size());
      double t = 0.0;
      if (ds.transition_costs) {
        for (const auto& e : ds.transition_costs->entries()) {
          if (e.from == subject) t += e.costs.units[0] + e.costs.units[1] + e.costs.units[2];
        }
      }
      if (t <= 2.0 * n) return levels[3];
      if (t <= 2.5 * n) return levels[2];
      if (t <= 3.0 * n) return levels[1];
      return levels[0];
    }
  }
  return 0.0;
}

OracleTotals oracle_totals(const Dataset& ds, const std::string& subject, const WeightProfile& profile,
                           CategoryFilter filter) {
  OracleTotals t;
  for (const auto& p : ds.framework.parameters) {
    const bool tech = p.category == Category::Technical;
    if (filter == CategoryFilter::Technical && !tech) continue;
    if (filter == CategoryFilter::Environmental && tech) continue;
    const double w = profile.weights.at(p.id);
    const double v = w * oracle_parameter_score(ds, subject, p);
    t.ls += v;
    (tech ? t.ls_tech : t.ls_env) += v;
    t.weight_total += w;
  }
  return t;
}

std::vector<BruteCrossing> brute_force_crossings(const Dataset& ds, const WeightProfile& profile,
                                                 CategoryFilter filter, const std::string& parameter,
                                                 double w_min, double w_max, int points) {
  const std::size_t n = ds.subjects.size();
  // Parameter scores do not depend on weights; cache them once.
  std::vector<std::vector<double>> score(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& p : ds.framework.parameters) score[s].push_back(oracle_parameter_score(ds, ds.subjects[s].id, p));
  }
  auto ls_at = [&](std::size_t s, double w) {
    double ls = 0.0;
    for (std::size_t i = 0; i < ds.framework.parameters.size(); ++i) {
      const auto& p = ds.framework.parameters[i];
      const bool tech = p.category == Category::Technical;
      if (filter == CategoryFilter::Technical && !tech) continue;
      if (filter == CategoryFilter::Environmental && tech) continue;
      ls += (p.id == parameter ? w : profile.weights.at(p.id)) * score[s][i];
    }
    return ls;
  };

  std::vector<BruteCrossing> out;
  std::vector<std::vector<int>> last_sign(n, std::vector<int>(n, 0));
  std::vector<std::vector<double>> last_w(n, std::vector<double>(n, w_min));
  for (int g = 0; g < points; ++g) {
    const double w = w_min + (w_max - w_min) * g / (points - 1);
    std::vector<double> ls(n);
    for (std::size_t s = 0; s < n; ++s) ls[s] = ls_at(s, w);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const double d = ls[a] - ls[b];
        // Differences within rounding noise count as no information.
        const double eps = 1e-12 * std::max(1.0, std::fabs(ls[a]) + std::fabs(ls[b]));
        const int sign = d > eps ? 1 : d < -eps ? -1 : 0;
        if (sign == 0) continue;
        if (last_sign[a][b] != 0 && sign != last_sign[a][b]) {
          out.push_back({ds.subjects[a].id, ds.subjects[b].id, last_w[a][b], w});
        }
        last_sign[a][b] = sign;
        last_w[a][b] = w;
      }
    }
  }
  return out;
}

std::optional<std::string> compare_sweep_with_oracle(const Dataset& ds, const WeightProfile& profile,
                                                     CategoryFilter filter, const std::string& parameter,
                                                     double w_min, double w_max, int points) {
  const double step = (w_max - w_min) / (points - 1);
  const SweepResult sweep = weight_sweep(ds, profile, filter, parameter, w_min, w_max, 2);
  const auto brute = brute_force_crossings(ds, profile, filter, parameter, w_min, w_max, points);

  auto same_pair = [](const std::string& a, const std::string& b, const std::string& x, const std::string& y) {
    return (a == x && b == y) || (a == y && b == x);
  };
  std::vector<bool> used(brute.size(), false);
  for (const auto& c : sweep.crossovers) {
    bool matched = false;
    for (std::size_t i = 0; i < brute.size() && !matched; ++i) {
      const auto& b = brute[i];
      if (used[i] || !same_pair(c.ahead_before, c.ahead_after, b.a, b.b)) continue;
      if (c.weight >= b.lo - step && c.weight <= b.hi + step) {
        used[i] = true;
        matched = true;
      }
    }
    // A crossing that lands on an endpoint has no sign change on one side.
    const bool at_edge = c.weight - w_min <= step || w_max - c.weight <= step;
    if (!matched && !at_edge) {
      return "closed-form crossover " + c.ahead_before + "/" + c.ahead_after + " at w=" + std::to_string(c.weight) +
             " not seen by the dense sweep";
    }
  }
  for (std::size_t i = 0; i < brute.size(); ++i) {
    if (!used[i]) {
      return "dense sweep crossing " + brute[i].a + "/" + brute[i].b + " in [" + std::to_string(brute[i].lo) + ", " +
             std::to_string(brute[i].hi) + "] has no closed-form crossover";
    }
  }
  return std::nullopt;
}

}  // namespace langeval::testing
