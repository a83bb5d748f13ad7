#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "langeval/scoring.hpp"
#include "langeval/sensitivity.hpp"
#include "oracle.hpp"
#include "random_dataset.hpp"

namespace langeval::testing {

namespace {

using Check = std::function<std::optional<std::string>(DatasetGenerator&, const Dataset&)>;

// Runs `check` on freshly generated datasets. A check returns nullopt on
// success, a message on failure, or "skip" when the dataset does not apply.
PropertyOutcome run(const std::string& name, std::uint64_t seed, int cases, const Check& check) {
  PropertyOutcome out;
  out.name = name;
  DatasetGenerator gen(seed);
  for (int attempt = 0; out.cases < cases && attempt < cases * 20; ++attempt) {
    const Dataset ds = gen.next();
    std::optional<std::string> result;
    try {
      result = check(gen, ds);
    } catch (const std::exception& e) {
      result = std::string("exception: ") + e.what();
    }
    if (result && *result == "skip") continue;
    ++out.cases;
    if (result) {
      if (out.failures++ == 0) out.first_failure = "case " + std::to_string(out.cases) + ": " + *result;
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

bool close(double a, double b, double rel = 1e-12) {
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

std::vector<std::string> ids(const std::vector<ScoreCard>& ranking) {
  std::vector<std::string> out;
  for (const auto& c : ranking) out.push_back(c.subject);
  return out;
}

CategoryFilter random_filter(DatasetGenerator& gen) { return static_cast<CategoryFilter>(gen.uniform_int(0, 2)); }

}  // namespace

PropertyOutcome check_score_bounds(std::uint64_t seed, int cases) {
  return run("score bounds", seed, cases, [](DatasetGenerator& gen, const Dataset& ds) -> std::optional<std::string> {
    const auto& profile = ds.weight_profiles.front();
    const auto filter = random_filter(gen);
    for (const auto& c : rank(ds, profile, filter)) {
      for (double v : {c.ls_bounded, c.ls_tech_bounded, c.ls_env_bounded}) {
        if (!(v >= 0.0 && v <= 1.0)) return c.subject + ": bounded score " + fmt(v) + " outside [0,1]";
      }
      if (!(c.ls >= 0.0 && c.ls <= c.weight_total)) {
        return c.subject + ": LS " + fmt(c.ls) + " outside [0, " + fmt(c.weight_total) + "]";
      }
    }
    return std::nullopt;
  });
}

PropertyOutcome check_weight_scaling(std::uint64_t seed, int cases) {
  return run("weight-scaling invariance", seed, cases,
             [](DatasetGenerator& gen, const Dataset& ds) -> std::optional<std::string> {
               const auto& profile = ds.weight_profiles.front();
               const double c = gen.uniform(0.1, 10.0);
               WeightProfile scaled = profile;
               for (auto& [id, w] : scaled.weights) w *= c;
               const auto filter = random_filter(gen);
               const auto base = rank(ds, profile, filter);
               const auto after = rank(ds, scaled, filter);
               if (ids(base) != ids(after)) return "ranking changed under scaling by " + fmt(c);
               for (std::size_t i = 0; i < base.size(); ++i) {
                 if (!close(base[i].ls_bounded, after[i].ls_bounded)) {
                   return base[i].subject + ": LS' " + fmt(base[i].ls_bounded) + " -> " + fmt(after[i].ls_bounded);
                 }
                 if (!close(base[i].ls * c, after[i].ls)) {
                   return base[i].subject + ": LS " + fmt(base[i].ls) + " * " + fmt(c) + " != " + fmt(after[i].ls);
                 }
               }
               return std::nullopt;
             });
}

PropertyOutcome check_upgrade_monotonicity(std::uint64_t seed, int cases) {
  return run("single-cell upgrade monotonicity", seed, cases,
             [](DatasetGenerator& gen, const Dataset& ds) -> std::optional<std::string> {
               std::vector<std::size_t> candidates;
               for (std::size_t i = 0; i < ds.ratings.size(); ++i) {
                 const auto* level = std::get_if<Level>(&ds.ratings[i].value);
                 if (level != nullptr && *level != Level::Fully) candidates.push_back(i);
               }
               if (candidates.empty()) return "skip";
               const std::size_t pick = candidates[static_cast<std::size_t>(
                   gen.uniform_int(0, static_cast<int>(candidates.size()) - 1))];
               const Rating& cell = ds.ratings[pick];
               const int from = static_cast<int>(std::get<Level>(cell.value));
               const auto to = static_cast<Level>(gen.uniform_int(from + 1, 3));

               WhatIfRequest req;
               req.ratings.push_back({{cell.subject, cell.parameter, cell.sub_parameter}, to});
               const auto base = rank(ds, ds.weight_profiles.front());
               const auto after = what_if(ds, req).ranking;
               auto find = [&](const std::vector<ScoreCard>& r) {
                 for (std::size_t i = 0; i < r.size(); ++i) {
                   if (r[i].subject == cell.subject) return i;
                 }
                 return r.size();
               };
               const auto b = find(base);
               const auto a = find(after);
               if (after[a].ls < base[b].ls) return cell.subject + ": LS decreased after upgrade";
               if (after[a].ls_bounded < base[b].ls_bounded) return cell.subject + ": LS' decreased after upgrade";
               if (a > b) return cell.subject + ": rank position fell from " + std::to_string(b + 1) + " to " +
                                 std::to_string(a + 1);
               return std::nullopt;
             });
}

PropertyOutcome check_partition(std::uint64_t seed, int cases) {
  return run("technical/environmental partition", seed, cases,
             [](DatasetGenerator&, const Dataset& ds) -> std::optional<std::string> {
               for (const auto& c : rank(ds, ds.weight_profiles.front())) {
                 if (std::fabs(c.ls_tech + c.ls_env - c.ls) > 1e-12) {
                   return c.subject + ": " + fmt(c.ls_tech) + " + " + fmt(c.ls_env) + " != " + fmt(c.ls);
                 }
               }
               return std::nullopt;
             });
}

PropertyOutcome check_mean(std::uint64_t seed, int cases) {
  return run("parameter score equals brute-force mean", seed, cases,
             [](DatasetGenerator&, const Dataset& ds) -> std::optional<std::string> {
               const ScoreTable table(ds);
               for (const auto& row : table.rows()) {
                 for (std::size_t i = 0; i < ds.framework.parameters.size(); ++i) {
                   const auto& p = ds.framework.parameters[i];
                   const double expected = oracle_parameter_score(ds, row.subject, p);
                   if (!close(row.parameters[i].score, expected)) {
                     return row.subject + "/" + p.id + ": " + fmt(row.parameters[i].score) + " vs oracle " +
                            fmt(expected);
                   }
                 }
                 const auto totals = oracle_totals(ds, row.subject, ds.weight_profiles.front());
                 const auto card = score_card(row, ds.framework, ds.weight_profiles.front());
                 if (!close(card.ls, totals.ls)) return row.subject + ": LS " + fmt(card.ls) + " vs " + fmt(totals.ls);
               }
               return std::nullopt;
             });
}

PropertyOutcome check_sweep_crossovers(std::uint64_t seed, int cases) {
  return run("closed-form crossovers match a 10,000-point sweep", seed, cases,
             [](DatasetGenerator& gen, const Dataset& ds) -> std::optional<std::string> {
               if (ds.subjects.size() < 2) return "skip";
               const auto& profile = ds.weight_profiles.front();
               const auto& param = ds.framework.parameters[static_cast<std::size_t>(
                   gen.uniform_int(0, static_cast<int>(ds.framework.parameters.size()) - 1))];
               const double w_min = gen.uniform(0.05, 2.0);
               const double w_max = w_min + gen.uniform(0.5, 10.0);
               if (auto mismatch = compare_sweep_with_oracle(ds, profile, CategoryFilter::All, param.id, w_min, w_max)) {
                 return *mismatch;
               }
               // Every grid ranking must be ordered by the oracle's LS'.
               const auto sweep = weight_sweep(ds, profile, CategoryFilter::All, param.id, w_min, w_max, 11);
               for (std::size_t g = 0; g < sweep.grid.size(); ++g) {
                 WeightProfile p = profile;
                 p.weights[param.id] = sweep.grid[g];
                 double prev = 2.0;
                 for (const auto& id : sweep.rankings[g]) {
                   const auto t = oracle_totals(ds, id, p);
                   const double bounded = t.ls / t.weight_total;
                   if (bounded > prev + 1e-9) return "grid ranking at w=" + fmt(sweep.grid[g]) + " is out of order";
                   prev = bounded;
                 }
               }
               return std::nullopt;
             });
}

std::vector<PropertyOutcome> run_all_properties(std::uint64_t seed, int cases) {
  return {check_score_bounds(seed, cases),         check_weight_scaling(seed + 1, cases),
          check_upgrade_monotonicity(seed + 2, cases), check_partition(seed + 3, cases),
          check_mean(seed + 4, cases),               check_sweep_crossovers(seed + 5, cases)};
}

}  // namespace langeval::testing
