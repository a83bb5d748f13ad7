// Acceptance checks against the bundled dataset. Prints one PASS/FAIL line per
// criterion and exits non-zero when any criterion fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "langeval/demand.hpp"
#include "langeval/discrepancy.hpp"
#include "langeval/scoring.hpp"
#include "langeval/sensitivity.hpp"
#include "langeval/transition.hpp"
#include "oracle.hpp"
#include "properties.hpp"

namespace {

using namespace langeval;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back(what);
    }
  }
};

std::string num(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << std::fixed << v;
  return s.str();
}

double param_score(const std::string& subject, const std::string& parameter) {
  const ScoreTable table(testing::bundled());
  return table.row(subject).parameters[*table.framework().index_of(parameter)].score;
}

std::vector<std::string> order(const std::vector<ScoreCard>& ranking) {
  std::vector<std::string> out;
  for (const auto& c : ranking) out.push_back(c.subject);
  return out;
}

Outcome qualitative_mapping() {
  Outcome o;
  const RatingScale scale = testing::bundled().framework.scale;
  o.require(map_level(Level::Fully, scale) == 1.0, "Fully != 1");
  o.require(map_level(Level::Mostly, scale) == 0.70, "Mostly != 0.70");
  o.require(map_level(Level::Partially, scale) == 0.40, "Partially != 0.40");
  o.require(map_level(Level::No, scale) == 0.0, "No != 0");
  return o;
}

Outcome demand_normalization() {
  Outcome o;
  const std::vector<std::pair<std::string, double>> published{
      {"cpp", 0.56}, {"java", 0.92}, {"python", 0.91}, {"csharp", 0.46}};
  const auto normalized = normalize_demand(*testing::bundled().demand);
  for (const auto& [id, expected] : published) {
    for (const auto& n : normalized) {
      if (n.subject != id) continue;
      o.require(std::fabs(n.score - expected) <= 0.005,
                id + " demand " + num(n.score) + " vs " + num(expected, 2) + " (tolerance 0.005)");
      o.require(std::fabs(n.score - param_score(id, "demand")) < 1e-12, id + " demand parameter score disagrees");
    }
  }
  return o;
}

Outcome relationships() {
  Outcome o;
  for (const auto& [id, expected] : std::vector<std::pair<std::string, double>>{
           {"csharp", 1.00}, {"java", 0.85}, {"python", 0.33}}) {
    const double v = param_score(id, "object_relationships");
    o.require(std::fabs(v - expected) <= 0.005, id + " relationships " + num(v) + " vs " + num(expected, 2));
  }
  const double cpp = param_score("cpp", "object_relationships");
  o.require(std::fabs(cpp - 0.633) <= 0.0005, "cpp relationships " + num(cpp) + " vs 0.633");
  bool listed = false;
  for (const auto& e : discrepancy_report(testing::bundled(), testing::bundled_published()).entries) {
    listed = listed || (e.subject == "cpp" && e.field == "object_relationships" && e.published == 0.58);
  }
  o.require(listed, "cpp relationships cell missing from the discrepancy report");
  return o;
}

Outcome bounded_unbounded() {
  Outcome o;
  const auto& ds = testing::bundled();
  const auto ranking = rank(ds, ds.default_profile());
  const std::vector<std::string> expected_order{"csharp", "java", "cpp", "python"};
  o.require(order(ranking) == expected_order, "ranking order differs from [C#, Java, C++, Python]");
  const std::vector<std::pair<std::string, double>> ls{
      {"csharp", 6.94}, {"java", 6.59}, {"cpp", 5.75}, {"python", 4.34}};
  for (const auto& [id, expected] : ls) {
    const auto card = score_card(ds, id, ds.default_profile());
    o.require(std::fabs(card.ls - expected) <= 0.10, id + " LS " + num(card.ls) + " vs " + num(expected, 2));
    o.require(std::fabs(card.ls_bounded / card.ls - 1.0 / 9.0) <= 1e-9, id + " LS'/LS != 1/9");
  }
  return o;
}

Outcome transition_model() {
  Outcome o;
  const auto& ds = testing::bundled();
  const auto& m = *ds.transition_costs;
  const std::vector<std::tuple<std::string, int, Level>> expected{
      {"cpp", 5, Level::Fully}, {"java", 4, Level::Fully}, {"python", 9, Level::Mostly}, {"csharp", 4, Level::Fully}};
  for (const auto& [id, total, level] : expected) {
    const int t = total_cost(id, m);
    o.require(t == total, id + " total " + std::to_string(t) + " vs " + std::to_string(total));
    o.require(cost_rating(t, m.size()) == level, id + " rating " + std::string(display_name(cost_rating(t, m.size()))));
  }
  o.require(cost_rating(8, 4) == Level::Fully && cost_rating(9, 4) == Level::Mostly, "threshold 8");
  o.require(cost_rating(10, 4) == Level::Mostly && cost_rating(11, 4) == Level::Partially, "threshold 10");
  o.require(cost_rating(12, 4) == Level::Partially && cost_rating(13, 4) == Level::No, "threshold 12");
  return o;
}

Outcome demand_emphasis_reconstruction() {
  Outcome o;
  const auto& ds = testing::bundled();
  WhatIfRequest req;
  req.weights["demand"] = 3.0;
  req.category = CategoryFilter::Environmental;
  const auto result = what_if(ds, req);
  const std::vector<std::string> expected_order{"java", "python", "csharp", "cpp"};
  o.require(order(result.ranking) == expected_order, "ranking order differs from [Java, Python, C#, C++]");

  const std::vector<std::pair<std::string, double>> published{
      {"java", 5.61}, {"python", 4.66}, {"csharp", 4.23}, {"cpp", 3.81}};
  for (const auto& [id, expected] : published) {
    // Hand sum: 3 * demand + contemporary + transferability + IDE.
    double hand = 0.0;
    for (const auto& p : ds.framework.parameters) {
      if (p.category != Category::Environmental) continue;
      hand += (p.id == "demand" ? 3.0 : 1.0) * testing::oracle_parameter_score(ds, id, p);
    }
    for (const auto& c : result.ranking) {
      if (c.subject != id) continue;
      o.require(std::fabs(c.ls - hand) <= 1e-9, id + " LS " + num(c.ls) + " disagrees with hand sum " + num(hand));
      o.require(std::fabs(c.ls - expected) <= 0.05,
                id + " LS " + num(c.ls, 3) + " vs published " + num(expected, 2) + " (tolerance 0.05)");
    }
  }

  bool divisor = false;
  for (const auto& e : discrepancy_report(ds, testing::bundled_published()).entries) {
    if (e.field == "ls_bounded" && e.note.find("11") != std::string::npos && e.note.find("6") != std::string::npos) {
      divisor = true;
    }
  }
  o.require(divisor, "discrepancy report does not mention the 11 vs 6 divisor");
  return o;
}

Outcome property_suite() {
  Outcome o;
  for (const auto& p : testing::run_all_properties(20240611, 250)) {
    o.require(p.cases >= 200, p.name + ": only " + std::to_string(p.cases) + " cases");
    o.require(p.failures == 0, p.name + ": " + std::to_string(p.failures) + " failures, " + p.first_failure);
  }
  return o;
}

Outcome discrepancy_adt() {
  Outcome o;
  const auto report = discrepancy_report(testing::bundled(), testing::bundled_published());
  o.require(report.entries.size() >= 4, "fewer than 4 entries");
  int adt = 0;
  for (const auto& e : report.entries) {
    if (e.field == "adt_encapsulation" && std::fabs(e.delta - 0.07) < 1e-9) ++adt;
  }
  o.require(adt == 4, std::to_string(adt) + " of 4 Abstract Datatype Encapsulation cells at +0.07");
  return o;
}

std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome cli_determinism() {
  Outcome o;
  const std::string cmd = std::string(LANGEVAL_BINARY) + " rank " + testing::data_path("paper-2023-oop.json") +
                          " --format csv";
  int s1 = 0;
  int s2 = 0;
  const auto first = capture(cmd, s1);
  const auto second = capture(cmd, s2);
  o.require(s1 == 0 && s2 == 0, "rank exited with a non-zero status");
  o.require(!first.empty(), "rank produced no output");
  o.require(first == second, "outputs differ between runs");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"qualitative mapping exact", qualitative_mapping},
      {"demand normalization within 0.005", demand_normalization},
      {"relationships among objects scores", relationships},
      {"bounded/unbounded consistency and default ranking", bounded_unbounded},
      {"transition totals and ratings", transition_model},
      {"demand-emphasis environmental reconstruction", demand_emphasis_reconstruction},
      {"randomized property suite", property_suite},
      {"discrepancy report covers ADE offset", discrepancy_adt},
      {"CLI rank csv is deterministic", cli_determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name;
    if (!o.pass) {
      std::cout << ":";
      for (const auto& d : o.details) std::cout << " [" << d << "]";
      ++failed;
    }
    std::cout << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
