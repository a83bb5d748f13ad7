#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "langeval/discrepancy.hpp"
#include "langeval/errors.hpp"

namespace langeval {
namespace {

using nlohmann::ordered_json;

const DiscrepancyReport& bundled_report() {
  static const DiscrepancyReport r = discrepancy_report(testing::bundled(), testing::bundled_published());
  return r;
}

std::vector<DiscrepancyEntry> select(const std::string& table, const std::string& field) {
  std::vector<DiscrepancyEntry> out;
  for (const auto& e : bundled_report().entries) {
    if (e.table == table && e.field == field) out.push_back(e);
  }
  return out;
}

TEST(Discrepancy, AdtCellsShareUniformOffset) {
  const auto adt = select("Table 13", "adt_encapsulation");
  ASSERT_EQ(adt.size(), 4u);
  for (const auto& e : adt) {
    EXPECT_NEAR(e.delta, 0.07, 1e-9) << e.subject;
    EXPECT_NE(e.note.find("uniform offset +0.07 across 4 cells"), std::string::npos) << e.note;
  }
}

TEST(Discrepancy, RelationshipsCppCellIsListed) {
  const auto rel = select("Table 13", "object_relationships");
  ASSERT_EQ(rel.size(), 1u);
  EXPECT_EQ(rel[0].subject, "cpp");
  EXPECT_EQ(rel[0].published, 0.58);
  EXPECT_NEAR(rel[0].recomputed, 3.8 / 6.0, 1e-12);
  EXPECT_EQ(rel[0].location, "Table 13, C++, Relationships among objects");
}

TEST(Discrepancy, EntriesExceedThreshold) {
  for (const auto& e : bundled_report().entries) {
    EXPECT_GT(std::abs(e.delta), kDiscrepancyThreshold) << e.location;
    EXPECT_NEAR(e.delta, e.published - e.recomputed, 1e-12);
  }
}

TEST(Discrepancy, DivisorAmbiguityIsExplained) {
  const auto bounded = select("Table 16", "ls_bounded");
  ASSERT_FALSE(bounded.empty());
  for (const auto& e : bounded) {
    EXPECT_NE(e.note.find("divisor 11"), std::string::npos) << e.note;
    EXPECT_NE(e.note.find("in-scope weight total is 6"), std::string::npos) << e.note;
  }
}

TEST(Discrepancy, DefaultOverallOnlyDiffersOnCppBounded) {
  std::vector<std::string> fields;
  for (const auto& e : bundled_report().entries) {
    if (e.table == "Table 15") fields.push_back(e.subject + "/" + e.field);
  }
  EXPECT_EQ(fields, std::vector<std::string>{"cpp/ls_bounded"});
}

TEST(Discrepancy, UnknownReferencesBecomeNotes) {
  PublishedTables tables;
  PublishedTable t;
  t.id = "x";
  t.label = "Table X";
  t.parameter_cells = {{"cobol", "adt_encapsulation", 0.5}, {"java", "speed", 0.5}};
  tables.tables.push_back(t);
  const auto r = discrepancy_report(testing::bundled(), tables);
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_NE(r.entries[0].note.find("unknown subject 'cobol'"), std::string::npos);
  EXPECT_NE(r.entries[1].note.find("unknown parameter 'speed'"), std::string::npos);
}

TEST(Discrepancy, UnknownProfileIsNotFatal) {
  PublishedTables tables;
  PublishedTable t;
  t.id = "y";
  t.label = "Table Y";
  t.profile = "missing";
  t.overall_cells = {{"java", 100.0, std::nullopt}};
  tables.tables.push_back(t);
  EXPECT_NO_THROW((void)discrepancy_report(testing::bundled(), tables));
}

TEST(Discrepancy, PublishedTablesRoundTripAndStrictness) {
  const auto& pub = testing::bundled_published();
  const auto again = published_tables_from_json(to_json(pub));
  EXPECT_EQ(to_json(again), to_json(pub));

  auto j = to_json(pub);
  j["tables"][0]["extra"] = 1;
  EXPECT_THROW((void)published_tables_from_json(j), ParseError);
}

TEST(Discrepancy, JsonShape) {
  const auto j = to_json(bundled_report());
  EXPECT_EQ(j.at("threshold").get<double>(), kDiscrepancyThreshold);
  ASSERT_EQ(j.at("entries").size(), bundled_report().entries.size());
  for (const char* key : {"table", "subject", "field", "location", "published", "recomputed", "delta", "note"}) {
    EXPECT_TRUE(j["entries"][0].contains(key)) << key;
  }
}

}  // namespace
}  // namespace langeval
