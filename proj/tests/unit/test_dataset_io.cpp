#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "langeval/dataset_io.hpp"
#include "langeval/errors.hpp"
#include "random_dataset.hpp"

namespace langeval {
namespace {

using nlohmann::ordered_json;

ordered_json bundled_json() { return ordered_json::parse(read_text_file(testing::data_path("paper-2023-oop.json"))); }

TEST(DatasetIo, LoadsBundledDataset) {
  const auto& ds = testing::bundled();
  EXPECT_EQ(ds.subjects.size(), 4u);
  EXPECT_EQ(ds.framework.n(), 9u);
  EXPECT_EQ(ds.framework.technical_count(), 5u);
  EXPECT_EQ(ds.framework.environmental_count(), 4u);
  ASSERT_TRUE(ds.demand.has_value());
  EXPECT_EQ(ds.demand->as_of, "2022-07-31");
  ASSERT_NE(ds.find_profile("demand-emphasis"), nullptr);
  EXPECT_EQ(ds.find_profile("demand-emphasis")->weight("demand"), 3.0);
}

TEST(DatasetIo, RoundTripBundled) {
  const auto& ds = testing::bundled();
  EXPECT_EQ(parse_dataset(save_dataset(ds)), ds);
}

TEST(DatasetIo, SaveIsCanonical) {
  const std::string text = save_dataset(testing::bundled());
  EXPECT_EQ(save_dataset(parse_dataset(text)), text);
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(text.back(), '\n');
}

TEST(DatasetIo, RoundTripRandomDatasets) {
  testing::DatasetGenerator gen(7);
  for (int i = 0; i < 100; ++i) {
    const Dataset ds = gen.next();
    ASSERT_EQ(parse_dataset(save_dataset(ds)), ds) << "case " << i;
  }
}

TEST(DatasetIo, RoundTripThroughFile) {
  const auto path = std::filesystem::temp_directory_path() / "langeval_roundtrip.json";
  save_dataset(testing::bundled(), path);
  EXPECT_EQ(load_dataset(path), testing::bundled());
  std::filesystem::remove(path);
}

TEST(DatasetIo, SyntaxErrorReportsLineAndColumn) {
  try {
    (void)parse_dataset("{\n  \"framework\": [1,\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().rfind("line 3", 0), 0u) << e.location();
  }
}

TEST(DatasetIo, UnknownFieldIsRejectedWithPointer) {
  auto j = bundled_json();
  j["ratings"][3]["colour"] = "red";
  try {
    (void)dataset_from_json(j);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), "/ratings/3/colour");
  }
}

TEST(DatasetIo, BadLevelNamesTheField) {
  auto j = bundled_json();
  j["ratings"][0]["value"] = "sort of";
  try {
    (void)dataset_from_json(j);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), "/ratings/0/value");
  }
}

TEST(DatasetIo, DanglingReferences) {
  auto j = bundled_json();
  j["ratings"][0]["subject"] = "cobol";
  EXPECT_THROW((void)dataset_from_json(j), UnresolvedReferenceError);

  j = bundled_json();
  j["ratings"][0]["sub_parameter"] = "nope";
  EXPECT_THROW((void)dataset_from_json(j), UnresolvedReferenceError);

  j = bundled_json();
  j["weight_profiles"][0]["weights"]["speed"] = 1;
  EXPECT_THROW((void)dataset_from_json(j), UnresolvedReferenceError);
}

TEST(DatasetIo, DuplicateIds) {
  auto j = bundled_json();
  j["subjects"].push_back(j["subjects"][0]);
  EXPECT_THROW((void)dataset_from_json(j), DuplicateIdError);
}

TEST(DatasetIo, MissingFileIsAnError) {
  EXPECT_THROW((void)load_dataset("/nonexistent/langeval.json"), Error);
}

TEST(DatasetIo, RatingValueKinds) {
  EXPECT_EQ(rating_value_from_json("mostly", true, ""), RatingValue(Level::Mostly));
  EXPECT_EQ(rating_value_from_json(12.5, true, ""), RatingValue(RawValue{12.5}));
  EXPECT_EQ(rating_value_from_json(0.5, false, ""), RatingValue(DirectScore{0.5}));
  EXPECT_THROW(rating_value_from_json(true, true, "/x"), ParseError);
}

}  // namespace
}  // namespace langeval
