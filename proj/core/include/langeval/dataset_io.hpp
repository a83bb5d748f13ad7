#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "langeval/dataset.hpp"

namespace langeval {

// Parses dataset text. Throws ParseError (with "line L, column C" for syntax
// errors or a JSON pointer for field errors; unknown fields are rejected),
// UnresolvedReferenceError for dangling ids, DuplicateIdError for repeated ids.
Dataset parse_dataset(std::string_view text);
Dataset dataset_from_json(const nlohmann::ordered_json& j);

// Reads and parses a dataset file. I/O failures raise Error.
Dataset load_dataset(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const Dataset& dataset);
nlohmann::ordered_json to_json(const WeightProfile& profile);
nlohmann::ordered_json to_json(const Rating& rating);
// Canonical dataset text: two-space indented JSON with a trailing newline.
std::string save_dataset(const Dataset& dataset);
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

// A weight profile object {name?, weights{...}}; ids are checked against the
// framework. Used for --weights files.
WeightProfile profile_from_json(const nlohmann::ordered_json& j, const Framework& framework,
                                const std::string& pointer = "");

// Reads a rating value: level token, or a number interpreted as a raw value
// when `has_sub_parameter` and as a direct score otherwise.
RatingValue rating_value_from_json(const nlohmann::ordered_json& j, bool has_sub_parameter,
                                   const std::string& pointer);
nlohmann::ordered_json to_json(const RatingValue& value);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace langeval
