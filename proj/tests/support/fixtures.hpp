#pragma once

#include <string>

#include "langeval/dataset.hpp"
#include "langeval/dataset_io.hpp"
#include "langeval/discrepancy.hpp"

namespace langeval::testing {

inline std::string data_path(const std::string& file) { return std::string(LANGEVAL_TEST_DATA_DIR) + "/" + file; }

// The bundled four-language dataset, loaded once.
inline const Dataset& bundled() {
  static const Dataset ds = load_dataset(data_path("paper-2023-oop.json"));
  return ds;
}

inline const PublishedTables& bundled_published() {
  static const PublishedTables tables = load_published_tables(data_path("paper-2023-oop.published.json"));
  return tables;
}

}  // namespace langeval::testing
