#pragma once

#include <string>
#include <vector>

#include "langeval/dataset.hpp"

namespace langeval {

enum class ViolationKind {
  EmptyFramework,
  EmptySubParameters,
  MixedSubParameterKinds,
  InvalidScale,
  MissingRating,
  DuplicateRating,
  KindMismatch,
  DirectScoreOutOfRange,
  NegativeRawValue,
  MissingWeight,
  NonPositiveWeight,
  MissingDemandData,
  DegenerateDemand,
  MissingTransitionCost,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::string location;
  std::string message;
};

// Violations make a dataset unscoreable; notes are observations only (for
// example an asymmetric transition matrix).
struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_dataset(const Dataset& dataset);

}  // namespace langeval
