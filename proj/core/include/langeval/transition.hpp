#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "langeval/criteria.hpp"

namespace langeval {

// Unit costs of moving from one language to another, in order:
// paradigm shift, static-to-dynamic typing, strong-to-weak typing.
struct CostVector {
  std::array<std::uint8_t, 3> units{};

  int total() const noexcept { return units[0] + units[1] + units[2]; }
  friend bool operator==(const CostVector&, const CostVector&) = default;
};

struct TransitionCostEntry {
  std::string from;
  std::string to;
  CostVector costs;

  friend bool operator==(const TransitionCostEntry&, const TransitionCostEntry&) = default;
};

// Directed pairwise costs over a fixed subject universe of size N.
class TransitionCostMatrix {
 public:
  TransitionCostMatrix() = default;
  // Throws InvalidArgument on a diagonal entry, a duplicate ordered pair, or
  // an endpoint outside `subjects`. Missing pairs are allowed here and are
  // reported by the validator.
  TransitionCostMatrix(std::vector<std::string> subjects, std::vector<TransitionCostEntry> entries);

  std::size_t size() const noexcept { return subjects_.size(); }
  const std::vector<std::string>& subjects() const noexcept { return subjects_; }
  const std::vector<TransitionCostEntry>& entries() const noexcept { return entries_; }

  bool contains(std::string_view subject) const noexcept;
  const TransitionCostEntry* find(std::string_view from, std::string_view to) const noexcept;

  // Ordered pairs (from, to) with from != to that have no entry.
  std::vector<std::pair<std::string, std::string>> missing_pairs() const;
  // Pairs whose reverse carries a different vector (reported, not enforced).
  std::vector<std::pair<std::string, std::string>> asymmetric_pairs() const;

  friend bool operator==(const TransitionCostMatrix&, const TransitionCostMatrix&) = default;

 private:
  std::vector<std::string> subjects_;
  std::vector<TransitionCostEntry> entries_;
};

// Stored vector for (from, to); zero when from == to. Throws
// UnknownSubjectError for a subject outside the matrix and MissingRatingError
// for an absent pair.
CostVector pair_cost(std::string_view from, std::string_view to, const TransitionCostMatrix& matrix);

// Sum of every component of pair_cost(subject, other) over all other subjects.
int total_cost(std::string_view subject, const TransitionCostMatrix& matrix);

// Fully if total <= 2N, Mostly if <= 2.5N, Partially if <= 3N, else No.
// Boundaries belong to the better rating.
Level cost_rating(int total, std::size_t n);

// Rule-based generator: paradigm differs; static -> dynamic; strong -> weak.
CostVector derive_cost_vector(const TransitionAttributes& from, const TransitionAttributes& to) noexcept;
// Throws InvalidArgument when either subject lacks transition attributes.
CostVector derive_cost_vector(const Subject& from, const Subject& to);
// Full matrix built with derive_cost_vector over every ordered pair.
TransitionCostMatrix derive_matrix(const std::vector<Subject>& subjects);

}  // namespace langeval
