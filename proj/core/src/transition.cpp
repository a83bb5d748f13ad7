#include "langeval/transition.hpp"

#include <algorithm>

#include "langeval/errors.hpp"

namespace langeval {

TransitionCostMatrix::TransitionCostMatrix(std::vector<std::string> subjects,
                                           std::vector<TransitionCostEntry> entries)
    : subjects_(std::move(subjects)), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!contains(e.from)) throw InvalidArgument("transition cost: unknown subject '" + e.from + "'");
    if (!contains(e.to)) throw InvalidArgument("transition cost: unknown subject '" + e.to + "'");
    if (e.from == e.to) throw InvalidArgument("transition cost: diagonal entry for '" + e.from + "'");
    for (auto u : e.costs.units) {
      if (u > 1) throw InvalidArgument("transition cost: components must be 0 or 1");
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (entries_[k].from == e.from && entries_[k].to == e.to) {
        throw InvalidArgument("transition cost: duplicate pair '" + e.from + "' -> '" + e.to + "'");
      }
    }
  }
}

bool TransitionCostMatrix::contains(std::string_view subject) const noexcept {
  return std::find(subjects_.begin(), subjects_.end(), subject) != subjects_.end();
}

const TransitionCostEntry* TransitionCostMatrix::find(std::string_view from, std::string_view to) const noexcept {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const TransitionCostEntry& e) { return e.from == from && e.to == to; });
  return it == entries_.end() ? nullptr : &*it;
}

std::vector<std::pair<std::string, std::string>> TransitionCostMatrix::missing_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& a : subjects_) {
    for (const auto& b : subjects_) {
      if (a != b && find(a, b) == nullptr) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> TransitionCostMatrix::asymmetric_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : entries_) {
    if (e.from > e.to) continue;
    const auto* back = find(e.to, e.from);
    if (back != nullptr && !(back->costs == e.costs)) out.emplace_back(e.from, e.to);
  }
  return out;
}

CostVector pair_cost(std::string_view from, std::string_view to, const TransitionCostMatrix& matrix) {
  if (!matrix.contains(from)) throw UnknownSubjectError("transition cost: unknown subject '" + std::string(from) + "'");
  if (!matrix.contains(to)) throw UnknownSubjectError("transition cost: unknown subject '" + std::string(to) + "'");
  if (from == to) return CostVector{};
  const auto* e = matrix.find(from, to);
  if (e == nullptr) {
    throw MissingRatingError("transition cost: no entry for '" + std::string(from) + "' -> '" +
                             std::string(to) + "'");
  }
  return e->costs;
}

int total_cost(std::string_view subject, const TransitionCostMatrix& matrix) {
  if (!matrix.contains(subject)) {
    throw UnknownSubjectError("transition cost: unknown subject '" + std::string(subject) + "'");
  }
  int total = 0;
  for (const auto& other : matrix.subjects()) {
    if (other != subject) total += pair_cost(subject, other, matrix).total();
  }
  return total;
}

Level cost_rating(int total, std::size_t n) {
  if (n == 0) throw InvalidArgument("cost_rating: N must be at least 1");
  if (total < 0) throw InvalidArgument("cost_rating: total must be non-negative");
  // Thresholds 2N, 2.5N, 3N compared in integers (2 * total vs 5N).
  const auto t = static_cast<long long>(total);
  const auto nn = static_cast<long long>(n);
  if (t <= 2 * nn) return Level::Fully;
  if (2 * t <= 5 * nn) return Level::Mostly;
  if (t <= 3 * nn) return Level::Partially;
  return Level::No;
}

CostVector derive_cost_vector(const TransitionAttributes& from, const TransitionAttributes& to) noexcept {
  CostVector v;
  v.units[0] = from.paradigm != to.paradigm ? 1 : 0;
  v.units[1] = (from.typing == Typing::Static && to.typing == Typing::Dynamic) ? 1 : 0;
  v.units[2] = (from.strength == TypeStrength::Strong && to.strength == TypeStrength::Weak) ? 1 : 0;
  return v;
}

CostVector derive_cost_vector(const Subject& from, const Subject& to) {
  if (!from.transition) throw InvalidArgument("subject '" + from.id + "' has no transition attributes");
  if (!to.transition) throw InvalidArgument("subject '" + to.id + "' has no transition attributes");
  return derive_cost_vector(*from.transition, *to.transition);
}

TransitionCostMatrix derive_matrix(const std::vector<Subject>& subjects) {
  std::vector<std::string> ids;
  std::vector<TransitionCostEntry> entries;
  for (const auto& s : subjects) ids.push_back(s.id);
  for (const auto& a : subjects) {
    for (const auto& b : subjects) {
      if (a.id != b.id) entries.push_back({a.id, b.id, derive_cost_vector(a, b)});
    }
  }
  return TransitionCostMatrix(std::move(ids), std::move(entries));
}

}  // namespace langeval
