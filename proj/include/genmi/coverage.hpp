#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "genmi/extraction.hpp"
#include "genmi/morph.hpp"

namespace genmi {

struct TransparentStringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};
using StringSet =
    std::unordered_set<std::string, TransparentStringHash, std::equal_to<>>;
using LemmaCounts =
    std::unordered_map<std::string, std::int64_t, TransparentStringHash,
                       std::equal_to<>>;

class EmptyCounts : public std::invalid_argument {
 public:
  EmptyCounts() : std::invalid_argument("coverage_filter: empty counts") {}
};

// Rank-order token-coverage retention: returns the smallest prefix of
// lemmata, ranked by descending count with ties broken lexicographically,
// whose cumulative count share is >= coverage. The result is in rank order.
std::vector<std::string> coverage_filter(const LemmaCounts& counts,
                                         double coverage);

// A pair survives iff its partner lemma and its noun lemma are both retained.
// Relative order of survivors is preserved.
std::vector<DependencyPair> apply_retention(std::span<const DependencyPair> pairs,
                                            const StringSet& retained_partners,
                                            const StringSet& retained_nouns);

// The single gender assigned to each noun type, used for type-level
// permutation. Lemmata whose token genders tie for the mode are dropped.
struct GenderAssignment {
  std::unordered_map<std::string, Gender, TransparentStringHash, std::equal_to<>>
      entries;
  StringSet dropped;
};

// Accumulates per-lemma gender votes (token counts) and resolves them to the
// modal gender.
class GenderVotes {
 public:
  void add(std::string_view lemma, Gender g, std::int64_t n = 1);
  GenderAssignment resolve() const;

 private:
  std::unordered_map<std::string, std::array<std::int64_t, 3>,
                     TransparentStringHash, std::equal_to<>>
      votes_;  // Masc, Fem, Neut
};

GenderAssignment assign_type_gender(std::span<const DependencyPair> pairs);
GenderAssignment assign_type_gender(std::span<const NounFeatureObservation> obs);

}  // namespace genmi
