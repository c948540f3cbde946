#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "genmi/contingency.hpp"
#include "genmi/coverage.hpp"
#include "genmi/extraction.hpp"

namespace genmi {

// Per-noun-type aggregation of partner counts. Permuting genders over these
// profiles lets the test recompute MI in O(total sparse entries) instead of
// regrouping the raw pairs.
struct NounProfile {
  std::string lemma;
  std::uint8_t gender_index = 0;  // index into ProfileSet::gender_labels
  std::vector<std::pair<std::int32_t, std::int64_t>> partner_counts;  // (col, n)
  std::int64_t token_total = 0;
};

struct ProfileSet {
  std::vector<std::string> gender_labels;   // row labels, distinct and present
  std::vector<std::string> partner_labels;  // column labels, sorted
  std::vector<NounProfile> profiles;        // sorted by lemma

  std::vector<std::uint8_t> gender_column() const;
  std::vector<std::int64_t> column_sums() const;
  std::int64_t token_total() const;
};

struct ProfileBuild {
  ProfileSet profiles;
  ContingencyTable table;  // cell-wise sum of profiles grouped by gender
};

// A (noun, partner) multiset entry; the pipeline aggregates pair tokens into
// these before profile construction.
struct WeightedPair {
  std::string noun_lemma;
  std::string partner;
  std::int64_t count = 1;
};

class UnassignedNoun : public std::invalid_argument {
 public:
  explicit UnassignedNoun(const std::string& lemma)
      : std::invalid_argument("noun without assigned gender: " + lemma) {}
};

class LabelMultisetMismatch : public std::invalid_argument {
 public:
  LabelMultisetMismatch()
      : std::invalid_argument(
            "label sequence is not a permutation of the profile genders") {}
};

class SingleGender : public std::domain_error {
 public:
  SingleGender()
      : std::domain_error("permutation test undefined with a single gender") {}
};

class TooFewNouns : public std::domain_error {
 public:
  TooFewNouns()
      : std::domain_error("permutation test requires at least two noun types") {}
};

ProfileBuild build_profiles(std::span<const WeightedPair> pairs,
                            const GenderAssignment& assignment);
ProfileBuild build_profiles(std::span<const DependencyPair> pairs,
                            const GenderAssignment& assignment);

// MI of the table induced by assigning `labels[i]` to profile i. Equal to
// mutual_information of the table rebuilt from scratch under those labels,
// without materializing per-pair data.
double mi_under_assignment(const ProfileSet& profiles,
                           std::span<const std::uint8_t> labels);

struct MiTestResult {
  double observed_mi = 0.0;  // bits
  std::int64_t n_permutations = 0;
  std::int64_t count_strictly_higher = 0;
  std::int64_t count_higher_or_equal = 0;
  double p_paper = 0.0;         // strictly-higher fraction
  double p_conservative = 0.0;  // add-one, ties count
  std::uint64_t seed = 0;
  bool significant = false;  // p_paper < 0.05
};

enum class PermutationLevel {
  Type,  // shuffle the noun-type -> gender map (default)
  Token  // shuffle gender labels over pair tokens (sensitivity analysis;
         // O(tokens) per permutation)
};

struct PermutationOptions {
  int workers = 0;  // 0 = hardware concurrency
  PermutationLevel level = PermutationLevel::Type;
};

// Monte Carlo permutation significance test of the observed MI. Each
// permutation draws its random stream from (seed, permutation index), so the
// result is identical for any worker count.
MiTestResult permutation_test(const ProfileSet& profiles,
                              std::int64_t n_permutations, std::uint64_t seed,
                              const PermutationOptions& opts = {});

}  // namespace genmi
