#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genmi/conllu.hpp"
#include "genmi/morph.hpp"

namespace genmi {

// The four dependency relations analyzed. Surface labels are matched after
// stripping any ":subtype" suffix; both UD v1 and v2 spellings are accepted
// ("dobj" and "obj" both map to Dobj).
enum class Relation { Amod, Dobj, Iobj, Nsubj };

inline constexpr std::array<Relation, 4> kAllRelations = {
    Relation::Amod, Relation::Dobj, Relation::Iobj, Relation::Nsubj};

std::string_view to_string(Relation r);
std::optional<Relation> relation_from_label(std::string_view deprel);

struct DependencyPair {
  std::string noun_lemma;
  Gender noun_gender = Gender::Unspecified;
  GrammNumber noun_number = GrammNumber::Unspecified;
  GrammCase noun_case;
  std::string partner_lemma;
  Relation relation = Relation::Amod;

  friend bool operator==(const DependencyPair&, const DependencyPair&) = default;
};

// One gender-marked noun token, independent of its dependency context.
struct NounFeatureObservation {
  std::string noun_lemma;
  Gender gender = Gender::Unspecified;
  GrammCase gram_case;
  GrammNumber number = GrammNumber::Unspecified;

  friend bool operator==(const NounFeatureObservation&,
                         const NounFeatureObservation&) = default;
};

struct ExtractOptions {
  bool include_proper_nouns = false;     // also accept PROPN noun tokens
  bool exclude_passive_subjects = false; // skip nsubj:pass arcs entirely
};

struct PairExtract {
  std::vector<DependencyPair> pairs;
  std::size_t dropped_no_gender = 0;  // arcs whose noun lacks a Gender feature
};

// For Amod the arc's head must be a noun and the dependent an adjective; for
// the verb relations the dependent is the noun and the head a verb. Noun
// morphology is copied from the noun token, the partner lemma from the other
// end. Arcs whose noun has no Gender are dropped and counted.
PairExtract extract_pairs(const Sentence& sentence, Relation relation,
                          const ExtractOptions& opts = {});

struct ObservationExtract {
  std::vector<NounFeatureObservation> observations;
  std::size_t dropped_no_gender = 0;
};

// One observation per gender-marked noun token.
ObservationExtract extract_noun_observations(const Sentence& sentence,
                                             const ExtractOptions& opts = {});

}  // namespace genmi
