#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "genmi/animacy.hpp"
#include "genmi/coverage.hpp"
#include "genmi/extraction.hpp"
#include "genmi/permutation.hpp"

namespace genmi {

class InvalidParams : public std::invalid_argument {
 public:
  explicit InvalidParams(const std::string& what) : std::invalid_argument(what) {}
};

// Parameters of one synthetic pair population with known ground-truth
// dependence between gender and partner.
struct SynthParams {
  std::int64_t n_noun_types = 0;
  std::int64_t n_partner_types = 0;
  std::vector<double> gender_probs;  // 1..3 entries, sums to 1
  double zipf_exponent = 1.0;        // noun token-frequency skew
  double mixing_weight = 0.0;        // lambda: 0 = independent, 1 = disjoint
  std::int64_t tokens = 0;           // total pair count, >= n_noun_types
};

struct SynthGroundTruth {
  std::optional<double> population_mi;   // analytic, only for lambda in {0,1}
  bool deterministic_partner_gender = false;  // lambda == 1
};

// Generated corpus. Noun genders are drawn per type; token frequencies
// follow a Zipf law (every type appears at least once); each pair's partner
// comes from the mixture (1-lambda) * Q + lambda * Q_g, where Q is uniform
// over all partners and Q_g is uniform over a per-gender block of a disjoint
// partition of the partner vocabulary.
struct SynthCorpus {
  SynthParams params;
  std::uint64_t seed = 0;
  std::string lemma_prefix;
  std::vector<std::uint8_t> noun_gender;  // per noun type: 0=Masc,1=Fem,2=Neut
  std::vector<std::pair<std::int32_t, std::int32_t>> pair_tokens;  // (noun, partner)
  SynthGroundTruth truth;

  std::string noun_lemma(std::int32_t index) const;
  std::string partner_lemma(std::int32_t index) const;
  GenderAssignment assignment() const;
  std::vector<WeightedPair> weighted_pairs() const;
};

SynthCorpus generate(const SynthParams& params, std::uint64_t seed,
                     std::string lemma_prefix = "");

// Exact population MI for the analytic regimes lambda in {0, 1}; nullopt
// ("unavailable") otherwise.
std::optional<double> expected_mi(const SynthParams& params);

// Emission of the corpus as minimal two-token CoNLL-U sentences (one arc
// each) so the entire pipeline, ingest included, can run end to end. Case
// and number features on the noun are drawn independently of gender.
struct EmitOptions {
  Relation relation = Relation::Amod;
  bool with_case = true;
  std::uint64_t feature_seed = 0;
  std::string sent_id_prefix = "synth";
};

void emit_conllu(const SynthCorpus& corpus, const EmitOptions& opts,
                 std::ostream& out);

// Lexicon lines ("lemma<TAB>class") for every noun type of the corpus.
void append_lexicon(const SynthCorpus& corpus, Animacy cls, std::ostream& out);

}  // namespace genmi
