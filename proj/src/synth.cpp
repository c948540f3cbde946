#include "genmi/synth.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "genmi/conllu.hpp"
#include "genmi/info_stats.hpp"
#include "genmi/rng.hpp"

namespace genmi {

namespace {

void validate(const SynthParams& p) {
  if (p.n_noun_types < 1) throw InvalidParams("n_noun_types must be >= 1");
  if (p.gender_probs.empty() || p.gender_probs.size() > 3) {
    throw InvalidParams("gender_probs must have 1 to 3 entries");
  }
  double sum = 0.0;
  for (const double q : p.gender_probs) {
    if (q < 0.0) throw InvalidParams("gender_probs entries must be >= 0");
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidParams("gender_probs must sum to 1");
  if (p.n_partner_types < static_cast<std::int64_t>(p.gender_probs.size())) {
    throw InvalidParams("n_partner_types must be >= number of genders");
  }
  if (!(p.zipf_exponent > 0.0)) throw InvalidParams("zipf_exponent must be > 0");
  if (p.mixing_weight < 0.0 || p.mixing_weight > 1.0) {
    throw InvalidParams("mixing_weight must be in [0,1]");
  }
  if (p.tokens < p.n_noun_types) {
    throw InvalidParams("tokens must be >= n_noun_types");
  }
}

std::string padded(std::string_view prefix, char kind, std::int32_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%c%06d", kind, index);
  std::string out(prefix);
  out += buf;
  return out;
}

double gender_entropy_bits(std::span<const double> probs) {
  return entropy(Eigen::Map<const Eigen::VectorXd>(
      probs.data(), static_cast<Eigen::Index>(probs.size())));
}

}  // namespace

std::string SynthCorpus::noun_lemma(std::int32_t index) const {
  return padded(lemma_prefix, 'n', index);
}

std::string SynthCorpus::partner_lemma(std::int32_t index) const {
  return padded(lemma_prefix, 'p', index);
}

GenderAssignment SynthCorpus::assignment() const {
  GenderAssignment out;
  for (std::size_t k = 0; k < noun_gender.size(); ++k) {
    out.entries.emplace(noun_lemma(static_cast<std::int32_t>(k)),
                        static_cast<Gender>(noun_gender[k] + 1));
  }
  return out;
}

std::vector<WeightedPair> SynthCorpus::weighted_pairs() const {
  std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> counts;
  for (const auto& t : pair_tokens) ++counts[t];
  std::vector<WeightedPair> out;
  out.reserve(counts.size());
  for (const auto& [key, n] : counts) {
    out.push_back(WeightedPair{noun_lemma(key.first), partner_lemma(key.second), n});
  }
  return out;
}

std::optional<double> expected_mi(const SynthParams& params) {
  validate(params);
  if (params.mixing_weight == 0.0) return 0.0;
  if (params.mixing_weight == 1.0) return gender_entropy_bits(params.gender_probs);
  return std::nullopt;  // outside the analytic regime
}

SynthCorpus generate(const SynthParams& params, std::uint64_t seed,
                     std::string lemma_prefix) {
  validate(params);

  SynthCorpus corpus;
  corpus.params = params;
  corpus.seed = seed;
  corpus.lemma_prefix = std::move(lemma_prefix);
  corpus.truth.population_mi = expected_mi(params);
  corpus.truth.deterministic_partner_gender = params.mixing_weight == 1.0;

  std::mt19937_64 gen(derive_stream_seed(seed, 0));
  const auto n_genders = static_cast<std::int64_t>(params.gender_probs.size());
  const std::int64_t v = params.n_partner_types;

  // Gender per noun type.
  std::vector<double> gender_cum(params.gender_probs.size());
  double acc = 0.0;
  for (std::size_t g = 0; g < params.gender_probs.size(); ++g) {
    acc += params.gender_probs[g];
    gender_cum[g] = acc;
  }
  gender_cum.back() = 1.0;
  corpus.noun_gender.reserve(static_cast<std::size_t>(params.n_noun_types));
  for (std::int64_t k = 0; k < params.n_noun_types; ++k) {
    corpus.noun_gender.push_back(static_cast<std::uint8_t>(
        sample_categorical(gender_cum, uniform_unit(gen))));
  }

  // Zipf cumulative over noun types.
  std::vector<double> zipf_cum(static_cast<std::size_t>(params.n_noun_types));
  double z = 0.0;
  for (std::int64_t k = 0; k < params.n_noun_types; ++k) {
    z += 1.0 / std::pow(static_cast<double>(k + 1), params.zipf_exponent);
    zipf_cum[static_cast<std::size_t>(k)] = z;
  }
  for (double& c : zipf_cum) c /= z;
  zipf_cum.back() = 1.0;

  // Disjoint per-gender partner blocks.
  const auto block_start = [&](std::int64_t g) { return g * v / n_genders; };

  corpus.pair_tokens.reserve(static_cast<std::size_t>(params.tokens));
  for (std::int64_t t = 0; t < params.tokens; ++t) {
    // Every noun type appears at least once; the tail follows the Zipf law.
    std::int32_t noun;
    if (t < params.n_noun_types) {
      noun = static_cast<std::int32_t>(t);
    } else {
      noun = static_cast<std::int32_t>(
          sample_categorical(zipf_cum, uniform_unit(gen)));
    }
    const std::int64_t g = corpus.noun_gender[static_cast<std::size_t>(noun)];

    std::int32_t partner;
    if (uniform_unit(gen) < params.mixing_weight) {
      const std::int64_t lo = block_start(g);
      const std::int64_t len = block_start(g + 1) - lo;
      partner = static_cast<std::int32_t>(
          lo + static_cast<std::int64_t>(uniform_below(
                   static_cast<std::uint64_t>(len), gen)));
    } else {
      partner = static_cast<std::int32_t>(
          uniform_below(static_cast<std::uint64_t>(v), gen));
    }
    corpus.pair_tokens.emplace_back(noun, partner);
  }
  return corpus;
}

void emit_conllu(const SynthCorpus& corpus, const EmitOptions& opts,
                 std::ostream& out) {
  std::mt19937_64 feats_gen(derive_stream_seed(opts.feature_seed, 1));
  static constexpr std::array<CaseKind, 4> kCases = {CaseKind::Nom, CaseKind::Acc,
                                                     CaseKind::Gen, CaseKind::Dat};
  std::int64_t index = 0;
  for (const auto& [noun_idx, partner_idx] : corpus.pair_tokens) {
    Token noun;
    noun.lemma = corpus.noun_lemma(noun_idx);
    noun.surface = noun.lemma;
    noun.upos = "NOUN";
    noun.feats.gender =
        static_cast<Gender>(corpus.noun_gender[static_cast<std::size_t>(noun_idx)] + 1);
    noun.feats.number =
        uniform_below(2, feats_gen) == 0 ? GrammNumber::Sing : GrammNumber::Plur;
    if (opts.with_case) {
      noun.feats.gram_case = {kCases[uniform_below(4, feats_gen)], {}};
    }

    Token partner;
    partner.lemma = corpus.partner_lemma(partner_idx);
    partner.surface = partner.lemma;

    Sentence sentence;
    sentence.source_id = opts.sent_id_prefix + "-" +
                         std::string(to_string(opts.relation)) + "-" +
                         std::to_string(index++);
    if (opts.relation == Relation::Amod) {
      noun.id = 1;
      noun.head = 0;
      noun.deprel = "root";
      partner.id = 2;
      partner.head = 1;
      partner.upos = "ADJ";
      partner.deprel = "amod";
      sentence.tokens = {noun, partner};
    } else {
      partner.id = 1;
      partner.head = 0;
      partner.upos = "VERB";
      partner.deprel = "root";
      noun.id = 2;
      noun.head = 1;
      // UD v2 spelling for direct objects.
      noun.deprel = opts.relation == Relation::Dobj
                        ? "obj"
                        : std::string(to_string(opts.relation));
      sentence.tokens = {partner, noun};
    }
    out << to_conllu(sentence);
  }
}

void append_lexicon(const SynthCorpus& corpus, Animacy cls, std::ostream& out) {
  for (std::size_t k = 0; k < corpus.noun_gender.size(); ++k) {
    out << corpus.noun_lemma(static_cast<std::int32_t>(k)) << '\t'
        << to_string(cls) << '\n';
  }
}

}  // namespace genmi
