#include "genmi/extraction.hpp"

namespace genmi {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Amod: return "amod";
    case Relation::Dobj: return "dobj";
    case Relation::Iobj: return "iobj";
    case Relation::Nsubj: return "nsubj";
  }
  return "?";
}

namespace {

struct DeprelParts {
  std::string_view base;
  std::string_view subtype;  // text after the first ':', may be empty
};

DeprelParts split_deprel(std::string_view deprel) {
  const std::size_t colon = deprel.find(':');
  if (colon == std::string_view::npos) return {deprel, {}};
  return {deprel.substr(0, colon), deprel.substr(colon + 1)};
}

bool is_noun(const Token& t, const ExtractOptions& opts) {
  return t.upos == "NOUN" || (opts.include_proper_nouns && t.upos == "PROPN");
}

}  // namespace

std::optional<Relation> relation_from_label(std::string_view deprel) {
  const std::string_view base = split_deprel(deprel).base;
  if (base == "amod") return Relation::Amod;
  if (base == "dobj" || base == "obj") return Relation::Dobj;
  if (base == "iobj") return Relation::Iobj;
  if (base == "nsubj") return Relation::Nsubj;
  return std::nullopt;
}

PairExtract extract_pairs(const Sentence& sentence, Relation relation,
                          const ExtractOptions& opts) {
  PairExtract out;
  for (const Token& dep : sentence.tokens) {
    if (dep.head < 1) continue;  // root or detached
    const auto parts = split_deprel(dep.deprel);
    const auto rel = relation_from_label(parts.base);
    if (!rel || *rel != relation) continue;
    if (relation == Relation::Nsubj && opts.exclude_passive_subjects &&
        parts.subtype == "pass") {
      continue;
    }
    const Token& head = sentence.tokens[static_cast<std::size_t>(dep.head - 1)];

    const Token* noun = nullptr;
    const Token* partner = nullptr;
    if (relation == Relation::Amod) {
      if (!is_noun(head, opts) || dep.upos != "ADJ") continue;
      noun = &head;
      partner = &dep;
    } else {
      if (!is_noun(dep, opts) || head.upos != "VERB") continue;
      noun = &dep;
      partner = &head;
    }

    if (noun->feats.gender == Gender::Unspecified) {
      ++out.dropped_no_gender;
      continue;
    }
    out.pairs.push_back(DependencyPair{noun->lemma, noun->feats.gender,
                                       noun->feats.number, noun->feats.gram_case,
                                       partner->lemma, relation});
  }
  return out;
}

ObservationExtract extract_noun_observations(const Sentence& sentence,
                                             const ExtractOptions& opts) {
  ObservationExtract out;
  for (const Token& t : sentence.tokens) {
    if (!is_noun(t, opts)) continue;
    if (t.feats.gender == Gender::Unspecified) {
      ++out.dropped_no_gender;
      continue;
    }
    out.observations.push_back(NounFeatureObservation{
        t.lemma, t.feats.gender, t.feats.gram_case, t.feats.number});
  }
  return out;
}

}  // namespace genmi
