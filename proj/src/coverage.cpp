#include "genmi/coverage.hpp"

#include <algorithm>

namespace genmi {

std::vector<std::string> coverage_filter(const LemmaCounts& counts,
                                         double coverage) {
  if (counts.empty()) throw EmptyCounts();
  if (!(coverage > 0.0) || coverage > 1.0) {
    throw std::invalid_argument("coverage_filter: coverage must be in (0,1]");
  }

  std::vector<std::pair<std::string_view, std::int64_t>> ranked;
  ranked.reserve(counts.size());
  std::int64_t total = 0;
  for (const auto& [lemma, count] : counts) {
    if (count < 1) {
      throw std::invalid_argument("coverage_filter: counts must be >= 1");
    }
    ranked.emplace_back(lemma, count);
    total += count;
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::vector<std::string> retained;
  std::int64_t cumulative = 0;
  for (const auto& [lemma, count] : ranked) {
    retained.emplace_back(lemma);
    cumulative += count;
    if (static_cast<double>(cumulative) / static_cast<double>(total) >=
        coverage) {
      break;
    }
  }
  return retained;
}

std::vector<DependencyPair> apply_retention(std::span<const DependencyPair> pairs,
                                            const StringSet& retained_partners,
                                            const StringSet& retained_nouns) {
  std::vector<DependencyPair> out;
  for (const DependencyPair& p : pairs) {
    if (retained_partners.contains(p.partner_lemma) &&
        retained_nouns.contains(p.noun_lemma)) {
      out.push_back(p);
    }
  }
  return out;
}

void GenderVotes::add(std::string_view lemma, Gender g, std::int64_t n) {
  if (g == Gender::Unspecified) {
    throw std::invalid_argument("GenderVotes: unspecified gender");
  }
  auto it = votes_.find(lemma);
  if (it == votes_.end()) {
    it = votes_.emplace(std::string(lemma), std::array<std::int64_t, 3>{0, 0, 0})
             .first;
  }
  it->second[static_cast<std::size_t>(g) - 1] += n;
}

GenderAssignment GenderVotes::resolve() const {
  GenderAssignment out;
  for (const auto& [lemma, v] : votes_) {
    const std::int64_t best = std::max({v[0], v[1], v[2]});
    const int winners = (v[0] == best) + (v[1] == best) + (v[2] == best);
    if (winners > 1) {
      out.dropped.insert(lemma);
      continue;
    }
    for (std::size_t i = 0; i < 3; ++i) {
      if (v[i] == best) {
        out.entries.emplace(lemma, static_cast<Gender>(i + 1));
        break;
      }
    }
  }
  return out;
}

GenderAssignment assign_type_gender(std::span<const DependencyPair> pairs) {
  GenderVotes votes;
  for (const DependencyPair& p : pairs) votes.add(p.noun_lemma, p.noun_gender);
  return votes.resolve();
}

GenderAssignment assign_type_gender(std::span<const NounFeatureObservation> obs) {
  GenderVotes votes;
  for (const NounFeatureObservation& o : obs) votes.add(o.noun_lemma, o.gender);
  return votes.resolve();
}

}  // namespace genmi
