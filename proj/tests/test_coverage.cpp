#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "genmi/coverage.hpp"
#include "genmi/rng.hpp"

using namespace genmi;

namespace {

LemmaCounts counts_of(std::initializer_list<std::pair<const char*, std::int64_t>> init) {
  LemmaCounts out;
  for (const auto& [k, v] : init) out.emplace(k, v);
  return out;
}

StringSet as_set(const std::vector<std::string>& v) {
  return StringSet(v.begin(), v.end());
}

}  // namespace

TEST_CASE("coverage_filter keeps the smallest prefix reaching the share") {
  const auto retained =
      coverage_filter(counts_of({{"a", 50}, {"b", 30}, {"c", 15}, {"d", 5}}), 0.90);
  CHECK(retained == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("coverage_filter of a single lemma") {
  CHECK(coverage_filter(counts_of({{"x", 7}}), 0.01) ==
        std::vector<std::string>{"x"});
  CHECK(coverage_filter(counts_of({{"x", 7}}), 1.0) ==
        std::vector<std::string>{"x"});
}

TEST_CASE("coverage 1.0 retains every lemma") {
  const auto retained =
      coverage_filter(counts_of({{"a", 5}, {"b", 4}, {"c", 1}}), 1.0);
  CHECK(retained.size() == 3);
}

TEST_CASE("count ties break lexicographically") {
  const auto retained =
      coverage_filter(counts_of({{"c", 5}, {"a", 5}, {"b", 5}}), 0.5);
  CHECK(retained == std::vector<std::string>{"a", "b"});
}

TEST_CASE("coverage_filter rejects bad input") {
  CHECK_THROWS_AS(coverage_filter({}, 0.9), EmptyCounts);
  CHECK_THROWS_AS(coverage_filter(counts_of({{"a", 1}}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(coverage_filter(counts_of({{"a", 1}}), 1.5), std::invalid_argument);
  CHECK_THROWS_AS(coverage_filter(counts_of({{"a", 0}}), 0.9), std::invalid_argument);
}

TEST_CASE("retained set is monotone in coverage and minimal") {
  std::mt19937_64 gen(21);
  for (int iter = 0; iter < 100; ++iter) {
    LemmaCounts counts;
    const int n = 1 + static_cast<int>(uniform_below(30, gen));
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
      const std::int64_t c = 1 + static_cast<std::int64_t>(uniform_below(100, gen));
      counts["w" + std::to_string(i)] = c;
      total += c;
    }
    const double c1 = 0.2 + 0.3 * uniform_unit(gen);
    const double c2 = c1 + (1.0 - c1) * uniform_unit(gen);
    const auto r1 = coverage_filter(counts, c1);
    const auto r2 = coverage_filter(counts, c2);
    // monotone: the lower-coverage set is a prefix of the higher-coverage one
    REQUIRE(r1.size() <= r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1[i] == r2[i]);

    // share >= coverage, and dropping the last retained lemma breaks it
    std::int64_t kept = 0;
    for (const auto& w : r2) kept += counts[w];
    CHECK(static_cast<double>(kept) / static_cast<double>(total) >= c2);
    if (!r2.empty()) {
      const std::int64_t without_last = kept - counts[r2.back()];
      CHECK(static_cast<double>(without_last) / static_cast<double>(total) < c2);
    }
  }
}

TEST_CASE("apply_retention keeps pairs whose both ends are retained") {
  std::vector<DependencyPair> pairs(3);
  pairs[0].noun_lemma = "puente";
  pairs[0].partner_lemma = "robusto";
  pairs[1].noun_lemma = "puente";
  pairs[1].partner_lemma = "raro";
  pairs[2].noun_lemma = "casa";
  pairs[2].partner_lemma = "robusto";

  const auto kept = apply_retention(pairs, as_set({"robusto"}), as_set({"puente"}));
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].noun_lemma == "puente");
  CHECK(kept[0].partner_lemma == "robusto");

  CHECK(apply_retention(pairs, {}, as_set({"puente", "casa"})).empty());
  CHECK(apply_retention(pairs, as_set({"robusto", "raro"}), {}).empty());
}

TEST_CASE("apply_retention preserves record order") {
  std::vector<DependencyPair> pairs(4);
  for (int i = 0; i < 4; ++i) {
    pairs[static_cast<std::size_t>(i)].noun_lemma = "n";
    pairs[static_cast<std::size_t>(i)].partner_lemma = "p" + std::to_string(i);
  }
  const auto kept =
      apply_retention(pairs, as_set({"p0", "p2", "p3"}), as_set({"n"}));
  REQUIRE(kept.size() == 3);
  CHECK(kept[0].partner_lemma == "p0");
  CHECK(kept[1].partner_lemma == "p2");
  CHECK(kept[2].partner_lemma == "p3");
}

TEST_CASE("type gender: unanimous and majority assignment") {
  GenderVotes votes;
  votes.add("puente", Gender::Masc, 3);
  votes.add("casa", Gender::Masc, 3);
  votes.add("casa", Gender::Fem, 1);  // tagging noise loses to the mode
  const auto a = votes.resolve();
  CHECK(a.entries.at("puente") == Gender::Masc);
  CHECK(a.entries.at("casa") == Gender::Masc);
  CHECK(a.dropped.empty());
}

TEST_CASE("type gender: modal ties are dropped") {
  GenderVotes votes;
  votes.add("blob", Gender::Masc, 2);
  votes.add("blob", Gender::Fem, 2);
  votes.add("ok", Gender::Neut, 1);
  const auto a = votes.resolve();
  CHECK(!a.entries.contains("blob"));
  CHECK(a.dropped.contains("blob"));
  CHECK(a.entries.at("ok") == Gender::Neut);
}

TEST_CASE("assign_type_gender over pair records") {
  std::vector<DependencyPair> pairs(4);
  for (auto& p : pairs) p.noun_lemma = "puente";
  pairs[0].noun_gender = pairs[1].noun_gender = pairs[2].noun_gender = Gender::Masc;
  pairs[3].noun_gender = Gender::Fem;
  const auto a = assign_type_gender(pairs);
  CHECK(a.entries.at("puente") == Gender::Masc);
}
