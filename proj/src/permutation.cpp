#include "genmi/permutation.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "genmi/info_stats.hpp"
#include "genmi/rng.hpp"

namespace genmi {

std::vector<std::uint8_t> ProfileSet::gender_column() const {
  std::vector<std::uint8_t> out;
  out.reserve(profiles.size());
  for (const NounProfile& p : profiles) out.push_back(p.gender_index);
  return out;
}

std::vector<std::int64_t> ProfileSet::column_sums() const {
  std::vector<std::int64_t> sums(partner_labels.size(), 0);
  for (const NounProfile& p : profiles) {
    for (const auto& [col, n] : p.partner_counts) {
      sums[static_cast<std::size_t>(col)] += n;
    }
  }
  return sums;
}

std::int64_t ProfileSet::token_total() const {
  std::int64_t total = 0;
  for (const NounProfile& p : profiles) total += p.token_total;
  return total;
}

ProfileBuild build_profiles(std::span<const WeightedPair> pairs,
                            const GenderAssignment& assignment) {
  // Column index per partner label, in sorted label order.
  std::vector<std::string> partner_labels;
  {
    StringSet seen;
    for (const WeightedPair& p : pairs) {
      if (seen.insert(p.partner).second) partner_labels.push_back(p.partner);
    }
    std::sort(partner_labels.begin(), partner_labels.end());
  }
  LemmaCounts partner_index;
  for (std::size_t j = 0; j < partner_labels.size(); ++j) {
    partner_index.emplace(partner_labels[j], static_cast<std::int64_t>(j));
  }

  // Group by noun lemma; std::map keeps profiles sorted.
  std::map<std::string, std::map<std::int32_t, std::int64_t>> by_noun;
  std::map<std::string, Gender> noun_gender;
  for (const WeightedPair& p : pairs) {
    if (p.count < 1) throw std::invalid_argument("build_profiles: count < 1");
    const auto it = assignment.entries.find(p.noun_lemma);
    if (it == assignment.entries.end()) throw UnassignedNoun(p.noun_lemma);
    noun_gender[p.noun_lemma] = it->second;
    const auto col =
        static_cast<std::int32_t>(partner_index.find(p.partner)->second);
    by_noun[p.noun_lemma][col] += p.count;
  }

  // Row labels: genders actually present, in enum order.
  std::array<bool, 3> present{false, false, false};
  for (const auto& [lemma, g] : noun_gender) {
    present[static_cast<std::size_t>(g) - 1] = true;
  }
  ProfileBuild out;
  std::array<std::uint8_t, 3> row_of{0, 0, 0};
  for (std::size_t i = 0; i < 3; ++i) {
    if (present[i]) {
      row_of[i] = static_cast<std::uint8_t>(out.profiles.gender_labels.size());
      out.profiles.gender_labels.emplace_back(
          to_string(static_cast<Gender>(i + 1)));
    }
  }
  out.profiles.partner_labels = partner_labels;

  const auto n_rows = static_cast<Eigen::Index>(out.profiles.gender_labels.size());
  const auto n_cols = static_cast<Eigen::Index>(partner_labels.size());
  CountMatrix counts = CountMatrix::Zero(n_rows, n_cols);

  for (auto& [lemma, cols] : by_noun) {
    NounProfile profile;
    profile.lemma = lemma;
    profile.gender_index =
        row_of[static_cast<std::size_t>(noun_gender[lemma]) - 1];
    for (const auto& [col, n] : cols) {
      profile.partner_counts.emplace_back(col, n);
      profile.token_total += n;
      counts(profile.gender_index, col) += n;
    }
    out.profiles.profiles.push_back(std::move(profile));
  }

  out.table = make_table(out.profiles.gender_labels,
                         out.profiles.partner_labels, std::move(counts));
  return out;
}

ProfileBuild build_profiles(std::span<const DependencyPair> pairs,
                            const GenderAssignment& assignment) {
  std::vector<WeightedPair> weighted;
  weighted.reserve(pairs.size());
  for (const DependencyPair& p : pairs) {
    weighted.push_back(WeightedPair{p.noun_lemma, p.partner_lemma, 1});
  }
  return build_profiles(weighted, assignment);
}

namespace {

// Re-aggregates profile rows under `labels` and evaluates the shared MI
// kernel. `acc` and `row_sums` are caller-owned scratch.
double mi_under_labels(const ProfileSet& ps, std::span<const std::uint8_t> labels,
                       CountMatrix& acc, std::vector<std::int64_t>& row_sums,
                       std::span<const std::int64_t> col_sums,
                       std::int64_t total) {
  acc.setZero();
  std::fill(row_sums.begin(), row_sums.end(), 0);
  for (std::size_t i = 0; i < ps.profiles.size(); ++i) {
    const NounProfile& p = ps.profiles[i];
    const std::uint8_t row = labels[i];
    for (const auto& [col, n] : p.partner_counts) acc(row, col) += n;
    row_sums[row] += p.token_total;
  }
  return mi_from_counts(acc, row_sums, col_sums, total);
}

std::vector<std::int64_t> gender_multiset(const ProfileSet& ps,
                                          std::span<const std::uint8_t> labels) {
  std::vector<std::int64_t> counts(ps.gender_labels.size(), 0);
  for (const std::uint8_t g : labels) {
    if (g >= ps.gender_labels.size()) throw LabelMultisetMismatch();
    ++counts[g];
  }
  return counts;
}

constexpr double kTieEps = 1e-12;

}  // namespace

double mi_under_assignment(const ProfileSet& profiles,
                           std::span<const std::uint8_t> labels) {
  if (labels.size() != profiles.profiles.size()) throw LabelMultisetMismatch();
  const auto base = profiles.gender_column();
  if (gender_multiset(profiles, labels) != gender_multiset(profiles, base)) {
    throw LabelMultisetMismatch();
  }
  const auto col_sums = profiles.column_sums();
  CountMatrix acc(static_cast<Eigen::Index>(profiles.gender_labels.size()),
                  static_cast<Eigen::Index>(profiles.partner_labels.size()));
  std::vector<std::int64_t> row_sums(profiles.gender_labels.size());
  return mi_under_labels(profiles, labels, acc, row_sums, col_sums,
                         profiles.token_total());
}

MiTestResult permutation_test(const ProfileSet& profiles,
                              std::int64_t n_permutations, std::uint64_t seed,
                              const PermutationOptions& opts) {
  if (n_permutations < 1) {
    throw std::invalid_argument("permutation_test: n_permutations must be >= 1");
  }
  if (profiles.profiles.size() < 2) throw TooFewNouns();
  const auto base = profiles.gender_column();
  const auto multiset = gender_multiset(profiles, base);
  if (std::count_if(multiset.begin(), multiset.end(),
                    [](std::int64_t c) { return c > 0; }) < 2) {
    throw SingleGender();
  }

  const auto col_sums = profiles.column_sums();
  const std::int64_t total = profiles.token_total();
  const auto n_rows = static_cast<Eigen::Index>(profiles.gender_labels.size());
  const auto n_cols = static_cast<Eigen::Index>(profiles.partner_labels.size());

  // Token-level mode flattens the corpus once; each permutation then
  // shuffles the per-token gender column.
  std::vector<std::int32_t> token_cols;
  std::vector<std::uint8_t> token_genders;
  if (opts.level == PermutationLevel::Token) {
    token_cols.reserve(static_cast<std::size_t>(total));
    token_genders.reserve(static_cast<std::size_t>(total));
    for (const NounProfile& p : profiles.profiles) {
      for (const auto& [col, n] : p.partner_counts) {
        for (std::int64_t k = 0; k < n; ++k) {
          token_cols.push_back(col);
          token_genders.push_back(p.gender_index);
        }
      }
    }
  }

  double observed = 0.0;
  {
    CountMatrix acc(n_rows, n_cols);
    std::vector<std::int64_t> row_sums(static_cast<std::size_t>(n_rows));
    observed = mi_under_labels(profiles, base, acc, row_sums, col_sums, total);
  }

  int workers = opts.workers > 0
                    ? opts.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = static_cast<int>(
      std::min<std::int64_t>(workers, n_permutations));

  struct WorkerCounts {
    std::int64_t higher = 0;
    std::int64_t higher_or_equal = 0;
  };
  std::vector<WorkerCounts> counts(static_cast<std::size_t>(workers));

  const auto run_range = [&](std::int64_t lo, std::int64_t hi, WorkerCounts& wc) {
    CountMatrix acc(n_rows, n_cols);
    std::vector<std::int64_t> row_sums(static_cast<std::size_t>(n_rows));
    std::vector<std::uint8_t> labels;
    for (std::int64_t i = lo; i < hi; ++i) {
      std::mt19937_64 gen(derive_stream_seed(seed, static_cast<std::uint64_t>(i)));
      double m = 0.0;
      if (opts.level == PermutationLevel::Type) {
        labels = base;
        fisher_yates(labels, gen);
        m = mi_under_labels(profiles, labels, acc, row_sums, col_sums, total);
      } else {
        std::vector<std::uint8_t> toks = token_genders;
        fisher_yates(toks, gen);
        acc.setZero();
        std::fill(row_sums.begin(), row_sums.end(), 0);
        for (std::size_t t = 0; t < toks.size(); ++t) {
          acc(toks[t], token_cols[t]) += 1;
          ++row_sums[toks[t]];
        }
        m = mi_from_counts(acc, row_sums, col_sums, total);
      }
      if (m > observed + kTieEps) {
        ++wc.higher;
        ++wc.higher_or_equal;
      } else if (m >= observed - kTieEps) {
        ++wc.higher_or_equal;
      }
    }
  };

  const std::int64_t chunk = (n_permutations + workers - 1) / workers;
  if (workers == 1) {
    run_range(0, n_permutations, counts[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t lo = w * chunk;
      const std::int64_t hi = std::min<std::int64_t>(lo + chunk, n_permutations);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi, std::ref(counts[static_cast<std::size_t>(w)]));
    }
    for (std::thread& t : pool) t.join();
  }

  MiTestResult result;
  result.observed_mi = observed;
  result.n_permutations = n_permutations;
  for (const WorkerCounts& wc : counts) {
    result.count_strictly_higher += wc.higher;
    result.count_higher_or_equal += wc.higher_or_equal;
  }
  result.p_paper = static_cast<double>(result.count_strictly_higher) /
                   static_cast<double>(n_permutations);
  result.p_conservative =
      static_cast<double>(result.count_higher_or_equal + 1) /
      static_cast<double>(n_permutations + 1);
  result.seed = seed;
  result.significant = result.p_paper < 0.05;
  return result;
}

}  // namespace genmi
