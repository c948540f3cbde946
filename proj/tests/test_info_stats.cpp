#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "genmi/info_stats.hpp"
#include "genmi/rng.hpp"

using namespace genmi;

namespace {

// Independent oracle: naive double loop over plug-in probabilities, written
// against the MI definition rather than against the implementation.
double naive_mi(const CountMatrix& counts) {
  const double m = static_cast<double>(counts.sum());
  std::vector<double> row(static_cast<std::size_t>(counts.rows()), 0.0);
  std::vector<double> col(static_cast<std::size_t>(counts.cols()), 0.0);
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
      row[static_cast<std::size_t>(i)] += static_cast<double>(counts(i, j)) / m;
      col[static_cast<std::size_t>(j)] += static_cast<double>(counts(i, j)) / m;
    }
  }
  double mi = 0.0;
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
      if (counts(i, j) == 0) continue;
      const double p = static_cast<double>(counts(i, j)) / m;
      mi += p * std::log2(p / (row[static_cast<std::size_t>(i)] *
                               col[static_cast<std::size_t>(j)]));
    }
  }
  return mi;
}

ContingencyTable table_of(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(rows.begin()->size());
  CountMatrix m(n_rows, n_cols);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const std::int64_t v : r) m(i, j++) = v;
    ++i;
  }
  std::vector<std::string> row_labels, col_labels;
  for (Eigen::Index r = 0; r < n_rows; ++r) row_labels.push_back("r" + std::to_string(r));
  for (Eigen::Index c = 0; c < n_cols; ++c) col_labels.push_back("c" + std::to_string(c));
  return make_table(row_labels, col_labels, m);
}

ContingencyTable random_table(std::mt19937_64& gen, Eigen::Index max_cols = 20) {
  while (true) {
    const Eigen::Index r = 2 + static_cast<Eigen::Index>(uniform_below(2, gen));
    const Eigen::Index c = 2 + static_cast<Eigen::Index>(
                                   uniform_below(static_cast<std::uint64_t>(max_cols - 1), gen));
    CountMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) {
        m(i, j) = static_cast<std::int64_t>(uniform_below(1001, gen));
      }
    }
    if (m.sum() == 0) continue;
    std::vector<std::string> rl, cl;
    for (Eigen::Index i = 0; i < r; ++i) rl.push_back("g" + std::to_string(i));
    for (Eigen::Index j = 0; j < c; ++j) cl.push_back("a" + std::to_string(j));
    return make_table(rl, cl, m);
  }
}

constexpr double kMiGolden = 0.2780719051126377;  // frozen from the naive oracle

}  // namespace

TEST_CASE("entropy of standard distributions") {
  Eigen::VectorXd uniform4 = Eigen::VectorXd::Constant(4, 0.25);
  CHECK(entropy(uniform4) == doctest::Approx(2.0).epsilon(1e-12));

  Eigen::Vector3d degenerate(1.0, 0.0, 0.0);
  CHECK(entropy(degenerate) == doctest::Approx(0.0).epsilon(1e-12));

  Eigen::Vector3d dyadic(0.5, 0.25, 0.25);
  CHECK(entropy(dyadic) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("entropy accepts row expressions") {
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.5, 0.25, 0.75;
  CHECK(entropy(m.row(0)) == doctest::Approx(1.0));
}

TEST_CASE("entropy rejects unnormalized or negative input") {
  Eigen::Vector2d not_normalized(0.5, 0.6);
  CHECK_THROWS_AS(entropy(not_normalized), NotNormalized);
  Eigen::Vector2d negative(-0.1, 1.1);
  CHECK_THROWS_AS(entropy(negative), NotNormalized);
}

TEST_CASE("MI of proportional rows is zero") {
  CHECK(mutual_information(table_of({{4, 4}, {1, 1}})) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("MI of a deterministic correspondence equals the gender entropy") {
  CHECK(mutual_information(table_of({{5, 0}, {0, 5}})) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("MI golden value for [[4,1],[1,4]]") {
  const ContingencyTable t = table_of({{4, 1}, {1, 4}});
  CHECK(std::abs(mutual_information(t) - kMiGolden) < 1e-12);
  // the golden value's independent route: 1 - H(0.8, 0.2)
  Eigen::Vector2d cond(0.8, 0.2);
  CHECK(std::abs((1.0 - entropy(cond)) - kMiGolden) < 1e-12);
}

TEST_CASE("MI equals the naive oracle on random tables") {
  std::mt19937_64 gen(5);
  for (int iter = 0; iter < 200; ++iter) {
    const ContingencyTable t = random_table(gen);
    CHECK(std::abs(mutual_information(t) - naive_mi(t.counts)) < 1e-12);
  }
}

TEST_CASE("MI is symmetric and bounded by the marginal entropies") {
  std::mt19937_64 gen(6);
  for (int iter = 0; iter < 200; ++iter) {
    const ContingencyTable t = random_table(gen);
    const double mi = mutual_information(t);
    CHECK(mi == mutual_information(transpose(t)));  // exact
    const double m = static_cast<double>(t.total);
    const double hr = entropy((t.counts.rowwise().sum().cast<double>() / m).eval());
    const double hc = entropy(
        (t.counts.colwise().sum().transpose().cast<double>() / m).eval());
    CHECK(mi >= 0.0);
    CHECK(mi <= std::min(hr, hc) + 1e-9);
  }
}

TEST_CASE("merging identical columns leaves MI unchanged") {
  std::mt19937_64 gen(8);
  for (int iter = 0; iter < 50; ++iter) {
    const ContingencyTable t = random_table(gen, 10);
    const Eigen::Index c = t.cols();
    // duplicate the last column, versus doubling it in place
    CountMatrix split(t.rows(), c + 1);
    split.leftCols(c) = t.counts;
    split.col(c) = t.counts.col(c - 1);
    CountMatrix merged = t.counts;
    merged.col(c - 1) *= 2;
    CHECK(std::abs(mi_from_counts(split) - mi_from_counts(merged)) < 1e-12);
  }
}

TEST_CASE("construction strips all-zero rows and columns and records it") {
  CountMatrix m(3, 3);
  m << 2, 0, 3,
       0, 0, 0,
       1, 0, 4;
  const auto t = make_table({"Masc", "Fem", "Neut"}, {"a", "b", "c"}, m);
  CHECK(t.rows() == 2);
  CHECK(t.cols() == 2);
  CHECK(t.stripped_rows == 1);
  CHECK(t.stripped_cols == 1);
  CHECK(t.row_labels == std::vector<std::string>{"Masc", "Neut"});
  CHECK(t.col_labels == std::vector<std::string>{"a", "c"});
  CHECK(t.total == 10);
}

TEST_CASE("construction rejects negative counts and dimension mismatches") {
  CountMatrix m(1, 2);
  m << 1, -1;
  CHECK_THROWS_AS(make_table({"r"}, {"a", "b"}, m), std::invalid_argument);
  CountMatrix ok(1, 2);
  ok << 1, 1;
  CHECK_THROWS_AS(make_table({"r", "s"}, {"a", "b"}, ok), std::invalid_argument);
}

TEST_CASE("statistical operations on an empty table throw") {
  const auto t = make_table({"r"}, {"a"}, CountMatrix::Zero(1, 1));
  CHECK(t.total == 0);
  CHECK_THROWS_AS(mutual_information(t), EmptyTable);
  CHECK_THROWS_AS(nmi(t, Normalizer::MinEntropy), EmptyTable);
  CHECK_THROWS_AS(nmi_report(t), EmptyTable);
}

TEST_CASE("NMI known values on the diagonal table") {
  const ContingencyTable t = table_of({{5, 0}, {0, 5}});
  CHECK(*nmi(t, Normalizer::MinEntropy) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*nmi(t, Normalizer::LogTotal) ==
        doctest::Approx(1.0 / std::log2(10.0)).epsilon(1e-12));
  const NmiReport report = nmi_report(t);
  CHECK(*report.value(Normalizer::MinEntropy) == doctest::Approx(1.0));
  CHECK(*report.value(Normalizer::GeomMeanEntropy) == doctest::Approx(1.0));
  CHECK(*report.value(Normalizer::ArithMeanEntropy) == doctest::Approx(1.0));
  CHECK(*report.value(Normalizer::MaxEntropy) == doctest::Approx(1.0));
  CHECK(report.h_row == doctest::Approx(1.0));
  CHECK(report.h_col == doctest::Approx(1.0));
}

TEST_CASE("every normalizer yields zero on an independent table") {
  const ContingencyTable t = table_of({{4, 4}, {1, 1}});
  for (const Normalizer n : kAllNormalizers) {
    CHECK(*nmi(t, n) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("golden report for [[4,1],[1,4]]: six values over known denominators") {
  const NmiReport r = nmi_report(table_of({{4, 1}, {1, 4}}));
  // both marginals are uniform over two values: H = 1 bit
  CHECK(*r.value(Normalizer::MinEntropy) == doctest::Approx(kMiGolden).epsilon(1e-12));
  CHECK(*r.value(Normalizer::GeomMeanEntropy) == doctest::Approx(kMiGolden).epsilon(1e-12));
  CHECK(*r.value(Normalizer::ArithMeanEntropy) == doctest::Approx(kMiGolden).epsilon(1e-12));
  CHECK(*r.value(Normalizer::MaxEntropy) == doctest::Approx(kMiGolden).epsilon(1e-12));
  CHECK(*r.value(Normalizer::MaxLogCardinality) == doctest::Approx(kMiGolden).epsilon(1e-12));
  CHECK(*r.value(Normalizer::LogTotal) ==
        doctest::Approx(kMiGolden / std::log2(10.0)).epsilon(1e-12));
}

TEST_CASE("single-gender table: entropy-based normalizers are undefined") {
  const ContingencyTable t = table_of({{3, 4}});
  CHECK(mutual_information(t) == doctest::Approx(0.0));
  CHECK(!nmi(t, Normalizer::MinEntropy).has_value());
  CHECK(!nmi(t, Normalizer::GeomMeanEntropy).has_value());
  // the column marginal still carries entropy
  CHECK(nmi(t, Normalizer::ArithMeanEntropy).has_value());
  CHECK(nmi(t, Normalizer::MaxEntropy).has_value());
  CHECK(nmi(t, Normalizer::MaxLogCardinality).has_value());
  CHECK(nmi(t, Normalizer::LogTotal).has_value());
}

TEST_CASE("defined NMI values lie in [0,1] and obey the denominator ordering") {
  std::mt19937_64 gen(9);
  for (int iter = 0; iter < 200; ++iter) {
    const NmiReport r = nmi_report(random_table(gen));
    for (const Normalizer n : kAllNormalizers) {
      if (const auto v = r.value(n)) {
        CHECK(*v >= 0.0);
        CHECK(*v <= 1.0);
      }
    }
    const auto min_h = r.value(Normalizer::MinEntropy);
    const auto geom = r.value(Normalizer::GeomMeanEntropy);
    const auto arith = r.value(Normalizer::ArithMeanEntropy);
    const auto max_h = r.value(Normalizer::MaxEntropy);
    if (min_h && geom && arith && max_h) {
      CHECK(*min_h >= *geom);
      CHECK(*geom >= *arith);
      CHECK(*arith >= *max_h);
    }
  }
}
