#include "genmi/info_stats.hpp"

#include <algorithm>
#include <vector>

namespace genmi {

namespace {

// One plug-in cell term. Symmetric in (r, s) bit for bit, since IEEE
// multiplication is commutative.
inline double cell_term(std::int64_t c, double r, double s, double m) {
  if (c == 0) return 0.0;
  const double dc = static_cast<double>(c);
  return (dc / m) * std::log2((dc * m) / (r * s));
}

}  // namespace

double mi_from_counts(const Eigen::Ref<const CountMatrix>& counts,
                      std::span<const std::int64_t> row_sums,
                      std::span<const std::int64_t> col_sums,
                      std::int64_t total) {
  if (total < 1) throw EmptyTable();
  const double m = static_cast<double>(total);
  const Eigen::Index n_rows = counts.rows();
  const Eigen::Index n_cols = counts.cols();
  const auto row_of = [&](Eigen::Index i) {
    return static_cast<double>(row_sums[static_cast<std::size_t>(i)]);
  };
  const auto col_of = [&](Eigen::Index j) {
    return static_cast<double>(col_sums[static_cast<std::size_t>(j)]);
  };

  // The summation order is chosen to be invariant under transposition, so
  // MI(T) == MI(T^t) holds exactly: rectangular tables are walked with the
  // short side outermost, square tables cell-pair by cell-pair.
  double mi = 0.0;
  if (n_rows < n_cols) {
    for (Eigen::Index i = 0; i < n_rows; ++i) {
      for (Eigen::Index j = 0; j < n_cols; ++j) {
        mi += cell_term(counts(i, j), row_of(i), col_of(j), m);
      }
    }
  } else if (n_rows > n_cols) {
    for (Eigen::Index j = 0; j < n_cols; ++j) {
      for (Eigen::Index i = 0; i < n_rows; ++i) {
        mi += cell_term(counts(i, j), row_of(i), col_of(j), m);
      }
    }
  } else {
    for (Eigen::Index i = 0; i < n_rows; ++i) {
      mi += cell_term(counts(i, i), row_of(i), col_of(i), m);
    }
    for (Eigen::Index i = 0; i < n_rows; ++i) {
      for (Eigen::Index j = i + 1; j < n_cols; ++j) {
        // pair sum first: addition is commutative, so the pair value is
        // identical for the transposed walk
        mi += cell_term(counts(i, j), row_of(i), col_of(j), m) +
              cell_term(counts(j, i), row_of(j), col_of(i), m);
      }
    }
  }
  // Plug-in MI is non-negative; zero out floating-point residue.
  if (mi < 0.0 && mi > -1e-9) mi = 0.0;
  return mi;
}

double mi_from_counts(const Eigen::Ref<const CountMatrix>& counts) {
  std::vector<std::int64_t> row_sums(static_cast<std::size_t>(counts.rows()), 0);
  std::vector<std::int64_t> col_sums(static_cast<std::size_t>(counts.cols()), 0);
  std::int64_t total = 0;
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
      const std::int64_t c = counts(i, j);
      row_sums[static_cast<std::size_t>(i)] += c;
      col_sums[static_cast<std::size_t>(j)] += c;
      total += c;
    }
  }
  return mi_from_counts(counts, row_sums, col_sums, total);
}

double mutual_information(const ContingencyTable& table) {
  if (table.total < 1) throw EmptyTable();
  return mi_from_counts(table.counts);
}

std::string_view to_string(Normalizer n) {
  switch (n) {
    case Normalizer::MinEntropy: return "min_entropy";
    case Normalizer::GeomMeanEntropy: return "geom_mean_entropy";
    case Normalizer::ArithMeanEntropy: return "arith_mean_entropy";
    case Normalizer::MaxEntropy: return "max_entropy";
    case Normalizer::MaxLogCardinality: return "max_log_cardinality";
    case Normalizer::LogTotal: return "log_total_pairs";
  }
  return "?";
}

namespace {

double marginal_entropy(const Eigen::VectorXd& sums, double total) {
  return entropy((sums / total).eval());
}

std::optional<double> normalized(double mi, double denom) {
  if (denom <= 0.0) return std::nullopt;
  // Clamp floating-point residue at the boundaries; every defined variant
  // lies in [0,1] because each denominator bounds the MI from above.
  return std::clamp(mi / denom, 0.0, 1.0);
}

double denominator(const ContingencyTable& t, Normalizer n, double h_row,
                   double h_col) {
  switch (n) {
    case Normalizer::MinEntropy: return std::min(h_row, h_col);
    case Normalizer::GeomMeanEntropy: return std::sqrt(h_row * h_col);
    case Normalizer::ArithMeanEntropy: return (h_row + h_col) / 2.0;
    case Normalizer::MaxEntropy: return std::max(h_row, h_col);
    case Normalizer::MaxLogCardinality:
      return std::max(std::log2(static_cast<double>(t.rows())),
                      std::log2(static_cast<double>(t.cols())));
    case Normalizer::LogTotal: return std::log2(static_cast<double>(t.total));
  }
  return 0.0;
}

}  // namespace

std::optional<double> nmi(const ContingencyTable& table, Normalizer n) {
  if (table.total < 1) throw EmptyTable();
  const double mi = mutual_information(table);
  const double m = static_cast<double>(table.total);
  const double h_row =
      marginal_entropy(table.counts.rowwise().sum().cast<double>(), m);
  const double h_col =
      marginal_entropy(table.counts.colwise().sum().transpose().cast<double>(), m);
  return normalized(mi, denominator(table, n, h_row, h_col));
}

NmiReport nmi_report(const ContingencyTable& table) {
  if (table.total < 1) throw EmptyTable();
  NmiReport report;
  report.mi = mutual_information(table);
  const double m = static_cast<double>(table.total);
  report.h_row =
      marginal_entropy(table.counts.rowwise().sum().cast<double>(), m);
  report.h_col =
      marginal_entropy(table.counts.colwise().sum().transpose().cast<double>(), m);
  for (const Normalizer n : kAllNormalizers) {
    report.values[static_cast<std::size_t>(n)] =
        normalized(report.mi, denominator(table, n, report.h_row, report.h_col));
  }
  return report;
}

}  // namespace genmi
