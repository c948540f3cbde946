#include "genmi/contingency.hpp"

#include <stdexcept>

namespace genmi {

ContingencyTable make_table(std::vector<std::string> row_labels,
                            std::vector<std::string> col_labels,
                            CountMatrix counts) {
  if (counts.rows() != static_cast<Eigen::Index>(row_labels.size()) ||
      counts.cols() != static_cast<Eigen::Index>(col_labels.size())) {
    throw std::invalid_argument("make_table: label/matrix dimension mismatch");
  }
  if ((counts.array() < 0).any()) {
    throw std::invalid_argument("make_table: negative count");
  }

  std::vector<Eigen::Index> keep_rows, keep_cols;
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    if (counts.row(i).sum() > 0) keep_rows.push_back(i);
  }
  for (Eigen::Index j = 0; j < counts.cols(); ++j) {
    if (counts.col(j).sum() > 0) keep_cols.push_back(j);
  }

  ContingencyTable t;
  t.stripped_rows = row_labels.size() - keep_rows.size();
  t.stripped_cols = col_labels.size() - keep_cols.size();
  if (t.stripped_rows == 0 && t.stripped_cols == 0) {
    t.row_labels = std::move(row_labels);
    t.col_labels = std::move(col_labels);
    t.counts = std::move(counts);
  } else {
    t.counts.resize(static_cast<Eigen::Index>(keep_rows.size()),
                    static_cast<Eigen::Index>(keep_cols.size()));
    for (std::size_t i = 0; i < keep_rows.size(); ++i) {
      for (std::size_t j = 0; j < keep_cols.size(); ++j) {
        t.counts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            counts(keep_rows[i], keep_cols[j]);
      }
    }
    for (const Eigen::Index i : keep_rows) {
      t.row_labels.push_back(std::move(row_labels[static_cast<std::size_t>(i)]));
    }
    for (const Eigen::Index j : keep_cols) {
      t.col_labels.push_back(std::move(col_labels[static_cast<std::size_t>(j)]));
    }
  }
  t.total = t.counts.sum();
  return t;
}

ContingencyTable transpose(const ContingencyTable& t) {
  ContingencyTable out;
  out.row_labels = t.col_labels;
  out.col_labels = t.row_labels;
  out.counts = t.counts.transpose();
  out.total = t.total;
  return out;
}

}  // namespace genmi
