#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace genmi {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Gender x partner count matrix. Construction strips all-zero rows and
// columns (recording how many were stripped), so every surviving label has
// at least one observation. `total` is the number of non-unique pairs.
struct ContingencyTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  CountMatrix counts;
  std::int64_t total = 0;
  std::size_t stripped_rows = 0;
  std::size_t stripped_cols = 0;

  Eigen::Index rows() const { return counts.rows(); }
  Eigen::Index cols() const { return counts.cols(); }
};

// Validates label/matrix dimensions and non-negativity, strips zero rows and
// columns, and computes the total.
ContingencyTable make_table(std::vector<std::string> row_labels,
                            std::vector<std::string> col_labels,
                            CountMatrix counts);

ContingencyTable transpose(const ContingencyTable& t);

}  // namespace genmi
