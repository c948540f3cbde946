#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

#include "genmi/contingency.hpp"

namespace genmi {

class NotNormalized : public std::domain_error {
 public:
  explicit NotNormalized(const std::string& what) : std::domain_error(what) {}
};

class EmptyTable : public std::domain_error {
 public:
  EmptyTable() : std::domain_error("statistical operation on an empty table") {}
};

// Shannon entropy in bits of a probability vector (any 1-D Eigen expression).
// Entries must be non-negative and sum to 1 within 1e-9; 0 log 0 == 0.
template <typename Derived>
double entropy(const Eigen::DenseBase<Derived>& probs) {
  if (probs.rows() != 1 && probs.cols() != 1) {
    throw std::invalid_argument("entropy: expected a probability vector");
  }
  double sum = 0.0;
  double h = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    const double p = static_cast<double>(probs.derived().coeff(i));
    if (p < 0.0) throw NotNormalized("entropy: negative probability");
    sum += p;
    if (p > 0.0) h -= p * std::log2(p);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw NotNormalized("entropy: probabilities sum to " + std::to_string(sum));
  }
  return h;
}

// Plug-in mutual information in bits of a count matrix, with marginals
// supplied by the caller. Zero cells contribute exactly 0. This is the one
// kernel used for both observed tables and permuted re-aggregations, so the
// two paths agree bit for bit on identical counts.
double mi_from_counts(const Eigen::Ref<const CountMatrix>& counts,
                      std::span<const std::int64_t> row_sums,
                      std::span<const std::int64_t> col_sums,
                      std::int64_t total);

double mi_from_counts(const Eigen::Ref<const CountMatrix>& counts);

// MI of a contingency table; linear in the number of cells.
double mutual_information(const ContingencyTable& table);

// The six normalizers that map MI into [0,1].
enum class Normalizer {
  MinEntropy,         // min{H(rows), H(cols)}
  GeomMeanEntropy,    // sqrt(H(rows) H(cols))
  ArithMeanEntropy,   // (H(rows) + H(cols)) / 2
  MaxEntropy,         // max{H(rows), H(cols)}
  MaxLogCardinality,  // max{log2 |rows|, log2 |cols|}
  LogTotal            // log2 M
};

inline constexpr std::array<Normalizer, 6> kAllNormalizers = {
    Normalizer::MinEntropy,      Normalizer::GeomMeanEntropy,
    Normalizer::ArithMeanEntropy, Normalizer::MaxEntropy,
    Normalizer::MaxLogCardinality, Normalizer::LogTotal};

std::string_view to_string(Normalizer n);

// Normalized MI under one normalizer; nullopt when the denominator is 0
// (the value is undefined, which is reported as such rather than as 0).
std::optional<double> nmi(const ContingencyTable& table, Normalizer n);

struct NmiReport {
  double mi = 0.0;     // bits
  double h_row = 0.0;  // marginal entropy of the row variable, bits
  double h_col = 0.0;
  std::array<std::optional<double>, 6> values;  // indexed by Normalizer order

  std::optional<double> value(Normalizer n) const {
    return values[static_cast<std::size_t>(n)];
  }
};

NmiReport nmi_report(const ContingencyTable& table);

}  // namespace genmi
