#pragma once

#include <cstddef>
#include <vector>

namespace bfclust {

/// Symmetric n x n matrix of pairwise degrees in [0,1] with a zero diagonal.
///
/// The tag parameter keeps conflict and attraction matrices distinct types
/// so they cannot be swapped at call sites.
template <class Tag>
class PairwiseMatrix {
 public:
  PairwiseMatrix() = default;
  explicit PairwiseMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  /// Validates and copies a dense row-major matrix. Rejects non-square,
  /// asymmetric (beyond 1e-12), non-zero diagonal and out-of-range input.
  static PairwiseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }

  /// Sets both (i,j) and (j,i). Throws InputError on i == j, out-of-range
  /// indices or a value outside [0,1].
  void set(std::size_t i, std::size_t j, double value);

  bool all_zero() const noexcept;

  std::vector<std::vector<double>> rows() const;

  bool operator==(const PairwiseMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

struct ConflictTag {};
struct AttractionTag {};

/// c_ij: conflict between items i and j (repelling metalevel evidence).
using ConflictMatrix = PairwiseMatrix<ConflictTag>;
/// p_ij: externally supplied degree of attraction between items i and j.
using AttractionMatrix = PairwiseMatrix<AttractionTag>;

extern template class PairwiseMatrix<ConflictTag>;
extern template class PairwiseMatrix<AttractionTag>;

}  // namespace bfclust
