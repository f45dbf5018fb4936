#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bfclust/matrix.hpp"

namespace bfclust {

/// Largest cluster for which attracting support is computed exactly
/// (inclusion-exclusion over 2^size vertex subsets).
inline constexpr std::size_t kMaxAttractingCluster = 24;

/// Set partition of items 0..n-1 stored as a restricted growth string:
/// item 0 has label 0 and every new label is the smallest unused one, so
/// equal partitions have identical label vectors.
class Partition {
 public:
  Partition() = default;

  /// Accepts any labelling whose label set is exactly 0..r-1 and relabels it
  /// into canonical order. Throws InputError when labels leave a gap.
  static Partition from_labels(std::span<const std::size_t> labels);
  static Partition singletons(std::size_t n);
  static Partition single_cluster(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t cluster_count() const noexcept { return clusters_; }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }

  /// Members of each cluster in label order, members ascending.
  std::vector<std::vector<std::size_t>> clusters() const;

  bool operator==(const Partition&) const = default;

 private:
  explicit Partition(std::vector<std::size_t> canonical);

  std::vector<std::size_t> labels_;
  std::size_t clusters_ = 0;
};

/// Mass assignment over the metalevel frame {AdP, not AdP}, with the
/// conflict of an unnormalized combination kept on the empty set.
struct MetaBpa {
  double adp = 0.0;
  double nadp = 0.0;
  double theta = 1.0;
  double empty = 0.0;

  /// Simple support for "not an adequate partition".
  static MetaBpa conflicting(double nadp) { return {0.0, nadp, 1.0 - nadp, 0.0}; }
  /// Simple support for "adequate partition".
  static MetaBpa attracting(double adp) { return {adp, 0.0, 1.0 - adp, 0.0}; }

  double total() const noexcept { return adp + nadp + theta + empty; }
};

/// Dempster combination of two simple support functions for the same
/// proposition: 1 - (1 - internal)(1 - external).
double meta_neg(double internal, double external);

/// Applies meta_neg entrywise, folding external repelling evidence into the
/// internal conflicts.
ConflictMatrix merge_external_conflict(const ConflictMatrix& internal,
                                       const ConflictMatrix& external);

/// m(not AdP) for one cluster: 1 - prod over member pairs of (1 - c_ij).
double cluster_neg_mass(const ConflictMatrix& conflict, std::span<const std::size_t> cluster);

/// m(AdP) for one cluster: probability that independent attracting edges,
/// pair (i,j) present with probability p_ij, touch every member. Zero for
/// clusters of fewer than two items. Throws SizeLimitError above
/// kMaxAttractingCluster members.
double cluster_pos_mass(const AttractionMatrix& attraction, std::span<const std::size_t> cluster);

double partition_neg(const ConflictMatrix& conflict, const Partition& partition);
double partition_pos(const AttractionMatrix& attraction, const Partition& partition);

/// Closed-form combination of a partition-level attracting result with a
/// partition-level conflicting result. No normalization: the product of
/// AdP and not-AdP support stays on the empty set.
MetaBpa combine_partition_level(const MetaBpa& pos, const MetaBpa& neg);

}  // namespace bfclust
