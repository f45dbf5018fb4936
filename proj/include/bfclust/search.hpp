#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "bfclust/matrix.hpp"
#include "bfclust/metalevel.hpp"

namespace bfclust {

/// Cluster-level terms of one cluster of an evaluated partition.
struct ClusterTerm {
  std::vector<std::size_t> members;
  double neg = 0.0;  ///< m(not AdP) of the cluster
  double pos = 0.0;  ///< m(AdP) of the cluster
};

/// Metaconflict objective of one partition with its full breakdown.
struct McfReport {
  Partition partition;
  double alpha = 0.5;
  double pos_adp = 0.0;   ///< partition-level attracting support
  double neg_nadp = 0.0;  ///< partition-level conflicting support
  MetaBpa combined;
  double mcf = 0.0;
  std::vector<ClusterTerm> clusters;
};

enum class SearchMethod { exact, local };

struct SearchConfig {
  SearchMethod method = SearchMethod::exact;
  std::uint64_t seed = 0;
  std::size_t restarts = 20;
  std::size_t max_items_exact = 11;
  std::optional<double> alpha_override;
};

/// alpha * (1 - m(AdP)) + (1 - alpha) * m(not AdP).
double mcf_value(double alpha, const MetaBpa& combined);

McfReport evaluate_partition(const ConflictMatrix& conflict, const AttractionMatrix& attraction,
                             double alpha, const Partition& partition);

/// Walks every set partition of n items once, in lexicographic order of
/// restricted growth strings, starting with the single-cluster partition.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(std::size_t n);

  const std::vector<std::size_t>& labels() const noexcept { return labels_; }
  Partition current() const { return Partition::from_labels(labels_); }
  /// Advances; returns false once the all-singletons partition has passed.
  bool next();

 private:
  std::vector<std::size_t> labels_;
  std::vector<std::size_t> prefix_max_;  // max label among items 0..i
};

/// Every partition of n items; throws SizeLimitError above max_items.
std::vector<Partition> enumerate_partitions(std::size_t n, std::size_t max_items = 11);

/// Minimum over all partitions. Ties go to the earliest partition in
/// enumeration order. Throws SizeLimitError when n > cfg.max_items_exact.
McfReport exact_search(const ConflictMatrix& conflict, const AttractionMatrix& attraction,
                       double alpha, const SearchConfig& cfg);

/// Restarted steepest-descent over single-item relocations (to another
/// cluster or to a fresh singleton). Restart r uses a generator seeded from
/// (cfg.seed, r), so results depend only on seed and restart count.
McfReport local_search(const ConflictMatrix& conflict, const AttractionMatrix& attraction,
                       double alpha, const SearchConfig& cfg);

/// Runs exact_search or local_search per cfg.method.
McfReport search(const ConflictMatrix& conflict, const AttractionMatrix& attraction, double alpha,
                 const SearchConfig& cfg);

/// Subset-conflict metaconflict: 1 - prod (1 - c_i); 0 for an empty list.
double legacy_mcf(std::span<const double> subset_conflicts);

/// Sum over intra-cluster pairs of -ln(1 - c). Infinity when a pair has c = 1.
double logsum_objective(const ConflictMatrix& conflict, const Partition& partition);

}  // namespace bfclust
