#include "bfclust/metalevel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "bfclust/error.hpp"

namespace bfclust {

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<std::size_t> canonical) : labels_(std::move(canonical)) {
  for (std::size_t l : labels_) clusters_ = std::max(clusters_, l + 1);
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
  const std::size_t n = labels.size();
  std::vector<bool> used(n, false);
  for (std::size_t l : labels) {
    if (l >= n) {
      throw InputError("partition label " + std::to_string(l) + " leaves a gap (" +
                       std::to_string(n) + " items)");
    }
    used[l] = true;
  }
  const auto clusters = static_cast<std::size_t>(std::count(used.begin(), used.end(), true));
  for (std::size_t l = 0; l < clusters; ++l) {
    if (!used[l]) {
      throw InputError("partition labels are not contiguous: label " + std::to_string(l) +
                       " is unused");
    }
  }
  std::vector<std::size_t> remap(n, n);
  std::vector<std::size_t> canonical(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (remap[labels[i]] == n) remap[labels[i]] = next++;
    canonical[i] = remap[labels[i]];
  }
  return Partition(std::move(canonical));
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i;
  return Partition(std::move(labels));
}

Partition Partition::single_cluster(std::size_t n) {
  return Partition(std::vector<std::size_t>(n, 0));
}

std::vector<std::vector<std::size_t>> Partition::clusters() const {
  std::vector<std::vector<std::size_t>> out(clusters_);
  for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Evidence and cluster level

namespace {

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InputError(std::string(what) + " " + std::to_string(v) + " outside [0,1]");
  }
}

void check_cluster(std::size_t n, std::span<const std::size_t> cluster) {
  std::vector<bool> seen(n, false);
  for (std::size_t i : cluster) {
    if (i >= n) {
      throw InputError("cluster member " + std::to_string(i) + " out of range for " +
                       std::to_string(n) + " items");
    }
    if (seen[i]) {
      throw InputError("cluster member " + std::to_string(i) + " listed twice");
    }
    seen[i] = true;
  }
}

template <class Matrix>
void check_sizes(const Matrix& m, const Partition& partition) {
  if (m.size() != partition.size()) {
    throw InputError("matrix has " + std::to_string(m.size()) + " items but partition has " +
                     std::to_string(partition.size()));
  }
}

}  // namespace

double meta_neg(double internal, double external) {
  check_unit(internal, "internal conflict");
  check_unit(external, "external conflict");
  return 1.0 - (1.0 - internal) * (1.0 - external);
}

ConflictMatrix merge_external_conflict(const ConflictMatrix& internal,
                                       const ConflictMatrix& external) {
  if (internal.size() != external.size()) {
    throw InputError("external conflict matrix size does not match item count");
  }
  ConflictMatrix merged(internal.size());
  for (std::size_t i = 0; i < internal.size(); ++i) {
    for (std::size_t j = i + 1; j < internal.size(); ++j) {
      merged.set(i, j, meta_neg(internal(i, j), external(i, j)));
    }
  }
  return merged;
}

double cluster_neg_mass(const ConflictMatrix& conflict, std::span<const std::size_t> cluster) {
  check_cluster(conflict.size(), cluster);
  double keep = 1.0;
  for (std::size_t a = 0; a < cluster.size(); ++a) {
    for (std::size_t b = a + 1; b < cluster.size(); ++b) {
      keep *= 1.0 - conflict(cluster[a], cluster[b]);
    }
  }
  return 1.0 - keep;
}

namespace {

// Inclusion-exclusion over vertex subsets S of the cluster:
//   Pr(all covered) = sum_S (-1)^|S| prod_{edges meeting S} (1 - p_e).
// Members are decided in order; edge (u,t) with u < t is settled when t is
// decided, since only then is it known whether it meets S.
class CoverageSum {
 public:
  explicit CoverageSum(std::vector<std::vector<double>> absent) : absent_(std::move(absent)) {}

  double run() {
    total_ = 0.0;
    visit(0, 0, 1.0, false);
    return total_;
  }

 private:
  void visit(std::size_t t, std::uint32_t in_s, double product, bool odd) {
    if (t == absent_.size()) {
      total_ += odd ? -product : product;
      return;
    }
    double with_t = product;
    double without_t = product;
    for (std::size_t u = 0; u < t; ++u) {
      with_t *= absent_[t][u];
      if (in_s >> u & 1U) without_t *= absent_[t][u];
    }
    visit(t + 1, in_s, without_t, odd);
    visit(t + 1, in_s | (std::uint32_t{1} << t), with_t, !odd);
  }

  std::vector<std::vector<double>> absent_;
  double total_ = 0.0;
};

}  // namespace

double cluster_pos_mass(const AttractionMatrix& attraction, std::span<const std::size_t> cluster) {
  check_cluster(attraction.size(), cluster);
  const std::size_t k = cluster.size();
  if (k < 2) return 0.0;
  if (k > kMaxAttractingCluster) {
    throw SizeLimitError("attracting support is exact only for clusters of at most " +
                         std::to_string(kMaxAttractingCluster) + " items; got " +
                         std::to_string(k));
  }
  std::vector<std::vector<double>> absent(k);
  for (std::size_t t = 0; t < k; ++t) {
    absent[t].resize(t);
    for (std::size_t u = 0; u < t; ++u) absent[t][u] = 1.0 - attraction(cluster[t], cluster[u]);
  }
  const double mass = CoverageSum(std::move(absent)).run();
  return std::clamp(mass, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Partition level

double partition_neg(const ConflictMatrix& conflict, const Partition& partition) {
  check_sizes(conflict, partition);
  double keep = 1.0;
  for (const auto& cluster : partition.clusters()) {
    keep *= 1.0 - cluster_neg_mass(conflict, cluster);
  }
  return 1.0 - keep;
}

double partition_pos(const AttractionMatrix& attraction, const Partition& partition) {
  check_sizes(attraction, partition);
  double support = 1.0;
  for (const auto& cluster : partition.clusters()) {
    support *= cluster_pos_mass(attraction, cluster);
  }
  return support;
}

MetaBpa combine_partition_level(const MetaBpa& pos, const MetaBpa& neg) {
  constexpr double kTol = 1e-9;
  if (pos.nadp != 0.0 || pos.empty != 0.0 || std::abs(pos.total() - 1.0) > kTol) {
    throw InputError("attracting operand must be a simple support function for AdP");
  }
  if (neg.adp != 0.0 || neg.empty != 0.0 || std::abs(neg.total() - 1.0) > kTol) {
    throw InputError("conflicting operand must be a simple support function for not-AdP");
  }
  return {pos.adp * neg.theta, pos.theta * neg.nadp, pos.theta * neg.theta, pos.adp * neg.nadp};
}

}  // namespace bfclust
