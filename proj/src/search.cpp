#include "bfclust/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "bfclust/error.hpp"

namespace bfclust {

namespace {

// Products over clusters, accumulated in cluster order. Every evaluation
// path goes through this so identical partitions give identical bits.
struct PartitionTotals {
  double keep = 1.0;     // prod (1 - neg_a)
  double support = 1.0;  // prod pos_a

  void add(double neg, double pos) {
    keep *= 1.0 - neg;
    support *= pos;
  }

  double neg_nadp() const { return 1.0 - keep; }

  MetaBpa combined() const {
    return combine_partition_level(MetaBpa::attracting(support), MetaBpa::conflicting(neg_nadp()));
  }
};

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InputError("alpha " + std::to_string(alpha) + " outside [0,1]");
  }
}

void check_matrices(const ConflictMatrix& conflict, const AttractionMatrix& attraction) {
  if (conflict.size() != attraction.size()) {
    throw InputError("conflict and attraction matrices differ in size");
  }
  if (conflict.size() == 0) {
    throw InputError("problem has no items");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in [0, bound) by rejection; independent of the standard library's
// distribution implementations so runs reproduce across toolchains.
std::size_t uniform_below(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

}  // namespace

double mcf_value(double alpha, const MetaBpa& combined) {
  return alpha * (1.0 - combined.adp) + (1.0 - alpha) * combined.nadp;
}

McfReport evaluate_partition(const ConflictMatrix& conflict, const AttractionMatrix& attraction,
                             double alpha, const Partition& partition) {
  check_alpha(alpha);
  check_matrices(conflict, attraction);
  if (partition.size() != conflict.size()) {
    throw InputError("partition has " + std::to_string(partition.size()) + " items, matrices " +
                     std::to_string(conflict.size()));
  }
  McfReport r;
  r.partition = partition;
  r.alpha = alpha;
  PartitionTotals totals;
  for (auto& members : partition.clusters()) {
    ClusterTerm term;
    term.neg = cluster_neg_mass(conflict, members);
    term.pos = cluster_pos_mass(attraction, members);
    term.members = std::move(members);
    totals.add(term.neg, term.pos);
    r.clusters.push_back(std::move(term));
  }
  r.pos_adp = totals.support;
  r.neg_nadp = totals.neg_nadp();
  r.combined = totals.combined();
  r.mcf = mcf_value(alpha, r.combined);
  return r;
}

// ---------------------------------------------------------------------------
// Enumeration

PartitionEnumerator::PartitionEnumerator(std::size_t n) : labels_(n, 0), prefix_max_(n, 0) {
  if (n == 0) throw InputError("cannot enumerate partitions of zero items");
}

bool PartitionEnumerator::next() {
  const std::size_t n = labels_.size();
  for (std::size_t i = n; i-- > 1;) {
    if (labels_[i] <= prefix_max_[i - 1]) {
      ++labels_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], labels_[i]);
      for (std::size_t j = i + 1; j < n; ++j) {
        labels_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      return true;
    }
  }
  return false;
}

std::vector<Partition> enumerate_partitions(std::size_t n, std::size_t max_items) {
  if (n > max_items) {
    throw SizeLimitError("enumerating partitions of " + std::to_string(n) +
                         " items exceeds the cap of " + std::to_string(max_items));
  }
  std::vector<Partition> out;
  PartitionEnumerator e(n);
  do {
    out.push_back(e.current());
  } while (e.next());
  return out;
}

// ---------------------------------------------------------------------------
// Exact search

McfReport exact_search(const ConflictMatrix& conflict, const AttractionMatrix& attraction,
                       double alpha, const SearchConfig& cfg) {
  check_alpha(alpha);
  check_matrices(conflict, attraction);
  const std::size_t n = conflict.size();
  if (n > cfg.max_items_exact || n > kMaxAttractingCluster) {
    throw SizeLimitError("exact search over " + std::to_string(n) +
                         " items exceeds the cap of " + std::to_string(cfg.max_items_exact) +
                         "; use local search");
  }

  // Cluster terms memoized by member mask.
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<double> neg(subsets, -1.0);
  std::vector<double> pos(subsets, -1.0);
  std::vector<std::size_t> members;
  auto term = [&](std::uint32_t mask) {
    if (neg[mask] < 0.0) {
      members.clear();
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1U) members.push_back(i);
      }
      neg[mask] = cluster_neg_mass(conflict, members);
      pos[mask] = cluster_pos_mass(attraction, members);
    }
  };

  std::vector<std::uint32_t> masks(n);
  std::vector<std::size_t> best_labels;
  double best = std::numeric_limits<double>::infinity();
  PartitionEnumerator e(n);
  do {
    const auto& labels = e.labels();
    std::fill(masks.begin(), masks.end(), 0U);
    std::size_t clusters = 0;
    for (std::size_t i = 0; i < n; ++i) {
      masks[labels[i]] |= std::uint32_t{1} << i;
      clusters = std::max(clusters, labels[i] + 1);
    }
    PartitionTotals totals;
    for (std::size_t a = 0; a < clusters; ++a) {
      term(masks[a]);
      totals.add(neg[masks[a]], pos[masks[a]]);
    }
    const double value = mcf_value(alpha, totals.combined());
    if (value < best) {
      best = value;
      best_labels = labels;
    }
  } while (e.next());

  return evaluate_partition(conflict, attraction, alpha, Partition::from_labels(best_labels));
}

// ---------------------------------------------------------------------------
// Local search

namespace {

struct Cluster {
  std::vector<std::size_t> members;  // ascending
  double neg = 0.0;
  double pos = 0.0;
};

class HillClimber {
 public:
  HillClimber(const ConflictMatrix& conflict, const AttractionMatrix& attraction, double alpha)
      : conflict_(conflict), attraction_(attraction), alpha_(alpha) {}

  Partition run(std::vector<std::size_t> labels) {
    build(labels);
    double current = objective(clusters_);
    while (true) {
      double best = current;
      std::size_t best_item = 0;
      std::size_t best_target = 0;
      bool found = false;
      for (std::size_t item = 0; item < owner_.size(); ++item) {
        const std::size_t from = owner_[item];
        const bool alone = clusters_[from].members.size() == 1;
        // target == clusters_.size() opens a new singleton
        for (std::size_t target = 0; target <= clusters_.size(); ++target) {
          if (target == from || (alone && target == clusters_.size())) continue;
          const double value = move_value(item, from, target);
          if (value < best - 1e-12) {
            best = value;
            best_item = item;
            best_target = target;
            found = true;
          }
        }
      }
      if (!found) break;
      apply(best_item, owner_[best_item], best_target);
      current = objective(clusters_);
    }
    std::vector<std::size_t> out(owner_.size());
    for (std::size_t a = 0; a < clusters_.size(); ++a) {
      for (std::size_t i : clusters_[a].members) out[i] = a;
    }
    return Partition::from_labels(out);
  }

 private:
  Cluster make(std::vector<std::size_t> members) const {
    Cluster c;
    c.neg = cluster_neg_mass(conflict_, members);
    c.pos = cluster_pos_mass(attraction_, members);
    c.members = std::move(members);
    return c;
  }

  void build(const std::vector<std::size_t>& labels) {
    const Partition p = Partition::from_labels(labels);
    clusters_.clear();
    for (auto& m : p.clusters()) clusters_.push_back(make(std::move(m)));
    owner_ = p.labels();
  }

  double objective(const std::vector<Cluster>& clusters) const {
    PartitionTotals totals;
    for (const auto& c : clusters) totals.add(c.neg, c.pos);
    return mcf_value(alpha_, totals.combined());
  }

  static std::vector<std::size_t> without(const std::vector<std::size_t>& v, std::size_t item) {
    std::vector<std::size_t> out;
    for (std::size_t x : v) {
      if (x != item) out.push_back(x);
    }
    return out;
  }

  static std::vector<std::size_t> with(const std::vector<std::size_t>& v, std::size_t item) {
    std::vector<std::size_t> out(v);
    out.insert(std::lower_bound(out.begin(), out.end(), item), item);
    return out;
  }

  double move_value(std::size_t item, std::size_t from, std::size_t target) const {
    PartitionTotals totals;
    for (std::size_t a = 0; a < clusters_.size(); ++a) {
      if (a == from) {
        if (clusters_[a].members.size() > 1) {
          const Cluster c = make(without(clusters_[a].members, item));
          totals.add(c.neg, c.pos);
        }
      } else if (a == target) {
        const Cluster c = make(with(clusters_[a].members, item));
        totals.add(c.neg, c.pos);
      } else {
        totals.add(clusters_[a].neg, clusters_[a].pos);
      }
    }
    if (target == clusters_.size()) {
      const Cluster c = make({item});
      totals.add(c.neg, c.pos);
    }
    return mcf_value(alpha_, totals.combined());
  }

  void apply(std::size_t item, std::size_t from, std::size_t target) {
    if (target == clusters_.size()) {
      clusters_.push_back(make({item}));
    } else {
      clusters_[target] = make(with(clusters_[target].members, item));
    }
    owner_[item] = target;
    if (clusters_[from].members.size() == 1) {
      clusters_.erase(clusters_.begin() + static_cast<std::ptrdiff_t>(from));
      for (auto& o : owner_) {
        if (o > from) --o;
      }
    } else {
      clusters_[from] = make(without(clusters_[from].members, item));
    }
  }

  const ConflictMatrix& conflict_;
  const AttractionMatrix& attraction_;
  double alpha_;
  std::vector<Cluster> clusters_;
  std::vector<std::size_t> owner_;
};

}  // namespace

McfReport local_search(const ConflictMatrix& conflict, const AttractionMatrix& attraction,
                       double alpha, const SearchConfig& cfg) {
  check_alpha(alpha);
  check_matrices(conflict, attraction);
  if (cfg.restarts == 0) throw InputError("restarts must be at least 1");
  const std::size_t n = conflict.size();

  std::optional<McfReport> best;
  HillClimber climber(conflict, attraction, alpha);
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(r)));
    // Random labels in [0, n), compacted by first appearance.
    std::vector<std::size_t> raw(n);
    for (auto& l : raw) l = uniform_below(rng, n);
    std::vector<std::size_t> remap(n, n);
    std::size_t next = 0;
    for (auto& l : raw) {
      if (remap[l] == n) remap[l] = next++;
      l = remap[l];
    }
    McfReport report = evaluate_partition(conflict, attraction, alpha, climber.run(std::move(raw)));
    if (!best || report.mcf < best->mcf) best = std::move(report);
  }
  return *best;
}

McfReport search(const ConflictMatrix& conflict, const AttractionMatrix& attraction, double alpha,
                 const SearchConfig& cfg) {
  return cfg.method == SearchMethod::exact ? exact_search(conflict, attraction, alpha, cfg)
                                           : local_search(conflict, attraction, alpha, cfg);
}

// ---------------------------------------------------------------------------
// Subset-conflict objectives

double legacy_mcf(std::span<const double> subset_conflicts) {
  double keep = 1.0;
  for (double c : subset_conflicts) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw InputError("subset conflict " + std::to_string(c) + " outside [0,1]");
    }
    keep *= 1.0 - c;
  }
  return 1.0 - keep;
}

double logsum_objective(const ConflictMatrix& conflict, const Partition& partition) {
  if (partition.size() != conflict.size()) {
    throw InputError("partition size does not match conflict matrix");
  }
  double total = 0.0;
  for (const auto& members : partition.clusters()) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const double c = conflict(members[a], members[b]);
        if (c >= 1.0) return std::numeric_limits<double>::infinity();
        total -= std::log1p(-c);
      }
    }
  }
  return total;
}

}  // namespace bfclust
