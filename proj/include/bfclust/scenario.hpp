#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bfclust/evidence.hpp"
#include "bfclust/matrix.hpp"
#include "bfclust/metalevel.hpp"

namespace bfclust {

struct ScenarioParams {
  std::size_t n = 8;           ///< items
  std::size_t k = 2;           ///< ground-truth clusters
  std::size_t frame_size = 2;  ///< atoms; must be >= k
  double sharpness = 0.9;      ///< s: mass on the cluster's atom
  double link = 0.8;           ///< q: attraction between same-cluster items
};

/// Synthetic clustering problem with a known answer.
struct Scenario {
  ScenarioParams params;
  std::uint64_t seed = 0;
  std::vector<EvidenceItem> items;
  AttractionMatrix attraction;
  Partition truth;
};

/// Items are dealt round-robin into k clusters after a seeded shuffle.
/// Cluster a owns atom a; each item puts mass s on its cluster's atom and
/// 1 - s on the frame, so items of different clusters conflict by s^2 and
/// items of the same cluster not at all. Same-cluster pairs attract with q.
Scenario generate(const ScenarioParams& params, std::uint64_t seed);

}  // namespace bfclust
