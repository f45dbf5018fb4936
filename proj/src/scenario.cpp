#include "bfclust/scenario.hpp"

#include <memory>
#include <random>
#include <string>
#include <utility>

#include "bfclust/error.hpp"

namespace bfclust {

namespace {

void validate(const ScenarioParams& p) {
  if (p.k < 1 || p.k > p.n) {
    throw InputError("scenario needs 1 <= k <= n (k=" + std::to_string(p.k) +
                     ", n=" + std::to_string(p.n) + ")");
  }
  if (p.frame_size < p.k) {
    throw InputError("frame size must be at least k");
  }
  if (!(p.sharpness >= 0.0 && p.sharpness <= 1.0)) {
    throw InputError("sharpness s must lie in [0,1]");
  }
  if (!(p.link >= 0.0 && p.link <= 1.0)) {
    throw InputError("link probability q must lie in [0,1]");
  }
}

}  // namespace

Scenario generate(const ScenarioParams& params, std::uint64_t seed) {
  validate(params);
  const std::size_t n = params.n;

  std::vector<std::string> atoms;
  for (std::size_t a = 0; a < params.frame_size; ++a) atoms.push_back("a" + std::to_string(a));
  auto frame = std::make_shared<const Frame>(std::move(atoms));

  // Fisher-Yates with plain modulo draws; std::shuffle's draw sequence is
  // implementation-defined.
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  std::vector<std::size_t> cluster_of(n);
  for (std::size_t pos = 0; pos < n; ++pos) cluster_of[order[pos]] = pos % params.k;

  Scenario sc;
  sc.params = params;
  sc.seed = seed;
  sc.truth = Partition::from_labels(cluster_of);
  sc.attraction = AttractionMatrix(n);

  const double s = params.sharpness;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<MassFunction::Entry> entries;
    entries.emplace_back(FocalSet{std::uint64_t{1} << cluster_of[i]}, s);
    entries.emplace_back(frame->theta(), 1.0 - s);
    sc.items.push_back({"e" + std::to_string(i), MassFunction::from_evidence(frame, std::move(entries))});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cluster_of[i] == cluster_of[j]) sc.attraction.set(i, j, params.link);
    }
  }
  return sc;
}

}  // namespace bfclust
