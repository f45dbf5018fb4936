#include "bfclust/weighting.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bfclust/error.hpp"

namespace bfclust {

namespace {

double plogp(double m) { return m > 0.0 ? m * std::log2(m) : 0.0; }

}  // namespace

Uncertainty neg_entropy(const ConflictMatrix& conflict) {
  const std::size_t n = conflict.size();
  Uncertainty u;
  // count[k] = Pr(exactly k pairs carry their conflict focal)
  std::vector<double> count{1.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double c = conflict(i, j);
      u.g -= plogp(c) + plogp(1.0 - c);
      if (c == 0.0) continue;
      count.push_back(0.0);
      for (std::size_t k = count.size() - 1; k > 0; --k) {
        count[k] = count[k] * (1.0 - c) + count[k - 1] * c;
      }
      count[0] *= 1.0 - c;
    }
  }
  for (std::size_t k = 2; k < count.size(); ++k) {
    u.i += count[k] * std::log2(static_cast<double>(k));
  }
  u.h = u.g + u.i;
  return u;
}

std::vector<double> pooled_coverage_masses(const AttractionMatrix& attraction) {
  const std::size_t n = attraction.size();
  if (n > kMaxPooledAttracting) {
    throw SizeLimitError("pooled attracting evidence is exact only for at most " +
                         std::to_string(kMaxPooledAttracting) + " items; got " +
                         std::to_string(n));
  }
  const std::size_t subsets = std::size_t{1} << n;
  const auto full = static_cast<std::uint32_t>(subsets - 1);

  // table[S] = prod over pairs meeting S of (1 - p), built by adding the
  // highest member v of S to S' = S \ {v}: the new pairs are (v, w), w not in S'.
  std::vector<double> table(subsets);
  table[0] = 1.0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    const int v = 31 - std::countl_zero(s);
    const std::uint32_t rest = s & ~(std::uint32_t{1} << v);
    double product = table[rest];
    for (std::size_t w = 0; w < n; ++w) {
      if (static_cast<int>(w) != v && !(rest >> w & 1U)) product *= 1.0 - attraction(v, w);
    }
    table[s] = product;
  }
  // Pr(coverage within S): every pair meeting the complement of S is absent.
  for (std::uint32_t s = 0; s <= full; ++s) {
    if (s < (full ^ s)) std::swap(table[s], table[full ^ s]);
  }
  // Moebius inversion over the subset lattice gives Pr(coverage exactly J).
  for (std::size_t bit = 0; bit < n; ++bit) {
    const std::uint32_t b = std::uint32_t{1} << bit;
    for (std::uint32_t s = 0; s <= full; ++s) {
      if (s & b) table[s] -= table[s ^ b];
    }
  }
  for (std::uint32_t s = 0; s <= full; ++s) {
    // An edge touches two items, so single-item coverage is impossible;
    // clear the rounding residue there and below zero.
    if (std::popcount(s) == 1 || table[s] < 0.0) table[s] = 0.0;
  }
  return table;
}

Uncertainty pos_entropy(const AttractionMatrix& attraction) {
  const std::size_t n = attraction.size();
  if (n > kMaxPooledAttracting) {
    throw SizeLimitError("pooled attracting entropy is exact only for at most " +
                         std::to_string(kMaxPooledAttracting) + " items; got " +
                         std::to_string(n));
  }
  Uncertainty u;
  if (n < 2 || attraction.all_zero()) return u;
  const std::vector<double> mass = pooled_coverage_masses(attraction);
  for (std::size_t s = 1; s < mass.size(); ++s) {
    const int size = std::popcount(s);
    if (size < 2) continue;
    u.g -= plogp(mass[s]);
    u.i += mass[s] * std::log2(static_cast<double>(n - static_cast<std::size_t>(size) + 1));
  }
  u.h = u.g + u.i;
  return u;
}

double alpha(double h_pos, double h_neg) {
  if (!(h_pos >= 0.0) || !(h_neg >= 0.0)) {
    throw InputError("entropies must be non-negative");
  }
  const double total = h_pos + h_neg;
  if (total == 0.0) return 0.5;
  return h_pos / total;
}

EntropyReport entropy_report(const ConflictMatrix& conflict, const AttractionMatrix& attraction) {
  if (conflict.size() != attraction.size()) {
    throw InputError("conflict and attraction matrices differ in size");
  }
  EntropyReport r;
  r.neg = neg_entropy(conflict);
  r.pos = pos_entropy(attraction);
  r.alpha = alpha(r.pos.h, r.neg.h);
  r.degenerate = r.pos.h == 0.0 && r.neg.h == 0.0;
  return r;
}

}  // namespace bfclust
