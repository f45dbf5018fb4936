#pragma once

#include <cstddef>
#include <vector>

#include "bfclust/matrix.hpp"

namespace bfclust {

/// Largest item count for which the pooled attracting evidence can be
/// aggregated exactly (one table entry per item subset).
inline constexpr std::size_t kMaxPooledAttracting = 24;

/// Average total uncertainty H = G + I of a mass function, in bits:
/// G is Shannon entropy of the masses, I the Hartley nonspecificity.
struct Uncertainty {
  double g = 0.0;
  double i = 0.0;
  double h = 0.0;
};

struct EntropyReport {
  Uncertainty neg;
  Uncertainty pos;
  double alpha = 0.5;
  /// Both evidence types carry no information; alpha fell back to 0.5.
  bool degenerate = false;
};

/// Uncertainty of all conflicting evidence pooled into one cluster.
///
/// Every subset J of pairs is its own focal element with mass
/// prod_J c * prod_rest (1 - c), so G is the sum of per-pair binary
/// entropies and I = E[log2 K] for the Poisson-binomial pair count K
/// (K = 0 contributes nothing).
Uncertainty neg_entropy(const ConflictMatrix& conflict);

/// Pooled attracting evidence by coverage set: entry S is the probability
/// that the random attracting edge set touches exactly the items in S
/// (entry 0 is the vacuous focal). 2^n entries; throws SizeLimitError for
/// n > kMaxPooledAttracting.
std::vector<double> pooled_coverage_masses(const AttractionMatrix& attraction);

/// Uncertainty of all attracting evidence pooled into one cluster.
///
/// Mass is aggregated by the exact set of items touched by the random edge
/// set, recovered from Pr(coverage within S) by Moebius inversion. The
/// vacuous focal (no edges) is outside both sums; a coverage set J weighs
/// log2(n - |J| + 1) in I. Throws SizeLimitError for n > kMaxPooledAttracting.
Uncertainty pos_entropy(const AttractionMatrix& attraction);

/// Weight of the attracting term: h_pos / (h_pos + h_neg), 0.5 when both
/// are zero. Throws InputError on negative input.
double alpha(double h_pos, double h_neg);

/// neg_entropy, pos_entropy and alpha for one problem instance.
EntropyReport entropy_report(const ConflictMatrix& conflict, const AttractionMatrix& attraction);

}  // namespace bfclust
