#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bfclust/matrix.hpp"

namespace bfclust {

/// Tolerance on the total mass of a basic probability assignment.
inline constexpr double kMassTolerance = 1e-9;
/// Focal sets are 64-bit masks, so a frame holds at most 64 atoms.
inline constexpr std::size_t kMaxFrameAtoms = 64;

/// Subset of frame atoms, bit k set when atom k is a member.
struct FocalSet {
  std::uint64_t bits = 0;

  constexpr bool empty() const noexcept { return bits == 0; }
  constexpr int cardinality() const noexcept { return std::popcount(bits); }
  constexpr FocalSet intersect(FocalSet other) const noexcept { return {bits & other.bits}; }

  constexpr auto operator<=>(const FocalSet&) const = default;
};

/// Ordered set of distinct atom labels. Order is fixed at construction and
/// focal sets refer to atoms by position.
class Frame {
 public:
  explicit Frame(std::vector<std::string> atoms);

  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }

  /// Throws InputError for an unknown label.
  std::size_t index_of(std::string_view atom) const;
  /// Focal set built from atom labels; throws on unknown labels.
  FocalSet focal(std::span<const std::string> labels) const;
  FocalSet theta() const noexcept;
  std::vector<std::string> labels(FocalSet set) const;

  bool operator==(const Frame&) const = default;

 private:
  std::vector<std::string> atoms_;
};

using FramePtr = std::shared_ptr<const Frame>;

/// Basic probability assignment over a frame. Entries hold strictly
/// positive masses on non-empty focal sets, sorted by mask; the empty set
/// mass is kept separately and is non-zero only for combination results.
class MassFunction {
 public:
  using Entry = std::pair<FocalSet, double>;

  /// Builds user-supplied evidence. Focal sets must be non-empty and masses
  /// non-negative; repeated focal sets accumulate and zero masses are
  /// dropped. A total within kMassTolerance of 1 is rescaled to exactly 1,
  /// anything further off is rejected.
  static MassFunction from_evidence(FramePtr frame, std::vector<Entry> entries);

  /// All mass on the whole frame.
  static MassFunction vacuous(FramePtr frame);

  const Frame& frame() const noexcept { return *frame_; }
  const FramePtr& frame_ptr() const noexcept { return frame_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  double empty_mass() const noexcept { return empty_mass_; }

  /// Mass on exactly this focal set (empty set gives empty_mass()).
  double mass_of(FocalSet set) const noexcept;

  bool same_frame(const MassFunction& other) const noexcept;

 private:
  friend MassFunction combine_pair(const MassFunction& a, const MassFunction& b);

  MassFunction(FramePtr frame, std::vector<Entry> entries, double empty_mass)
      : frame_(std::move(frame)), entries_(std::move(entries)), empty_mass_(empty_mass) {}

  FramePtr frame_;
  std::vector<Entry> entries_;
  double empty_mass_ = 0.0;
};

struct EvidenceItem {
  std::string id;
  MassFunction mass;
};

/// Unnormalized conjunctive combination: products of focal masses are
/// accumulated on intersections, disjoint pairs go to the empty set.
MassFunction combine_pair(const MassFunction& a, const MassFunction& b);

/// Conflict of Dempster's rule between two belief functions.
double conflict_pair(const MassFunction& a, const MassFunction& b);

/// Conflict of combining every mass function in the list at once, i.e. the
/// empty-set mass of the left fold of combine_pair.
double conf_subset(std::span<const MassFunction> items);

/// Pairwise conflicts c_ij; zero diagonal.
ConflictMatrix conflict_matrix(std::span<const EvidenceItem> items);

}  // namespace bfclust
