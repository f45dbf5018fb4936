#include "bfclust/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "bfclust/error.hpp"

namespace bfclust {

// ---------------------------------------------------------------------------
// PairwiseMatrix

template <class Tag>
PairwiseMatrix<Tag> PairwiseMatrix<Tag>::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  PairwiseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InputError("matrix is not square: row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(rows[i][i]) > 1e-12) {
      throw InputError("matrix diagonal entry " + std::to_string(i) + " is not zero");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = rows[i][j];
      const double b = rows[j][i];
      if (!std::isfinite(a) || !std::isfinite(b) || std::abs(a - b) > 1e-12) {
        throw InputError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
      }
      m.set(i, j, a);
    }
  }
  return m;
}

template <class Tag>
void PairwiseMatrix<Tag>::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) {
    throw InputError("matrix index (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") out of range for size " + std::to_string(n_));
  }
  if (i == j) {
    throw InputError("diagonal entries are fixed at zero");
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InputError("pairwise value " + std::to_string(value) + " outside [0,1]");
  }
  values_[i * n_ + j] = value;
  values_[j * n_ + i] = value;
}

template <class Tag>
bool PairwiseMatrix<Tag>::all_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

template <class Tag>
std::vector<std::vector<double>> PairwiseMatrix<Tag>::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(i * n_), n_, out[i].begin());
  }
  return out;
}

template class PairwiseMatrix<ConflictTag>;
template class PairwiseMatrix<AttractionTag>;

// ---------------------------------------------------------------------------
// Frame

Frame::Frame(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw InputError("frame must contain at least one atom");
  }
  if (atoms_.size() > kMaxFrameAtoms) {
    throw InputError("frame has " + std::to_string(atoms_.size()) + " atoms; at most " +
                     std::to_string(kMaxFrameAtoms) + " are supported");
  }
  std::set<std::string_view> seen;
  for (const auto& a : atoms_) {
    if (!seen.insert(a).second) {
      throw InputError("duplicate frame atom '" + a + "'");
    }
  }
}

std::size_t Frame::index_of(std::string_view atom) const {
  const auto it = std::find(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end()) {
    throw InputError("unknown frame atom '" + std::string(atom) + "'");
  }
  return static_cast<std::size_t>(it - atoms_.begin());
}

FocalSet Frame::focal(std::span<const std::string> labels) const {
  FocalSet s;
  for (const auto& l : labels) {
    s.bits |= std::uint64_t{1} << index_of(l);
  }
  return s;
}

FocalSet Frame::theta() const noexcept {
  return {atoms_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << atoms_.size()) - 1};
}

std::vector<std::string> Frame::labels(FocalSet set) const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (set.bits >> k & 1U) out.push_back(atoms_[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// MassFunction

MassFunction MassFunction::from_evidence(FramePtr frame, std::vector<Entry> entries) {
  if (!frame) {
    throw InputError("mass function requires a frame");
  }
  const FocalSet theta = frame->theta();
  std::map<FocalSet, double> merged;
  double total = 0.0;
  for (const auto& [set, mass] : entries) {
    if (set.empty()) {
      throw InputError("evidence may not assign mass to the empty set");
    }
    if ((set.bits & ~theta.bits) != 0) {
      throw InputError("focal set references atoms outside the frame");
    }
    if (!std::isfinite(mass) || mass < 0.0) {
      throw InputError("mass must be a finite non-negative number");
    }
    if (mass == 0.0) continue;
    merged[set] += mass;
    total += mass;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw InputError("masses sum to " + std::to_string(total) + ", expected 1");
  }
  std::vector<Entry> out;
  out.reserve(merged.size());
  for (const auto& [set, mass] : merged) {
    out.emplace_back(set, mass / total);
  }
  return MassFunction(std::move(frame), std::move(out), 0.0);
}

MassFunction MassFunction::vacuous(FramePtr frame) {
  if (!frame) {
    throw InputError("mass function requires a frame");
  }
  const FocalSet theta = frame->theta();
  return MassFunction(std::move(frame), {{theta, 1.0}}, 0.0);
}

double MassFunction::mass_of(FocalSet set) const noexcept {
  if (set.empty()) return empty_mass_;
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), set,
                                   [](const Entry& e, FocalSet s) { return e.first < s; });
  return it != entries_.end() && it->first == set ? it->second : 0.0;
}

bool MassFunction::same_frame(const MassFunction& other) const noexcept {
  return frame_ == other.frame_ || *frame_ == *other.frame_;
}

// ---------------------------------------------------------------------------
// Combination

MassFunction combine_pair(const MassFunction& a, const MassFunction& b) {
  if (!a.same_frame(b)) {
    throw InputError("cannot combine mass functions over different frames");
  }
  std::map<FocalSet, double> acc;
  // Conflict already carried by either operand stays conflict.
  double empty = a.empty_mass() + b.empty_mass() - a.empty_mass() * b.empty_mass();
  for (const auto& [sa, ma] : a.entries()) {
    for (const auto& [sb, mb] : b.entries()) {
      const FocalSet s = sa.intersect(sb);
      if (s.empty()) {
        empty += ma * mb;
      } else {
        acc[s] += ma * mb;
      }
    }
  }
  std::vector<MassFunction::Entry> entries;
  entries.reserve(acc.size());
  for (const auto& [s, m] : acc) {
    if (m > 0.0) entries.emplace_back(s, m);
  }
  return MassFunction(a.frame_ptr(), std::move(entries), empty);
}

double conflict_pair(const MassFunction& a, const MassFunction& b) {
  return combine_pair(a, b).empty_mass();
}

double conf_subset(std::span<const MassFunction> items) {
  if (items.empty()) {
    throw InputError("conflict of an empty subset is undefined");
  }
  MassFunction acc = items.front();
  for (std::size_t k = 1; k < items.size(); ++k) {
    acc = combine_pair(acc, items[k]);
  }
  return acc.empty_mass();
}

ConflictMatrix conflict_matrix(std::span<const EvidenceItem> items) {
  const std::size_t n = items.size();
  ConflictMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!items[i].mass.same_frame(items.front().mass)) {
      throw InputError("evidence item '" + items[i].id + "' uses a different frame");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      // Rounding can push a sum of products a hair past 1.
      c.set(i, j, std::min(1.0, conflict_pair(items[i].mass, items[j].mass)));
    }
  }
  return c;
}

}  // namespace bfclust
