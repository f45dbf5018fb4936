#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bfclust/evidence.hpp"
#include "bfclust/matrix.hpp"
#include "bfclust/metalevel.hpp"
#include "bfclust/scenario.hpp"

namespace bfclust {

/// A clustering problem as read from an instance file.
///
/// Evidence mode carries a frame and belief functions whose pairwise
/// conflicts are computed; matrix mode carries the conflicts directly.
/// Attraction and external conflict default to zero.
struct ProblemInstance {
  FramePtr frame;
  std::vector<EvidenceItem> items;
  std::optional<ConflictMatrix> conflict;
  AttractionMatrix attraction;
  ConflictMatrix external_conflict;
  std::optional<Partition> partition;
  std::optional<Partition> truth;
  std::optional<nlohmann::json> scenario;  ///< generator parameters, passed through

  bool evidence_mode() const noexcept { return !conflict.has_value(); }
  std::size_t size() const noexcept { return conflict ? conflict->size() : items.size(); }
  std::vector<std::string> ids() const;

  /// Conflicts between the belief functions, or the supplied matrix.
  ConflictMatrix internal_conflict() const;
  /// internal_conflict() with external repelling evidence folded in.
  ConflictMatrix merged_conflict() const;
};

/// Validates and converts an instance document. Throws InputError.
ProblemInstance parse_instance(const nlohmann::json& doc);
ProblemInstance load_instance(const std::filesystem::path& path);

nlohmann::json to_json(const ProblemInstance& instance);

/// Evidence-mode instance with the scenario's ground truth attached.
ProblemInstance instance_from_scenario(const Scenario& scenario);

}  // namespace bfclust
