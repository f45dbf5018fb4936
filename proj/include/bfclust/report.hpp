#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bfclust/search.hpp"
#include "bfclust/weighting.hpp"

namespace bfclust {

/// JSON numbers, with infinities written as the strings "inf" / "-inf".
nlohmann::json number(double value);

nlohmann::json to_json(const Uncertainty& u);
/// Flat g_neg ... h_pos, alpha, alpha_degenerate fields.
nlohmann::json to_json(const EntropyReport& report);
/// Partition labels, clusters named by ids, every mass and the objective.
nlohmann::json to_json(const McfReport& report, const std::vector<std::string>& ids);

/// Notes attached to a search or evaluation result, e.g. the warning that
/// a partition with no attracting support cannot be ranked by that term.
std::vector<std::string> advisories(const McfReport& report,
                                    const std::optional<EntropyReport>& entropy);

/// Renders a report document as indented "key: value" lines.
std::string to_text(const nlohmann::json& doc);

}  // namespace bfclust
