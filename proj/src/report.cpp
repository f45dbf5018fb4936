#include "bfclust/report.hpp"

#include <cmath>
#include <sstream>

namespace bfclust {

using nlohmann::json;

json number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

json to_json(const Uncertainty& u) { return {{"g", u.g}, {"i", u.i}, {"h", u.h}}; }

json to_json(const EntropyReport& r) {
  return {{"g_neg", r.neg.g}, {"i_neg", r.neg.i}, {"h_neg", r.neg.h},
          {"g_pos", r.pos.g}, {"i_pos", r.pos.i}, {"h_pos", r.pos.h},
          {"alpha", r.alpha}, {"alpha_degenerate", r.degenerate}};
}

json to_json(const McfReport& r, const std::vector<std::string>& ids) {
  json clusters = json::array();
  for (const auto& c : r.clusters) {
    json names = json::array();
    for (std::size_t i : c.members) names.push_back(ids.at(i));
    clusters.push_back({{"members", std::move(names)},
                        {"indices", c.members},
                        {"neg_nadp", c.neg},
                        {"pos_adp", c.pos}});
  }
  return {{"partition", r.partition.labels()},
          {"cluster_count", r.partition.cluster_count()},
          {"alpha", r.alpha},
          {"pos_adp", r.pos_adp},
          {"neg_nadp", r.neg_nadp},
          {"adp", r.combined.adp},
          {"nadp", r.combined.nadp},
          {"theta", r.combined.theta},
          {"empty", r.combined.empty},
          {"mcf", r.mcf},
          {"clusters", std::move(clusters)}};
}

std::vector<std::string> advisories(const McfReport& report,
                                    const std::optional<EntropyReport>& entropy) {
  std::vector<std::string> out;
  if (report.pos_adp == 0.0) {
    bool singleton = false;
    for (const auto& c : report.clusters) singleton = singleton || c.members.size() == 1;
    out.push_back(singleton
                      ? "singleton-bias: the partition has a singleton cluster, which receives "
                        "no attracting support, so m(AdP) = 0 and the attracting term is at its "
                        "maximum"
                      : "no-attracting-support: some cluster has no attracting links, so "
                        "m(AdP) = 0 and the attracting term is at its maximum");
  }
  if (entropy && entropy->degenerate) {
    out.push_back("alpha-degenerate: neither conflicting nor attracting evidence carries "
                  "information; alpha set to 0.5");
  }
  return out;
}

namespace {

void render(std::ostringstream& os, const json& value, const std::string& indent) {
  for (const auto& [key, v] : value.items()) {
    const bool nested_object = v.is_object();
    const bool object_list = v.is_array() && !v.empty() && v.front().is_object();
    if (nested_object) {
      os << indent << key << ":\n";
      render(os, v, indent + "  ");
    } else if (object_list) {
      os << indent << key << ":\n";
      for (std::size_t k = 0; k < v.size(); ++k) {
        os << indent << "  [" << k << "]\n";
        render(os, v[k], indent + "    ");
      }
    } else {
      os << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

}  // namespace

std::string to_text(const json& doc) {
  std::ostringstream os;
  render(os, doc, "");
  return os.str();
}

}  // namespace bfclust
