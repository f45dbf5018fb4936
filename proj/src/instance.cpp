#include "bfclust/instance.hpp"

#include <fstream>
#include <memory>
#include <set>
#include <utility>

#include "bfclust/error.hpp"

namespace bfclust {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys{"frame",    "items",     "conflict", "attraction",
                                       "external_conflict", "partition", "truth",
                                       "scenario"};

std::size_t resolve_item(const json& ref, const std::vector<std::string>& ids,
                         bool by_id) {
  if (ref.is_number_unsigned() || (ref.is_number_integer() && ref.get<long long>() >= 0)) {
    const auto i = ref.get<std::size_t>();
    if (i >= ids.size()) {
      throw InputError("item index " + std::to_string(i) + " out of range");
    }
    return i;
  }
  if (ref.is_string() && by_id) {
    const auto& s = ref.get_ref<const std::string&>();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] == s) return i;
    }
    throw InputError("unknown item id '" + s + "'");
  }
  throw InputError("item reference must be a non-negative index" +
                   std::string(by_id ? " or an item id" : ""));
}

template <class Matrix>
Matrix parse_triplets(const json& section, const char* name, const char* value_key,
                      const std::vector<std::string>& ids, bool by_id) {
  Matrix m(ids.size());
  if (!section.is_array()) throw InputError(std::string(name) + " must be a list of triplets");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& t : section) {
    if (!t.is_object() || !t.contains("i") || !t.contains("j") || !t.contains(value_key)) {
      throw InputError(std::string(name) + " entries need i, j and " + value_key);
    }
    std::size_t i = resolve_item(t.at("i"), ids, by_id);
    std::size_t j = resolve_item(t.at("j"), ids, by_id);
    if (i == j) throw InputError(std::string(name) + " entry pairs an item with itself");
    if (i > j) std::swap(i, j);
    if (!seen.emplace(i, j).second) {
      throw InputError(std::string(name) + " lists pair (" + std::to_string(i) + ", " +
                       std::to_string(j) + ") twice");
    }
    if (!t.at(value_key).is_number()) {
      throw InputError(std::string(name) + " value must be a number");
    }
    m.set(i, j, t.at(value_key).get<double>());
  }
  return m;
}

std::optional<Partition> parse_labels(const json& doc, const char* key, std::size_t n) {
  if (!doc.contains(key)) return std::nullopt;
  const json& p = doc.at(key);
  if (!p.is_array() || p.size() != n) {
    throw InputError(std::string(key) + " must list one label per item");
  }
  std::vector<std::size_t> labels;
  for (const auto& l : p) {
    if (!l.is_number_integer() || l.get<long long>() < 0) {
      throw InputError(std::string(key) + " labels must be non-negative integers");
    }
    labels.push_back(l.get<std::size_t>());
  }
  return Partition::from_labels(labels);
}

ProblemInstance parse_checked(const json& doc) {
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.contains(key)) throw InputError("unknown instance field '" + key + "'");
  }
  const bool has_items = doc.contains("items");
  const bool has_conflict = doc.contains("conflict");
  if (has_items == has_conflict) {
    throw InputError("instance needs exactly one of 'items' and 'conflict'");
  }

  ProblemInstance inst;
  std::vector<std::string> ids;
  if (has_items) {
    if (!doc.contains("frame")) throw InputError("evidence mode requires a 'frame'");
    inst.frame = std::make_shared<const Frame>(doc.at("frame").get<std::vector<std::string>>());
    const json& items = doc.at("items");
    if (!items.is_array() || items.empty()) throw InputError("'items' must be a non-empty list");
    std::set<std::string> seen;
    for (const auto& item : items) {
      auto id = item.at("id").get<std::string>();
      if (!seen.insert(id).second) throw InputError("duplicate item id '" + id + "'");
      std::vector<MassFunction::Entry> entries;
      for (const auto& m : item.at("masses")) {
        const auto labels = m.at("focal").get<std::vector<std::string>>();
        if (labels.empty()) {
          throw InputError("item '" + id + "' assigns mass to an empty focal set");
        }
        entries.emplace_back(inst.frame->focal(labels), m.at("mass").get<double>());
      }
      try {
        inst.items.push_back({id, MassFunction::from_evidence(inst.frame, std::move(entries))});
      } catch (const InputError& e) {
        throw InputError("item '" + id + "': " + e.what());
      }
      ids.push_back(std::move(id));
    }
  } else {
    if (doc.contains("frame")) throw InputError("matrix mode does not take a 'frame'");
    inst.conflict = ConflictMatrix::from_rows(
        doc.at("conflict").get<std::vector<std::vector<double>>>());
    if (inst.conflict->size() == 0) throw InputError("'conflict' matrix is empty");
    for (std::size_t i = 0; i < inst.conflict->size(); ++i) ids.push_back(std::to_string(i));
  }

  const std::size_t n = ids.size();
  inst.attraction = doc.contains("attraction")
                        ? parse_triplets<AttractionMatrix>(doc.at("attraction"), "attraction",
                                                           "p", ids, has_items)
                        : AttractionMatrix(n);
  inst.external_conflict =
      doc.contains("external_conflict")
          ? parse_triplets<ConflictMatrix>(doc.at("external_conflict"), "external_conflict", "c",
                                           ids, has_items)
          : ConflictMatrix(n);
  inst.partition = parse_labels(doc, "partition", n);
  inst.truth = parse_labels(doc, "truth", n);
  if (doc.contains("scenario")) inst.scenario = doc.at("scenario");
  return inst;
}

json pair_triplets(const auto& m, const char* value_key) {
  json out = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (m(i, j) != 0.0) out.push_back({{"i", i}, {"j", j}, {value_key, m(i, j)}});
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> ProblemInstance::ids() const {
  std::vector<std::string> out;
  if (conflict) {
    for (std::size_t i = 0; i < conflict->size(); ++i) out.push_back(std::to_string(i));
  } else {
    for (const auto& item : items) out.push_back(item.id);
  }
  return out;
}

ConflictMatrix ProblemInstance::internal_conflict() const {
  return conflict ? *conflict : conflict_matrix(items);
}

ConflictMatrix ProblemInstance::merged_conflict() const {
  return merge_external_conflict(internal_conflict(), external_conflict);
}

ProblemInstance parse_instance(const json& doc) {
  try {
    return parse_checked(doc);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  }
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("instance file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_instance(doc);
}

json to_json(const ProblemInstance& inst) {
  json doc = json::object();
  if (inst.evidence_mode()) {
    doc["frame"] = inst.frame->atoms();
    json items = json::array();
    for (const auto& item : inst.items) {
      json masses = json::array();
      for (const auto& [set, mass] : item.mass.entries()) {
        masses.push_back({{"focal", inst.frame->labels(set)}, {"mass", mass}});
      }
      items.push_back({{"id", item.id}, {"masses", std::move(masses)}});
    }
    doc["items"] = std::move(items);
  } else {
    doc["conflict"] = inst.conflict->rows();
  }
  doc["attraction"] = pair_triplets(inst.attraction, "p");
  if (!inst.external_conflict.all_zero()) {
    doc["external_conflict"] = pair_triplets(inst.external_conflict, "c");
  }
  if (inst.partition) doc["partition"] = inst.partition->labels();
  if (inst.truth) doc["truth"] = inst.truth->labels();
  if (inst.scenario) doc["scenario"] = *inst.scenario;
  return doc;
}

ProblemInstance instance_from_scenario(const Scenario& sc) {
  ProblemInstance inst;
  inst.frame = sc.items.front().mass.frame_ptr();
  inst.items = sc.items;
  inst.attraction = sc.attraction;
  inst.external_conflict = ConflictMatrix(sc.items.size());
  inst.truth = sc.truth;
  inst.scenario = json{{"n", sc.params.n},
                       {"k", sc.params.k},
                       {"frame_size", sc.params.frame_size},
                       {"s", sc.params.sharpness},
                       {"q", sc.params.link},
                       {"seed", sc.seed}};
  return inst;
}

}  // namespace bfclust
