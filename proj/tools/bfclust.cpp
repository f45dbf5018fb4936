// bfclust: cluster belief functions by minimizing the metaconflict function.
//
//   bfclust cluster  instance.json [--method exact|local] [--seed N] [--restarts N]
//                                  [--alpha X] [--output json|text]
//   bfclust evaluate instance.json [--seed ...same flags...]
//   bfclust entropy  instance.json [--output json|text]
//   bfclust generate --n 8 --k 2 --frame-size 2 --s 0.9 --q 0.8 --seed 7 --out file.json
//
// Exit codes: 0 success, 2 invalid input, 3 size limit exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bfclust/error.hpp"
#include "bfclust/evidence.hpp"
#include "bfclust/instance.hpp"
#include "bfclust/report.hpp"
#include "bfclust/scenario.hpp"
#include "bfclust/search.hpp"
#include "bfclust/weighting.hpp"

namespace {

using nlohmann::json;
using namespace bfclust;

constexpr int kExitInput = 2;
constexpr int kExitSize = 3;

struct RunOptions {
  std::string instance;
  std::string method;
  std::uint64_t seed = 0;
  std::size_t restarts = 20;
  std::optional<double> alpha;
  std::string output = "json";
};

void emit(const json& doc, const std::string& output) {
  if (output == "text") {
    std::cout << to_text(doc);
  } else {
    std::cout << doc.dump(2) << '\n';
  }
}

// Weighting stage, skipped when alpha is given on the command line.
std::optional<EntropyReport> weigh(const ConflictMatrix& conflict,
                                   const AttractionMatrix& attraction, const RunOptions& opt,
                                   double& alpha) {
  if (opt.alpha) {
    if (!(*opt.alpha >= 0.0 && *opt.alpha <= 1.0)) throw InputError("--alpha must lie in [0,1]");
    alpha = *opt.alpha;
    return std::nullopt;
  }
  EntropyReport e = entropy_report(conflict, attraction);
  alpha = e.alpha;
  return e;
}

json base_document(const char* command, const ProblemInstance& inst,
                   const ConflictMatrix& merged) {
  json doc{{"command", command},
           {"mode", inst.evidence_mode() ? "evidence" : "matrix"},
           {"n", inst.size()},
           {"ids", inst.ids()}};
  const ConflictMatrix internal = inst.internal_conflict();
  doc["conflict"] = internal.rows();
  if (!inst.external_conflict.all_zero()) doc["merged_conflict"] = merged.rows();
  return doc;
}

void attach_weighting(json& doc, const std::optional<EntropyReport>& entropy, double alpha) {
  doc["alpha"] = alpha;
  doc["alpha_source"] = entropy ? "entropy" : "override";
  doc["entropy"] = entropy ? to_json(*entropy) : json(nullptr);
}

int run_cluster(const RunOptions& opt) {
  const ProblemInstance inst = load_instance(opt.instance);
  const ConflictMatrix merged = inst.merged_conflict();
  double alpha = 0.5;
  const auto entropy = weigh(merged, inst.attraction, opt, alpha);

  SearchConfig cfg;
  cfg.seed = opt.seed;
  cfg.restarts = opt.restarts;
  if (opt.method.empty()) {
    cfg.method = inst.size() <= cfg.max_items_exact ? SearchMethod::exact : SearchMethod::local;
  } else {
    cfg.method = opt.method == "exact" ? SearchMethod::exact : SearchMethod::local;
  }
  const McfReport best = search(merged, inst.attraction, alpha, cfg);

  json doc = base_document("cluster", inst, merged);
  attach_weighting(doc, entropy, alpha);
  doc["method"] = cfg.method == SearchMethod::exact ? "exact" : "local";
  if (cfg.method == SearchMethod::local) {
    doc["seed"] = cfg.seed;
    doc["restarts"] = cfg.restarts;
  }
  doc["result"] = to_json(best, inst.ids());
  doc["advisories"] = advisories(best, entropy);
  emit(doc, opt.output);
  return 0;
}

int run_evaluate(const RunOptions& opt) {
  const ProblemInstance inst = load_instance(opt.instance);
  if (!inst.partition) throw InputError("evaluate requires a 'partition' field in the instance");
  const ConflictMatrix merged = inst.merged_conflict();
  double alpha = 0.5;
  const auto entropy = weigh(merged, inst.attraction, opt, alpha);
  const McfReport report = evaluate_partition(merged, inst.attraction, alpha, *inst.partition);

  json doc = base_document("evaluate", inst, merged);
  attach_weighting(doc, entropy, alpha);
  doc["result"] = to_json(report, inst.ids());
  doc["advisories"] = advisories(report, entropy);
  doc["logsum_objective"] = number(logsum_objective(merged, *inst.partition));
  if (inst.evidence_mode()) {
    std::vector<double> subset_conflicts;
    for (const auto& members : inst.partition->clusters()) {
      std::vector<MassFunction> masses;
      for (std::size_t i : members) masses.push_back(inst.items[i].mass);
      subset_conflicts.push_back(conf_subset(masses));
    }
    doc["subset_conflicts"] = subset_conflicts;
    doc["legacy_mcf"] = legacy_mcf(subset_conflicts);
  } else {
    doc["subset_conflicts"] = nullptr;
    doc["legacy_mcf"] = nullptr;
  }
  emit(doc, opt.output);
  return 0;
}

int run_entropy(const RunOptions& opt) {
  const ProblemInstance inst = load_instance(opt.instance);
  const ConflictMatrix merged = inst.merged_conflict();
  const EntropyReport e = entropy_report(merged, inst.attraction);
  json doc = to_json(e);
  doc["command"] = "entropy";
  doc["n"] = inst.size();
  if (e.degenerate) {
    doc["advisories"] = {"alpha-degenerate: neither conflicting nor attracting evidence carries "
                         "information; alpha set to 0.5"};
  } else {
    doc["advisories"] = json::array();
  }
  emit(doc, opt.output);
  return 0;
}

int run_generate(const ScenarioParams& params, std::uint64_t seed, const std::string& out) {
  const Scenario sc = generate(params, seed);
  const json doc = to_json(instance_from_scenario(sc));
  {
    std::ofstream file(out, std::ios::binary);
    if (!file) throw InputError("cannot write " + out);
    file << doc.dump(2) << '\n';
    if (!file) throw InputError("failed writing " + out);
  }
  json summary{{"command", "generate"},
               {"out", out},
               {"n", params.n},
               {"k", params.k},
               {"frame_size", params.frame_size},
               {"s", params.sharpness},
               {"q", params.link},
               {"seed", seed},
               {"truth", sc.truth.labels()}};
  std::cout << summary.dump(2) << '\n';
  return 0;
}

void add_run_flags(CLI::App* cmd, RunOptions& opt, bool search_flags) {
  cmd->add_option("instance", opt.instance, "Problem instance (JSON)")->required();
  cmd->add_option("--output", opt.output, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
  if (!search_flags) return;
  cmd->add_option("--method", opt.method, "exact (default up to 11 items) or local")
      ->check(CLI::IsMember({"exact", "local"}));
  cmd->add_option("--seed", opt.seed, "Seed for local search");
  cmd->add_option("--restarts", opt.restarts, "Local search restarts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", opt.alpha, "Fixed attracting weight; skips the entropy stage")
      ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster belief functions by metaconflict minimization"};
  app.require_subcommand(1);

  RunOptions cluster_opt;
  RunOptions evaluate_opt;
  RunOptions entropy_opt;
  auto* cluster = app.add_subcommand("cluster", "Find the partition minimizing the objective");
  add_run_flags(cluster, cluster_opt, true);
  auto* evaluate = app.add_subcommand("evaluate", "Score the instance's fixed partition");
  add_run_flags(evaluate, evaluate_opt, true);
  auto* entropy = app.add_subcommand("entropy", "Information content and weighting alpha");
  add_run_flags(entropy, entropy_opt, false);

  ScenarioParams params;
  std::uint64_t gen_seed = 0;
  std::string out;
  auto* gen = app.add_subcommand("generate", "Write a synthetic instance with known truth");
  gen->add_option("--n", params.n, "Items")->required();
  gen->add_option("--k", params.k, "Clusters")->required();
  gen->add_option("--frame-size", params.frame_size, "Frame atoms (default: k)");
  gen->add_option("--s", params.sharpness, "Mass on each item's cluster atom");
  gen->add_option("--q", params.link, "Attraction within clusters");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*cluster) return run_cluster(cluster_opt);
    if (*evaluate) return run_evaluate(evaluate_opt);
    if (*entropy) return run_entropy(entropy_opt);
    if (*gen) {
      if (gen->count("--frame-size") == 0) params.frame_size = params.k;
      return run_generate(params, gen_seed, out);
    }
  } catch (const SizeLimitError& e) {
    std::cerr << "bfclust: size limit: " << e.what() << '\n';
    return kExitSize;
  } catch (const InputError& e) {
    std::cerr << "bfclust: invalid input: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
