#pragma once

// Run configuration: one structure carrying every tunable the pipelines and
// protocols read, loadable from a strict JSON file (unknown keys rejected)
// and hashable so artifacts can state exactly what produced them.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "quorum/evaluation.hpp"

namespace quorum {

struct RunConfig {
  Approach approach = Approach::AMP;
  WrapScheme scheme = WrapScheme::BR;  // AMP wrapper
  LearnerKind base = LearnerKind::RF;  // base learner for either approach
  std::vector<MethodId> included = all_methods();
  FeatureMask mask{};
  SubgroupPlan plan;  // plan.seed is derived from `seed`, not configured
  LearnerParams params;
  std::size_t folds = 10;
  std::size_t inner_subsample = 0;
  bool mcnemar_exact = false;
  bool exclude_degenerate = true;
  std::uint64_t seed = 0;
  std::size_t workers = 0;  // 0 = environment default
};

// Strict parse: every key must be known and well-typed (UsageError names the
// offending key); absent keys keep their defaults.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);  // ParseError on bad JSON

// Canonical serialization (sorted keys) and its FNV-1a hash as 16 hex
// digits. Identical configs hash identically. `workers` is an execution
// knob with no effect on results, so it stays out of the serialization:
// reports must be byte-identical at every worker count.
nlohmann::json run_config_to_json(const RunConfig& c);
std::string config_hash(const RunConfig& c);

Technique config_technique(const RunConfig& c);

// Glue into the evaluation layer: derives the sub-group seed from the master
// seed and stamps the config hash.
EvalOptions eval_options(const RunConfig& c);

}  // namespace quorum
