#include "quorum/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>

#include "quorum/errors.hpp"
#include "quorum/rng.hpp"

namespace quorum {

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return char(std::toupper(c)); });
  return s;
}

void check_keys(const nlohmann::json& j, const char* where,
                std::initializer_list<const char*> known) {
  if (!j.is_object()) fail("UsageError", std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) fail("UsageError", std::string("unknown config key: ") + where + "." + key);
  }
}

template <typename T>
void read_field(const nlohmann::json& j, const char* where, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail("UsageError", std::string("bad value for config key: ") + where + "." + key);
  }
}

WrapScheme scheme_from_name(const std::string& name) {
  const std::string u = upper(name);
  for (WrapScheme s : {WrapScheme::BR, WrapScheme::CC, WrapScheme::LP})
    if (u == scheme_name(s)) return s;
  fail("UsageError", "unknown scheme: " + name + " (expected BR, CC, or LP)");
}

LearnerKind learner_from_name(const std::string& name) {
  const std::string u = upper(name);
  for (LearnerKind k : {LearnerKind::BNB, LearnerKind::KNN, LearnerKind::LR, LearnerKind::RF})
    if (u == learner_name(k)) return k;
  fail("UsageError", "unknown learner: " + name + " (expected BNB, KNN, LR, or RF)");
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  check_keys(j, "config",
             {"approach", "scheme", "learner", "methods", "features", "subgroups", "rf", "knn",
              "lr", "bnb", "evaluation", "filter", "seed", "workers"});

  if (j.contains("approach")) c.approach = approach_from_name(j.at("approach").get<std::string>());
  if (j.contains("scheme")) c.scheme = scheme_from_name(j.at("scheme").get<std::string>());
  if (j.contains("learner")) c.base = learner_from_name(j.at("learner").get<std::string>());

  if (j.contains("methods")) {
    std::vector<std::string> names;
    read_field(j, "config", "methods", names);
    std::vector<MethodId> methods;
    for (const auto& name : names) {
      auto m = method_from_name(upper(name));
      if (!m) fail("UsageError", "unknown method: " + name);
      if (std::find(methods.begin(), methods.end(), *m) != methods.end())
        fail("UsageError", "method listed twice: " + name);
      methods.push_back(*m);
    }
    if (methods.empty()) fail("UsageError", "config.methods must not be empty");
    c.included = methods;
  }

  if (j.contains("features")) {
    const auto& s = j.at("features");
    check_keys(s, "config.features", {"voting", "confidence", "predicted_support"});
    read_field(s, "config.features", "voting", c.mask.voting);
    read_field(s, "config.features", "confidence", c.mask.confidence);
    read_field(s, "config.features", "predicted_support", c.mask.predicted_support);
    if (!c.mask.voting && !c.mask.confidence && !c.mask.predicted_support)
      fail("UsageError", "config.features cannot disable every feature group");
  }
  if (j.contains("subgroups")) {
    const auto& s = j.at("subgroups");
    check_keys(s, "config.subgroups", {"num_subgroups", "fraction", "min_size"});
    read_field(s, "config.subgroups", "num_subgroups", c.plan.num_subgroups);
    read_field(s, "config.subgroups", "fraction", c.plan.fraction);
    read_field(s, "config.subgroups", "min_size", c.plan.min_size);
    if (c.plan.num_subgroups == 0) fail("UsageError", "config.subgroups.num_subgroups must be >= 1");
    if (!(c.plan.fraction > 0.0 && c.plan.fraction <= 1.0))
      fail("UsageError", "config.subgroups.fraction must lie in (0, 1]");
    if (c.plan.min_size == 0) fail("UsageError", "config.subgroups.min_size must be >= 1");
  }
  if (j.contains("rf")) {
    const auto& s = j.at("rf");
    check_keys(s, "config.rf", {"num_trees", "min_leaf", "max_depth", "bootstrap"});
    read_field(s, "config.rf", "num_trees", c.params.rf.num_trees);
    read_field(s, "config.rf", "min_leaf", c.params.rf.min_leaf);
    read_field(s, "config.rf", "max_depth", c.params.rf.max_depth);
    read_field(s, "config.rf", "bootstrap", c.params.rf.bootstrap);
    if (c.params.rf.num_trees == 0) fail("UsageError", "config.rf.num_trees must be >= 1");
    if (c.params.rf.min_leaf == 0) fail("UsageError", "config.rf.min_leaf must be >= 1");
  }
  if (j.contains("knn")) {
    const auto& s = j.at("knn");
    check_keys(s, "config.knn", {"k"});
    read_field(s, "config.knn", "k", c.params.knn.k);
    if (c.params.knn.k == 0) fail("UsageError", "config.knn.k must be >= 1");
  }
  if (j.contains("lr")) {
    const auto& s = j.at("lr");
    check_keys(s, "config.lr", {"l2", "max_iters", "tol"});
    read_field(s, "config.lr", "l2", c.params.lr.l2);
    read_field(s, "config.lr", "max_iters", c.params.lr.max_iters);
    read_field(s, "config.lr", "tol", c.params.lr.tol);
    if (c.params.lr.l2 < 0.0) fail("UsageError", "config.lr.l2 must be >= 0");
  }
  if (j.contains("bnb")) {
    const auto& s = j.at("bnb");
    check_keys(s, "config.bnb", {"alpha"});
    read_field(s, "config.bnb", "alpha", c.params.bnb.alpha);
    if (c.params.bnb.alpha <= 0.0) fail("UsageError", "config.bnb.alpha must be > 0");
  }
  if (j.contains("evaluation")) {
    const auto& s = j.at("evaluation");
    check_keys(s, "config.evaluation", {"folds", "inner_subsample", "mcnemar_exact"});
    read_field(s, "config.evaluation", "folds", c.folds);
    read_field(s, "config.evaluation", "inner_subsample", c.inner_subsample);
    read_field(s, "config.evaluation", "mcnemar_exact", c.mcnemar_exact);
    if (c.folds < 2) fail("UsageError", "config.evaluation.folds must be >= 2");
  }
  if (j.contains("filter")) {
    const auto& s = j.at("filter");
    check_keys(s, "config.filter", {"exclude_degenerate"});
    read_field(s, "config.filter", "exclude_degenerate", c.exclude_degenerate);
  }
  read_field(j, "config", "seed", c.seed);
  read_field(j, "config", "workers", c.workers);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("ParseError", "cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail("ParseError", "config file " + path + ": " + e.what());
  }
  return run_config_from_json(j);
}

nlohmann::json run_config_to_json(const RunConfig& c) {
  nlohmann::json methods = nlohmann::json::array();
  for (MethodId m : c.included) methods.push_back(method_name(m));
  return {
      {"approach", approach_name(c.approach)},
      {"scheme", scheme_name(c.scheme)},
      {"learner", learner_name(c.base)},
      {"methods", methods},
      {"features",
       {{"voting", c.mask.voting},
        {"confidence", c.mask.confidence},
        {"predicted_support", c.mask.predicted_support}}},
      {"subgroups",
       {{"num_subgroups", c.plan.num_subgroups},
        {"fraction", c.plan.fraction},
        {"min_size", c.plan.min_size}}},
      {"rf",
       {{"num_trees", c.params.rf.num_trees},
        {"min_leaf", c.params.rf.min_leaf},
        {"max_depth", c.params.rf.max_depth},
        {"bootstrap", c.params.rf.bootstrap}}},
      {"knn", {{"k", c.params.knn.k}}},
      {"lr", {{"l2", c.params.lr.l2}, {"max_iters", c.params.lr.max_iters}, {"tol", c.params.lr.tol}}},
      {"bnb", {{"alpha", c.params.bnb.alpha}}},
      {"evaluation",
       {{"folds", c.folds},
        {"inner_subsample", c.inner_subsample},
        {"mcnemar_exact", c.mcnemar_exact}}},
      {"filter", {{"exclude_degenerate", c.exclude_degenerate}}},
      {"seed", c.seed},
  };
}

std::string config_hash(const RunConfig& c) {
  const std::string dump = run_config_to_json(c).dump();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(dump)));
  return std::string(buf);
}

Technique config_technique(const RunConfig& c) { return {c.scheme, c.base}; }

EvalOptions eval_options(const RunConfig& c) {
  EvalOptions o;
  o.plan = c.plan;
  o.plan.seed = mix_seed(c.seed, fnv1a("subgroups"));
  o.params = c.params;
  o.included = c.included;
  o.mask = c.mask;
  o.folds = c.folds;
  o.inner_subsample = c.inner_subsample;
  o.mcnemar_exact = c.mcnemar_exact;
  o.seed = c.seed;
  o.workers = c.workers;
  o.config_hash = config_hash(c);
  return o;
}

}  // namespace quorum
