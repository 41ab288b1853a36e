#pragma once

// Evaluation protocols: nested cross-validated model selection, leave-one-out
// scoring of the meta-learning pipelines against uniform baselines, component
// ablation, paired significance tests, and coverage analysis.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quorum/aggregators.hpp"
#include "quorum/classifiers.hpp"
#include "quorum/decision_case.hpp"
#include "quorum/features.hpp"
#include "quorum/multilabel.hpp"
#include "quorum/pipelines.hpp"

namespace quorum {

enum class Approach { AMP, DAP };

std::string approach_name(Approach a);
Approach approach_from_name(const std::string& name);

// A candidate technique. DAP ignores `scheme`.
struct Technique {
  WrapScheme scheme = WrapScheme::BR;
  LearnerKind base = LearnerKind::RF;
};

std::string technique_name(Approach approach, const Technique& t);

// Candidate grids, in canonical order. AMP: scheme-major over
// {BR,CC,LP} x {BNB,KNN,LR,RF}; DAP: {KNN,LR,RF}.
std::vector<Technique> technique_grid(Approach approach);

// Defaults used when no model selection is run: AMP -> BR+RF, DAP -> RF.
Technique default_technique(Approach approach);

// Shared evaluation settings. `seed` drives every randomized stage through
// fixed derivation streams, so results are invariant to `workers`.
struct EvalOptions {
  SubgroupPlan plan;
  LearnerParams params;
  std::vector<MethodId> included = all_methods();
  FeatureMask mask{};
  std::size_t folds = 10;
  std::size_t inner_subsample = 0;  // 0 = full inner leave-one-out
  bool mcnemar_exact = false;
  std::uint64_t seed = 0;
  std::size_t workers = 0;  // 0 = environment default
  std::string config_hash;  // embedded in emitted artifacts
};

// ---- significance tests ----

struct TestResult {
  double statistic = 0.0;  // chi-square or z
  double p_value = 1.0;
};

// McNemar's test on paired 0/1 outcomes (no continuity correction).
// When `exact` is set, the p-value comes from the two-sided binomial tail
// over the discordant pairs instead of the chi-square approximation.
TestResult mcnemar_test(const std::vector<int>& first,
                        const std::vector<int>& second, bool exact = false);

// Same test given the discordant-pair counts directly.
TestResult mcnemar_counts(std::size_t b, std::size_t c, bool exact = false);

// Two-proportion pooled z-test on success counts.
TestResult proportion_test(std::size_t successes1, std::size_t n1,
                           std::size_t successes2, std::size_t n2);

// ---- coverage ----

// Which cases each method solves, the count of every solved/unsolved region,
// and how the union changes when the dissent method is dropped.
struct CoverageReport {
  std::vector<MethodId> methods;
  std::size_t n_cases = 0;
  // region_counts[mask] = #cases where exactly the methods whose bit is set
  // (bit i = methods[i]) succeed.
  std::vector<std::size_t> region_counts;
  std::size_t union_all = 0;       // solved by at least one method
  std::size_t union_standard = 0;  // solved by at least one non-dissent method
};

CoverageReport coverage_analysis(const std::vector<DecisionCase>& corpus,
                                 const std::vector<MethodId>& methods,
                                 std::size_t workers = 0);

// ---- leave-one-out evaluation ----

struct MethodSummary {
  MethodId method = MethodId::MR;
  double uniform_success = 0.0;
  std::size_t times_selected = 0;    // AMP only; 0 under DAP
  double selection_share = 0.0;      // AMP only
  std::optional<double> conditional_success;  // AMP only; empty if never selected
  TestResult mcnemar;     // approach vs this method, paired
  TestResult proportion;  // approach vs this method, pooled z
};

struct EvaluationReport {
  Approach approach = Approach::AMP;
  std::string technique;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::size_t n_cases = 0;
  std::vector<MethodId> included;
  double approach_success = 0.0;
  std::vector<int> approach_outcomes;          // per case
  std::vector<std::vector<int>> method_bits;   // per included method, per case
  std::vector<std::size_t> selected_method;    // AMP: per case, index into included
  std::vector<MethodSummary> methods;
  CoverageReport coverage;
};

// Leave-one-out evaluation of one technique over the corpus: per held-out
// case, train on the rest and score the end-to-end decision. Uniform
// baselines are computed in the same pass. Requires ground truth everywhere
// and at least 3 cases.
EvaluationReport loo_evaluate(const std::vector<DecisionCase>& corpus,
                              Approach approach, const Technique& technique,
                              const EvalOptions& options);

// ---- nested model selection ----

struct ModelSelectionResult {
  Approach approach = Approach::AMP;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::vector<Technique> grid;
  std::vector<std::string> grid_names;
  // inner_success[fold][candidate]: inner leave-one-out success on the
  // fold's training split.
  std::vector<std::vector<double>> inner_success;
  std::vector<std::size_t> fold_winner;  // per fold, index into grid
  std::vector<double> outer_success;     // per fold, test-split success
  std::vector<std::size_t> fold_sizes;   // test-split sizes
  std::size_t chosen = 0;                // overall winner, index into grid
};

// 10-fold outer split (seeded shuffle, contiguous folds, remainder spread
// over the first folds); each fold picks the candidate with the best inner
// leave-one-out success on its training split (ties to earliest grid entry),
// retrains it, and scores the held-out fold. The overall winner is the
// candidate with the most fold wins (ties to earliest grid entry).
// Requires at least 20 cases.
ModelSelectionResult nested_model_selection(
    const std::vector<DecisionCase>& corpus, Approach approach,
    const std::vector<Technique>& grid, const EvalOptions& options);

// ---- ablation ----

// Components that can be switched off. Voting features and majority rule
// are the fixed backbone and cannot be excluded.
struct Exclusion {
  bool conf_features = false;
  bool ps_features = false;
  bool wc_hac = false;
  bool sp = false;
  bool da = false;

  bool operator==(const Exclusion&) const = default;
};

// Parse names like "confidence", "ps", "wc_hac", "sp", "da".
// "voting"/"mr" raise InvalidExclusion; unknown names raise UsageError.
Exclusion parse_exclusion(const std::vector<std::string>& names);

// Feature mask + included-method list that an exclusion induces.
FeatureMask exclusion_mask(const Exclusion& e);
std::vector<MethodId> exclusion_methods(const Exclusion& e);

struct AblationRow {
  Exclusion exclusion;
  std::string label;
  double success = 0.0;
  std::size_t n_cases = 0;
};

// Re-run the leave-one-out evaluation with components removed. With an empty
// exclusion this reproduces loo_evaluate exactly (same seed stream).
AblationRow ablate(const std::vector<DecisionCase>& corpus, Approach approach,
                   const Technique& technique, const Exclusion& exclusion,
                   const EvalOptions& options);

// The standard ablation ladder, from no exclusion to feature-and-method
// combinations, in fixed presentation order.
std::vector<Exclusion> ablation_ladder();
std::string exclusion_label(const Exclusion& e);

// ---- rendering ----

// Text renderings use 6 significant digits; JSON carries full precision.
std::string report_to_text(const EvaluationReport& r);
std::string report_to_json(const EvaluationReport& r);
std::string selection_to_text(const ModelSelectionResult& r);
std::string selection_to_json(const ModelSelectionResult& r);
std::string coverage_to_text(const CoverageReport& r);
std::string coverage_to_json(const CoverageReport& r);
std::string ablation_to_text(const std::vector<AblationRow>& rows);
std::string ablation_to_json(const std::vector<AblationRow>& rows);

}  // namespace quorum
