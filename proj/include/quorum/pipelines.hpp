#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quorum/aggregators.hpp"
#include "quorum/decision_case.hpp"
#include "quorum/features.hpp"
#include "quorum/multilabel.hpp"

namespace quorum {

// The full method set in canonical order.
std::vector<MethodId> all_methods();

// One training instance for the method-selection approach: masked feature
// row plus, per included method, the bit saying whether that method solves
// the case. DA's bit is recomputed over the included standard methods.
struct AmpInstance {
  std::vector<double> features;
  std::vector<int> labels;  // aligned with the included-method order
};

// One training instance for the direct-answer approach: masked feature row,
// then a one-hot block per included method encoding its chosen answer; the
// target is the correct answer's index.
struct DapInstance {
  std::vector<double> features;
  int label = 0;
};

// Per-case method choices/outcomes for an included set (DA over the included
// standard methods). Outcomes are filled only when ground truth is present.
struct MethodOutcomes {
  std::vector<MethodId> methods;
  std::vector<std::size_t> choices;
  std::vector<int> outcomes;
};

MethodOutcomes method_outcomes(const DecisionCase& c, const std::vector<MethodId>& included);

AmpInstance build_amp_instance(const DecisionCase& c, const SubgroupPlan& plan,
                               const std::vector<MethodId>& included,
                               const FeatureMask& mask = {});

DapInstance build_dap_instance(const DecisionCase& c, const SubgroupPlan& plan,
                               const std::vector<MethodId>& included,
                               const FeatureMask& mask = {});

// What the method-selection pipeline decided for one case.
struct AmpDecision {
  MethodId selected = MethodId::MR;
  std::vector<double> label_proba;  // per included method
  AggregationResult result;         // the selected method applied to the case
};

AmpDecision amp_select_and_aggregate(const MultiLabelModel& model, const DecisionCase& c,
                                     const SubgroupPlan& plan,
                                     const std::vector<MethodId>& included,
                                     const FeatureMask& mask = {});

// What the direct-answer pipeline decided for one case.
struct DapDecision {
  std::size_t chosen = 0;
  std::vector<double> answer_proba;  // per answer index
  std::optional<int> outcome;
};

DapDecision dap_predict_answer(const Classifier& model, const DecisionCase& c,
                               const SubgroupPlan& plan, const std::vector<MethodId>& included,
                               const FeatureMask& mask = {});

// Corpus-level assembly (features computed once per case).
struct AmpDataset {
  Eigen::MatrixXd X;
  std::vector<std::vector<int>> Y;
  std::vector<MethodId> methods;
};

struct DapDataset {
  Eigen::MatrixXd X;
  std::vector<int> y;
  std::vector<MethodId> methods;
  std::size_t n_answers = 0;
};

AmpDataset build_amp_dataset(const std::vector<DecisionCase>& corpus, const SubgroupPlan& plan,
                             const std::vector<MethodId>& included, const FeatureMask& mask,
                             std::size_t workers);

DapDataset build_dap_dataset(const std::vector<DecisionCase>& corpus, const SubgroupPlan& plan,
                             const std::vector<MethodId>& included, const FeatureMask& mask,
                             std::size_t workers);

}  // namespace quorum
